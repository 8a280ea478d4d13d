#pragma once

#include "gradhedge/market.hpp"
#include "gradhedge/stopping.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gradhedge {

enum class Side { Seller, Buyer };

std::string to_string(Side side);

class PricingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested initial endowment lies outside Z_0; `violated` names the
/// offending halfspace.
class InfeasibleInitial : public std::runtime_error {
public:
    InfeasibleInitial(const std::string& what, Halfspace violated)
        : std::runtime_error(what), violated(std::move(violated)) {}
    Halfspace violated;
};

/// Backward-induction sets for one side, one entry per node.
/// Seller: Y = Y_t + Q_t, X = X_t + Q_t, Z = conv{V, X} ∩ Y.
/// Buyer:  Y = -Y_t + Q_t, X = -X_t + Q_t, Z = conv{V ∩ X, Y}.
/// Both: W = intersection of the children's Z, V = W + Q_t; at leaves W and V
/// are the whole space and Z = Y.
struct SetLadder {
    Side side = Side::Seller;
    std::vector<Polyhedron> Y, X, W, V, Z;
};

/// Throws PricingError if some Z is empty (the market then admits arbitrage).
SetLadder seller_ladder(const Market& market, const GamePayoffs& payoffs);
SetLadder buyer_ladder(const Market& market, const GamePayoffs& payoffs);
SetLadder build_ladder(const Market& market, const GamePayoffs& payoffs, Side side);

/// min{x : x e^j ∈ Z_0^a}. Throws PricingError if Z_0 is unbounded along e^j.
Rational ask_price(const SetLadder& seller, std::size_t j);
/// max{-x : x e^j ∈ Z_0^b}.
Rational bid_price(const SetLadder& buyer, std::size_t j);

/// A pair (phi, z) for the seller or (psi, z) for the buyer. `backbone.next[i]`
/// is z_{t+1} held from node i (at time t) into its children.
struct LambdaHedge {
    Side side = Side::Seller;
    MixedStoppingTime stopping;
    PredictableProcess backbone;
};

/// Splits z_t = phi*_t((1-λ)v + λx) with the least λ at every node and
/// projects v into W along Q to get z_{t+1}. Throws InfeasibleInitial unless
/// `initial` ∈ Z_0, and PricingError if the result fails its own exact check.
LambdaHedge extract_lambda_hedge(const Market& market, const GamePayoffs& payoffs, const SetLadder& ladder,
                                 const Vec& initial);

/// Exact check of the defining memberships; returns the first failing node id
/// with a description, or an empty string.
std::string lambda_violation(const Market& market, const GamePayoffs& payoffs, const LambdaHedge& hedge);
bool is_valid_lambda_hedge(const Market& market, const GamePayoffs& payoffs, const LambdaHedge& hedge);

/// z_t / phi*_t at each node (z_t itself where phi*_t = 0), i.e. the point of
/// Z_t that the backbone tracks. Entry i refers to the portfolio held into i.
AdaptedProcess normalized_backbone(const EventTree& tree, const LambdaHedge& hedge);

/// The Λ-hedge plus, for each node s, the liquidation strategies started there:
/// `y[s]` from the rebalancing residual (absent at leaves, where it is zero)
/// and `x[s]` from the stopping residual.
struct HedgeRecipe {
    LambdaHedge hedge;
    std::vector<Liquidation> y;
    std::vector<Liquidation> x;
};

HedgeRecipe lambda_to_full_hedge(const Market& market, const GamePayoffs& payoffs, const LambdaHedge& hedge);

/// The trading strategy the recipe prescribes against `opponent` (psi for the
/// seller's recipe, phi for the buyer's).
PredictableProcess evaluate_recipe(const EventTree& tree, const HedgeRecipe& recipe,
                                   const MixedStoppingTime& opponent);

struct HedgeViolation {
    std::size_t opponent = 0;  // index into the opponent list
    std::string node;
    std::string what;
};

struct HedgeReport {
    std::size_t opponents_checked = 0;
    std::size_t anticipation_checks = 0;
    std::vector<HedgeViolation> violations;

    bool passed() const { return violations.empty(); }
};

/// Rebalancing in K_t at every node for every opponent (seller: u - G - u' ∈ K,
/// buyer: u + G - u' ∈ K), plus a non-anticipation spot check: opponents that
/// agree up to time t must receive the same portfolio for step t+1.
HedgeReport verify_hedge(const Market& market, const GamePayoffs& payoffs, const HedgeRecipe& recipe,
                         const std::vector<MixedStoppingTime>& opponents);

}  // namespace gradhedge
