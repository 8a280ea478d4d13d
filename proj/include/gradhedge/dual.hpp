#pragma once

#include "gradhedge/lp.hpp"
#include "gradhedge/pricing.hpp"

#include <optional>
#include <vector>

namespace gradhedge {

/// A consistent price system in unnormalized form, m(node) = Q(node) S(node),
/// with S^j ≡ 1 so that m^j is the measure Q itself. `stopping` is the time
/// inside the expectation (psi for the seller, phi for the buyer) and
/// `opponent` the time that fixed the payoff process.
struct DualPair {
    AdaptedProcess m;
    std::size_t currency = 0;
    MixedStoppingTime stopping;
    MixedStoppingTime opponent;
};

/// Exact re-check: m ∈ Q*, m^j a probability measure on the tree, and for
/// every non-leaf node the descendants' sum of stopping(mu) m(mu) lies in Q*.
bool is_dual_feasible(const Market& market, const AdaptedProcess& m, std::size_t j, const MixedStoppingTime& stopping);

/// sum over nodes of stopping(node) Z(node)·m(node).
Rational dual_objective(const AdaptedProcess& Z, const AdaptedProcess& m, const MixedStoppingTime& stopping);

/// Extremum over m of the dual objective for one stopping time; nullopt when
/// no feasible m exists.
struct DualSolve {
    Rational value;
    AdaptedProcess m;
};
std::optional<DualSolve> solve_dual_lp(const Market& market, const AdaptedProcess& Z, std::size_t j,
                                       const MixedStoppingTime& stopping, Sense sense);

/// Grid scan of the American dual: for every grid time, the exact LP extremum.
/// `best` is the first grid index attaining the overall extremum.
struct AmericanDual {
    std::vector<Rational> values;
    std::size_t best = 0;
    Rational value;
    DualPair pair;
};

/// Maximize for the seller's representation, minimize for the buyer's.
/// Throws PricingError when no grid point admits a feasible m.
AmericanDual american_dual_price(const Market& market, const AdaptedProcess& Z, std::size_t j,
                                 const std::vector<MixedStoppingTime>& grid, Sense sense = Sense::Maximize);

struct DualEntry {
    MixedStoppingTime outer;
    AmericanDual inner;
};

/// Seller: min over `outer` phi of the max over `inner` psi (Z = Q_{phi,·}).
/// Buyer: max over `outer` psi of the min over `inner` phi (Z = Q_{·,psi}).
struct DualReport {
    Side side = Side::Seller;
    std::size_t currency = 0;
    std::vector<DualEntry> entries;
    std::size_t best = 0;
    Rational value;
};

DualReport seller_dual_price(const Market& market, const GamePayoffs& payoffs, std::size_t j,
                             const std::vector<MixedStoppingTime>& outer, const std::vector<MixedStoppingTime>& inner);
DualReport buyer_dual_price(const Market& market, const GamePayoffs& payoffs, std::size_t j,
                            const std::vector<MixedStoppingTime>& outer, const std::vector<MixedStoppingTime>& inner);

/// Re-checks feasibility and that the pair's objective bounds `price` from the
/// correct side: at most the ask for a seller pair (built at the seller's
/// optimal phi), at least the bid for a buyer pair (at the buyer's optimal psi).
bool certify(const Market& market, const GamePayoffs& payoffs, const DualPair& pair, Side side, const Rational& price);

}  // namespace gradhedge
