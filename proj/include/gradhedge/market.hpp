#pragma once

#include "gradhedge/polyhedron.hpp"
#include "gradhedge/tree.hpp"

#include <stdexcept>
#include <vector>

namespace gradhedge {

class MarketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// pi[j][k]: units of asset j paid for one unit of asset k.
using RateMatrix = std::vector<Vec>;

/// Throws MarketError unless pi is d×d, positive, with unit diagonal.
void validate_rates(const RateMatrix& pi, std::size_t d);

/// Cone generated by e^j and pi^{jk} e^j - e^k.
Polyhedron solvency_cone(const RateMatrix& pi);

struct ConeField {
    std::vector<Polyhedron> K;
    std::vector<Polyhedron> Q;
};

/// Immediate and deferred solvency cones: Q_T = K_T and
/// Q_t = (intersection of the children's Q) + K_t.
ConeField deferred_cones(const EventTree& tree, const std::vector<RateMatrix>& rates);

/// Tree plus exchange rates, with the cone field and its polars precomputed.
class Market {
public:
    Market(EventTree tree, std::vector<RateMatrix> rates);

    const EventTree& tree() const { return tree_; }
    std::size_t dim() const { return tree_.dim(); }
    const RateMatrix& rates(std::size_t node) const { return rates_.at(node); }
    const std::vector<RateMatrix>& rates() const { return rates_; }
    const Polyhedron& K(std::size_t node) const { return cones_.K.at(node); }
    const Polyhedron& Q(std::size_t node) const { return cones_.Q.at(node); }
    const Polyhedron& K_polar(std::size_t node) const { return k_polar_.at(node); }
    const Polyhedron& Q_polar(std::size_t node) const { return q_polar_.at(node); }

private:
    EventTree tree_;
    std::vector<RateMatrix> rates_;
    ConeField cones_;
    std::vector<Polyhedron> k_polar_;
    std::vector<Polyhedron> q_polar_;
};

struct ArbitrageReport {
    bool arbitrage_free = false;
    /// m(node) standing for Q(node)·S(node); filled when arbitrage-free.
    AdaptedProcess certificate;
    /// Self-financing strategy with zero endowment; filled on arbitrage.
    PredictableProcess witness;
    /// Nonnegative terminal portfolio x with y_T - x in K_T at each leaf
    /// (zero at non-leaf nodes); nonzero somewhere on arbitrage.
    AdaptedProcess witness_payout;
};

ArbitrageReport check_no_arbitrage(const Market& market);

/// Exact definition-level checks of a report's certificate or witness.
bool is_valid_certificate(const Market& market, const AdaptedProcess& m);
bool is_valid_arbitrage(const Market& market, const PredictableProcess& y, const AdaptedProcess& x);

/// Probability measure and price process recovered from a certificate:
/// q(node) = sum_j m^j(node) / sum_j m^j(root), S = m / q.
struct ConsistentPriceSystem {
    ScalarProcess q;
    AdaptedProcess S;
};
ConsistentPriceSystem price_system_from_certificate(const EventTree& tree, const AdaptedProcess& m);

/// Portfolios held from each node of the subtree at `start` into its children
/// (zero outside the subtree and at leaves), starting from x at `start`.
struct Liquidation {
    std::size_t start = 0;
    Vec x;
    std::vector<Vec> next;
};

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws PreconditionError when x is not in Q(start).
Liquidation liquidation_strategy(const Market& market, std::size_t start, const Vec& x);

/// Re-checks x - y_{t+1} in K_t and y_s - y_{s+1} in K_s over the subtree.
bool is_valid_liquidation(const Market& market, const Liquidation& l);

}  // namespace gradhedge
