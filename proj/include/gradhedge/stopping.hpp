#pragma once

#include "gradhedge/market.hpp"
#include "gradhedge/tree.hpp"

#include <functional>
#include <vector>

namespace gradhedge {

/// Fraction stopped at each node; sums to 1 along every root-to-leaf path.
using MixedStoppingTime = ScalarProcess;

/// phi*_t and phi*_{t+1} at each node. Both are determined by the ancestors
/// of the node together with the node's own mass.
struct StarProcess {
    ScalarProcess current;  // phi*_t = 1 - sum_{s<t} phi_s
    ScalarProcess next;     // phi*_{t+1} = phi*_t - phi_t
};

/// Seller's (cancellation) and buyer's (exercise) payoff processes.
struct GamePayoffs {
    AdaptedProcess Y;
    AdaptedProcess X;
};

class StoppingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_valid_mst(const EventTree& tree, const MixedStoppingTime& phi);
/// Throws StoppingError naming the first offending node.
void validate_mst(const EventTree& tree, const MixedStoppingTime& phi);

StarProcess star(const EventTree& tree, const MixedStoppingTime& phi);

/// Indicator of the ordinary stopping time whose stopping nodes are flagged;
/// every path must contain exactly one flagged node.
MixedStoppingTime embed_stopping_time(const EventTree& tree, const std::vector<bool>& stop_here);
/// Stops at the first node satisfying `hit`, or at the leaf if none does.
MixedStoppingTime first_hitting_time(const EventTree& tree, const std::function<bool(std::size_t)>& hit);
/// chi^t for the deterministic time t.
MixedStoppingTime deterministic_time(const EventTree& tree, int t);

/// (psi ∧ phi)_t = psi_t phi*_t + psi*_{t+1} phi_t.
MixedStoppingTime mst_min(const EventTree& tree, const MixedStoppingTime& psi, const MixedStoppingTime& phi);

/// X_phi on every leaf path, in the order of tree.leaves().
std::vector<Vec> evaluate_at(const EventTree& tree, const AdaptedProcess& x, const MixedStoppingTime& phi);
std::vector<Rational> evaluate_at(const EventTree& tree, const ScalarProcess& x, const MixedStoppingTime& phi);

/// Throws StoppingError unless X_t - Y_t ∈ K_t at every node.
void validate_payoffs(const Market& market, const GamePayoffs& payoffs);

/// G_t = psi_t phi*_t Y_t + psi*_{t+1} phi_t X_t at `node`.
Vec payoff_G(const GamePayoffs& payoffs, const MixedStoppingTime& phi, const StarProcess& phi_star,
             const MixedStoppingTime& psi, const StarProcess& psi_star, std::size_t node);
Vec payoff_G(const EventTree& tree, const GamePayoffs& payoffs, const MixedStoppingTime& phi,
             const MixedStoppingTime& psi, std::size_t node);

/// Q_{phi,t} = phi*_t Y_t + sum_{s<t} phi_s X_s.
AdaptedProcess payoff_Q_phi(const EventTree& tree, const GamePayoffs& payoffs, const MixedStoppingTime& phi);
/// Q_{t,psi} = sum_{s<=t} psi_s Y_s + psi*_{t+1} X_t.
AdaptedProcess payoff_Q_psi(const EventTree& tree, const GamePayoffs& payoffs, const MixedStoppingTime& psi);
/// Q_{s,t} on the path to `leaf` for ordinary times s (cancel) and t (exercise).
Vec payoff_Q_times(const EventTree& tree, const GamePayoffs& payoffs, std::size_t leaf, int s, int t);
/// Q_{phi,psi} = sum_s sum_t phi_s psi_t Q_{s,t} on the path to `leaf`.
Vec payoff_Q_total(const EventTree& tree, const GamePayoffs& payoffs, const MixedStoppingTime& phi,
                   const MixedStoppingTime& psi, std::size_t leaf);

/// Stopping times with every node mass a multiple of 1/N.
std::vector<MixedStoppingTime> mst_lattice_grid(const EventTree& tree, int n);
/// Stopping times that stop a fraction k/N of the remaining mass at each
/// non-leaf node (the rest stops at the leaves). Deduplicated and sorted.
std::vector<MixedStoppingTime> mst_conditional_grid(const EventTree& tree, int n);
/// Union of both grids, deduplicated and sorted lexicographically.
std::vector<MixedStoppingTime> mst_grid(const EventTree& tree, int n);
/// Union of mst_grid over several resolutions, deduplicated and sorted.
std::vector<MixedStoppingTime> mst_grid(const EventTree& tree, const std::vector<int>& resolutions);

}  // namespace gradhedge
