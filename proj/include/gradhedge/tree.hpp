#pragma once

#include "gradhedge/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gradhedge {

class TreeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input description of one node. The root has an empty parent; its branch
/// probability is ignored.
struct NodeSpec {
    std::string id;
    int time = 0;
    std::string parent;
    Rational branch_prob = 1;
};

struct Node {
    std::string id;
    int time = 0;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;  // sorted by id
    Rational branch_prob = 1;           // conditional on the parent
    Rational prob = 1;                  // unconditional
};

/// Finite filtered scenario tree. Nodes are indexed 0..size()-1 in (time, id)
/// order, so the root is 0 and every time slice is a contiguous range.
class EventTree {
public:
    /// Validates and builds a tree with horizon T >= 1 and dimension d >= 2.
    static EventTree build(std::size_t d, int horizon, const std::vector<NodeSpec>& specs);

    std::size_t dim() const { return dim_; }
    int horizon() const { return horizon_; }
    std::size_t size() const { return nodes_.size(); }
    const Node& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<Node>& nodes() const { return nodes_; }
    static constexpr std::size_t root() { return 0; }

    /// Index of the node with this id; throws TreeError if absent.
    std::size_t index(const std::string& id) const;
    bool has(const std::string& id) const { return by_id_.count(id) != 0; }

    /// Nodes at time t in lexicographic id order.
    std::vector<std::size_t> atoms(int t) const;
    std::vector<std::size_t> leaves() const { return atoms(horizon_); }
    bool is_leaf(std::size_t i) const { return nodes_.at(i).children.empty(); }

    /// Root-to-node path, inclusive.
    std::vector<std::size_t> path_to(std::size_t i) const;
    /// Leaves below node i (the node itself if it is a leaf).
    std::vector<std::size_t> leaves_below(std::size_t i) const;
    /// Is `a` an ancestor of `b` or equal to it?
    bool is_ancestor(std::size_t a, std::size_t b) const;

    /// Subtree rooted at node i with times shifted to start at 0 and
    /// probabilities renormalized. A leaf yields a horizon-0 tree. If
    /// `index_map` is given it receives, for each subtree node, its index here.
    EventTree restrict_to_subtree(std::size_t i, std::vector<std::size_t>* index_map = nullptr) const;

private:
    std::size_t dim_ = 0;
    int horizon_ = 0;
    std::vector<Node> nodes_;
    std::vector<std::size_t> slice_begin_;  // slice_begin_[t] .. slice_begin_[t+1]
    std::unordered_map<std::string, std::size_t> by_id_;

    static EventTree assemble(std::size_t d, int horizon, const std::vector<NodeSpec>& specs);
};

/// One vector per node, indexed like the tree.
using AdaptedProcess = std::vector<Vec>;
/// One scalar per node.
using ScalarProcess = std::vector<Rational>;

/// Predictable portfolio process y_0, ..., y_{T+1}. `next[i]` is the portfolio
/// held from node i into each of its children; leaves hold zero (y_{T+1} = 0).
struct PredictableProcess {
    Vec initial;
    std::vector<Vec> next;

    bool operator==(const PredictableProcess&) const = default;
};

AdaptedProcess constant_process(const EventTree& tree, const Vec& v);
PredictableProcess zero_predictable(const EventTree& tree);

}  // namespace gradhedge
