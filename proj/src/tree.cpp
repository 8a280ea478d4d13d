#include "gradhedge/tree.hpp"

#include <algorithm>

namespace gradhedge {

EventTree EventTree::build(std::size_t d, int horizon, const std::vector<NodeSpec>& specs) {
    if (horizon < 1) throw TreeError("horizon must be at least 1");
    if (d < 2) throw TreeError("dimension must be at least 2");
    return assemble(d, horizon, specs);
}

EventTree EventTree::assemble(std::size_t d, int horizon, const std::vector<NodeSpec>& specs) {
    EventTree tree;
    tree.dim_ = d;
    tree.horizon_ = horizon;

    std::vector<NodeSpec> sorted = specs;
    std::sort(sorted.begin(), sorted.end(), [](const NodeSpec& a, const NodeSpec& b) {
        return a.time != b.time ? a.time < b.time : a.id < b.id;
    });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& s = sorted[i];
        if (s.id.empty()) throw TreeError("node with empty id");
        if (!tree.by_id_.emplace(s.id, i).second) throw TreeError("duplicate node id '" + s.id + "'");
        if (s.time < 0 || s.time > horizon)
            throw TreeError("node '" + s.id + "' has time outside [0, T]");
    }
    if (sorted.empty() || sorted[0].time != 0) throw TreeError("no root node at time 0");
    if (sorted.size() > 1 && sorted[1].time == 0) throw TreeError("more than one node at time 0");

    tree.nodes_.resize(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& s = sorted[i];
        Node& n = tree.nodes_[i];
        n.id = s.id;
        n.time = s.time;
        if (i == 0) {
            if (!s.parent.empty()) throw TreeError("root node '" + s.id + "' has a parent");
            continue;
        }
        auto it = tree.by_id_.find(s.parent);
        if (s.parent.empty() || it == tree.by_id_.end())
            throw TreeError("node '" + s.id + "' has dangling parent '" + s.parent + "'");
        if (sorted[it->second].time != s.time - 1)
            throw TreeError("node '" + s.id + "' is not one step after its parent");
        if (s.branch_prob <= 0) throw TreeError("node '" + s.id + "' has nonpositive probability");
        n.parent = it->second;
        n.branch_prob = s.branch_prob;
        tree.nodes_[it->second].children.push_back(i);  // i increases, so children stay id-sorted
    }

    tree.slice_begin_.assign(static_cast<std::size_t>(horizon) + 2, sorted.size());
    for (std::size_t i = sorted.size(); i-- > 0;)
        tree.slice_begin_[static_cast<std::size_t>(tree.nodes_[i].time)] = i;
    for (int t = horizon; t-- > 0;) {
        auto& b = tree.slice_begin_;
        b[static_cast<std::size_t>(t)] = std::min(b[static_cast<std::size_t>(t)], b[static_cast<std::size_t>(t) + 1]);
    }

    for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
        Node& n = tree.nodes_[i];
        if (n.parent) n.prob = tree.nodes_[*n.parent].prob * n.branch_prob;
        if (n.time < horizon && n.children.empty())
            throw TreeError("node '" + n.id + "' has no children before the horizon");
        if (!n.children.empty()) {
            Rational total = 0;
            for (std::size_t c : n.children) total += tree.nodes_[c].branch_prob;
            if (total != 1) throw TreeError("branch probabilities below '" + n.id + "' sum to " + to_string(total));
        }
    }
    return tree;
}

std::size_t EventTree::index(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw TreeError("unknown node '" + id + "'");
    return it->second;
}

std::vector<std::size_t> EventTree::atoms(int t) const {
    if (t < 0 || t > horizon_) throw TreeError("time " + std::to_string(t) + " outside [0, T]");
    std::vector<std::size_t> out;
    for (std::size_t i = slice_begin_[static_cast<std::size_t>(t)]; i < slice_begin_[static_cast<std::size_t>(t) + 1]; ++i)
        out.push_back(i);
    return out;
}

std::vector<std::size_t> EventTree::path_to(std::size_t i) const {
    std::vector<std::size_t> path;
    for (std::optional<std::size_t> cur = i; cur; cur = nodes_.at(*cur).parent) path.push_back(*cur);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<std::size_t> EventTree::leaves_below(std::size_t i) const {
    std::vector<std::size_t> out, stack{i};
    while (!stack.empty()) {
        const std::size_t n = stack.back();
        stack.pop_back();
        if (nodes_[n].children.empty()) out.push_back(n);
        for (auto it = nodes_[n].children.rbegin(); it != nodes_[n].children.rend(); ++it) stack.push_back(*it);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool EventTree::is_ancestor(std::size_t a, std::size_t b) const {
    const int ta = nodes_.at(a).time;
    std::size_t cur = b;
    while (nodes_.at(cur).time > ta) cur = *nodes_[cur].parent;
    return cur == a;
}

EventTree EventTree::restrict_to_subtree(std::size_t i, std::vector<std::size_t>* index_map) const {
    const Node& top = nodes_.at(i);
    std::vector<NodeSpec> specs;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
        const std::size_t n = stack.back();
        stack.pop_back();
        const Node& node = nodes_[n];
        NodeSpec s;
        s.id = node.id;
        s.time = node.time - top.time;
        if (n != i) {
            s.parent = nodes_[*node.parent].id;
            s.branch_prob = node.branch_prob;
        }
        specs.push_back(std::move(s));
        for (std::size_t c : node.children) stack.push_back(c);
    }
    EventTree sub = assemble(dim_, horizon_ - top.time, specs);
    if (index_map) {
        index_map->clear();
        for (const auto& n : sub.nodes_) index_map->push_back(index(n.id));
    }
    return sub;
}

AdaptedProcess constant_process(const EventTree& tree, const Vec& v) { return AdaptedProcess(tree.size(), v); }

PredictableProcess zero_predictable(const EventTree& tree) {
    return {zeros(tree.dim()), std::vector<Vec>(tree.size(), zeros(tree.dim()))};
}

}  // namespace gradhedge
