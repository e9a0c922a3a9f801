#include "hierclass/hierarchy.hpp"

#include <algorithm>
#include <set>

#include "hierclass/errors.hpp"

namespace hierclass {

NodeId NodeId::parent() const {
    NodeId p;
    if (path.size() > 1) {
        p.path.assign(path.begin(), path.end() - 1);
    }
    return p;
}

NodeId NodeId::prefix(std::size_t len) const {
    NodeId p;
    p.path.assign(path.begin(), path.begin() + len);
    return p;
}

std::string NodeId::canonical(std::string_view separator) const {
    std::string out;
    for (std::size_t k = 0; k < path.size(); ++k) {
        if (k > 0) out += separator;
        out += path[k];
    }
    return out;
}

NodeId NodeId::from_canonical(std::string_view canonical, std::string_view separator) {
    NodeId n;
    if (canonical.empty()) return n;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = canonical.find(separator, start);
        if (pos == std::string_view::npos) {
            n.path.emplace_back(canonical.substr(start));
            break;
        }
        n.path.emplace_back(canonical.substr(start, pos - start));
        start = pos + separator.size();
    }
    return n;
}

void Hierarchy::index_nodes(std::vector<NodeId> sorted_unique_nodes) {
    nodes_ = std::move(sorted_unique_nodes);
    children_.clear();
    levels_.clear();
    std::size_t depth = 0;
    for (const NodeId& n : nodes_) depth = std::max(depth, n.depth());
    levels_.resize(depth);
    for (const NodeId& n : nodes_) {
        levels_[n.depth() - 1].push_back(n);
        children_[n.parent()].push_back(n);
    }
    // nodes_ is sorted by path, so every child list and level slice comes out
    // sorted as well.
}

bool Hierarchy::contains(const NodeId& n) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), n);
}

std::vector<NodeId> Hierarchy::ancestors(const NodeId& n) const {
    if (!contains(n)) {
        throw UnknownNode("unknown node '" + n.canonical(separator_) + "'");
    }
    std::vector<NodeId> out;
    out.reserve(n.depth() - 1);
    for (std::size_t len = 1; len < n.depth(); ++len) {
        out.push_back(n.prefix(len));
    }
    return out;
}

std::vector<NodeId> Hierarchy::children(const NodeId& n) const {
    if (!n.is_root() && !contains(n)) {
        throw UnknownNode("unknown node '" + n.canonical(separator_) + "'");
    }
    const auto it = children_.find(n);
    if (it == children_.end()) return {};
    return it->second;
}

std::vector<NodeId> Hierarchy::parent_nodes() const {
    std::vector<NodeId> out;
    for (const NodeId& n : nodes_) {
        const auto it = children_.find(n);
        if (it != children_.end() && !it->second.empty()) out.push_back(n);
    }
    return out;
}

ValidationReport Hierarchy::validate() const {
    ValidationReport report;

    // Acyclicity via iterative DFS with the usual three colours.
    enum class Colour { white, grey, black };
    std::map<NodeId, Colour> colour;
    std::set<NodeId> reached;
    bool cycle = false;

    struct Frame {
        NodeId node;
        std::size_t next_child = 0;
    };
    std::vector<Frame> stack;
    stack.push_back({NodeId::root()});
    colour[NodeId::root()] = Colour::grey;
    while (!stack.empty()) {
        Frame& top = stack.back();
        const auto it = children_.find(top.node);
        const std::vector<NodeId>* kids = it == children_.end() ? nullptr : &it->second;
        if (kids == nullptr || top.next_child >= kids->size()) {
            colour[top.node] = Colour::black;
            stack.pop_back();
            continue;
        }
        const NodeId child = (*kids)[top.next_child++];
        reached.insert(child);
        const auto c = colour.find(child);
        if (c == colour.end() || c->second == Colour::white) {
            colour[child] = Colour::grey;
            stack.push_back({child});
        } else if (c->second == Colour::grey) {
            cycle = true;
        }
    }
    report.acyclic = !cycle;
    report.all_reachable =
        std::all_of(nodes_.begin(), nodes_.end(),
                    [&](const NodeId& n) { return reached.count(n) > 0; });

    // levels_[k] must hold exactly the nodes of path length k + 1.
    bool consistent = true;
    std::size_t counted = 0;
    for (std::size_t k = 0; k < levels_.size(); ++k) {
        for (const NodeId& n : levels_[k]) {
            ++counted;
            if (n.depth() != k + 1 || !contains(n)) consistent = false;
        }
    }
    if (counted != nodes_.size()) consistent = false;
    report.levels_consistent = consistent;
    return report;
}

void Hierarchy::add_edge_unchecked(const NodeId& parent, const NodeId& child) {
    children_[parent].push_back(child);
}

void Hierarchy::add_node_unchecked(const NodeId& node, std::size_t level_index) {
    nodes_.insert(std::upper_bound(nodes_.begin(), nodes_.end(), node), node);
    if (levels_.size() <= level_index) levels_.resize(level_index + 1);
    levels_[level_index].push_back(node);
}

Hierarchy build_hierarchy(const LabelMatrix& labels, std::string separator) {
    if (separator.empty()) {
        throw ConfigError("path separator must be non-empty");
    }
    std::set<NodeId> nodes;
    for (std::size_t i = 0; i < labels.n_samples(); ++i) {
        const auto& row = labels.row(i);
        const std::size_t len = labels.path_length(i);
        NodeId node;
        for (std::size_t k = 0; k < len; ++k) {
            if (row[k].find(separator) != std::string::npos) {
                throw ReservedSeparator("label '" + row[k] +
                                        "' contains the reserved separator '" +
                                        separator + "'");
            }
            node.path.push_back(row[k]);
            nodes.insert(node);
        }
    }
    Hierarchy h;
    h.separator_ = std::move(separator);
    h.index_nodes({nodes.begin(), nodes.end()});
    return h;
}

Hierarchy hierarchy_from_nodes(std::vector<NodeId> nodes, std::string separator) {
    if (separator.empty()) {
        throw ConfigError("path separator must be non-empty");
    }
    std::set<NodeId> unique(nodes.begin(), nodes.end());
    for (const NodeId& n : unique) {
        for (const std::string& seg : n.path) {
            if (seg.empty() || seg.find(separator) != std::string::npos) {
                throw CorruptModel("invalid node name '" + n.canonical(separator) + "'");
            }
        }
        if (n.depth() > 1 && unique.count(n.parent()) == 0) {
            throw CorruptModel("node '" + n.canonical(separator) +
                               "' lacks its parent in the hierarchy");
        }
    }
    Hierarchy h;
    h.separator_ = std::move(separator);
    h.index_nodes({unique.begin(), unique.end()});
    return h;
}

}  // namespace hierclass
