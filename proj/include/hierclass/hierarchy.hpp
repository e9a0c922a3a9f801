#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hierclass/data.hpp"

namespace hierclass {

// A hierarchy node identified by its full path from the first level down.
// Two nodes are equal iff their full paths are equal, so the same label
// string under different parents yields distinct nodes. An empty path
// denotes the synthetic root in queries; the root is never listed as a node.
struct NodeId {
    std::vector<std::string> path;

    static NodeId root() { return NodeId{}; }
    static NodeId of(std::vector<std::string> segments) { return NodeId{std::move(segments)}; }

    bool is_root() const { return path.empty(); }
    std::size_t depth() const { return path.size(); }
    const std::string& label() const { return path.back(); }

    NodeId parent() const;
    NodeId prefix(std::size_t len) const;

    // Path segments joined by the separator, e.g. "Animal://Mammal".
    std::string canonical(std::string_view separator) const;
    // Inverse of canonical(); an empty string yields the root.
    static NodeId from_canonical(std::string_view canonical, std::string_view separator);

    auto operator<=>(const NodeId&) const = default;
};

struct ValidationReport {
    bool acyclic = false;
    bool all_reachable = false;
    bool levels_consistent = false;

    bool ok() const { return acyclic && all_reachable && levels_consistent; }
};

// Rooted DAG of label nodes built from a label matrix. Under path identity
// the structure is a tree below the synthetic root; it is immutable after
// construction (the *_unchecked mutators exist to corrupt instances in
// validation tests) and safe for concurrent reads.
class Hierarchy {
public:
    Hierarchy() = default;

    const std::string& separator() const { return separator_; }

    // Non-root nodes, sorted by path.
    const std::vector<NodeId>& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }

    std::size_t level_count() const { return levels_.size(); }
    // Nodes whose path length is level_index + 1, sorted by path.
    const std::vector<NodeId>& level(std::size_t level_index) const {
        return levels_[level_index];
    }

    bool contains(const NodeId& n) const;

    // Proper ancestors excluding the root, ordered shallow to deep.
    // Throws UnknownNode.
    std::vector<NodeId> ancestors(const NodeId& n) const;

    // Direct children in lexicographic order; empty for leaves. The root id
    // is accepted. Throws UnknownNode for anything else outside the hierarchy.
    std::vector<NodeId> children(const NodeId& n) const;

    bool is_leaf(const NodeId& n) const { return children(n).empty(); }

    // Non-leaf nodes (excluding the root), sorted by path.
    std::vector<NodeId> parent_nodes() const;

    ValidationReport validate() const;

    // Test hooks: corrupt the structure without any of the build checks.
    void add_edge_unchecked(const NodeId& parent, const NodeId& child);
    void add_node_unchecked(const NodeId& node, std::size_t level_index);

    bool operator==(const Hierarchy&) const = default;

private:
    friend Hierarchy build_hierarchy(const LabelMatrix&, std::string);
    friend Hierarchy hierarchy_from_nodes(std::vector<NodeId>, std::string);

    void index_nodes(std::vector<NodeId> sorted_unique_nodes);

    std::string separator_ = "://";
    std::vector<NodeId> nodes_;                      // sorted, non-root
    std::map<NodeId, std::vector<NodeId>> children_; // key may be root
    std::vector<std::vector<NodeId>> levels_;
};

// Minimal rooted hierarchy containing every non-empty path prefix of every
// row. Deterministic: node and edge sets depend only on the set of rows.
// Throws MalformedLabelMatrix and ReservedSeparator.
Hierarchy build_hierarchy(const LabelMatrix& labels, std::string separator = "://");

// Rebuilds a hierarchy from an explicit node set (model loading). The set
// must be prefix-closed; segments must be non-empty and separator-free.
// Throws CorruptModel on violations.
Hierarchy hierarchy_from_nodes(std::vector<NodeId> nodes, std::string separator);

}  // namespace hierclass
