#include "hierclass/hierarchy.hpp"

#include <algorithm>

#include "doctest.h"

#include "hierclass/errors.hpp"
#include "hierclass/rng.hpp"
#include "test_support.hpp"

using namespace hierclass;

namespace {

NodeId node(std::vector<std::string> path) { return NodeId::of(std::move(path)); }

}  // namespace

TEST_CASE("build_hierarchy on the animal mock data") {
    const Hierarchy h = build_hierarchy(testsupport::mock_labels());

    CHECK(h.node_count() == 5);
    CHECK(h.level_count() == 3);

    const std::vector<NodeId> expected = {
        node({"Animal"}),
        node({"Animal", "Mammal"}),
        node({"Animal", "Mammal", "Cat"}),
        node({"Animal", "Reptile"}),
        node({"Animal", "Reptile", "Turtle"}),
    };
    CHECK(h.nodes() == expected);
    CHECK(h.level(0).size() == 1);
    CHECK(h.level(1).size() == 2);
    CHECK(h.level(2).size() == 2);

    CHECK(node({"Animal", "Mammal"}).canonical("://") == "Animal://Mammal");
}

TEST_CASE("build_hierarchy smallest input") {
    const Hierarchy h = build_hierarchy(LabelMatrix::from_rows({{"A"}}));
    CHECK(h.node_count() == 1);
    CHECK(h.level_count() == 1);
    CHECK(h.nodes().front() == node({"A"}));
}

TEST_CASE("build_hierarchy with a missing deep label") {
    const Hierarchy h =
        build_hierarchy(LabelMatrix::from_rows({{"A", "B", ""}, {"A", "B", "C"}}));
    CHECK(h.node_count() == 3);
    const std::vector<NodeId> expected = {node({"A"}), node({"A", "B"}),
                                          node({"A", "B", "C"})};
    CHECK(h.nodes() == expected);
}

TEST_CASE("build_hierarchy rejects malformed rows and reserved separators") {
    CHECK_THROWS_AS(LabelMatrix::from_padded({{"A", "", "C"}}, 3), MalformedLabelMatrix);

    LabelMatrix bad = LabelMatrix::from_rows({{"A://B", "C"}});
    CHECK_THROWS_AS(build_hierarchy(bad), ReservedSeparator);
    // Fine under a different separator.
    CHECK(build_hierarchy(bad, "|").node_count() == 2);
}

TEST_CASE("ancestors and children on the mock hierarchy") {
    const Hierarchy h = build_hierarchy(testsupport::mock_labels());

    CHECK(h.ancestors(node({"Animal", "Mammal", "Cat"})) ==
          std::vector<NodeId>{node({"Animal"}), node({"Animal", "Mammal"})});
    CHECK(h.ancestors(node({"Animal"})).empty());
    CHECK(h.ancestors(node({"Animal", "Reptile", "Turtle"})) ==
          std::vector<NodeId>{node({"Animal"}), node({"Animal", "Reptile"})});

    CHECK(h.children(NodeId::root()) == std::vector<NodeId>{node({"Animal"})});
    CHECK(h.children(node({"Animal", "Mammal", "Cat"})).empty());
    CHECK(h.children(node({"Animal"})) ==
          std::vector<NodeId>{node({"Animal", "Mammal"}), node({"Animal", "Reptile"})});

    CHECK_THROWS_AS(h.ancestors(node({"Plant"})), UnknownNode);
    CHECK_THROWS_AS(h.children(node({"Plant"})), UnknownNode);
}

TEST_CASE("same label under different parents stays distinct") {
    const Hierarchy h =
        build_hierarchy(LabelMatrix::from_rows({{"A", "X"}, {"B", "X"}}));
    CHECK(h.node_count() == 4);
    CHECK(h.contains(node({"A", "X"})));
    CHECK(h.contains(node({"B", "X"})));
    CHECK(h.children(node({"A"})) == std::vector<NodeId>{node({"A", "X"})});
}

TEST_CASE("validate passes for constructed hierarchies") {
    const Hierarchy h = build_hierarchy(testsupport::mock_labels());
    const ValidationReport report = h.validate();
    CHECK(report.acyclic);
    CHECK(report.all_reachable);
    CHECK(report.levels_consistent);
    CHECK(report.ok());
}

TEST_CASE("validate on the empty hierarchy") {
    const Hierarchy h = build_hierarchy(LabelMatrix{});
    CHECK(h.node_count() == 0);
    CHECK(h.level_count() == 0);
    CHECK(h.validate().ok());
}

TEST_CASE("validate flags a manually added cycle") {
    Hierarchy h = build_hierarchy(testsupport::mock_labels());
    h.add_edge_unchecked(node({"Animal", "Mammal", "Cat"}), node({"Animal"}));
    const ValidationReport report = h.validate();
    CHECK_FALSE(report.acyclic);
    CHECK_FALSE(report.ok());
}

TEST_CASE("validate flags unreachable and misfiled nodes") {
    Hierarchy h = build_hierarchy(testsupport::mock_labels());
    h.add_node_unchecked(node({"Plant"}), 2);  // wrong level, no edge
    const ValidationReport report = h.validate();
    CHECK(report.acyclic);
    CHECK_FALSE(report.all_reachable);
    CHECK_FALSE(report.levels_consistent);
}

TEST_CASE("every non-empty prefix is a node and nothing else exists") {
    Rng rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        const LabelMatrix Y = testsupport::random_label_matrix(
            rng, 1 + rng.uniform_index(8), 1 + rng.uniform_index(4), 4);
        const Hierarchy h = build_hierarchy(Y);

        std::set<NodeId> expected;
        for (std::size_t i = 0; i < Y.n_samples(); ++i) {
            NodeId prefix;
            for (std::size_t k = 0; k < Y.path_length(i); ++k) {
                prefix.path.push_back(Y.row(i)[k]);
                expected.insert(prefix);
            }
        }
        CHECK(h.nodes() == std::vector<NodeId>(expected.begin(), expected.end()));

        for (const NodeId& n : h.nodes()) {
            const auto anc = h.ancestors(n);
            CHECK(anc.size() == n.depth() - 1);
            for (std::size_t k = 0; k < anc.size(); ++k) {
                CHECK(anc[k] == n.prefix(k + 1));
            }
            // Round trip: this node is an ancestor of each of its children.
            for (const NodeId& c : h.children(n)) {
                const auto up = h.ancestors(c);
                CHECK(std::find(up.begin(), up.end(), n) != up.end());
            }
        }
        CHECK(h.validate().ok());
    }
}

TEST_CASE("build_hierarchy is invariant under row permutation") {
    Rng rng(202);
    for (int trial = 0; trial < 10; ++trial) {
        auto rows = std::vector<std::vector<std::string>>{
            {"A", "B", "C"}, {"A", "B", ""}, {"D", "", ""}, {"A", "E", "C"},
            {"D", "B", ""},
        };
        const Hierarchy reference = build_hierarchy(LabelMatrix::from_rows(rows));
        for (std::size_t i = rows.size(); i > 1; --i) {
            std::swap(rows[i - 1], rows[rng.uniform_index(i)]);
        }
        const Hierarchy shuffled = build_hierarchy(LabelMatrix::from_rows(rows));
        CHECK(reference == shuffled);
    }
}

TEST_CASE("canonical round trip") {
    const NodeId n = node({"Animal", "Mammal", "Cat"});
    CHECK(NodeId::from_canonical(n.canonical("://"), "://") == n);
    CHECK(NodeId::from_canonical("", "://").is_root());
}
