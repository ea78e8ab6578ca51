#include "sepcert/subgraph.hpp"

#include "sepcert/decompose.hpp"
#include "sepcert/io.hpp"
#include "sepcert/nice_tree.hpp"
#include "sepcert/oracles.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sepcert;

namespace {

void check_nice(const Graph& g, const TreeDecomposition& td, const NiceDecomposition& nd) {
    CHECK(nd.width == td.computed_width());
    CHECK(nd.nodes[nd.root].bag.empty());
    // Nice decompositions embed back into plain ones: parent = tree order.
    TreeDecomposition flat;
    flat.parent.assign(nd.node_count(), -1);
    for (int z = 0; z < nd.node_count(); ++z)
        for (int child : nd.nodes[z].child)
            if (child >= 0) flat.parent[child] = z;
    for (int z = 0; z < nd.node_count(); ++z) flat.bags.push_back(nd.nodes[z].bag);
    flat.width = nd.width;
    VertexSet covered;
    for (const auto& b : flat.bags) covered = set_union(covered, b);
    VertexSet deleted;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!set_contains(covered, v)) deleted.push_back(v);
    CHECK(validate_tree_decomposition(g, flat, deleted).empty());
    // Structural nice-ness.
    for (int z = 0; z < nd.node_count(); ++z) {
        const auto& node = nd.nodes[z];
        switch (node.kind) {
            case NiceDecomposition::Kind::Leaf:
                CHECK(node.bag.empty());
                break;
            case NiceDecomposition::Kind::Introduce:
                CHECK(set_difference(node.bag, nd.nodes[node.child[0]].bag) ==
                      VertexSet{node.vertex});
                break;
            case NiceDecomposition::Kind::Forget:
                CHECK(set_difference(nd.nodes[node.child[0]].bag, node.bag) ==
                      VertexSet{node.vertex});
                break;
            case NiceDecomposition::Kind::Join:
                CHECK(nd.nodes[node.child[0]].bag == node.bag);
                CHECK(nd.nodes[node.child[1]].bag == node.bag);
                break;
        }
    }
}

FragileFamily family_for(const Graph& g, long long ell) {
    FragileFamily family;
    auto res = thin_distribution(g, ell, g.vertex_count() + 1);
    family.by_ell.emplace(ell, std::move(std::get<ThinDistribution>(res)));
    return family;
}

}  // namespace

TEST_CASE("make_nice pinned cases") {
    SECTION("single bag") {
        Graph k1(1, {});
        TreeDecomposition td;
        td.parent = {-1};
        td.bags = {{0}};
        td.width = 0;
        auto nd = make_nice(td);
        check_nice(k1, td, nd);
    }
    SECTION("P3 decomposition") {
        Graph p3 = generate_path(3);
        TreeDecomposition td;
        td.parent = {-1, 0};
        td.bags = {{0, 1}, {1, 2}};
        td.width = 1;
        auto nd = make_nice(td);
        check_nice(p3, td, nd);
        CHECK(nd.node_count() <= 2 * (td.width + 1) * (3 + td.node_count()));
    }
}

TEST_CASE("make_nice on decomposer outputs") {
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng(trial);
        int n = 3 + static_cast<int>(rng.below(15));
        Graph g = test::random_graph(n, trial + 40, 1, 4);
        auto res = low_tw_deletion(g, CostAssignment::uniform(n), 2, n + 1);
        REQUIRE(std::holds_alternative<DeletionDecomposition>(res));
        const auto& dd = std::get<DeletionDecomposition>(res);
        auto sub = induced_subgraph(g, set_difference([&] {
            VertexSet all(n);
            for (Vertex v = 0; v < n; ++v) all[v] = v;
            return all;
        }(), dd.x));
        TreeDecomposition local;
        local.parent = dd.td.parent;
        for (const auto& bag : dd.td.bags) {
            VertexSet b;
            for (Vertex v : bag) b.push_back(sub.to_local[v]);
            local.bags.push_back(make_set(std::move(b)));
        }
        local.width = local.computed_width();
        auto nd = make_nice(local);
        CAPTURE(trial, n);
        check_nice(sub.graph, local, nd);
    }
}

TEST_CASE("td_subgraph_iso pinned cases") {
    Graph c4 = generate_cycle(4);
    TreeDecomposition td;
    td.parent = {-1, 0};
    td.bags = {{0, 1, 2}, {0, 2, 3}};
    td.width = 2;
    auto nd = make_nice(td);

    Graph k1(1, {});
    auto r1 = td_subgraph_iso(k1, c4, nd);
    CHECK(r1.found);
    CHECK(verify_embedding(k1, c4, r1.embedding));

    Graph k3 = generate_clique(3);
    CHECK_FALSE(td_subgraph_iso(k3, c4, nd).found);

    Graph p3 = generate_path(3);
    auto r3 = td_subgraph_iso(p3, c4, nd);
    CHECK(r3.found);
    CHECK(verify_embedding(p3, c4, r3.embedding));
}

TEST_CASE("td_subgraph_iso agrees with the backtracking oracle") {
    int agreements = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Rng rng(trial + 1234);
        int n = 6 + static_cast<int>(rng.below(20));
        Graph g = test::random_graph(n, trial * 7 + 3, 1, 4);
        int m = 2 + static_cast<int>(rng.below(3));
        Graph h = test::random_graph(m, trial * 11 + 5, 1, 2);

        auto res = low_tw_deletion(g, CostAssignment::uniform(n), 2, n + 1);
        const auto& dd = std::get<DeletionDecomposition>(res);
        VertexSet all(n);
        for (Vertex v = 0; v < n; ++v) all[v] = v;
        auto sub = induced_subgraph(g, set_difference(all, dd.x));
        TreeDecomposition local;
        local.parent = dd.td.parent;
        for (const auto& bag : dd.td.bags) {
            VertexSet b;
            for (Vertex v : bag) b.push_back(sub.to_local[v]);
            local.bags.push_back(make_set(std::move(b)));
        }
        local.width = local.computed_width();
        auto nd = make_nice(local);

        auto dp = td_subgraph_iso(h, sub.graph, nd);
        bool oracle = subgraph_iso_backtracking(h, sub.graph);
        CAPTURE(trial, n, m);
        REQUIRE(dp.found == oracle);
        if (dp.found) CHECK(verify_embedding(h, sub.graph, dp.embedding));
        ++agreements;
    }
    CHECK(agreements == 200);
}

TEST_CASE("td_subgraph_iso is decomposition independent") {
    Graph g = test::random_connected_graph(10, 77, 1, 3);
    // Two different decompositions: from the decomposer, and a single bag.
    auto res = low_tw_deletion(g, CostAssignment::uniform(10), 10, 11);
    const auto& dd = std::get<DeletionDecomposition>(res);
    REQUIRE(dd.x.empty());
    auto nd1 = make_nice(dd.td);
    TreeDecomposition single;
    single.parent = {-1};
    VertexSet all(10);
    for (Vertex v = 0; v < 10; ++v) all[v] = v;
    single.bags = {all};
    single.width = 9;
    auto nd2 = make_nice(single);
    for (int trial = 0; trial < 20; ++trial) {
        Graph h = test::random_graph(3, trial + 9000, 1, 2);
        CHECK(td_subgraph_iso(h, g, nd1).found == td_subgraph_iso(h, g, nd2).found);
    }
}

TEST_CASE("contains_subgraph pinned cases") {
    SECTION("K2 in P3") {
        Graph p3 = generate_path(3);
        auto family = family_for(p3, 3);
        auto res = contains_subgraph(generate_clique(2), p3, family);
        REQUIRE(res.found);
        CHECK(verify_embedding(generate_clique(2), p3, res.embedding));
    }
    SECTION("K3 in a tree is absent") {
        Rng rng(5);
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex v = 1; v < 12; ++v)
            edges.emplace_back(static_cast<Vertex>(rng.below(v)), v);
        Graph tree(12, edges);
        auto family = family_for(tree, 4);
        CHECK_FALSE(contains_subgraph(generate_clique(3), tree, family).found);
    }
    SECTION("equal sizes fall back to the permutation test") {
        Graph c4 = generate_cycle(4);
        Graph p4 = generate_path(4);
        FragileFamily empty_family;
        CHECK(contains_subgraph(p4, c4, empty_family).found);
        CHECK_FALSE(contains_subgraph(c4, p4, empty_family).found);
    }
    SECTION("missing family entry is an error") {
        Graph p5 = generate_path(5);
        FragileFamily empty_family;
        CHECK_THROWS_AS(contains_subgraph(generate_clique(2), p5, empty_family), Error);
    }
    SECTION("oversized pattern is refused by the state guard") {
        Graph g = test::random_connected_graph(20, 3, 1, 2);
        auto family = family_for(g, 9);
        IsoOptions opts;
        opts.state_budget = 10;
        CHECK_THROWS_AS(contains_subgraph(generate_path(8), g, family, opts), Error);
    }
}

TEST_CASE("contains_subgraph matches the oracle and carries witnesses") {
    for (int trial = 0; trial < 60; ++trial) {
        Rng rng(trial + 31);
        int n = 6 + static_cast<int>(rng.below(15));
        Graph g = test::random_graph(n, trial * 13 + 1, 1, 3);
        int m = 2 + static_cast<int>(rng.below(3));
        Graph h = test::random_graph(m, trial * 17 + 2, 2, 3);
        auto family = family_for(g, m + 1);
        auto res = contains_subgraph(h, g, family);
        CAPTURE(trial, n, m);
        REQUIRE(res.found == subgraph_iso_backtracking(h, g));
        if (res.found) CHECK(verify_embedding(h, g, res.embedding));
    }
}
