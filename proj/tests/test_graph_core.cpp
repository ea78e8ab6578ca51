#include "sepcert/certificates.hpp"
#include "sepcert/graph.hpp"
#include "sepcert/io.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numeric>

using namespace sepcert;

namespace {

// Independent union-find, used as the components oracle.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

Graph k4() { return generate_clique(4); }

}  // namespace

TEST_CASE("balanced separator on pinned examples") {
    CHECK(is_balanced_separator(k4(), {0, 1}));
    Graph p3 = generate_path(3);
    CHECK_FALSE(is_balanced_separator(p3, {}));
    Graph k1(1, {});
    CHECK_FALSE(is_balanced_separator(k1, {}));
    CHECK(is_balanced_separator(k1, {0}));
    CHECK(is_balanced_separator(p3, {0, 1, 2}));
    CHECK_THROWS_AS(is_balanced_separator(p3, {7}), Error);
}

TEST_CASE("empty separator is balanced exactly when components are small") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = test::random_graph(12, seed);
        long long n = g.vertex_count();
        bool all_small = true;
        for (const auto& comp : connected_components(g))
            all_small = all_small && 3 * static_cast<long long>(comp.size()) <= 2 * n;
        CHECK(is_balanced_separator(g, {}) == all_small);
        CHECK(is_balanced_separator(g, [&] {
            VertexSet all(n);
            std::iota(all.begin(), all.end(), 0);
            return all;
        }()));
    }
}

TEST_CASE("connected components agree with union-find") {
    Graph two(2, {});
    CHECK(connected_components(two) == std::vector<VertexSet>{{0}, {1}});
    CHECK(connected_components(generate_path(3)) == std::vector<VertexSet>{{0, 1, 2}});

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Graph g = test::random_graph(20, seed + 1000, 1, 8);
        UnionFind uf(g.vertex_count());
        for (auto [u, v] : g.edges()) uf.unite(u, v);
        std::map<int, VertexSet> groups;
        for (Vertex v = 0; v < g.vertex_count(); ++v) groups[uf.find(v)].push_back(v);
        std::vector<VertexSet> expected;
        for (auto& [root, vs] : groups) expected.push_back(vs);
        std::sort(expected.begin(), expected.end(),
                  [](const VertexSet& a, const VertexSet& b) { return a[0] < b[0]; });
        CHECK(connected_components(g) == expected);
    }
}

TEST_CASE("bfs layers of pinned graphs") {
    CHECK(bfs_layers(generate_path(3), 0) == std::vector<VertexSet>{{0}, {1}, {2}});
    auto k4_layers = bfs_layers(k4(), 2);
    REQUIRE(k4_layers.size() == 2);
    CHECK(k4_layers[0] == VertexSet{2});
    CHECK(k4_layers[1] == VertexSet{0, 1, 3});
}

TEST_CASE("bfs layers of the 4x4 grid match brute-force distances") {
    Graph g = generate_grid(4, 4);
    auto layers = bfs_layers(g, 0);
    std::vector<std::size_t> sizes;
    for (const auto& layer : layers) sizes.push_back(layer.size());
    CHECK(sizes == std::vector<std::size_t>{1, 2, 3, 4, 3, 2, 1});

    // Brute force: repeated edge relaxation.
    int n = g.vertex_count();
    std::vector<int> dist(n, 1 << 20);
    dist[0] = 0;
    for (int round = 0; round < n; ++round)
        for (auto [u, v] : g.edges()) {
            dist[v] = std::min(dist[v], dist[u] + 1);
            dist[u] = std::min(dist[u], dist[v] + 1);
        }
    for (int d = 0; d < static_cast<int>(layers.size()); ++d)
        for (Vertex v : layers[d]) CHECK(dist[v] == d);
}

TEST_CASE("model validator accepts pinned models") {
    Graph g = test::random_connected_graph(6, 5);
    CliqueModel single;
    single.parts = {{2}};
    single.centers = {2};
    single.depth = 0;
    CHECK(validate_model(g, single).empty());

    Graph c4 = generate_cycle(4);
    CliqueModel disconnected_pair;
    disconnected_pair.parts = {{0}, {2}};
    disconnected_pair.centers = {0, 2};
    disconnected_pair.depth = 0;
    auto bad = validate_model(c4, disconnected_pair);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].find("no edge between parts") != std::string::npos);
}

TEST_CASE("model validator flags every injected corruption") {
    // Valid model on a grid: two adjacent 'plus' shapes.
    Graph g = generate_grid(4, 4);
    auto plus = [&](Vertex center) {
        VertexSet part{center};
        for (Vertex w : g.neighbors(center)) part.push_back(w);
        return make_set(std::move(part));
    };
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        CliqueModel model;
        model.parts = {plus(5), make_set({7, 11, 15})};
        model.centers = {5, 11};
        model.depth = 1;
        model.bound = 5;
        REQUIRE(validate_model(g, model).empty());

        switch (rng.below(5)) {
            case 0:  // overlap
                model.parts[1] = set_union(model.parts[1], {5});
                break;
            case 1:  // disconnect a part
                model.parts[1] = make_set({7, 15});
                break;
            case 2:  // break the pairwise edge
                model.parts[1] = make_set({3});
                model.centers[1] = 3;
                break;
            case 3:  // radius above depth
                model.depth = 0;
                break;
            case 4:  // size bound violation
                model.bound = 1;
                model.depth = 1;
                break;
        }
        CHECK_FALSE(validate_model(g, model).empty());
    }
}

TEST_CASE("tree decomposition validator on pinned cases") {
    Graph p3 = generate_path(3);
    TreeDecomposition td;
    td.parent = {-1, 0};
    td.bags = {{0, 1}, {1, 2}};
    td.width = 1;
    CHECK(validate_tree_decomposition(p3, td).empty());

    Graph k3 = generate_clique(3);
    auto bad = validate_tree_decomposition(k3, td);
    REQUIRE_FALSE(bad.empty());
    CHECK(bad[0].find("edge 0 2 not covered") != std::string::npos);

    // Broken bag connectivity.
    TreeDecomposition split_bags;
    split_bags.parent = {-1, 0, 1};
    split_bags.bags = {{0, 1}, {1, 2}, {0, 2}};
    split_bags.width = 1;
    auto bad2 = validate_tree_decomposition(k3, split_bags);
    bool connectivity_flagged = false;
    for (const auto& v : bad2)
        connectivity_flagged = connectivity_flagged || v.find("not connected") != std::string::npos;
    CHECK(connectivity_flagged);
}

TEST_CASE("random trees decompose with width 1 via their own structure") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Rng rng(seed);
        int n = 2 + static_cast<int>(rng.below(12));
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (Vertex v = 1; v < n; ++v)
            edges.emplace_back(static_cast<Vertex>(rng.below(v)), v);
        Graph tree(n, edges);

        // One bag per vertex: {v, parent(v)}; the bag tree mirrors the
        // vertex tree, rooted at the bag of vertex 0.
        TreeDecomposition td;
        td.parent.assign(n, -1);
        td.bags.resize(n);
        td.bags[0] = {0};
        for (Vertex v = 1; v < n; ++v) {
            Vertex p = edges[v - 1].first;
            td.bags[v] = make_set({v, p});
            td.parent[v] = p;
        }
        td.width = 1;
        CAPTURE(seed, n);
        CHECK(validate_tree_decomposition(tree, td).empty());
    }
}

TEST_CASE("cost sums are exact over disjoint unions") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        auto q = test::random_costs(12, seed + 77);
        VertexSet a, b;
        for (Vertex v = 0; v < 12; ++v) {
            switch (rng.below(3)) {
                case 0: a.push_back(v); break;
                case 1: b.push_back(v); break;
                default: break;
            }
        }
        CHECK(q.sum(a) + q.sum(b) == q.sum(set_union(a, b)));
    }
    CHECK_THROWS_AS(CostAssignment({Rational(-1)}), Error);
}

TEST_CASE("graph construction rejects malformed input") {
    CHECK_THROWS_AS(Graph(2, {{0, 0}}), Error);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), Error);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), Error);
}
