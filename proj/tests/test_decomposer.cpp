#include "sepcert/decompose.hpp"

#include "sepcert/io.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sepcert;

namespace {

void check_deletion(const Graph& g, const CostAssignment& q, long long ell,
                    const DeletionDecomposition& dd) {
    long long n = g.vertex_count();
    CHECK(q.sum(dd.x) * ell < q.total());
    CHECK(validate_tree_decomposition(g, dd.td, dd.x).empty());
    CHECK(Int(dd.width) <= dd.k);
    CHECK(dd.recursion_depth <= ceil_log_three_halves(n));
    // Re-derive the width bound from the recorded mu sizes.
    std::size_t max_mu = 0;
    for (const auto& mu : dd.mu) max_mu = std::max(max_mu, mu.size());
    for (std::size_t z = 0; z < dd.td.bags.size(); ++z)
        CHECK(dd.td.bags[z].size() <= (dd.node_depth[z] + 1) * max_mu);
}

}  // namespace

TEST_CASE("b_bound pinned values") {
    CHECK(recursion_ell0(1, 1) == 1);
    CHECK(b_bound(1, 1) == 4);
    CHECK(recursion_ell0(1, 4) == 5);
    CHECK(b_bound(1, 4) == 72);
    CHECK(recursion_ell0(2, 10) == 13);
    CHECK(ceil_log_three_halves(1) == 0);
    CHECK(ceil_log_three_halves(10) == 6);
}

TEST_CASE("k_bound pinned values and monotonicity") {
    CHECK(k_bound(1, 1, 1) == 0);
    CHECK(k_bound(1, 2, 4) == 1152);
    for (long long ell = 1; ell <= 5; ++ell)
        for (long long omega = 1; omega <= 5; ++omega)
            for (long long n = 1; n <= 5; ++n) {
                CHECK(k_bound(ell, omega, n) <= k_bound(ell + 1, omega, n));
                CHECK(k_bound(ell, omega, n) <= k_bound(ell, omega + 1, n));
                CHECK(k_bound(ell, omega, n) <= k_bound(ell, omega, n + 1));
            }
}

TEST_CASE("low_tw_deletion pinned cases") {
    SECTION("K1 gives an empty deletion and a single bag") {
        Graph k1(1, {});
        auto res = low_tw_deletion(k1, CostAssignment::uniform(1), 1, 2, PrsOptions{true});
        REQUIRE(std::holds_alternative<DeletionDecomposition>(res));
        const auto& dd = std::get<DeletionDecomposition>(res);
        CHECK(dd.x.empty());
        REQUIRE(dd.td.bags.size() == 1);
        CHECK(dd.td.bags[0] == VertexSet{0});
        check_deletion(k1, CostAssignment::uniform(1), 1, dd);
    }
    SECTION("edgeless graph keeps deletion cost below q(V)/ell") {
        Graph edgeless(5, {});
        auto q = CostAssignment::uniform(5);
        auto res = low_tw_deletion(edgeless, q, 2, 2, PrsOptions{true});
        REQUIRE(std::holds_alternative<DeletionDecomposition>(res));
        check_deletion(edgeless, q, 2, std::get<DeletionDecomposition>(res));
    }
    SECTION("5x5 grid always takes the decomposition branch") {
        Graph grid = generate_grid(5, 5);
        auto q = CostAssignment::uniform(25);
        auto res = low_tw_deletion(grid, q, 2, 5, PrsOptions{true});
        REQUIRE(std::holds_alternative<DeletionDecomposition>(res));
        check_deletion(grid, q, 2, std::get<DeletionDecomposition>(res));
    }
    SECTION("identically zero costs are rejected") {
        Graph p3 = generate_path(3);
        CHECK_THROWS_AS(low_tw_deletion(p3, CostAssignment::uniform(3, Rational(0)), 1, 2),
                        Error);
    }
}

TEST_CASE("low_tw_deletion postconditions on random inputs") {
    std::uint64_t seed = 0;
    for (int trial = 0; trial < 25; ++trial) {
        Rng rng(trial);
        int n = 4 + static_cast<int>(rng.below(21));
        Graph g = rng.below(2) ? test::random_connected_graph(n, trial + 100, 1, 5)
                               : test::random_graph(n, trial + 100, 1, 5);
        CostAssignment q = test::random_costs(n, ++seed);
        long long ell = 1 + static_cast<long long>(rng.below(3));
        long long m0 = 2 + static_cast<long long>(rng.below(4));
        auto res = low_tw_deletion(g, q, ell, m0, PrsOptions{true});
        CAPTURE(trial, n, ell, m0);
        if (std::holds_alternative<CliqueModel>(res)) {
            const auto& model = std::get<CliqueModel>(res);
            CHECK(validate_model(g, model).empty());
            CHECK(model.size() == m0);
            CHECK(model.depth <= b_bound(ell, n));
        } else {
            check_deletion(g, q, ell, std::get<DeletionDecomposition>(res));
        }
    }
}

TEST_CASE("deep clique forces the model branch") {
    Graph k8 = generate_clique(8);
    auto res = low_tw_deletion(k8, CostAssignment::uniform(8), 1, 2, PrsOptions{true});
    REQUIRE(std::holds_alternative<CliqueModel>(res));
    const auto& model = std::get<CliqueModel>(res);
    CHECK(model.size() == 2);
    CHECK(validate_model(k8, model).empty());
    CHECK(model.depth <= b_bound(1, 8));
}
