#include "sepcert/io.hpp"

#include "sepcert/decompose.hpp"
#include "sepcert/separator.hpp"
#include "sepcert/thindist.hpp"
#include "sepcert/verify.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sepcert;

TEST_CASE("rational parse and format") {
    CHECK(format_rational(parse_rational("6/8")) == "3/4");
    CHECK(format_rational(parse_rational("5")) == "5");
    CHECK(parse_rational("1/3") + parse_rational("1/6") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("2/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational("1/2/3"), Error);
}

TEST_CASE("graph text format pinned cases") {
    CHECK(parse_graph("1 0").vertex_count() == 1);
    Graph p3 = parse_graph("3 2\n0 1\n1 2");
    CHECK(p3.edge_count() == 2);
    CHECK(p3.has_edge(0, 1));
    CHECK_THROWS_WITH(parse_graph("2 1\n0 0"),
                      Catch::Matchers::ContainsSubstring("line 2") &&
                          Catch::Matchers::ContainsSubstring("self-loop"));
    CHECK_THROWS_AS(parse_graph("2 2\n0 1\n1 0"), Error);
    CHECK_THROWS_AS(parse_graph("2 1\n0 5"), Error);
    CHECK_THROWS_AS(parse_graph("2"), Error);
    // Round trip.
    Graph g = test::random_graph(9, 4);
    CHECK(format_graph(parse_graph(format_graph(g))) == format_graph(g));
}

TEST_CASE("cost file parsing") {
    auto q = parse_costs("0 1/4\n2 3\n", 3);
    CHECK(q.at(0) == Rational(1, 4));
    CHECK(q.at(1) == 1);
    CHECK(q.at(2) == 3);
    CHECK_THROWS_AS(parse_costs("5 1/2", 3), Error);
    CHECK_THROWS_AS(parse_costs("0 2/0", 3), Error);
    CHECK_THROWS_AS(parse_costs("0 -1/2", 3), Error);
}

TEST_CASE("generators pinned cases") {
    Graph c4 = generate_grid(2, 2);
    CHECK(c4.vertex_count() == 4);
    CHECK(c4.edge_count() == 4);
    CHECK(generate_clique(5).edge_count() == 10);
    CHECK(generate_grid(4, 5).edge_count() == 2 * 4 * 5 - 4 - 5);
    Graph a = generate_gnp(20, Rational(1, 4), 7);
    Graph b = generate_gnp(20, Rational(1, 4), 7);
    CHECK(a.edges() == b.edges());
    CHECK(generate_gnp(20, Rational(1, 4), 8).edges() != a.edges());
    CHECK(generate_gnp(10, Rational(1), 3).edge_count() == 45);
    CHECK(generate_gnp(10, Rational(0), 3).edge_count() == 0);
}

TEST_CASE("certificate round trips are identities") {
    Config cfg;
    Graph g = generate_grid(3, 3);
    CostAssignment q = test::random_costs(9, 17);

    SECTION("separator certificate") {
        auto run = weighted_prs(g, q, 3, 4);
        REQUIRE_FALSE(run.is_model());
        Json j = separator_to_json(run.certificate(), 9, q, cfg);
        auto parsed = separator_from_json(j);
        CHECK(separator_to_json(parsed.cert, parsed.n, parsed.costs, parsed.config).dump(2) ==
              j.dump(2));
    }
    SECTION("deletion decomposition") {
        auto res = low_tw_deletion(g, q, 2, 5);
        REQUIRE(std::holds_alternative<DeletionDecomposition>(res));
        Json j = deletion_to_json(std::get<DeletionDecomposition>(res), 9, q, cfg);
        auto parsed = deletion_from_json(j);
        CHECK(deletion_to_json(parsed.dd, parsed.n, parsed.costs, parsed.config).dump(2) ==
              j.dump(2));
    }
    SECTION("thin distribution with exact thirds") {
        auto res = thin_distribution(g, 3, 10);
        REQUIRE(std::holds_alternative<ThinDistribution>(res));
        Json j = thin_to_json(std::get<ThinDistribution>(res), 9, cfg);
        auto parsed = thin_from_json(j);
        CHECK(thin_to_json(parsed.dist, parsed.n, parsed.config).dump(2) == j.dump(2));
        // Rationals preserved exactly.
        ThinDistribution probe;
        probe.ell = 3;
        probe.m0 = 2;
        probe.t = 5;
        probe.b = 4;
        probe.omega_observed = 1;
        TreeDecomposition td;
        td.parent = {-1};
        td.bags = {{0}};
        td.width = 0;
        for (int i = 0; i < 3; ++i)
            probe.columns.push_back(ThinColumn{{i}, Rational(1, 3), td});
        auto back = thin_from_json(thin_to_json(probe, 9, cfg));
        for (const auto& col : back.dist.columns) CHECK(col.p == Rational(1, 3));
    }
    SECTION("fuzzed probability with zero denominator is rejected") {
        Json j;
        j["type"] = "thin-distribution";
        j["n"] = 2;
        j["ell"] = 1;
        j["m0"] = 1;
        j["t"] = "1";
        j["b"] = 1;
        j["omega_observed"] = 1;
        j["columns"] = Json::array();
        Json col;
        col["X"] = Json::array();
        col["p"] = "2/0";
        col["td"] = td_to_json(TreeDecomposition{{-1}, {{0, 1}}, 1});
        j["columns"].push_back(col);
        j["config"] = config_to_json(cfg);
        CHECK_THROWS_AS(thin_from_json(j), Error);
    }
}

TEST_CASE("verify functions re-check emitted certificates") {
    Config cfg;
    Graph g = generate_grid(4, 4);
    CostAssignment q = CostAssignment::uniform(16);

    SECTION("separator verifies and corruption is caught") {
        auto run = weighted_prs(g, q, 2, 4);
        REQUIRE_FALSE(run.is_model());
        auto parsed = separator_from_json(separator_to_json(run.certificate(), 16, q, cfg));
        CHECK(verify_separator(g, parsed).empty());
        auto corrupted = parsed;
        corrupted.cert.c = {};
        corrupted.cert.m = {};
        corrupted.cert.model.reset();
        CHECK_FALSE(verify_separator(g, corrupted).empty());
    }
    SECTION("deletion verifies and width corruption is caught") {
        auto res = low_tw_deletion(g, q, 2, 5);
        auto parsed = deletion_from_json(
            deletion_to_json(std::get<DeletionDecomposition>(res), 16, q, cfg));
        CHECK(verify_deletion(g, parsed).empty());
        // Drop one surviving vertex from every bag.
        VertexSet all(16);
        for (Vertex v = 0; v < 16; ++v) all[v] = v;
        Vertex survivor = set_difference(all, parsed.dd.x).front();
        for (auto& bag : parsed.dd.td.bags) bag = set_difference(bag, {survivor});
        CHECK_FALSE(verify_deletion(g, parsed).empty());
    }
    SECTION("thin distribution verifies and mass corruption is caught") {
        auto res = thin_distribution(g, 4, 17);
        auto parsed = thin_from_json(thin_to_json(std::get<ThinDistribution>(res), 16, cfg));
        CHECK(verify_thin(g, parsed).empty());
        if (!parsed.dist.columns.empty()) {
            parsed.dist.columns[0].p += 1;
            CHECK_FALSE(verify_thin(g, parsed).empty());
        }
    }
}

TEST_CASE("json output is deterministic") {
    Config cfg;
    Graph g = generate_grid(3, 4);
    CostAssignment q = CostAssignment::uniform(12);
    auto run1 = weighted_prs(g, q, 2, 5);
    auto run2 = weighted_prs(g, q, 2, 5);
    REQUIRE_FALSE(run1.is_model());
    CHECK(separator_to_json(run1.certificate(), 12, q, cfg).dump(2) ==
          separator_to_json(run2.certificate(), 12, q, cfg).dump(2));
}
