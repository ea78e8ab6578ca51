#ifndef SEPCERT_THINDIST_HPP
#define SEPCERT_THINDIST_HPP

#include "sepcert/certificates.hpp"
#include "sepcert/config.hpp"
#include "sepcert/decompose.hpp"
#include "sepcert/graph.hpp"
#include "sepcert/lp.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace sepcert {

struct ThinColumn {
    VertexSet x;
    Rational p;
    TreeDecomposition td;  // decomposition of G - x
};

/// (1/ell)-thin probability distribution over treewidth-deletion sets:
/// probabilities sum to 1 exactly, every vertex carries mass at most 1/ell,
/// the support has at most n columns, and every column comes with a
/// validator-clean decomposition of G - X_i of width at most t.
struct ThinDistribution {
    long long ell = 1;
    long long m0 = 1;
    Int t = 0;
    long long b = 0;
    long long omega_observed = 1;
    std::vector<ThinColumn> columns;
    long long master_solves = 0;

    void check(const Graph& g) const {
        Rational total = 0;
        for (const auto& col : columns) {
            require(col.p > 0, "thin distribution: support column with zero probability");
            total += col.p;
        }
        require(total == 1, "thin distribution: probabilities do not sum to 1");
        require(static_cast<long long>(columns.size()) <= g.vertex_count(),
                "thin distribution: support exceeds n");
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            Rational mass = 0;
            for (const auto& col : columns)
                if (set_contains(col.x, v)) mass += col.p;
            require(mass * ell <= 1, "thin distribution: vertex mass exceeds 1/ell");
        }
        for (const auto& col : columns) {
            auto bad = validate_tree_decomposition(g, col.td, col.x);
            require(bad.empty(), "thin distribution: column decomposition invalid: " +
                                     (bad.empty() ? "" : bad.front()));
            require(Int(col.td.width) <= t, "thin distribution: column width exceeds t");
        }
    }
};

struct ThinDistOptions {
    long long column_cap_factor = 50;
    PrsOptions prs;
};

/// Column generation for the (1/ell)-thin distribution. The deletion
/// algorithm acts as the separation oracle: whenever the restricted master
/// optimum s* is still >= 1/ell, running it with the dual costs q* yields a
/// deletion set of cost q*(X') < 1/ell <= s*, a strictly new column.
inline std::variant<CliqueModel, ThinDistribution> thin_distribution(
    const Graph& g, long long ell, long long m0, const ThinDistOptions& opts = {}) {
    long long n = g.vertex_count();
    require(n >= 1, "thin_distribution: empty graph");
    require(ell >= 1 && ell <= n, "thin_distribution: ell must be in [1, n]");
    require(m0 >= 1, "thin_distribution: m0 must be >= 1");

    std::vector<VertexSet> columns;
    std::vector<TreeDecomposition> tds;
    long long omega_observed = 1;

    auto run_oracle = [&](const CostAssignment& q) -> std::optional<CliqueModel> {
        auto res = low_tw_deletion(g, q, ell, m0, opts.prs);
        if (std::holds_alternative<CliqueModel>(res)) return std::get<CliqueModel>(res);
        auto& dd = std::get<DeletionDecomposition>(res);
        omega_observed = std::max(omega_observed, dd.omega_observed);
        columns.push_back(dd.x);
        tds.push_back(std::move(dd.td));
        return std::nullopt;
    };

    if (auto model = run_oracle(CostAssignment::uniform(n))) return *model;

    long long cap = opts.column_cap_factor * n;
    long long solves = 0;
    while (true) {
        require(solves < cap, "thin_distribution: column generation exceeded its cap");
        auto master = solve_restricted_master(static_cast<int>(n), columns);
        ++solves;
        if (master.s * ell < 1) {
            ThinDistribution dist;
            dist.ell = ell;
            dist.m0 = m0;
            dist.b = b_bound(ell, n);
            dist.omega_observed = omega_observed;
            dist.t = k_bound(ell, std::min<long long>(m0, omega_observed), n);
            dist.master_solves = solves;
            for (std::size_t j = 0; j < columns.size(); ++j)
                if (master.p[j] > 0)
                    dist.columns.push_back(ThinColumn{columns[j], master.p[j], tds[j]});
            dist.check(g);
            return dist;
        }
        std::size_t before = columns.size();
        if (auto model = run_oracle(CostAssignment(master.q))) return *model;
        // Separation progress: the new column has q*(X') < 1/ell <= s*,
        // while every old column has q*(X) >= s*.
        const VertexSet& fresh = columns.back();
        Rational fresh_cost = 0;
        for (Vertex v : fresh) fresh_cost += master.q[v];
        require(fresh_cost * ell < 1, "thin_distribution: oracle column not below 1/ell");
        for (std::size_t j = 0; j < before; ++j)
            require(columns[j] != fresh, "thin_distribution: oracle returned a known column");
    }
}

/// A clique-model witness produced anywhere in a family computation,
/// together with the parameters it defeats.
struct NotInClass {
    CliqueModel model;
    long long ell = 1;
    long long m0 = 1;
};

/// Distributions for every ell in 1..n under the configured f-bound.
struct FragileFamily {
    std::map<long long, ThinDistribution> by_ell;

    const ThinDistribution& at(long long ell) const {
        auto it = by_ell.find(ell);
        require(it != by_ell.end(),
                "family is missing the distribution for ell = " + std::to_string(ell));
        return it->second;
    }
};

inline long long family_m0(long long ell, long long n, const Rational& eps,
                           const ClassConstants& constants) {
    long long b = b_bound(ell, n);
    return std::min<long long>(n + 1, expansion_bound(constants.c_f, b, eps, n + 1) + 1);
}

/// Runs thin_distribution for every ell = 1..n with m0 = f(b(ell,n))+1.
/// A model outcome anywhere witnesses that G fails membership for the
/// configured expansion bound.
inline std::variant<NotInClass, FragileFamily> fragile_family(const Graph& g, const Rational& c,
                                                              const Rational& eps,
                                                              const ClassConstants& constants,
                                                              const ThinDistOptions& opts = {}) {
    (void)c;
    require(eps > 0 && eps <= 1, "fragile_family: eps must be in (0, 1]");
    long long n = g.vertex_count();
    require(n >= 1, "fragile_family: empty graph");
    FragileFamily family;
    for (long long ell = 1; ell <= n; ++ell) {
        long long m0 = family_m0(ell, n, eps, constants);
        auto res = thin_distribution(g, ell, m0, opts);
        if (std::holds_alternative<CliqueModel>(res))
            return NotInClass{std::get<CliqueModel>(res), ell, m0};
        family.by_ell.emplace(ell, std::move(std::get<ThinDistribution>(res)));
    }
    return family;
}

/// A single bag whose removal leaves components of at most 2/3 |V(H)|
/// vertices, found by walking toward the heavy side. The classical
/// centroid-bag argument guarantees the walk terminates.
inline VertexSet separator_from_decomposition(const Graph& h, const TreeDecomposition& td) {
    auto bad = validate_tree_decomposition(h, td);
    require(bad.empty(), "separator_from_decomposition: invalid decomposition: " +
                             (bad.empty() ? "" : bad.front()));
    long long hn = h.vertex_count();
    int t = td.node_count();
    std::vector<std::vector<int>> tree_adj(t);
    for (int z = 0; z < t; ++z)
        if (td.parent[z] >= 0) {
            tree_adj[z].push_back(td.parent[z]);
            tree_adj[td.parent[z]].push_back(z);
        }

    int z = 0;
    for (int steps = 0; steps <= t; ++steps) {
        VertexSet big;
        auto rest = set_difference([&] {
            VertexSet all(hn);
            for (Vertex v = 0; v < hn; ++v) all[v] = v;
            return all;
        }(), td.bags[z]);
        auto sub = induced_subgraph(h, rest);
        for (const auto& comp_local : connected_components(sub.graph)) {
            if (3 * static_cast<long long>(comp_local.size()) > 2 * hn) {
                for (Vertex v : comp_local) big.push_back(sub.original(v));
                break;
            }
        }
        if (big.empty()) return td.bags[z];

        // All bags holding vertices of the big component sit in one branch
        // of T - z; step toward it.
        Vertex probe = big.front();
        int holder = -1;
        for (int w = 0; w < t && holder < 0; ++w)
            if (w != z && set_contains(td.bags[w], probe)) holder = w;
        require(holder >= 0, "separator walk: component vertex not in any other bag");
        std::vector<int> hop(t, -1);
        std::vector<int> stack;
        for (int w : tree_adj[z]) {
            hop[w] = w;
            stack.push_back(w);
        }
        std::vector<char> seen(t, 0);
        seen[z] = 1;
        for (int w : tree_adj[z]) seen[w] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : tree_adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    hop[w] = hop[u];
                    stack.push_back(w);
                }
        }
        require(hop[holder] >= 0, "separator walk: disconnected decomposition tree");
        z = hop[holder];
    }
    throw Error("separator walk did not terminate");
}

/// Lemma-5 style separator for a subgraph H of G with m = |V(H)| vertices:
/// picks ell = ceil(m^(1/(2t+2))), selects the support column meeting H
/// least, and combines it with a centroid bag of the column decomposition
/// restricted to H - X.
inline VertexSet large_subgraph_separator(const Graph& g, const FragileFamily& family,
                                          const VertexSet& h_vertices, const Rational& t_exponent,
                                          const std::vector<std::pair<Vertex, Vertex>>* h_edges =
                                              nullptr) {
    require(!h_vertices.empty(), "large_subgraph_separator: empty subgraph");
    require(t_exponent >= 0, "large_subgraph_separator: negative exponent");
    long long m = static_cast<long long>(h_vertices.size());

    // ell = ceil(m^(1/(2t+2))) with t rational: smallest k with
    // k^(2*num + 2*den) >= m^den.
    Int tp = rational_num(t_exponent), tq = rational_den(t_exponent);
    long long ell = ceil_coef_pow(Rational(1), m, tq, 2 * tp + 2 * tq, m + 1);
    ell = std::max<long long>(1, ell);
    const ThinDistribution& dist = family.at(ell);

    std::size_t pick = 0;
    std::size_t best = h_vertices.size() + 1;
    for (std::size_t j = 0; j < dist.columns.size(); ++j) {
        std::size_t hit = set_intersection(dist.columns[j].x, h_vertices).size();
        if (hit < best) {
            best = hit;
            pick = j;
        }
    }
    require(best * ell <= static_cast<std::size_t>(m),
            "large_subgraph_separator: no column meets H in at most m/ell vertices");

    const ThinColumn& col = dist.columns[pick];
    VertexSet a = set_intersection(col.x, h_vertices);
    VertexSet remaining = set_difference(h_vertices, a);
    if (remaining.empty()) return a;

    // H - X as a local graph; the column decomposition restricted to it.
    auto sub = induced_subgraph(g, remaining);
    Graph h_local;
    if (h_edges == nullptr) {
        h_local = sub.graph;
    } else {
        std::vector<std::pair<Vertex, Vertex>> local_edges;
        for (auto [u, v] : *h_edges) {
            require(g.has_edge(u, v), "large_subgraph_separator: subgraph edge not in G");
            int lu = sub.to_local[u], lv = sub.to_local[v];
            if (lu >= 0 && lv >= 0) local_edges.emplace_back(lu, lv);
        }
        h_local = Graph(static_cast<int>(remaining.size()), local_edges);
    }
    TreeDecomposition restricted;
    restricted.parent = col.td.parent;
    restricted.bags.reserve(col.td.bags.size());
    for (const auto& bag : col.td.bags) {
        VertexSet local;
        for (Vertex v : bag)
            if (sub.to_local[v] >= 0) local.push_back(sub.to_local[v]);
        restricted.bags.push_back(make_set(std::move(local)));
    }
    restricted.width = restricted.computed_width();

    VertexSet bag_local = separator_from_decomposition(h_local, restricted);
    VertexSet result = a;
    for (Vertex v : bag_local) result.push_back(sub.original(v));
    return make_set(std::move(result));
}

}  // namespace sepcert

#endif
