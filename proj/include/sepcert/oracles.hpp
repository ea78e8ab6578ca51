#ifndef SEPCERT_ORACLES_HPP
#define SEPCERT_ORACLES_HPP

#include "sepcert/certificates.hpp"
#include "sepcert/graph.hpp"

#include <algorithm>
#include <vector>

namespace sepcert {

/// Hard per-oracle input caps. Oracles are ground truth for tests; they
/// refuse oversized inputs instead of silently approximating.
struct OracleBudget {
    int separator = 14;
    int treewidth = 10;
    int omega = 9;
    int iso_pattern = 6;
};

struct MinSepResult {
    int order = 0;
    VertexSet witness;
};

namespace detail {

inline bool balanced_with_mask(const Graph& g, unsigned mask) {
    // mask bit v set = v removed
    long long n = g.vertex_count();
    unsigned seen = mask;
    for (Vertex s = 0; s < n; ++s) {
        if (seen >> s & 1u) continue;
        long long size = 0;
        std::vector<Vertex> stack{s};
        seen |= 1u << s;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            ++size;
            for (Vertex w : g.neighbors(u))
                if (!(seen >> w & 1u)) {
                    seen |= 1u << w;
                    stack.push_back(w);
                }
        }
        if (3 * size > 2 * n) return false;
    }
    return true;
}

// Enumerates k-subsets of 0..n-1 in lexicographic order.
template <typename F>
inline bool for_each_subset_of_size(int n, int k, F&& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (f(idx)) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// Minimum order of a balanced separator, by subset enumeration in
/// increasing size; the witness is the first minimum found.
inline MinSepResult min_balanced_separator_exact(const Graph& g, const OracleBudget& budget = {}) {
    int n = g.vertex_count();
    require(n <= budget.separator, "min_balanced_separator_exact: graph over oracle budget");
    require(n <= 31, "min_balanced_separator_exact: mask overflow");
    MinSepResult result;
    for (int k = 0; k <= n; ++k) {
        bool found = detail::for_each_subset_of_size(n, k, [&](const std::vector<int>& idx) {
            unsigned mask = 0;
            for (int v : idx) mask |= 1u << v;
            if (detail::balanced_with_mask(g, mask)) {
                result.order = k;
                result.witness.assign(idx.begin(), idx.end());
                return true;
            }
            return false;
        });
        if (found) break;
    }
    return result;
}

/// Exact treewidth via the subset DP over elimination orders.
inline int treewidth_exact(const Graph& g, const OracleBudget& budget = {}) {
    int n = g.vertex_count();
    require(n <= budget.treewidth, "treewidth_exact: graph over oracle budget");
    if (n == 0) return -1;
    // q_degree(S, v): neighbors of v outside S u {v} reachable through S.
    auto q_degree = [&](unsigned s, Vertex v) {
        unsigned visited = 1u << v;
        unsigned result = 0;
        std::vector<Vertex> stack{v};
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u)) {
                if (visited >> w & 1u) continue;
                visited |= 1u << w;
                if (s >> w & 1u) stack.push_back(w);
                else result |= 1u << w;
            }
        }
        return __builtin_popcount(result);
    };
    unsigned full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
    std::vector<int> dp(full + 1, n);
    dp[0] = 0;
    for (unsigned s = 1; s <= full; ++s) {
        int best = n;
        for (Vertex v = 0; v < n; ++v) {
            if (!(s >> v & 1u)) continue;
            unsigned rest = s & ~(1u << v);
            best = std::min(best, std::max(dp[rest], q_degree(rest, v)));
        }
        dp[s] = best;
    }
    return dp[full];
}

/// Exact subgraph test: is H isomorphic to a subgraph of G? Ordered
/// backtracking over injective maps with edge checks.
inline bool subgraph_iso_backtracking(const Graph& h, const Graph& g,
                                      const OracleBudget& budget = {}) {
    int m = h.vertex_count();
    require(m <= budget.iso_pattern, "subgraph_iso_backtracking: pattern over oracle budget");
    if (m > g.vertex_count()) return false;
    std::vector<Vertex> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return h.degree(a) != h.degree(b) ? h.degree(a) > h.degree(b) : a < b;
    });
    std::vector<Vertex> image(m, -1);
    std::vector<char> used(g.vertex_count(), 0);
    auto rec = [&](auto&& self, int pos) -> bool {
        if (pos == m) return true;
        Vertex a = order[pos];
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            if (used[u]) continue;
            bool ok = true;
            for (Vertex b : h.neighbors(a)) {
                if (image[b] >= 0 && !g.has_edge(u, image[b])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            image[a] = u;
            used[u] = 1;
            if (self(self, pos + 1)) return true;
            image[a] = -1;
            used[u] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

/// Largest m such that G contains a depth-d model of K_m, by exhaustive
/// search over families of disjoint connected radius-<=d parts with
/// pairwise links.
inline int omega_d_exact(const Graph& g, long long d, const OracleBudget& budget = {}) {
    int n = g.vertex_count();
    require(n <= budget.omega, "omega_d_exact: graph over oracle budget");
    require(d >= 0, "omega_d_exact: negative depth");
    if (n == 0) return 0;

    // All vertex subsets that can serve as a part.
    std::vector<unsigned> parts;
    unsigned full = (1u << n) - 1;
    for (unsigned mask = 1; mask <= full; ++mask) {
        VertexSet vs;
        for (Vertex v = 0; v < n; ++v)
            if (mask >> v & 1u) vs.push_back(v);
        auto sub = induced_subgraph(g, vs);
        if (connected_components(sub.graph).size() != 1) continue;
        bool small_radius = false;
        for (Vertex c = 0; c < sub.graph.vertex_count() && !small_radius; ++c)
            small_radius = bfs_eccentricity(sub.graph, c) <= d;
        if (small_radius) parts.push_back(mask);
    }

    std::vector<std::vector<char>> linked(parts.size());
    auto touches = [&](unsigned mask, Vertex v) { return (mask >> v & 1u) != 0; };
    for (std::size_t i = 0; i < parts.size(); ++i) {
        linked[i].assign(parts.size(), 0);
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (i == j || (parts[i] & parts[j])) continue;
            for (auto [u, v] : g.edges())
                if ((touches(parts[i], u) && touches(parts[j], v)) ||
                    (touches(parts[i], v) && touches(parts[j], u))) {
                    linked[i][j] = 1;
                    break;
                }
        }
    }

    int best = 0;
    std::vector<std::size_t> chosen;
    auto rec = [&](auto&& self, unsigned available, std::size_t first_part) -> void {
        best = std::max(best, static_cast<int>(chosen.size()));
        if (static_cast<int>(chosen.size()) + __builtin_popcount(available) <= best) return;
        if (!available) return;
        Vertex v = __builtin_ctz(available);
        // Either no part uses v, or some part with minimum vertex v is used.
        self(self, available & ~(1u << v), first_part);
        for (std::size_t i = first_part; i < parts.size(); ++i) {
            unsigned p = parts[i];
            if ((p & ~available) || __builtin_ctz(p) != v) continue;
            bool ok = true;
            for (std::size_t j : chosen)
                if (!linked[i][j]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(i);
            self(self, available & ~p, 0);
            chosen.pop_back();
        }
    };
    rec(rec, full, 0);
    return best;
}

}  // namespace sepcert

#endif
