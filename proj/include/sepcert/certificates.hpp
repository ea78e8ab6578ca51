#ifndef SEPCERT_CERTIFICATES_HPP
#define SEPCERT_CERTIFICATES_HPP

#include "sepcert/cost.hpp"
#include "sepcert/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sepcert {

/// true iff every connected component K of G-C satisfies 3|K| <= 2|V(G)|.
/// The comparison is kept in integers; |V(G)| counts the whole graph
/// including C.
inline bool is_balanced_separator(const Graph& g, const VertexSet& c) {
    long long n = g.vertex_count();
    std::vector<char> removed(n, 0);
    for (Vertex v : c) {
        g.check_vertex(v);
        removed[v] = 1;
    }
    std::vector<char> seen(n, 0);
    for (Vertex s = 0; s < n; ++s) {
        if (removed[s] || seen[s]) continue;
        long long size = 0;
        std::vector<Vertex> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            ++size;
            for (Vertex w : g.neighbors(u))
                if (!removed[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        if (3 * size > 2 * n) return false;
    }
    return true;
}

/// Model of a clique K_m: pairwise-disjoint connected parts, an edge between
/// every two parts, each part of radius <= depth from its recorded center.
/// When `bound` is set the model claims |V_i| <= bound * depth for all i.
struct CliqueModel {
    std::vector<VertexSet> parts;
    std::vector<Vertex> centers;  // one per part
    long long depth = 0;
    std::optional<long long> bound;

    int size() const { return static_cast<int>(parts.size()); }

    VertexSet support() const {
        VertexSet s;
        for (const auto& p : parts) s = set_union(s, p);
        return s;
    }
};

/// Checks every CliqueModel invariant and reports all violations found.
/// The radius check runs from the recorded center only; that is what the
/// constructing algorithm guarantees.
inline std::vector<std::string> validate_model(const Graph& g, const CliqueModel& model) {
    std::vector<std::string> bad;
    int m = model.size();
    if (model.centers.size() != model.parts.size())
        bad.push_back("center count differs from part count");
    if (model.depth < 0) bad.push_back("negative depth");

    std::vector<char> used(g.vertex_count(), 0);
    for (int i = 0; i < m; ++i) {
        const auto& part = model.parts[i];
        if (part.empty()) {
            bad.push_back("part " + std::to_string(i) + " is empty");
            continue;
        }
        bool in_range = true;
        for (Vertex v : part) {
            if (v < 0 || v >= g.vertex_count()) {
                bad.push_back("part " + std::to_string(i) + " has out-of-range vertex " +
                              std::to_string(v));
                in_range = false;
                break;
            }
            if (used[v])
                bad.push_back("parts overlap at vertex " + std::to_string(v));
            used[v] = 1;
        }
        if (!in_range) continue;

        auto sub = induced_subgraph(g, part);
        if (connected_components(sub.graph).size() != 1)
            bad.push_back("part " + std::to_string(i) + " does not induce a connected subgraph");

        if (i < static_cast<int>(model.centers.size())) {
            Vertex center = model.centers[i];
            if (!set_contains(part, center)) {
                bad.push_back("center of part " + std::to_string(i) + " is outside the part");
            } else {
                long long ecc = bfs_eccentricity(sub.graph, sub.to_local[center]);
                auto dist = bfs_distances(sub.graph, sub.to_local[center]);
                bool reaches_all = true;
                for (int d : dist) reaches_all = reaches_all && d >= 0;
                if (!reaches_all || ecc > model.depth)
                    bad.push_back("part " + std::to_string(i) + " has radius > depth " +
                                  std::to_string(model.depth) + " from its center");
            }
        }
        if (model.bound && static_cast<long long>(part.size()) > *model.bound * model.depth)
            bad.push_back("part " + std::to_string(i) + " exceeds the size bound " +
                          std::to_string(*model.bound) + "*depth");
    }

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            bool linked = false;
            for (Vertex u : model.parts[i]) {
                for (Vertex w : model.parts[j])
                    if (g.has_edge(u, w)) {
                        linked = true;
                        break;
                    }
                if (linked) break;
            }
            if (!linked)
                bad.push_back("no edge between parts " + std::to_string(i) + " and " +
                              std::to_string(j));
        }
    return bad;
}

/// Tree decomposition (T, beta): parent-linked rooted tree (parent[root]
/// == -1) with one bag per node. Bags hold original vertex ids even when
/// the decomposition is of G-X; validation takes the deleted set.
struct TreeDecomposition {
    std::vector<int> parent;
    std::vector<VertexSet> bags;
    int width = -1;

    int node_count() const { return static_cast<int>(parent.size()); }

    int computed_width() const {
        int w = -1;
        for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
        return w;
    }
};

/// Checks edge coverage over G-deleted, per-vertex bag connectivity, and
/// width consistency. Vertices listed in `deleted` may be absent from every
/// bag; everyone else must induce a nonempty connected subtree.
inline std::vector<std::string> validate_tree_decomposition(const Graph& g,
                                                            const TreeDecomposition& td,
                                                            const VertexSet& deleted = {}) {
    std::vector<std::string> bad;
    int t = td.node_count();
    if (t == 0) {
        bad.push_back("decomposition has no nodes");
        return bad;
    }
    if (static_cast<int>(td.bags.size()) != t) {
        bad.push_back("bag count differs from node count");
        return bad;
    }
    int roots = 0;
    for (int z = 0; z < t; ++z) {
        if (td.parent[z] == -1) ++roots;
        else if (td.parent[z] < 0 || td.parent[z] >= t || td.parent[z] == z)
            bad.push_back("node " + std::to_string(z) + " has an invalid parent");
    }
    if (roots != 1) bad.push_back("decomposition must have exactly one root");

    std::vector<char> is_deleted(g.vertex_count(), 0);
    for (Vertex v : deleted) {
        g.check_vertex(v);
        is_deleted[v] = 1;
    }
    for (int z = 0; z < t; ++z)
        for (Vertex v : td.bags[z]) {
            if (v < 0 || v >= g.vertex_count())
                bad.push_back("bag " + std::to_string(z) + " has out-of-range vertex");
            else if (is_deleted[v])
                bad.push_back("bag " + std::to_string(z) + " contains deleted vertex " +
                              std::to_string(v));
        }
    if (!bad.empty()) return bad;

    for (auto [u, v] : g.edges()) {
        if (is_deleted[u] || is_deleted[v]) continue;
        bool covered = false;
        for (const auto& bag : td.bags)
            if (set_contains(bag, u) && set_contains(bag, v)) {
                covered = true;
                break;
            }
        if (!covered)
            bad.push_back("edge " + std::to_string(u) + " " + std::to_string(v) +
                          " not covered by any bag");
    }

    // Bag-subtree connectivity per surviving vertex.
    std::vector<std::vector<int>> tree_adj(t);
    for (int z = 0; z < t; ++z)
        if (td.parent[z] >= 0) {
            tree_adj[z].push_back(td.parent[z]);
            tree_adj[td.parent[z]].push_back(z);
        }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (is_deleted[v]) continue;
        std::vector<int> holders;
        for (int z = 0; z < t; ++z)
            if (set_contains(td.bags[z], v)) holders.push_back(z);
        if (holders.empty()) {
            bad.push_back("vertex " + std::to_string(v) + " appears in no bag");
            continue;
        }
        std::vector<char> in_set(t, 0), seen(t, 0);
        for (int z : holders) in_set[z] = 1;
        std::vector<int> stack{holders[0]};
        seen[holders[0]] = 1;
        std::size_t reached = 0;
        while (!stack.empty()) {
            int z = stack.back();
            stack.pop_back();
            ++reached;
            for (int w : tree_adj[z])
                if (in_set[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        if (reached != holders.size())
            bad.push_back("bags of vertex " + std::to_string(v) + " are not connected in T");
    }

    if (td.width != td.computed_width())
        bad.push_back("stored width " + std::to_string(td.width) + " differs from recomputed " +
                      std::to_string(td.computed_width()));
    return bad;
}

/// Output of the weighted separator algorithm: C u M is a balanced
/// separator, q(C) <= q(V)/ell, and M is the support of the attached model.
struct SeparatorCertificate {
    VertexSet c;
    VertexSet m;
    std::optional<CliqueModel> model;
    long long ell = 1;
    long long m0 = 1;
    long long depth = 0;
};

}  // namespace sepcert

#endif
