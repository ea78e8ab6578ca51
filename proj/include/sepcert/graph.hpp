#ifndef SEPCERT_GRAPH_HPP
#define SEPCERT_GRAPH_HPP

#include "sepcert/rational.hpp"

#include <algorithm>
#include <queue>
#include <utility>
#include <vector>

namespace sepcert {

using Vertex = int;

/// Sorted vector of distinct vertex ids. All vertex sets in certificates
/// are kept in this form so tie-breaks and serialization are deterministic.
using VertexSet = std::vector<Vertex>;

inline VertexSet make_set(std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline bool set_contains(const VertexSet& s, Vertex v) {
    return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Simple undirected graph on vertices 0..n-1, immutable once built.
/// No self-loops, no parallel edges; adjacency lists kept sorted.
class Graph {
  public:
    Graph() = default;

    Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edge_list) : n_(n), adj_(n) {
        require(n >= 0, "graph: negative vertex count");
        for (auto [u, v] : edge_list) add_edge_checked(u, v);
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
        std::sort(edges_.begin(), edges_.end());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
    int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }

    bool has_edge(Vertex u, Vertex v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        Vertex t = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::binary_search(a.begin(), a.end(), t);
    }

    void check_vertex(Vertex v) const {
        require(v >= 0 && v < n_, "vertex " + std::to_string(v) + " out of range");
    }

  private:
    void add_edge_checked(Vertex u, Vertex v) {
        check_vertex(u);
        check_vertex(v);
        require(u != v, "self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        require(!has_edge_slow(u, v),
                "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        edges_.emplace_back(u, v);
    }

    bool has_edge_slow(Vertex u, Vertex v) const {
        for (Vertex w : adj_[u])
            if (w == v) return true;
        return false;
    }

    int n_ = 0;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

/// Connected components as sorted vertex sets, ordered by minimum element.
inline std::vector<VertexSet> connected_components(const Graph& g) {
    int n = g.vertex_count();
    std::vector<VertexSet> comps;
    std::vector<char> seen(n, 0);
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        VertexSet comp;
        std::queue<Vertex> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            comp.push_back(u);
            for (Vertex w : g.neighbors(u)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

/// BFS distances from v0 (-1 for unreachable vertices).
inline std::vector<int> bfs_distances(const Graph& g, Vertex v0) {
    g.check_vertex(v0);
    std::vector<int> dist(g.vertex_count(), -1);
    std::queue<Vertex> q;
    dist[v0] = 0;
    q.push(v0);
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

/// Layer i holds the vertices at distance exactly i from v0; together the
/// layers partition v0's component.
inline std::vector<VertexSet> bfs_layers(const Graph& g, Vertex v0) {
    auto dist = bfs_distances(g, v0);
    int ecc = 0;
    for (int d : dist) ecc = std::max(ecc, d);
    std::vector<VertexSet> layers(ecc + 1);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (dist[v] >= 0) layers[dist[v]].push_back(v);
    return layers;
}

/// Eccentricity of v0 within its component.
inline long long bfs_eccentricity(const Graph& g, Vertex v0) {
    auto dist = bfs_distances(g, v0);
    long long ecc = 0;
    for (int d : dist) ecc = std::max<long long>(ecc, d);
    return ecc;
}

struct InducedSubgraph {
    Graph graph;                     // vertices renumbered 0..|S|-1
    std::vector<Vertex> to_original; // local index -> original id
    std::vector<int> to_local;       // original id -> local index (-1 outside S)

    Vertex original(Vertex local) const { return to_original.at(local); }
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    InducedSubgraph out;
    out.to_original = s;
    out.to_local.assign(g.vertex_count(), -1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        g.check_vertex(s[i]);
        out.to_local[s[i]] = static_cast<int>(i);
    }
    std::vector<std::pair<Vertex, Vertex>> edge_list;
    for (auto [u, v] : g.edges()) {
        int lu = out.to_local[u], lv = out.to_local[v];
        if (lu >= 0 && lv >= 0) edge_list.emplace_back(lu, lv);
    }
    out.graph = Graph(static_cast<int>(s.size()), edge_list);
    return out;
}

}  // namespace sepcert

#endif
