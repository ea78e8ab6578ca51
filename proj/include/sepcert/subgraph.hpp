#ifndef SEPCERT_SUBGRAPH_HPP
#define SEPCERT_SUBGRAPH_HPP

#include "sepcert/graph.hpp"
#include "sepcert/nice_tree.hpp"
#include "sepcert/thindist.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace sepcert {

struct IsoOptions {
    unsigned long long state_budget = 1000000000ULL;
};

struct IsoResult {
    bool found = false;
    std::vector<Vertex> embedding;  // H vertex -> G vertex
};

namespace detail {

/// Dynamic program over a nice decomposition of G, deciding whether H
/// embeds as a subgraph. A state is the partial injective map from the
/// current bag into V(H) u {unused} plus the set S of H-vertices already
/// placed; each state carries one representative embedding so a positive
/// answer comes with its witness. Any state with S complete is a full,
/// verified embedding, so the search exits as soon as one appears.
class SubgraphDp {
  public:
    SubgraphDp(const Graph& h, const Graph& g, const NiceDecomposition& nd,
               const IsoOptions& opts)
        : h_(h), g_(g), nd_(nd), opts_(opts), m_(h.vertex_count()) {}

    IsoResult run() {
        require(m_ <= 15, "subgraph dp: pattern has more than 15 vertices");
        full_ = static_cast<std::uint16_t>((1u << m_) - 1);

        Int apriori = ipow(Int(nd_.width + 2), static_cast<unsigned long long>(m_)) *
                      Int(nd_.node_count());
        require(apriori <= Int(opts_.state_budget),
                "subgraph dp: state space over budget, (width+2)^m * nodes = " + apriori.str());

        if (m_ == 0) return IsoResult{true, {}};

        maps_.assign(nd_.node_count(), {});
        done_.assign(nd_.node_count(), 0);
        // Post-order over the nice tree.
        std::vector<std::pair<int, int>> stack{{nd_.root, 0}};
        while (!stack.empty()) {
            auto& [z, phase] = stack.back();
            const auto& node = nd_.nodes[z];
            int child = phase < 2 ? node.child[phase] : -1;
            if (child >= 0 && !done_[child]) {
                ++phase;
                stack.emplace_back(child, 0);
                continue;
            }
            if (child >= 0) {
                ++phase;
                continue;
            }
            if (process(z)) {
                IsoResult out;
                out.found = true;
                out.embedding = winner_;
                return out;
            }
            done_[z] = 1;
            if (node.child[0] >= 0) maps_[node.child[0]].clear();
            if (node.child[1] >= 0) maps_[node.child[1]].clear();
            stack.pop_back();
        }
        return IsoResult{};
    }

  private:
    using Key = std::string;              // assignment bytes then S (two bytes)
    using Witness = std::vector<Vertex>;  // H vertex -> G vertex, -1 unset
    using StateMap = std::unordered_map<Key, Witness>;

    static Key encode(const std::vector<std::int8_t>& assign, std::uint16_t s) {
        Key key(assign.size() + 2, '\0');
        for (std::size_t i = 0; i < assign.size(); ++i)
            key[i] = static_cast<char>(assign[i] + 1);
        key[assign.size()] = static_cast<char>(s & 0xff);
        key[assign.size() + 1] = static_cast<char>(s >> 8);
        return key;
    }

    static std::uint16_t key_mask(const Key& key) {
        auto n = key.size();
        return static_cast<std::uint16_t>(static_cast<unsigned char>(key[n - 2]) |
                                          (static_cast<unsigned char>(key[n - 1]) << 8));
    }

    static std::vector<std::int8_t> key_assign(const Key& key) {
        std::vector<std::int8_t> assign(key.size() - 2);
        for (std::size_t i = 0; i < assign.size(); ++i)
            assign[i] = static_cast<std::int8_t>(key[i]) - 1;
        return assign;
    }

    // Returns true when a complete embedding appeared.
    bool insert(StateMap& map, const std::vector<std::int8_t>& assign, std::uint16_t s,
                Witness witness) {
        if (s == full_) {
            winner_ = std::move(witness);
            return true;
        }
        Key key = encode(assign, s);
        if (map.emplace(std::move(key), std::move(witness)).second) {
            ++states_;
            require(states_ <= opts_.state_budget, "subgraph dp: runtime state budget exceeded");
        }
        return false;
    }

    bool process(int z) {
        const auto& node = nd_.nodes[z];
        StateMap& states = maps_[z];
        switch (node.kind) {
            case NiceDecomposition::Kind::Leaf: {
                return insert(states, {}, 0, Witness(m_, -1));
            }
            case NiceDecomposition::Kind::Introduce: {
                const auto& child_bag = nd_.nodes[node.child[0]].bag;
                int pos = static_cast<int>(
                    std::lower_bound(node.bag.begin(), node.bag.end(), node.vertex) -
                    node.bag.begin());
                for (const auto& [ckey, cwit] : maps_[node.child[0]]) {
                    auto cassign = key_assign(ckey);
                    std::uint16_t s = key_mask(ckey);
                    std::vector<std::int8_t> assign(cassign.size() + 1);
                    std::copy(cassign.begin(), cassign.begin() + pos, assign.begin());
                    assign[pos] = -1;
                    std::copy(cassign.begin() + pos, cassign.end(), assign.begin() + pos + 1);
                    if (insert(states, assign, s, cwit)) return true;
                    for (int a = 0; a < m_; ++a) {
                        if (s >> a & 1u) continue;
                        bool ok = true;
                        for (Vertex b : h_.neighbors(a)) {
                            if (!(s >> b & 1u)) continue;
                            int bpos = -1;
                            for (std::size_t i = 0; i < cassign.size(); ++i)
                                if (cassign[i] == b) {
                                    bpos = static_cast<int>(i);
                                    break;
                                }
                            // A placed neighbor must still be in the bag and
                            // adjacent to the introduced vertex.
                            if (bpos < 0 || !g_.has_edge(node.vertex, child_bag[bpos])) {
                                ok = false;
                                break;
                            }
                        }
                        if (!ok) continue;
                        assign[pos] = static_cast<std::int8_t>(a);
                        Witness wit = cwit;
                        wit[a] = node.vertex;
                        if (insert(states, assign, static_cast<std::uint16_t>(s | (1u << a)),
                                   std::move(wit)))
                            return true;
                        assign[pos] = -1;
                    }
                }
                return false;
            }
            case NiceDecomposition::Kind::Forget: {
                const auto& child_bag = nd_.nodes[node.child[0]].bag;
                int pos = static_cast<int>(
                    std::lower_bound(child_bag.begin(), child_bag.end(), node.vertex) -
                    child_bag.begin());
                for (const auto& [ckey, cwit] : maps_[node.child[0]]) {
                    auto cassign = key_assign(ckey);
                    std::uint16_t s = key_mask(ckey);
                    int a = cassign[pos];
                    if (a >= 0) {
                        // Every edge of a forgotten H-vertex must already be
                        // realized, i.e. all its neighbors are placed.
                        bool ok = true;
                        for (Vertex b : h_.neighbors(a))
                            if (!(s >> b & 1u)) {
                                ok = false;
                                break;
                            }
                        if (!ok) continue;
                    }
                    std::vector<std::int8_t> assign(cassign.size() - 1);
                    std::copy(cassign.begin(), cassign.begin() + pos, assign.begin());
                    std::copy(cassign.begin() + pos + 1, cassign.end(), assign.begin() + pos);
                    if (insert(states, assign, s, cwit)) return true;
                }
                return false;
            }
            case NiceDecomposition::Kind::Join: {
                // Children share the bag; matching states must agree on the
                // bag assignment and overlap exactly in the bag labels.
                StateMap& left = maps_[node.child[0]];
                StateMap& right = maps_[node.child[1]];
                std::unordered_map<Key, std::vector<const Key*>> by_assign;
                for (const auto& [rkey, rwit] : right) {
                    Key assign_only = rkey.substr(0, rkey.size() - 2);
                    by_assign[assign_only].push_back(&rkey);
                }
                for (const auto& [lkey, lwit] : left) {
                    auto lassign = key_assign(lkey);
                    std::uint16_t ls = key_mask(lkey);
                    std::uint16_t used = 0;
                    for (auto a : lassign)
                        if (a >= 0) used |= static_cast<std::uint16_t>(1u << a);
                    auto it = by_assign.find(lkey.substr(0, lkey.size() - 2));
                    if (it == by_assign.end()) continue;
                    for (const Key* rkey : it->second) {
                        std::uint16_t rs = key_mask(*rkey);
                        if ((ls & rs) != used) continue;
                        const Witness& rwit = right.at(*rkey);
                        Witness wit = lwit;
                        for (int a = 0; a < m_; ++a)
                            if ((rs >> a & 1u) && !(used >> a & 1u)) wit[a] = rwit[a];
                        if (insert(states, lassign, static_cast<std::uint16_t>(ls | rs),
                                   std::move(wit)))
                            return true;
                    }
                }
                return false;
            }
        }
        return false;
    }

    const Graph& h_;
    const Graph& g_;
    const NiceDecomposition& nd_;
    IsoOptions opts_;
    int m_;
    std::uint16_t full_ = 0;
    unsigned long long states_ = 0;
    std::vector<StateMap> maps_;
    std::vector<char> done_;
    Witness winner_;
};

}  // namespace detail

/// Subgraph isomorphism over a nice decomposition of G. H vertices are
/// reordered by descending degree before the DP runs (smaller live state
/// sets, identical answers); the returned embedding is in original labels.
inline IsoResult td_subgraph_iso(const Graph& h, const Graph& g, const NiceDecomposition& nd,
                                 const IsoOptions& opts = {}) {
    int m = h.vertex_count();
    if (m == 0) return IsoResult{true, {}};
    std::vector<Vertex> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        return h.degree(a) != h.degree(b) ? h.degree(a) > h.degree(b) : a < b;
    });
    std::vector<int> rank(m);
    for (int i = 0; i < m; ++i) rank[order[i]] = i;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (auto [u, v] : h.edges()) edges.emplace_back(rank[u], rank[v]);
    Graph h_sorted(m, edges);

    auto res = detail::SubgraphDp(h_sorted, g, nd, opts).run();
    if (!res.found) return res;
    IsoResult out;
    out.found = true;
    out.embedding.assign(m, -1);
    for (int i = 0; i < m; ++i) out.embedding[i] = res.embedding[rank[i]];
    return out;
}

/// Checks an embedding maps every H edge onto a G edge injectively.
inline bool verify_embedding(const Graph& h, const Graph& g,
                             const std::vector<Vertex>& embedding) {
    if (static_cast<int>(embedding.size()) != h.vertex_count()) return false;
    std::vector<char> used(g.vertex_count(), 0);
    for (Vertex img : embedding) {
        if (img < 0 || img >= g.vertex_count() || used[img]) return false;
        used[img] = 1;
    }
    for (auto [u, v] : h.edges())
        if (!g.has_edge(embedding[u], embedding[v])) return false;
    return true;
}

/// Decides H <= G through the thin-distribution family: with ell = m+1 the
/// pattern avoids some support column entirely, so it suffices to search
/// the bounded-width graphs G - X_i. Equal sizes fall back to the
/// all-bijections test.
inline IsoResult contains_subgraph(const Graph& h, const Graph& g, const FragileFamily& family,
                                   const IsoOptions& opts = {}) {
    int m = h.vertex_count();
    int n = g.vertex_count();
    if (m == 0) return IsoResult{true, {}};
    if (m > n) return IsoResult{};

    if (m == n) {
        require(m <= 10, "contains_subgraph: equal-size inputs over the permutation budget");
        std::vector<Vertex> perm(m);
        for (int i = 0; i < m; ++i) perm[i] = i;
        do {
            bool ok = true;
            for (auto [u, v] : h.edges())
                if (!g.has_edge(perm[u], perm[v])) {
                    ok = false;
                    break;
                }
            if (ok) return IsoResult{true, perm};
        } while (std::next_permutation(perm.begin(), perm.end()));
        return IsoResult{};
    }

    const ThinDistribution& dist = family.at(m + 1);
    VertexSet all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    for (const auto& col : dist.columns) {
        auto sub = induced_subgraph(g, set_difference(all, col.x));
        TreeDecomposition local;
        local.parent = col.td.parent;
        local.bags.reserve(col.td.bags.size());
        for (const auto& bag : col.td.bags) {
            VertexSet b;
            for (Vertex v : bag) b.push_back(sub.to_local[v]);
            local.bags.push_back(make_set(std::move(b)));
        }
        local.width = local.computed_width();
        auto nd = make_nice(local);
        auto res = td_subgraph_iso(h, sub.graph, nd, opts);
        if (res.found) {
            for (auto& img : res.embedding) img = sub.original(img);
            require(verify_embedding(h, g, res.embedding),
                    "contains_subgraph: embedding failed re-verification");
            return res;
        }
    }
    return IsoResult{};
}

}  // namespace sepcert

#endif
