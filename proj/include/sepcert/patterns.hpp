#ifndef SEPCERT_PATTERNS_HPP
#define SEPCERT_PATTERNS_HPP

#include "sepcert/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace sepcert {

/// One representative per isomorphism class of graphs on exactly s
/// vertices, canonical by minimum adjacency-matrix bit-string. The whole
/// orbit of each class is marked while scanning masks in increasing order,
/// so the smallest mask of every class is the representative. Hard-capped
/// at s = 7; class counts explode beyond that.
inline std::vector<Graph> enumerate_small_patterns(int s) {
    require(s >= 1 && s <= 7, "enumerate_small_patterns: size must be in [1, 7]");
    int pairs = s * (s - 1) / 2;
    auto pair_index = [&](int i, int j) {  // i < j
        return i * s - i * (i + 1) / 2 + (j - i - 1);
    };

    std::vector<std::array<int, 2>> pair_of(pairs);
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) pair_of[pair_index(i, j)] = {i, j};

    std::vector<std::vector<int>> perms;
    {
        std::vector<int> perm(s);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            perms.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    std::vector<char> seen(std::size_t(1) << pairs, 0);
    std::vector<Graph> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << pairs); ++mask) {
        if (seen[mask]) continue;
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (int e = 0; e < pairs; ++e)
            if (mask >> e & 1u) edges.emplace_back(pair_of[e][0], pair_of[e][1]);
        out.emplace_back(s, edges);
        for (const auto& perm : perms) {
            std::uint32_t image = 0;
            for (int e = 0; e < pairs; ++e) {
                if (!(mask >> e & 1u)) continue;
                int a = perm[pair_of[e][0]], b = perm[pair_of[e][1]];
                image |= std::uint32_t(1) << pair_index(std::min(a, b), std::max(a, b));
            }
            seen[image] = 1;
        }
    }
    return out;
}

}  // namespace sepcert

#endif
