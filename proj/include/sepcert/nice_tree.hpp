#ifndef SEPCERT_NICE_TREE_HPP
#define SEPCERT_NICE_TREE_HPP

#include "sepcert/certificates.hpp"
#include "sepcert/graph.hpp"

#include <array>
#include <vector>

namespace sepcert {

/// Nice form of a tree decomposition: every node is a leaf (empty bag), an
/// introduce/forget step changing the bag by one vertex, or a join of two
/// children with identical bags. The root bag is empty.
struct NiceDecomposition {
    enum class Kind { Leaf, Introduce, Forget, Join };

    struct Node {
        Kind kind = Kind::Leaf;
        std::array<int, 2> child{-1, -1};
        Vertex vertex = -1;  // introduced or forgotten vertex
        VertexSet bag;
    };

    std::vector<Node> nodes;
    int root = -1;
    int width = -1;

    int node_count() const { return static_cast<int>(nodes.size()); }
};

namespace detail {

struct NiceBuilder {
    NiceDecomposition out;

    int add(NiceDecomposition::Kind kind, int c0, int c1, Vertex v, VertexSet bag) {
        NiceDecomposition::Node node;
        node.kind = kind;
        node.child = {c0, c1};
        node.vertex = v;
        node.bag = std::move(bag);
        out.nodes.push_back(std::move(node));
        return static_cast<int>(out.nodes.size()) - 1;
    }

    int leaf() { return add(NiceDecomposition::Kind::Leaf, -1, -1, -1, {}); }

    /// Introduce/forget chain turning `from`'s bag into `to`.
    int morph(int node, const VertexSet& from, const VertexSet& to) {
        VertexSet bag = from;
        for (Vertex v : set_difference(from, to)) {
            bag = set_difference(bag, {v});
            node = add(NiceDecomposition::Kind::Forget, node, -1, v, bag);
        }
        for (Vertex v : set_difference(to, from)) {
            bag = set_union(bag, {v});
            node = add(NiceDecomposition::Kind::Introduce, node, -1, v, bag);
        }
        return node;
    }
};

}  // namespace detail

/// Converts a tree decomposition into nice form of the same width; node
/// count stays O(width * nodes).
inline NiceDecomposition make_nice(const TreeDecomposition& td) {
    int t = td.node_count();
    require(t >= 1, "make_nice: empty decomposition");
    std::vector<std::vector<int>> children(t);
    int root = -1;
    for (int z = 0; z < t; ++z) {
        if (td.parent[z] < 0) {
            require(root < 0, "make_nice: multiple roots");
            root = z;
        } else {
            children[td.parent[z]].push_back(z);
        }
    }
    require(root >= 0, "make_nice: no root");

    detail::NiceBuilder builder;
    // Post-order over the original tree; produces for each node a nice
    // subtree whose top bag equals the node's bag.
    std::vector<int> result(t, -1);
    std::vector<std::pair<int, int>> stack{{root, 0}};
    while (!stack.empty()) {
        auto& [z, phase] = stack.back();
        if (phase < static_cast<int>(children[z].size())) {
            int child = children[z][phase];
            ++phase;
            stack.emplace_back(child, 0);
            continue;
        }
        int top;
        if (children[z].empty()) {
            top = builder.morph(builder.leaf(), {}, td.bags[z]);
        } else {
            std::vector<int> morphs;
            for (int child : children[z])
                morphs.push_back(builder.morph(result[child], td.bags[child], td.bags[z]));
            top = morphs[0];
            for (std::size_t i = 1; i < morphs.size(); ++i)
                top = builder.add(NiceDecomposition::Kind::Join, top, morphs[i], -1, td.bags[z]);
        }
        result[z] = top;
        stack.pop_back();
    }

    builder.out.root = builder.morph(result[root], td.bags[root], {});
    builder.out.width = -1;
    for (const auto& node : builder.out.nodes)
        builder.out.width = std::max(builder.out.width, static_cast<int>(node.bag.size()) - 1);
    return builder.out;
}

}  // namespace sepcert

#endif
