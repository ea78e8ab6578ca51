#ifndef SEPCERT_DECOMPOSE_HPP
#define SEPCERT_DECOMPOSE_HPP

#include "sepcert/certificates.hpp"
#include "sepcert/cost.hpp"
#include "sepcert/graph.hpp"
#include "sepcert/separator.hpp"

#include <algorithm>
#include <variant>
#include <vector>

namespace sepcert {

/// Smallest i >= 0 with (3/2)^i >= n, via 3^i >= n * 2^i in big integers.
inline long long ceil_log_three_halves(long long n) {
    require(n >= 1, "ceil_log_three_halves: n must be >= 1");
    long long i = 0;
    Int three_pow = 1, two_pow = 1;
    while (three_pow < Int(n) * two_pow) {
        three_pow *= 3;
        two_pow *= 2;
        ++i;
    }
    return i;
}

/// ell0 for the deletion recursion: ell * ceil(log_{3/2} n) + 1.
inline long long recursion_ell0(long long ell, long long n) {
    return ell * ceil_log_three_halves(n) + 1;
}

/// b(ell, n) = depth_bound(ell0, n): the depth bound every model produced
/// anywhere in the recursion obeys.
inline long long b_bound(long long ell, long long n) {
    require(ell >= 1 && n >= 1, "b_bound: arguments must be >= 1");
    return depth_bound(recursion_ell0(ell, n), n);
}

/// Width bound ceil(log_{3/2} n) * omega^2 * b(ell, n): each bag unions at
/// most ceil(log_{3/2} n) deletion-support sets, each of size at most
/// omega^2 * b.
inline Int k_bound(long long ell, long long omega, long long n) {
    require(ell >= 1 && omega >= 1 && n >= 1, "k_bound: arguments must be >= 1");
    return Int(ceil_log_three_halves(n)) * Int(omega) * Int(omega) * Int(b_bound(ell, n));
}

/// Low-treewidth deletion certificate: q(X) < q(V(G))/ell strictly, and a
/// validator-clean tree decomposition of G-X of width <= k_bound. The
/// per-node theta/gamma/mu record is kept for auditing.
struct DeletionDecomposition {
    VertexSet x;
    TreeDecomposition td;
    long long ell = 1;
    long long m0 = 1;
    int width = -1;
    std::vector<VertexSet> theta, gamma, mu;
    std::vector<int> node_depth;
    long long recursion_depth = 0;
    long long omega_observed = 1;
    long long b = 0;
    Int k = 0;
};

/// Recursive deletion: run the weighted separator algorithm with
/// ell0 = ell*ceil(log_{3/2} n)+1 on each node's induced subgraph, record
/// gamma = C and mu = M, and recurse on the components left after removing
/// C u M. Any model outcome aborts the whole computation and is returned.
inline std::variant<CliqueModel, DeletionDecomposition> low_tw_deletion(
    const Graph& g, const CostAssignment& q, long long ell, long long m0,
    const PrsOptions& opts = {}) {
    long long n = g.vertex_count();
    require(ell >= 1 && m0 >= 1, "low_tw_deletion: ell and m0 must be >= 1");
    require(q.size() == n, "low_tw_deletion: cost size mismatch");
    require(n >= 1 && q.total() > 0, "low_tw_deletion: costs must not be identically zero");

    long long ell0 = recursion_ell0(ell, n);

    DeletionDecomposition out;
    out.ell = ell;
    out.m0 = m0;
    out.b = b_bound(ell, n);

    std::optional<CliqueModel> aborted;

    // Iterative DFS so deep recursions cannot overflow the stack. Children
    // are visited in component order (sorted by smallest vertex).
    struct WorkItem {
        VertexSet theta;
        int parent;
        int depth;
    };
    std::vector<WorkItem> stack{{VertexSet{}, -1, 0}};
    {
        VertexSet all(n);
        for (Vertex v = 0; v < n; ++v) all[v] = v;
        stack[0].theta = std::move(all);
    }

    while (!stack.empty() && !aborted) {
        WorkItem item = std::move(stack.back());
        stack.pop_back();

        int node = static_cast<int>(out.td.parent.size());
        out.td.parent.push_back(item.parent);
        out.node_depth.push_back(item.depth);
        out.recursion_depth = std::max<long long>(out.recursion_depth, item.depth);

        auto sub = induced_subgraph(g, item.theta);
        CostAssignment q_sub = q.restrict_to(sub.to_original);
        PrsRun run = weighted_prs(sub.graph, q_sub, ell0, m0, opts);

        if (run.is_model()) {
            CliqueModel model = run.model();
            for (auto& part : model.parts)
                for (auto& v : part) v = sub.original(v);
            for (auto& c : model.centers) c = sub.original(c);
            for (auto& part : model.parts) part = make_set(std::move(part));
            aborted = std::move(model);
            break;
        }

        const auto& cert = run.certificate();
        VertexSet gamma_here, mu_here;
        for (Vertex v : cert.c) gamma_here.push_back(sub.original(v));
        for (Vertex v : cert.m) mu_here.push_back(sub.original(v));
        gamma_here = make_set(std::move(gamma_here));
        mu_here = make_set(std::move(mu_here));

        if (cert.model) {
            long long cap = cert.model->bound.value_or(cert.model->size());
            out.omega_observed =
                std::max<long long>(out.omega_observed, std::min<long long>(m0, cap));
        }

        out.theta.push_back(item.theta);
        out.gamma.push_back(gamma_here);
        out.mu.push_back(mu_here);
        out.x = set_union(out.x, gamma_here);

        VertexSet rest = set_difference(item.theta, set_union(gamma_here, mu_here));
        if (!rest.empty()) {
            auto rest_sub = induced_subgraph(g, rest);
            auto comps = connected_components(rest_sub.graph);
            // Push in reverse so the component with the smallest vertex is
            // processed (and numbered) first.
            for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
                VertexSet child;
                for (Vertex v : *it) child.push_back(rest_sub.original(v));
                stack.push_back({make_set(std::move(child)), node, item.depth + 1});
            }
        }
    }

    if (aborted) return *aborted;

    require(q.sum(out.x) * ell < q.total(),
            "low_tw_deletion: deleted cost is not strictly below q(V)/ell");
    require(out.recursion_depth <= ceil_log_three_halves(n),
            "low_tw_deletion: recursion deeper than ceil(log_{3/2} n)");
    if (opts.check_invariants) {
        // Theta sets at equal depth are pairwise disjoint.
        std::vector<std::vector<char>> seen_at_depth(out.recursion_depth + 1,
                                                     std::vector<char>(n, 0));
        for (std::size_t z = 0; z < out.theta.size(); ++z)
            for (Vertex v : out.theta[z]) {
                require(!seen_at_depth[out.node_depth[z]][v],
                        "low_tw_deletion: theta sets overlap at equal depth");
                seen_at_depth[out.node_depth[z]][v] = 1;
            }
    }

    out.k = k_bound(ell, out.omega_observed, n);

    // beta(v) = union of mu over ancestors including v.
    out.td.bags.resize(out.td.parent.size());
    for (std::size_t z = 0; z < out.td.parent.size(); ++z) {
        VertexSet bag = out.mu[z];
        int p = out.td.parent[z];
        if (p >= 0) bag = set_union(bag, out.td.bags[p]);
        out.td.bags[z] = std::move(bag);
    }
    out.td.width = out.td.computed_width();
    out.width = out.td.width;
    return out;
}

}  // namespace sepcert

#endif
