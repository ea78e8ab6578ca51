#ifndef SEPCERT_SEPARATOR_HPP
#define SEPCERT_SEPARATOR_HPP

#include "sepcert/certificates.hpp"
#include "sepcert/config.hpp"
#include "sepcert/cost.hpp"
#include "sepcert/graph.hpp"

#include <algorithm>
#include <optional>
#include <variant>
#include <vector>

namespace sepcert {

/// d(ell, n) = floor(2 + 2*ell*log2(2*min(ell,n)*n^2)), exactly. Since the
/// base M is an integer, floor(2*ell*log2 M) = bitlen(M^(2*ell)) - 1.
inline long long depth_bound(long long ell, long long n) {
    require(ell >= 1 && n >= 1, "depth_bound: arguments must be >= 1");
    Int m = Int(2) * std::min(ell, n) * Int(n) * Int(n);
    return 2 + floor_log2_pow(m, static_cast<unsigned long long>(2 * ell));
}

/// Exact floor(2 + ell0*log2(r*n)), the eccentricity bound of the
/// separator-or-radius lemma.
inline long long radius_bound(long long ell0, const Int& r, long long n) {
    require(ell0 >= 1 && r >= 1 && n >= 1, "radius_bound: arguments must be >= 1");
    return 2 + floor_log2_pow(r * n, static_cast<unsigned long long>(ell0));
}

struct PrsParams {
    long long ell = 1;
    long long m0 = 1;
    long long depth = 0;  // depth_bound(ell, n)

    static PrsParams make(long long ell, long long m0, long long n) {
        require(ell >= 1 && m0 >= 1, "ell and m0 must be >= 1");
        return PrsParams{ell, m0, depth_bound(ell, std::max<long long>(n, 1))};
    }
};

/// Either a center whose measured in-graph eccentricity is small, or a
/// partition (C2, D, E) with no D-E edges and q(C2) <= q(D)/ell0,
/// q(C2) <= q(E)/ell0.
struct RadiusOrSplit {
    bool is_center = false;
    Vertex center = -1;
    long long eccentricity = 0;
    VertexSet c2, d_side, e_side;
};

/// Separator-or-radius subroutine. Requires every vertex to carry positive
/// cost at least q(V(G))/r; n_outer is the vertex count of the enclosing
/// graph the caller works in (|V(G)| <= n_outer).
inline RadiusOrSplit sep_or_radius(const Graph& g, const CostAssignment& q, long long ell0,
                                   const Int& r, long long n_outer) {
    int n = g.vertex_count();
    require(n >= 1, "sep_or_radius: empty graph");
    require(ell0 >= 1 && r >= 1, "sep_or_radius: ell0 and r must be >= 1");
    require(n_outer >= n, "sep_or_radius: n_outer smaller than the graph");
    require(q.size() == n, "sep_or_radius: cost size mismatch");
    Rational total = q.total();
    for (Vertex v = 0; v < n; ++v) {
        require(q.at(v) > 0, "sep_or_radius: vertex " + std::to_string(v) +
                                 " has non-positive cost");
        require(q.at(v) * Rational(r) >= total,
                "sep_or_radius: vertex " + std::to_string(v) + " has cost below q(V)/r");
    }

    auto comps = connected_components(g);
    if (comps.size() > 1) {
        RadiusOrSplit out;
        out.d_side = comps[0];
        VertexSet rest;
        for (std::size_t i = 1; i < comps.size(); ++i) rest = set_union(rest, comps[i]);
        out.e_side = std::move(rest);
        return out;
    }
    if (n == 1) {
        RadiusOrSplit out;
        out.is_center = true;
        out.center = 0;
        out.eccentricity = 0;
        return out;
    }

    // Root the BFS at the maximum-cost vertex, smallest id on ties.
    Vertex root = 0;
    for (Vertex v = 1; v < n; ++v)
        if (q.at(v) > q.at(root)) root = v;

    auto layers = bfs_layers(g, root);
    long long depth = static_cast<long long>(layers.size()) - 1;
    std::vector<Rational> layer_cost(layers.size());
    for (std::size_t i = 0; i < layers.size(); ++i) layer_cost[i] = q.sum(layers[i]);

    Rational below = 0;  // q(S_i): cost of layers < i
    for (long long i = 1; i <= depth - 1; ++i) {
        below += layer_cost[i - 1];
        Rational above = total - below - layer_cost[i];  // q(L_i)
        const Rational& here = layer_cost[i];
        if (here * ell0 <= below && here * ell0 <= above) {
            RadiusOrSplit out;
            out.c2 = layers[i];
            VertexSet s_side, l_side;
            for (long long j = 0; j < i; ++j) s_side = set_union(s_side, layers[j]);
            for (std::size_t j = i + 1; j < layers.size(); ++j)
                l_side = set_union(l_side, layers[j]);
            out.d_side = std::move(s_side);
            out.e_side = std::move(l_side);
            return out;
        }
    }

    RadiusOrSplit out;
    out.is_center = true;
    out.center = root;
    out.eccentricity = depth;
    return out;
}

struct PrsOptions {
    bool check_invariants = false;
};

/// Outcome of the weighted separator algorithm plus the iteration count
/// (the loop provably terminates within 2n iterations).
struct PrsRun {
    std::variant<CliqueModel, SeparatorCertificate> outcome;
    long long iterations = 0;
    long long peak_parts = 0;

    bool is_model() const { return outcome.index() == 0; }
    const CliqueModel& model() const { return std::get<CliqueModel>(outcome); }
    const SeparatorCertificate& certificate() const {
        return std::get<SeparatorCertificate>(outcome);
    }
};

namespace detail {

struct PrsState {
    const Graph& g;
    const CostAssignment& q;
    long long ell, m0, d, n;
    std::vector<char> in_a, in_r;  // A and R; model parts tracked separately
    std::vector<VertexSet> parts;
    std::vector<Vertex> part_centers;
    long long m_peak = 0;

    VertexSet r_set() const {
        VertexSet out;
        for (Vertex v = 0; v < n; ++v)
            if (in_r[v]) out.push_back(v);
        return out;
    }

    VertexSet a_set() const {
        VertexSet out;
        for (Vertex v = 0; v < n; ++v)
            if (in_a[v]) out.push_back(v);
        return out;
    }

    VertexSet frontier_c1() const {  // vertices of R with a neighbor in A
        VertexSet out;
        for (Vertex v = 0; v < n; ++v) {
            if (!in_r[v]) continue;
            for (Vertex w : g.neighbors(v))
                if (in_a[w]) {
                    out.push_back(v);
                    break;
                }
        }
        return out;
    }

    CliqueModel current_model() const {
        CliqueModel model;
        model.parts = parts;
        model.centers = part_centers;
        model.depth = d;
        model.bound = std::min<long long>(m0, std::max<long long>(m_peak, 1));
        return model;
    }
};

inline void check_prs_invariants(const PrsState& st, const VertexSet& c1) {
    long long a_size = 0;
    for (Vertex v = 0; v < st.n; ++v) a_size += st.in_a[v] ? 1 : 0;
    require(3 * a_size <= 2 * st.n, "prs invariant (i) violated: |A| > 2n/3");
    require(st.q.sum(c1) * (2 * st.ell) <= st.q.sum(st.a_set()),
            "prs invariant (ii) violated: q(C1) > q(A)/(2 ell)");
    auto model = st.current_model();
    auto bad = validate_model(st.g, model);
    require(bad.empty(), "prs invariant (iii) violated: " + (bad.empty() ? "" : bad.front()));
}

}  // namespace detail

/// Weighted separator algorithm. Returns either an m0-bounded model of
/// K_{m0} of depth d = depth_bound(ell, n), or disjoint C, M with C u M a
/// balanced separator, q(C) <= q(V(G))/ell exactly, and M the support of a
/// clique model of depth d attached to the certificate.
inline PrsRun weighted_prs(const Graph& g, const CostAssignment& q, long long ell, long long m0,
                           const PrsOptions& opts = {}) {
    long long n = g.vertex_count();
    require(ell >= 1 && m0 >= 1, "weighted_prs: ell and m0 must be >= 1");
    require(q.size() == n, "weighted_prs: cost size mismatch");

    PrsRun run;
    if (n == 0) {
        SeparatorCertificate cert;
        cert.ell = ell;
        cert.m0 = m0;
        cert.depth = 0;
        run.outcome = std::move(cert);
        return run;
    }

    if (ell > n) {
        // Here d(ell, n) >= n, so the largest component is the support of a
        // 1-bounded model of K_1 within depth; the other components are
        // each at most half the graph.
        long long d = depth_bound(ell, n);
        auto comps = connected_components(g);
        std::size_t largest = 0;
        for (std::size_t i = 1; i < comps.size(); ++i)
            if (comps[i].size() > comps[largest].size()) largest = i;
        SeparatorCertificate cert;
        cert.ell = ell;
        cert.m0 = m0;
        cert.depth = d;
        cert.m = comps[largest];
        CliqueModel model;
        model.parts = {comps[largest]};
        model.centers = {comps[largest].front()};
        model.depth = d;
        model.bound = 1;
        cert.model = std::move(model);
        run.outcome = std::move(cert);
        run.peak_parts = 1;
        return run;
    }

    long long d = depth_bound(ell, n);
    Rational total = q.total();
    Rational cheap_threshold = total / (Rational(2) * ell * n);

    VertexSet c0;
    detail::PrsState st{g, q, ell, m0, d, n, std::vector<char>(n, 0), std::vector<char>(n, 0),
                        {}, {}, 0};
    for (Vertex v = 0; v < n; ++v) {
        if (q.at(v) <= cheap_threshold) c0.push_back(v);
        else st.in_r[v] = 1;
    }

    long long prev_a = -1, prev_r = -1;
    for (long long iter = 1; iter <= 2 * n; ++iter) {
        run.iterations = iter;
        long long m = static_cast<long long>(st.parts.size());

        if (m == m0) {
            auto model = st.current_model();
            run.peak_parts = st.m_peak;
            run.outcome = std::move(model);
            return run;
        }

        VertexSet c1 = st.frontier_c1();
        if (opts.check_invariants) {
            detail::check_prs_invariants(st, c1);
            long long a_size = 0, r_size = 0;
            for (Vertex v = 0; v < n; ++v) {
                a_size += st.in_a[v] ? 1 : 0;
                r_size += st.in_r[v] ? 1 : 0;
            }
            if (prev_a >= 0) {
                require(a_size >= prev_a && r_size <= prev_r,
                        "prs progress violated: A shrank or R grew");
                require(a_size > prev_a || r_size < prev_r,
                        "prs progress violated: no strict change");
            }
            prev_a = a_size;
            prev_r = r_size;
        }

        long long r_minus_c1 = 0;
        for (Vertex v = 0; v < n; ++v) r_minus_c1 += st.in_r[v] ? 1 : 0;
        r_minus_c1 -= static_cast<long long>(c1.size());
        if (3 * r_minus_c1 <= 2 * n) {
            SeparatorCertificate cert;
            cert.ell = ell;
            cert.m0 = m0;
            cert.depth = d;
            cert.c = set_union(c0, c1);
            cert.model = st.current_model();
            cert.m = cert.model->support();
            run.peak_parts = st.m_peak;
            run.outcome = std::move(cert);
            return run;
        }

        // Absorb the first part with no neighbor left in R.
        bool absorbed = false;
        for (std::size_t i = 0; i < st.parts.size(); ++i) {
            bool touches_r = false;
            for (Vertex v : st.parts[i]) {
                for (Vertex w : g.neighbors(v))
                    if (st.in_r[w]) {
                        touches_r = true;
                        break;
                    }
                if (touches_r) break;
            }
            if (!touches_r) {
                for (Vertex v : st.parts[i]) st.in_a[v] = 1;
                st.parts.erase(st.parts.begin() + i);
                st.part_centers.erase(st.part_centers.begin() + i);
                absorbed = true;
                break;
            }
        }
        if (absorbed) continue;

        VertexSet r_vertices = st.r_set();
        auto sub = induced_subgraph(g, r_vertices);
        CostAssignment q_sub = q.restrict_to(sub.to_original);
        Int r_param = Int(2) * ell * n;
        auto rs = sep_or_radius(sub.graph, q_sub, 2 * ell, r_param, n);

        if (rs.is_center) {
            require(rs.eccentricity <= d, "sep_or_radius center exceeded the depth bound");
            Vertex v0 = sub.original(rs.center);
            auto dist = bfs_distances(sub.graph, rs.center);
            VertexSet new_part{v0};
            for (const auto& part : st.parts) {
                // Nearest R-neighbor of this part, smallest original id on
                // distance ties; walk back choosing the smallest-id parent.
                Vertex target = -1;
                int best = -1;
                for (Vertex v : part)
                    for (Vertex w : g.neighbors(v)) {
                        int lw = sub.to_local[w];
                        if (lw < 0 || dist[lw] < 0) continue;
                        if (target < 0 || dist[lw] < best ||
                            (dist[lw] == best && sub.original(lw) < target)) {
                            best = dist[lw];
                            target = sub.original(lw);
                        }
                    }
                require(target >= 0, "part lost contact with R during growth");
                int cur = sub.to_local[target];
                while (cur != rs.center) {
                    new_part.push_back(sub.original(cur));
                    int next = -1;
                    for (Vertex w : sub.graph.neighbors(cur))
                        if (dist[w] == dist[cur] - 1 && (next < 0 || w < next)) next = w;
                    cur = next;
                }
            }
            new_part = make_set(std::move(new_part));
            require(static_cast<long long>(new_part.size()) <=
                        static_cast<long long>(st.parts.size()) * d + 1,
                    "new part exceeds m*d + 1 vertices");
            for (Vertex v : new_part) st.in_r[v] = 0;
            st.parts.push_back(std::move(new_part));
            st.part_centers.push_back(v0);
            st.m_peak = std::max<long long>(st.m_peak, static_cast<long long>(st.parts.size()));
        } else {
            // Fold the smaller side into A; on ties the side holding the
            // smallest vertex id.
            VertexSet d_orig, e_orig;
            for (Vertex v : rs.d_side) d_orig.push_back(sub.original(v));
            for (Vertex v : rs.e_side) e_orig.push_back(sub.original(v));
            d_orig = make_set(std::move(d_orig));
            e_orig = make_set(std::move(e_orig));
            const VertexSet* fold = nullptr;
            if (d_orig.size() != e_orig.size())
                fold = d_orig.size() < e_orig.size() ? &d_orig : &e_orig;
            else
                fold = d_orig.front() < e_orig.front() ? &d_orig : &e_orig;
            for (Vertex v : *fold) {
                st.in_a[v] = 1;
                st.in_r[v] = 0;
            }
        }
    }
    throw Error("weighted_prs: exceeded the 2n iteration bound");
}

inline PrsRun prs_uniform(const Graph& g, long long ell, long long m0,
                          const PrsOptions& opts = {}) {
    return weighted_prs(g, CostAssignment::uniform(g.vertex_count()), ell, m0, opts);
}

/// f(r) = floor(c_f * r^(1.25/eps)), the configured expansion bound for
/// the class parameters, capped (values above cap behave identically).
inline long long expansion_bound(const Rational& c_f, long long r, const Rational& eps,
                                 long long cap) {
    require(eps > 0 && eps <= 1, "expansion bound: eps must be in (0, 1]");
    require(r >= 1, "expansion bound: r must be >= 1");
    // 1.25/eps = 5*den(eps) / (4*num(eps))
    Int p = Int(5) * rational_den(eps);
    Int qq = Int(4) * rational_num(eps);
    return floor_coef_pow(c_f, r, p, qq, cap);
}

struct ClassSeparatorResult {
    long long ell = 1;
    long long m0 = 1;
    PrsRun run;
};

/// Balanced-separator attempt for membership parameters (c, eps): runs the
/// uniform-cost algorithm with ell ~ a*n^(eps/5) and m0 = f(d)+1. A model
/// outcome is a witness against membership under the configured f-bound.
inline ClassSeparatorResult class_separator(const Graph& g, const Rational& /*c*/,
                                            const Rational& eps, const ClassConstants& constants,
                                            const PrsOptions& opts = {}) {
    require(eps > 0 && eps <= 1, "class_separator: eps must be in (0, 1]");
    long long n = std::max<long long>(g.vertex_count(), 1);
    // ell = max(1, ceil(a * n^(eps/5)))
    Int p = rational_num(eps);
    Int qq = Int(5) * rational_den(eps);
    long long ell = std::max<long long>(1, ceil_coef_pow(constants.a, n, p, qq, n + 1));
    long long d = depth_bound(ell, n);
    long long m0 = std::min<long long>(n + 1, expansion_bound(constants.c_f, d, eps, n + 1) + 1);
    ClassSeparatorResult result;
    result.ell = ell;
    result.m0 = m0;
    result.run = prs_uniform(g, ell, m0, opts);
    return result;
}

struct LiftResult {
    long long ell = 1;
    long long m0 = 1;
    bool ell_condition_met = false;  // (f(d)+1)^2 d <= n^delta held for the chosen ell
    PrsRun run;
};

/// Small-to-big lift: chooses the largest ell <= ceil(a*n^(eps*delta/5))
/// with (f(d(ell,n))+1)^2 * d(ell,n) <= n^delta and runs the uniform-cost
/// algorithm with m0 = f(d)+1. A model outcome has support S of size at
/// most n^delta and witnesses that G[S] fails membership under the
/// configured f-bound.
inline LiftResult lift_small_to_big(const Graph& g, const Rational& /*c*/, const Rational& eps,
                                    const Rational& delta, const ClassConstants& constants,
                                    const PrsOptions& opts = {}) {
    require(eps > 0 && eps <= 1, "lift_small_to_big: eps must be in (0, 1]");
    require(delta > 0 && delta <= 1, "lift_small_to_big: delta must be in (0, 1]");
    long long n = std::max<long long>(g.vertex_count(), 1);

    Rational eps_delta = eps * delta;
    Int p = rational_num(eps_delta);
    Int qq = Int(5) * rational_den(eps_delta);
    long long ell_hi = std::max<long long>(1, ceil_coef_pow(constants.a, n, p, qq, n + 1));

    // n^delta comparison: x <= n^delta  <=>  x^den(delta) <= n^num(delta)
    Int dp = rational_num(delta), dq = rational_den(delta);
    unsigned long long dqe = dq.convert_to<unsigned long long>();
    Int n_pow = ipow(Int(n), dp.convert_to<unsigned long long>());
    auto within_budget = [&](const Int& x) { return ipow(x, dqe) <= n_pow; };

    long long ell = 1;
    bool met = false;
    for (long long cand = ell_hi; cand >= 1; --cand) {
        long long d = depth_bound(cand, n);
        long long f = expansion_bound(constants.c_f, d, eps, n + 1);
        if (within_budget(Int(f + 1) * Int(f + 1) * Int(d))) {
            ell = cand;
            met = true;
            break;
        }
    }

    long long d = depth_bound(ell, n);
    long long m0 = std::min<long long>(n + 1, expansion_bound(constants.c_f, d, eps, n + 1) + 1);
    LiftResult result;
    result.ell = ell;
    result.m0 = m0;
    result.ell_condition_met = met;
    result.run = prs_uniform(g, ell, m0, opts);
    if (met && result.run.is_model()) {
        auto support = result.run.model().support();
        require(within_budget(Int(static_cast<long long>(support.size()))),
                "lift_small_to_big: witness support exceeds n^delta");
    }
    return result;
}

}  // namespace sepcert

#endif
