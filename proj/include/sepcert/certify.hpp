#ifndef SEPCERT_CERTIFY_HPP
#define SEPCERT_CERTIFY_HPP

#include "sepcert/config.hpp"
#include "sepcert/graph.hpp"
#include "sepcert/oracles.hpp"
#include "sepcert/patterns.hpp"
#include "sepcert/rng.hpp"
#include "sepcert/subgraph.hpp"
#include "sepcert/thindist.hpp"

#include <optional>
#include <vector>

namespace sepcert {

/// Exact check of order <= c * h^(1-eps) via integer cross-powers.
inline bool within_separator_bound(long long order, long long h, const Rational& c,
                                   const Rational& eps) {
    require(h >= 1 && order >= 0, "within_separator_bound: bad arguments");
    Int cn = rational_num(c), cd = rational_den(c);
    Int pe = rational_num(eps), qe = rational_den(eps);
    unsigned long long q = qe.convert_to<unsigned long long>();
    unsigned long long p = (qe - pe).convert_to<unsigned long long>();
    return ipow(Int(order) * cd, q) <= ipow(cn, q) * ipow(Int(h), p);
}

struct MembershipCheck {
    bool member = true;
    VertexSet witness;  // failing vertex subset when member is false
    int witness_minsep = 0;
};

/// Does every subgraph of H have a balanced separator of order at most
/// c |V|^(1-eps)? It suffices to scan induced subgraphs: deleting edges
/// only shrinks components, so the induced graph on each vertex subset is
/// the hardest subgraph on that subset. Subsets are scanned by decreasing
/// size; the witness is the first failure found.
inline MembershipCheck small_class_membership(const Graph& h, const Rational& c,
                                              const Rational& eps, int cap = 12) {
    int n = h.vertex_count();
    require(n <= cap, "small_class_membership: graph over the exhaustive-search cap");
    require(c > 0 && eps > 0 && eps <= 1, "small_class_membership: bad class parameters");
    for (int size = n; size >= 1; --size) {
        MembershipCheck failing;
        bool found = detail::for_each_subset_of_size(n, size, [&](const std::vector<int>& idx) {
            VertexSet w(idx.begin(), idx.end());
            auto sub = induced_subgraph(h, w);
            auto ms = min_balanced_separator_exact(sub.graph);
            if (!within_separator_bound(ms.order, size, c, eps)) {
                failing.member = false;
                failing.witness = w;
                failing.witness_minsep = ms.order;
                return true;
            }
            return false;
        });
        if (found) return failing;
    }
    return MembershipCheck{};
}

struct AuditEntry {
    VertexSet vertices;
    int minsep = 0;
};

struct PatternWitness {
    Graph pattern;
    std::vector<Vertex> embedding;  // pattern vertex -> G vertex
    VertexSet failing_subset;       // subset of the pattern with no small separator
    int failing_minsep = 0;
};

/// Approximate membership verdict. Member claims G in the class with
/// exponent eps^2/160 and the concrete constant realized by the audit;
/// NotMember carries a machine-checkable witness.
struct Verdict {
    bool member = false;
    Rational c, eps, eps_prime;

    // Member payload: c' = cprime_order / cprime_h^(1-eps'), realized as
    // the sharpest audited ratio.
    long long cprime_order = 0;
    long long cprime_h = 1;
    std::vector<AuditEntry> audit;
    std::optional<FragileFamily> family;

    // NotMember payload.
    bool trivial_c = false;
    std::optional<NotInClass> model_witness;
    std::optional<PatternWitness> pattern_witness;

    int small_cap_used = 0;
    long long large_threshold_used = 0;
};

namespace detail {

/// max(1, floor(sqrt(log2 n))): the largest k with 2^(k*k) <= n.
inline int default_small_cap(long long n) {
    int k = 0;
    while (ipow(Int(2), static_cast<unsigned long long>((k + 1)) * (k + 1)) <= Int(n)) ++k;
    return std::max(1, k);
}

/// ceil((log2 n)^(16/eps)), the regime boundary above which the family
/// covers subgraphs directly; reported for reference only.
inline long long default_large_threshold(long long n, const Rational& eps) {
    long long log_n = n <= 1 ? 0 : bit_length(Int(n)) - 1;
    if (log_n <= 1) return 1;
    Int p = Int(16) * rational_den(eps);
    Int q = rational_num(eps);
    const long long cap = 1000000000000000000LL;
    return std::max<long long>(1, ceil_coef_pow(Rational(1), log_n, p, q, cap));
}

/// Random connected induced subgraph with at most max_size vertices, grown
/// from a random start by frontier expansion.
inline VertexSet random_connected_subgraph(const Graph& g, int max_size, Rng& rng) {
    int n = g.vertex_count();
    int target = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                                          std::min(max_size, n))));
    Vertex start = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    VertexSet chosen{start};
    std::vector<char> in(n, 0);
    in[start] = 1;
    std::vector<Vertex> frontier;
    auto extend_frontier = [&](Vertex v) {
        for (Vertex w : g.neighbors(v))
            if (!in[w]) frontier.push_back(w);
    };
    extend_frontier(start);
    while (static_cast<int>(chosen.size()) < target && !frontier.empty()) {
        std::size_t pick = static_cast<std::size_t>(rng.below(frontier.size()));
        Vertex v = frontier[pick];
        frontier.erase(frontier.begin() + pick);
        if (in[v]) continue;
        in[v] = 1;
        chosen.push_back(v);
        extend_frontier(v);
    }
    return make_set(std::move(chosen));
}

/// Exact comparison k1/h1^alpha >= k2/h2^alpha for alpha = 1 - eps'.
inline bool ratio_geq(long long k1, long long h1, long long k2, long long h2,
                      const Rational& eps_prime) {
    Int pe = rational_num(eps_prime), qe = rational_den(eps_prime);
    unsigned long long q = qe.convert_to<unsigned long long>();
    unsigned long long p = (qe - pe).convert_to<unsigned long long>();
    return ipow(Int(k1), q) * ipow(Int(h2), p) >= ipow(Int(k2), q) * ipow(Int(h1), p);
}

}  // namespace detail

/// Theorem-style certifier: builds the full thin-distribution family, then
/// tests every small pattern that itself fails membership for containment
/// in G. No witness found means Member with the audited constant.
inline Verdict certify(const Graph& g, const Rational& c, const Rational& eps,
                       const Config& config = {}) {
    require(c > 0, "certify: c must be positive");
    require(eps > 0 && eps <= 1, "certify: eps must be in (0, 1]");
    config.validate();
    long long n = g.vertex_count();

    Verdict verdict;
    verdict.c = c;
    verdict.eps = eps;
    verdict.eps_prime = eps * eps / 160;
    verdict.large_threshold_used =
        config.large_threshold ? *config.large_threshold
                               : detail::default_large_threshold(std::max<long long>(n, 1), eps);

    if (n == 0) {
        verdict.member = true;
        verdict.small_cap_used = config.small_cap.value_or(1);
        return verdict;
    }

    if (c < 1) {
        // No nonempty graph qualifies: the single vertex already needs a
        // separator of order 1 > c.
        verdict.member = false;
        verdict.trivial_c = true;
        PatternWitness w;
        w.pattern = Graph(1, {});
        w.embedding = {0};
        w.failing_subset = {0};
        w.failing_minsep = min_balanced_separator_exact(w.pattern).order;
        require(!within_separator_bound(w.failing_minsep, 1, c, eps),
                "certify: trivial witness unexpectedly within bound");
        verdict.pattern_witness = std::move(w);
        verdict.small_cap_used = config.small_cap.value_or(1);
        return verdict;
    }

    ThinDistOptions thin_opts;
    thin_opts.column_cap_factor = config.column_cap_factor;
    auto family_result = fragile_family(g, c, eps, config.constants, thin_opts);
    if (std::holds_alternative<NotInClass>(family_result)) {
        auto& witness = std::get<NotInClass>(family_result);
        auto bad = validate_model(g, witness.model);
        require(bad.empty(), "certify: clique-model witness failed validation");
        require(witness.model.size() >= witness.m0,
                "certify: clique-model witness smaller than m0");
        verdict.member = false;
        verdict.model_witness = std::move(witness);
        verdict.small_cap_used = config.small_cap.value_or(detail::default_small_cap(n));
        return verdict;
    }
    FragileFamily family = std::move(std::get<FragileFamily>(family_result));

    int small_cap = config.small_cap.value_or(detail::default_small_cap(n));
    small_cap = std::min(small_cap, 7);  // pattern enumeration hard cap
    verdict.small_cap_used = small_cap;

    IsoOptions iso_opts;
    iso_opts.state_budget = config.dp_state_budget;
    for (int size = 1; size <= small_cap; ++size) {
        for (const auto& pattern : enumerate_small_patterns(size)) {
            auto mc = small_class_membership(pattern, c, eps, config.audit_max_size);
            if (mc.member) continue;
            auto iso = contains_subgraph(pattern, g, family, iso_opts);
            if (!iso.found) continue;
            require(verify_embedding(pattern, g, iso.embedding),
                    "certify: pattern embedding failed re-verification");
            auto sub = induced_subgraph(pattern, mc.witness);
            auto ms = min_balanced_separator_exact(sub.graph);
            require(!within_separator_bound(ms.order, static_cast<long long>(mc.witness.size()),
                                            c, eps),
                    "certify: pattern witness re-validation failed");
            verdict.member = false;
            PatternWitness w;
            w.pattern = pattern;
            w.embedding = iso.embedding;
            w.failing_subset = mc.witness;
            w.failing_minsep = ms.order;
            verdict.pattern_witness = std::move(w);
            return verdict;
        }
    }

    // Member: audit random small connected subgraphs with the exact oracle
    // and report the sharpest realized constant c'.
    verdict.member = true;
    Rng rng(config.seed);
    int audit_cap = std::min<long long>(config.audit_max_size, n);
    verdict.cprime_order = 0;
    verdict.cprime_h = 1;
    for (int i = 0; i < config.audit_samples; ++i) {
        VertexSet sample = detail::random_connected_subgraph(g, audit_cap, rng);
        auto sub = induced_subgraph(g, sample);
        auto ms = min_balanced_separator_exact(sub.graph);
        verdict.audit.push_back(AuditEntry{sample, ms.order});
        if (detail::ratio_geq(ms.order, static_cast<long long>(sample.size()),
                              verdict.cprime_order, verdict.cprime_h, verdict.eps_prime)) {
            verdict.cprime_order = ms.order;
            verdict.cprime_h = static_cast<long long>(sample.size());
        }
    }
    // Every audited subgraph obeys order <= c' h^(1-eps') by maximality.
    for (const auto& entry : verdict.audit)
        require(detail::ratio_geq(verdict.cprime_order, verdict.cprime_h, entry.minsep,
                                  static_cast<long long>(entry.vertices.size()),
                                  verdict.eps_prime),
                "certify: audit entry exceeds the reported constant");
    verdict.family = std::move(family);
    return verdict;
}

}  // namespace sepcert

#endif
