#ifndef SEPCERT_VERIFY_HPP
#define SEPCERT_VERIFY_HPP

#include "sepcert/certificates.hpp"
#include "sepcert/decompose.hpp"
#include "sepcert/io.hpp"

#include <string>
#include <vector>

namespace sepcert {

/// Re-checks a separator certificate from its serialized form alone:
/// structural invariants plus the exact cost inequality against the
/// embedded costs.
inline std::vector<std::string> verify_separator(const Graph& g, const ParsedSeparator& parsed) {
    std::vector<std::string> bad;
    if (parsed.n != g.vertex_count()) {
        bad.push_back("certificate n does not match the graph");
        return bad;
    }
    const auto& cert = parsed.cert;
    if (!set_intersection(cert.c, cert.m).empty()) bad.push_back("C and M are not disjoint");
    if (!is_balanced_separator(g, set_union(cert.c, cert.m)))
        bad.push_back("C u M is not a balanced separator");
    if (parsed.costs.size() != g.vertex_count()) {
        bad.push_back("embedded costs do not cover the graph");
        return bad;
    }
    if (parsed.costs.sum(cert.c) * cert.ell > parsed.costs.total())
        bad.push_back("q(C) * ell exceeds q(V)");
    if (cert.model) {
        for (const auto& v : validate_model(g, *cert.model)) bad.push_back("model: " + v);
        if (cert.model->support() != cert.m) bad.push_back("model support differs from M");
        if (cert.model->depth > cert.depth)
            bad.push_back("model depth exceeds the certificate depth");
        if (cert.model->size() > cert.m0) bad.push_back("model has more than m0 parts");
    } else if (!cert.m.empty()) {
        bad.push_back("nonempty M without a model");
    }
    return bad;
}

inline std::vector<std::string> verify_deletion(const Graph& g, const ParsedDeletion& parsed) {
    std::vector<std::string> bad;
    if (parsed.n != g.vertex_count()) {
        bad.push_back("certificate n does not match the graph");
        return bad;
    }
    const auto& dd = parsed.dd;
    if (parsed.costs.size() != g.vertex_count()) {
        bad.push_back("embedded costs do not cover the graph");
        return bad;
    }
    if (!(parsed.costs.sum(dd.x) * dd.ell < parsed.costs.total()))
        bad.push_back("q(X) * ell is not strictly below q(V)");
    for (const auto& v : validate_tree_decomposition(g, dd.td, dd.x)) bad.push_back("td: " + v);
    if (dd.td.computed_width() != dd.width) bad.push_back("stored width is inconsistent");
    if (Int(dd.width) > dd.k) bad.push_back("width exceeds the claimed k bound");
    if (dd.k != k_bound(dd.ell, dd.omega_observed, g.vertex_count()))
        bad.push_back("claimed k differs from k_bound(ell, omega, n)");
    if (dd.b != b_bound(dd.ell, g.vertex_count()))
        bad.push_back("claimed b differs from b_bound(ell, n)");
    return bad;
}

inline std::vector<std::string> verify_thin(const Graph& g, const ParsedThin& parsed) {
    std::vector<std::string> bad;
    if (parsed.n != g.vertex_count()) {
        bad.push_back("certificate n does not match the graph");
        return bad;
    }
    const auto& dist = parsed.dist;
    Rational total = 0;
    for (const auto& col : dist.columns) {
        if (col.p <= 0) bad.push_back("support column with non-positive probability");
        total += col.p;
    }
    if (total != 1) bad.push_back("probabilities do not sum to 1");
    if (static_cast<long long>(dist.columns.size()) > g.vertex_count())
        bad.push_back("support exceeds n");
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        Rational mass = 0;
        for (const auto& col : dist.columns)
            if (set_contains(col.x, v)) mass += col.p;
        if (mass * dist.ell > 1) {
            bad.push_back("vertex " + std::to_string(v) + " has mass above 1/ell");
            break;
        }
    }
    for (std::size_t i = 0; i < dist.columns.size(); ++i) {
        const auto& col = dist.columns[i];
        for (const auto& v : validate_tree_decomposition(g, col.td, col.x))
            bad.push_back("column " + std::to_string(i) + " td: " + v);
        if (Int(col.td.width) > dist.t)
            bad.push_back("column " + std::to_string(i) + " width exceeds t");
    }
    return bad;
}

}  // namespace sepcert

#endif
