#ifndef SEPCERT_IO_HPP
#define SEPCERT_IO_HPP

#include "sepcert/certificates.hpp"
#include "sepcert/certify.hpp"
#include "sepcert/config.hpp"
#include "sepcert/cost.hpp"
#include "sepcert/decompose.hpp"
#include "sepcert/graph.hpp"
#include "sepcert/rng.hpp"
#include "sepcert/thindist.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace sepcert {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Graph text format: first line "n m", then m lines "u v", 0-indexed.

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    require(next_line(), "graph parse error: empty input");
    long long n, m;
    {
        std::istringstream ls(line);
        std::string extra;
        if (!(ls >> n >> m) || (ls >> extra))
            throw Error("graph parse error at line " + std::to_string(line_no) +
                        ": header must be 'n m'");
    }
    require(n >= 0 && m >= 0, "graph parse error: negative header values");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (long long i = 0; i < m; ++i) {
        require(next_line(), "graph parse error: expected " + std::to_string(m) +
                                 " edges, got " + std::to_string(i));
        std::istringstream ls(line);
        long long u, v;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra))
            throw Error("graph parse error at line " + std::to_string(line_no) +
                        ": edge must be 'u v'");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw Error("graph parse error at line " + std::to_string(line_no) +
                        ": endpoint out of range");
        if (u == v)
            throw Error("graph parse error at line " + std::to_string(line_no) + ": self-loop");
        for (auto [a, b] : edges)
            if ((a == u && b == v) || (a == v && b == u))
                throw Error("graph parse error at line " + std::to_string(line_no) +
                            ": duplicate edge");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    require(!next_line(), "graph parse error: trailing content after the edge list");
    return Graph(static_cast<int>(n), edges);
}

inline std::string format_graph(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << " " << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

/// Cost file: lines "v p/q"; vertices not mentioned default to cost 1.
inline CostAssignment parse_costs(const std::string& text, int n) {
    std::vector<Rational> costs(n, Rational(1));
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        long long v;
        std::string value, extra;
        if (!(ls >> v >> value) || (ls >> extra))
            throw Error("cost parse error at line " + std::to_string(line_no) +
                        ": expected 'v p/q'");
        require(v >= 0 && v < n, "cost parse error at line " + std::to_string(line_no) +
                                     ": vertex out of range");
        Rational r = parse_rational(value);
        require(r >= 0, "cost parse error at line " + std::to_string(line_no) +
                            ": negative cost");
        costs[v] = r;
    }
    return CostAssignment(std::move(costs));
}

// ---------------------------------------------------------------------------
// Generators. All randomness flows through the seeded Rng.

inline Graph generate_grid(int rows, int cols) {
    require(rows >= 1 && cols >= 1, "grid: dimensions must be >= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    auto id = [&](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph(rows * cols, edges);
}

inline Graph generate_path(int n) {
    require(n >= 1, "path: n must be >= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, edges);
}

inline Graph generate_cycle(int n) {
    require(n >= 3, "cycle: n must be >= 3");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    edges.emplace_back(n - 1, 0);
    return Graph(n, edges);
}

inline Graph generate_clique(int n) {
    require(n >= 1, "clique: n must be >= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph(n, edges);
}

inline Graph generate_star(int n) {
    require(n >= 1, "star: n must be >= 1");
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
    return Graph(n, edges);
}

/// G(n, p) with exact rational p: each pair independently present when a
/// 64-bit draw falls below p, compared without rounding.
inline Graph generate_gnp(int n, const Rational& p, std::uint64_t seed) {
    require(n >= 0, "gnp: n must be >= 0");
    require(p >= 0 && p <= 1, "gnp: p must be in [0, 1]");
    Rng rng(seed);
    Int num = rational_num(p), den = rational_den(p);
    Int scale = Int(1) << 64;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            Int draw = rng.next();
            if (draw * den < num * scale) edges.emplace_back(u, v);
        }
    return Graph(n, edges);
}

struct GenerateRequest {
    std::string kind;  // grid | path | cycle | clique | star | random-gnp
    int n = 0, rows = 0, cols = 0;
    Rational p = 0;
    std::uint64_t seed = 1;
};

inline Graph generate(const GenerateRequest& req) {
    if (req.kind == "grid") return generate_grid(req.rows, req.cols);
    if (req.kind == "path") return generate_path(req.n);
    if (req.kind == "cycle") return generate_cycle(req.n);
    if (req.kind == "clique") return generate_clique(req.n);
    if (req.kind == "star") return generate_star(req.n);
    if (req.kind == "random-gnp") return generate_gnp(req.n, req.p, req.seed);
    throw Error("unknown generator kind '" + req.kind + "'");
}

// ---------------------------------------------------------------------------
// JSON serialization. Sets as sorted arrays, rationals as "p/q" strings.

inline Json config_to_json(const Config& cfg) {
    Json j;
    j["a"] = format_rational(cfg.constants.a);
    j["c_f"] = format_rational(cfg.constants.c_f);
    j["column_cap_factor"] = cfg.column_cap_factor;
    j["dp_state_budget"] = cfg.dp_state_budget;
    j["seed"] = cfg.seed;
    j["small_cap"] = cfg.small_cap ? Json(*cfg.small_cap) : Json(nullptr);
    j["large_threshold"] = cfg.large_threshold ? Json(*cfg.large_threshold) : Json(nullptr);
    j["audit_samples"] = cfg.audit_samples;
    j["audit_max_size"] = cfg.audit_max_size;
    return j;
}

inline Config config_from_json(const Json& j) {
    Config cfg;
    cfg.constants.a = parse_rational(j.at("a").get<std::string>());
    cfg.constants.c_f = parse_rational(j.at("c_f").get<std::string>());
    cfg.column_cap_factor = j.at("column_cap_factor").get<long long>();
    cfg.dp_state_budget = j.at("dp_state_budget").get<unsigned long long>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("small_cap").is_null()) cfg.small_cap = j.at("small_cap").get<int>();
    if (!j.at("large_threshold").is_null())
        cfg.large_threshold = j.at("large_threshold").get<long long>();
    cfg.audit_samples = j.at("audit_samples").get<int>();
    cfg.audit_max_size = j.at("audit_max_size").get<int>();
    return cfg;
}

inline Json vertexset_to_json(const VertexSet& s) { return Json(s); }

inline VertexSet vertexset_from_json(const Json& j) {
    VertexSet s = j.get<VertexSet>();
    VertexSet sorted = make_set(s);
    require(sorted == s, "certificate parse error: vertex set not sorted and distinct");
    return s;
}

inline Json costs_to_json(const CostAssignment& q) {
    Json arr = Json::array();
    for (const auto& c : q.values()) arr.push_back(format_rational(c));
    return arr;
}

inline CostAssignment costs_from_json(const Json& j) {
    std::vector<Rational> costs;
    for (const auto& item : j) costs.push_back(parse_rational(item.get<std::string>()));
    return CostAssignment(std::move(costs));
}

inline Json model_to_json(const CliqueModel& model) {
    Json j;
    j["type"] = "clique-model";
    j["depth"] = model.depth;
    j["bound"] = model.bound ? Json(*model.bound) : Json(nullptr);
    Json parts = Json::array();
    for (const auto& p : model.parts) parts.push_back(vertexset_to_json(p));
    j["parts"] = parts;
    j["centers"] = model.centers;
    return j;
}

inline CliqueModel model_from_json(const Json& j) {
    require(j.at("type") == "clique-model", "expected a clique-model certificate");
    CliqueModel model;
    model.depth = j.at("depth").get<long long>();
    if (!j.at("bound").is_null()) model.bound = j.at("bound").get<long long>();
    for (const auto& part : j.at("parts")) model.parts.push_back(vertexset_from_json(part));
    model.centers = j.at("centers").get<std::vector<Vertex>>();
    return model;
}

inline Json td_to_json(const TreeDecomposition& td) {
    Json j;
    j["parents"] = td.parent;
    Json bags = Json::array();
    for (const auto& b : td.bags) bags.push_back(vertexset_to_json(b));
    j["bags"] = bags;
    j["width"] = td.width;
    return j;
}

inline TreeDecomposition td_from_json(const Json& j) {
    TreeDecomposition td;
    td.parent = j.at("parents").get<std::vector<int>>();
    for (const auto& b : j.at("bags")) td.bags.push_back(vertexset_from_json(b));
    td.width = j.at("width").get<int>();
    return td;
}

inline Json separator_to_json(const SeparatorCertificate& cert, int n, const CostAssignment& costs,
                              const Config& cfg) {
    Json j;
    j["type"] = "separator";
    j["n"] = n;
    j["ell"] = cert.ell;
    j["m0"] = cert.m0;
    j["depth"] = cert.depth;
    j["C"] = vertexset_to_json(cert.c);
    j["M"] = vertexset_to_json(cert.m);
    j["model"] = cert.model ? model_to_json(*cert.model) : Json(nullptr);
    j["costs"] = costs_to_json(costs);
    j["config"] = config_to_json(cfg);
    return j;
}

struct ParsedSeparator {
    SeparatorCertificate cert;
    int n = 0;
    CostAssignment costs;
    Config config;
};

inline ParsedSeparator separator_from_json(const Json& j) {
    require(j.at("type") == "separator", "expected a separator certificate");
    ParsedSeparator out;
    out.n = j.at("n").get<int>();
    out.cert.ell = j.at("ell").get<long long>();
    out.cert.m0 = j.at("m0").get<long long>();
    out.cert.depth = j.at("depth").get<long long>();
    out.cert.c = vertexset_from_json(j.at("C"));
    out.cert.m = vertexset_from_json(j.at("M"));
    if (!j.at("model").is_null()) out.cert.model = model_from_json(j.at("model"));
    out.costs = costs_from_json(j.at("costs"));
    out.config = config_from_json(j.at("config"));
    return out;
}

inline Json deletion_to_json(const DeletionDecomposition& dd, int n, const CostAssignment& costs,
                             const Config& cfg) {
    Json j;
    j["type"] = "deletion-decomposition";
    j["n"] = n;
    j["ell"] = dd.ell;
    j["m0"] = dd.m0;
    j["X"] = vertexset_to_json(dd.x);
    j["td"] = td_to_json(dd.td);
    j["width"] = dd.width;
    j["b"] = dd.b;
    j["k"] = dd.k.str();
    j["omega_observed"] = dd.omega_observed;
    j["costs"] = costs_to_json(costs);
    j["config"] = config_to_json(cfg);
    return j;
}

struct ParsedDeletion {
    DeletionDecomposition dd;
    int n = 0;
    CostAssignment costs;
    Config config;
};

inline ParsedDeletion deletion_from_json(const Json& j) {
    require(j.at("type") == "deletion-decomposition", "expected a deletion-decomposition");
    ParsedDeletion out;
    out.n = j.at("n").get<int>();
    out.dd.ell = j.at("ell").get<long long>();
    out.dd.m0 = j.at("m0").get<long long>();
    out.dd.x = vertexset_from_json(j.at("X"));
    out.dd.td = td_from_json(j.at("td"));
    out.dd.width = j.at("width").get<int>();
    out.dd.b = j.at("b").get<long long>();
    out.dd.k = Int(j.at("k").get<std::string>());
    out.dd.omega_observed = j.at("omega_observed").get<long long>();
    out.costs = costs_from_json(j.at("costs"));
    out.config = config_from_json(j.at("config"));
    return out;
}

inline Json thin_to_json(const ThinDistribution& dist, int n, const Config& cfg) {
    Json j;
    j["type"] = "thin-distribution";
    j["n"] = n;
    j["ell"] = dist.ell;
    j["m0"] = dist.m0;
    j["t"] = dist.t.str();
    j["b"] = dist.b;
    j["omega_observed"] = dist.omega_observed;
    Json cols = Json::array();
    for (const auto& col : dist.columns) {
        Json c;
        c["X"] = vertexset_to_json(col.x);
        c["p"] = format_rational(col.p);
        c["td"] = td_to_json(col.td);
        cols.push_back(c);
    }
    j["columns"] = cols;
    j["config"] = config_to_json(cfg);
    return j;
}

struct ParsedThin {
    ThinDistribution dist;
    int n = 0;
    Config config;
};

inline ParsedThin thin_from_json(const Json& j) {
    require(j.at("type") == "thin-distribution", "expected a thin distribution");
    ParsedThin out;
    out.n = j.at("n").get<int>();
    out.dist.ell = j.at("ell").get<long long>();
    out.dist.m0 = j.at("m0").get<long long>();
    out.dist.t = Int(j.at("t").get<std::string>());
    out.dist.b = j.at("b").get<long long>();
    out.dist.omega_observed = j.at("omega_observed").get<long long>();
    for (const auto& c : j.at("columns")) {
        ThinColumn col;
        col.x = vertexset_from_json(c.at("X"));
        Rational p = parse_rational(c.at("p").get<std::string>());
        require(p >= 0, "thin distribution parse error: negative probability");
        col.p = p;
        col.td = td_from_json(c.at("td"));
        out.dist.columns.push_back(std::move(col));
    }
    out.config = config_from_json(j.at("config"));
    return out;
}

inline Json family_to_json(const FragileFamily& family, int n, const Config& cfg) {
    Json j;
    j["type"] = "family";
    j["n"] = n;
    Json dists = Json::array();
    for (const auto& [ell, dist] : family.by_ell) dists.push_back(thin_to_json(dist, n, cfg));
    j["distributions"] = dists;
    return j;
}

inline FragileFamily family_from_json(const Json& j) {
    require(j.at("type") == "family", "expected a distribution family");
    FragileFamily family;
    for (const auto& d : j.at("distributions")) {
        auto parsed = thin_from_json(d);
        family.by_ell.emplace(parsed.dist.ell, std::move(parsed.dist));
    }
    return family;
}

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

inline Json verdict_to_json(const Verdict& verdict, int n, const Config& cfg,
                            bool include_family = true) {
    Json j;
    j["type"] = "verdict";
    j["verdict"] = verdict.member ? "member" : "not-member";
    j["n"] = n;
    j["c"] = format_rational(verdict.c);
    j["eps"] = format_rational(verdict.eps);
    j["eps_prime"] = format_rational(verdict.eps_prime);
    j["small_cap"] = verdict.small_cap_used;
    j["large_threshold"] = verdict.large_threshold_used;
    if (verdict.member) {
        Json cp;
        cp["order"] = verdict.cprime_order;
        cp["h"] = verdict.cprime_h;
        double approx = verdict.cprime_h == 0
                            ? 0.0
                            : static_cast<double>(verdict.cprime_order) /
                                  std::pow(static_cast<double>(verdict.cprime_h),
                                           1.0 - static_cast<double>(rational_num(
                                                     verdict.eps_prime)) /
                                                     static_cast<double>(rational_den(
                                                         verdict.eps_prime)));
        cp["approx"] = format_double(approx);
        j["c_prime"] = cp;
        Json audit = Json::array();
        for (const auto& entry : verdict.audit) {
            Json e;
            e["vertices"] = vertexset_to_json(entry.vertices);
            e["minsep"] = entry.minsep;
            audit.push_back(e);
        }
        j["audit"] = audit;
        if (include_family && verdict.family)
            j["family"] = family_to_json(*verdict.family, n, cfg);
        else
            j["family"] = nullptr;
    } else {
        std::string reason = verdict.trivial_c ? "trivial-c"
                             : verdict.model_witness ? "clique-minor"
                                                     : "subgraph";
        j["reason"] = reason;
        if (verdict.model_witness) {
            Json w;
            w["model"] = model_to_json(verdict.model_witness->model);
            w["ell"] = verdict.model_witness->ell;
            w["m0"] = verdict.model_witness->m0;
            j["model_witness"] = w;
        } else {
            j["model_witness"] = nullptr;
        }
        if (verdict.pattern_witness) {
            const auto& pw = *verdict.pattern_witness;
            Json w;
            w["pattern_n"] = pw.pattern.vertex_count();
            Json edges = Json::array();
            for (auto [u, v] : pw.pattern.edges()) edges.push_back(Json::array({u, v}));
            w["pattern_edges"] = edges;
            w["embedding"] = pw.embedding;
            w["failing_subset"] = vertexset_to_json(pw.failing_subset);
            w["failing_minsep"] = pw.failing_minsep;
            j["pattern_witness"] = w;
        } else {
            j["pattern_witness"] = nullptr;
        }
    }
    j["config"] = config_to_json(cfg);
    return j;
}

}  // namespace sepcert

#endif
