// Command-line surface for the separator/treewidth-fragility toolkit.
// Exit codes: 0 success/Member/true, 2 NotMember/false, 1 error.

#include "sepcert/certify.hpp"
#include "sepcert/decompose.hpp"
#include "sepcert/io.hpp"
#include "sepcert/separator.hpp"
#include "sepcert/subgraph.hpp"
#include "sepcert/thindist.hpp"
#include "sepcert/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace sepcert;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

void emit(const Json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    text.push_back('\n');
    if (out_path.empty()) std::cout << text;
    else spill(out_path, text);
}

struct CommonOpts {
    std::string a = "1", c_f = "1";
    long long column_cap = 50;
    unsigned long long dp_budget = 1000000000ULL;
    std::uint64_t seed = 1;
    int audit_samples = 100;
    int audit_max_size = 12;

    Config to_config() const {
        Config cfg;
        cfg.constants.a = parse_rational(a);
        cfg.constants.c_f = parse_rational(c_f);
        cfg.column_cap_factor = column_cap;
        cfg.dp_state_budget = dp_budget;
        cfg.seed = seed;
        cfg.audit_samples = audit_samples;
        cfg.audit_max_size = audit_max_size;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--a", opts.a, "class constant a (rational)");
    cmd->add_option("--c-f", opts.c_f, "class constant c_f (rational)");
    cmd->add_option("--column-cap", opts.column_cap, "column-generation cap factor");
    cmd->add_option("--dp-budget", opts.dp_budget, "subgraph DP state budget");
    cmd->add_option("--seed", opts.seed, "random seed");
    cmd->add_option("--audit-samples", opts.audit_samples, "membership audit sample count");
    cmd->add_option("--audit-max-size", opts.audit_max_size, "membership audit subgraph cap");
}

FragileFamily load_family_dir(const std::string& dir) {
    FragileFamily family;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto name = entry.path().filename().string();
        if (name.rfind("ell_", 0) != 0 || entry.path().extension() != ".json") continue;
        auto parsed = thin_from_json(Json::parse(slurp(entry.path().string())));
        family.by_ell.emplace(parsed.dist.ell, std::move(parsed.dist));
    }
    require(!family.by_ell.empty(), "no ell_*.json distributions found in '" + dir + "'");
    return family;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"balanced separators, low-treewidth deletion and thin distributions "
                 "with machine-checkable certificates"};
    app.require_subcommand(1);

    // separate
    auto* sep = app.add_subcommand("separate", "weighted balanced separator or clique model");
    std::string sep_graph, sep_costs, sep_out;
    long long sep_ell = 1, sep_m0 = 1;
    bool sep_json = false;
    CommonOpts sep_common;
    sep->add_option("--graph", sep_graph, "graph file")->required();
    sep->add_option("--ell", sep_ell, "cost factor ell")->required();
    sep->add_option("--m0", sep_m0, "clique-model size m0")->required();
    sep->add_option("--costs", sep_costs, "cost file (default: uniform 1)");
    sep->add_flag("--json", sep_json, "print the full JSON certificate");
    sep->add_option("--out", sep_out, "write JSON to a file");
    add_common(sep, sep_common);

    // decompose
    auto* dec = app.add_subcommand("decompose", "low-treewidth deletion decomposition");
    std::string dec_graph, dec_costs, dec_out;
    long long dec_ell = 1, dec_m0 = 1;
    CommonOpts dec_common;
    dec->add_option("--graph", dec_graph, "graph file")->required();
    dec->add_option("--ell", dec_ell, "cost factor ell")->required();
    dec->add_option("--m0", dec_m0, "clique-model size m0")->required();
    dec->add_option("--costs", dec_costs, "cost file (default: uniform 1)");
    dec->add_option("--out", dec_out, "write JSON to a file");
    add_common(dec, dec_common);

    // thin-dist
    auto* thin = app.add_subcommand("thin-dist", "thin distribution over deletion sets");
    std::string thin_graph, thin_out, thin_eps = "1", thin_c = "1";
    long long thin_ell = 1, thin_m0 = 0;
    bool thin_family = false;
    CommonOpts thin_common;
    thin->add_option("--graph", thin_graph, "graph file")->required();
    thin->add_option("--ell", thin_ell, "thinness parameter ell");
    thin->add_option("--m0", thin_m0, "clique-model size m0 (default n+1)");
    thin->add_flag("--family", thin_family, "build distributions for every ell = 1..n");
    thin->add_option("--epsilon", thin_eps, "class exponent eps (family mode)");
    thin->add_option("--c", thin_c, "class constant c (family mode)");
    thin->add_option("--out", thin_out, "output file, or directory in family mode");
    add_common(thin, thin_common);

    // subgraph
    auto* sg = app.add_subcommand("subgraph", "subgraph test through the distribution family");
    std::string sg_graph, sg_pattern, sg_family, sg_out;
    bool sg_json = false;
    CommonOpts sg_common;
    sg->add_option("--graph", sg_graph, "host graph file")->required();
    sg->add_option("--pattern", sg_pattern, "pattern graph file")->required();
    sg->add_option("--family", sg_family, "directory of ell_*.json distributions");
    sg->add_flag("--json", sg_json, "print the embedding as JSON");
    sg->add_option("--out", sg_out, "write JSON to a file");
    add_common(sg, sg_common);

    // certify
    auto* cert = app.add_subcommand("certify", "approximate class-membership certificate");
    std::string cert_graph, cert_c = "1", cert_eps = "1", cert_out;
    bool cert_json = false, cert_full_family = false;
    int cert_small_cap = -1;
    long long cert_large_threshold = -1;
    CommonOpts cert_common;
    cert->add_option("--graph", cert_graph, "graph file")->required();
    cert->add_option("--c", cert_c, "class constant c (rational)")->required();
    cert->add_option("--epsilon", cert_eps, "class exponent eps (rational)")->required();
    cert->add_option("--small-cap", cert_small_cap, "pattern-size threshold override");
    cert->add_option("--large-threshold", cert_large_threshold,
                     "large-subgraph regime boundary override");
    cert->add_flag("--json", cert_json, "print the full JSON verdict");
    cert->add_flag("--full-family", cert_full_family, "embed the whole family in the verdict");
    cert->add_option("--out", cert_out, "write JSON to a file");
    add_common(cert, cert_common);

    // verify
    auto* ver = app.add_subcommand("verify", "re-check an emitted certificate");
    std::string ver_what, ver_graph, ver_cert;
    ver->add_option("--what", ver_what, "separator | model | td | dist")->required();
    ver->add_option("--graph", ver_graph, "graph file")->required();
    ver->add_option("--cert", ver_cert, "certificate JSON file")->required();

    // generate
    auto* gen = app.add_subcommand("generate", "write a test graph");
    GenerateRequest gen_req;
    std::string gen_p = "0", gen_out;
    gen->add_option("--kind", gen_req.kind, "grid | path | cycle | clique | star | random-gnp")
        ->required();
    gen->add_option("--n", gen_req.n, "vertex count");
    gen->add_option("--rows", gen_req.rows, "grid rows");
    gen->add_option("--cols", gen_req.cols, "grid columns");
    gen->add_option("--p", gen_p, "edge probability (rational)");
    gen->add_option("--seed", gen_req.seed, "random seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sep) {
            Graph g = parse_graph(slurp(sep_graph));
            CostAssignment q = sep_costs.empty()
                                   ? CostAssignment::uniform(g.vertex_count())
                                   : parse_costs(slurp(sep_costs), g.vertex_count());
            Config cfg = sep_common.to_config();
            auto run = weighted_prs(g, q, sep_ell, sep_m0);
            Json j;
            if (run.is_model()) {
                j = model_to_json(run.model());
                j["config"] = config_to_json(cfg);
                std::cout << "clique model of K_" << run.model().size() << " at depth "
                          << run.model().depth << "\n";
            } else {
                const auto& c = run.certificate();
                j = separator_to_json(c, g.vertex_count(), q, cfg);
                std::cout << "balanced separator: |C| = " << c.c.size() << ", |M| = "
                          << c.m.size() << ", q(C) = " << format_rational(q.sum(c.c)) << "\n";
            }
            if (sep_json) emit(j, "");
            if (!sep_out.empty()) emit(j, sep_out);
            return 0;
        }

        if (*dec) {
            Graph g = parse_graph(slurp(dec_graph));
            CostAssignment q = dec_costs.empty()
                                   ? CostAssignment::uniform(g.vertex_count())
                                   : parse_costs(slurp(dec_costs), g.vertex_count());
            Config cfg = dec_common.to_config();
            auto res = low_tw_deletion(g, q, dec_ell, dec_m0);
            Json j;
            if (std::holds_alternative<CliqueModel>(res)) {
                const auto& model = std::get<CliqueModel>(res);
                j = model_to_json(model);
                j["config"] = config_to_json(cfg);
            } else {
                const auto& dd = std::get<DeletionDecomposition>(res);
                j = deletion_to_json(dd, g.vertex_count(), q, cfg);
            }
            emit(j, dec_out);
            return 0;
        }

        if (*thin) {
            Graph g = parse_graph(slurp(thin_graph));
            int n = g.vertex_count();
            Config cfg = thin_common.to_config();
            ThinDistOptions opts;
            opts.column_cap_factor = cfg.column_cap_factor;
            if (thin_family) {
                auto res = fragile_family(g, parse_rational(thin_c), parse_rational(thin_eps),
                                          cfg.constants, opts);
                if (std::holds_alternative<NotInClass>(res)) {
                    const auto& w = std::get<NotInClass>(res);
                    Json j = model_to_json(w.model);
                    j["ell"] = w.ell;
                    j["m0"] = w.m0;
                    j["config"] = config_to_json(cfg);
                    emit(j, thin_out.empty() ? "" : thin_out);
                    return 2;
                }
                const auto& family = std::get<FragileFamily>(res);
                if (thin_out.empty()) {
                    emit(family_to_json(family, n, cfg), "");
                } else {
                    fs::create_directories(thin_out);
                    for (const auto& [ell, dist] : family.by_ell) {
                        Json j = thin_to_json(dist, n, cfg);
                        emit(j, (fs::path(thin_out) /
                                 ("ell_" + std::to_string(ell) + ".json")).string());
                    }
                    std::cout << "wrote " << family.by_ell.size() << " distributions to "
                              << thin_out << "\n";
                }
                return 0;
            }
            long long m0 = thin_m0 > 0 ? thin_m0 : n + 1;
            auto res = thin_distribution(g, thin_ell, m0, opts);
            if (std::holds_alternative<CliqueModel>(res)) {
                Json j = model_to_json(std::get<CliqueModel>(res));
                j["config"] = config_to_json(cfg);
                emit(j, thin_out);
                return 2;
            }
            emit(thin_to_json(std::get<ThinDistribution>(res), n, cfg), thin_out);
            return 0;
        }

        if (*sg) {
            Graph g = parse_graph(slurp(sg_graph));
            Graph h = parse_graph(slurp(sg_pattern));
            Config cfg = sg_common.to_config();
            FragileFamily family;
            int m = h.vertex_count(), n = g.vertex_count();
            if (!sg_family.empty()) {
                family = load_family_dir(sg_family);
            } else if (m > 0 && m < n) {
                ThinDistOptions opts;
                opts.column_cap_factor = cfg.column_cap_factor;
                auto res = thin_distribution(g, m + 1, n + 1, opts);
                family.by_ell.emplace(m + 1,
                                      std::move(std::get<ThinDistribution>(res)));
            }
            IsoOptions iso;
            iso.state_budget = cfg.dp_state_budget;
            auto res = contains_subgraph(h, g, family, iso);
            std::cout << (res.found ? "true" : "false") << "\n";
            if (sg_json || !sg_out.empty()) {
                Json j;
                j["found"] = res.found;
                j["embedding"] = res.found ? Json(res.embedding) : Json(nullptr);
                if (sg_json) emit(j, "");
                if (!sg_out.empty()) emit(j, sg_out);
            }
            return res.found ? 0 : 2;
        }

        if (*cert) {
            Graph g = parse_graph(slurp(cert_graph));
            Config cfg = cert_common.to_config();
            if (cert_small_cap >= 0) cfg.small_cap = cert_small_cap;
            if (cert_large_threshold >= 0) cfg.large_threshold = cert_large_threshold;
            Verdict verdict = certify(g, parse_rational(cert_c), parse_rational(cert_eps), cfg);
            std::cout << (verdict.member ? "member" : "not-member") << "\n";
            if (cert_json || !cert_out.empty()) {
                Json j = verdict_to_json(verdict, g.vertex_count(), cfg, cert_full_family);
                if (cert_json) emit(j, "");
                if (!cert_out.empty()) emit(j, cert_out);
            }
            return verdict.member ? 0 : 2;
        }

        if (*ver) {
            Graph g = parse_graph(slurp(ver_graph));
            Json j = Json::parse(slurp(ver_cert));
            std::vector<std::string> bad;
            if (ver_what == "separator") bad = verify_separator(g, separator_from_json(j));
            else if (ver_what == "model") bad = validate_model(g, model_from_json(j));
            else if (ver_what == "td") bad = verify_deletion(g, deletion_from_json(j));
            else if (ver_what == "dist") bad = verify_thin(g, thin_from_json(j));
            else throw Error("unknown verification target '" + ver_what + "'");
            if (bad.empty()) {
                std::cout << "ok\n";
                return 0;
            }
            for (const auto& v : bad) std::cerr << "violation: " << v << "\n";
            return 1;
        }

        if (*gen) {
            gen_req.p = parse_rational(gen_p);
            Graph g = generate(gen_req);
            std::string text = format_graph(g);
            if (gen_out.empty()) std::cout << text;
            else spill(gen_out, text);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
