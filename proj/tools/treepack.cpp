// treepack: command-line front end for the treepack library.
//
// Subcommands: gen | stp | arboricity | orient | loadbalance | predict |
// check | experiment.  Exit codes: 0 success, 2 invalid input, 3 an
// experiment had budget-skipped samples.

#include <treepack/treepack.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace {

using treepack::Graph;
using treepack::Rational;
using treepack::RngSeed;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitSkipped = 3;

Graph load_graph(const std::string& path) {
    if (path == "-") return treepack::read_edge_list(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return treepack::read_edge_list(in);
}

std::string fraction(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void print_partition_certificate(const treepack::PartitionCertificate& cert) {
    const long long parts = cert.partition.size();
    std::cout << "certificate: partition parts=" << parts << " crossing=" << cert.crossing
              << " < t*(parts-1)=" << cert.t * (parts - 1) << " (t=" << cert.t << ")\n";
    for (const auto& cls : cert.partition.classes) {
        std::cout << "  part:";
        for (auto v : cls) std::cout << ' ' << v;
        std::cout << '\n';
    }
}

void print_dense_certificate(const treepack::DenseSetCertificate& cert) {
    std::cout << "certificate: set size=" << cert.set.size() << " induced=" << cert.induced
              << " > bound=" << cert.t * std::max<long long>(cert.set.size() - 1, 0)
              << " (t=" << cert.t << ")\n  set:";
    for (auto v : cert.set.members) std::cout << ' ' << v;
    std::cout << '\n';
}

// Hakimi-form witness for k-orientability: |E[S]| > k|S|.
void print_orient_certificate(const treepack::DenseSetCertificate& cert) {
    std::cout << "certificate: set size=" << cert.set.size() << " induced=" << cert.induced
              << " > k*size=" << cert.t * cert.set.size() << " (k=" << cert.t << ")\n  set:";
    for (auto v : cert.set.members) std::cout << ' ' << v;
    std::cout << '\n';
}

void emit_forest_blocks(const std::string& path, int n,
                        const std::vector<std::vector<treepack::Edge>>& forests) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < forests.size(); ++i) {
        if (i > 0) out << '\n';
        out << n << ' ' << forests[i].size() << '\n';
        for (const auto& e : forests[i])
            out << std::min(e.u, e.v) << ' ' << std::max(e.u, e.v) << '\n';
    }
}

ordered_json json_condition(const treepack::ConditionResult& c) {
    ordered_json j;
    j["id"] = c.id;
    j["verdict"] = std::string(treepack::to_string(c.verdict));
    j["method"] = c.method;
    j["detail"] = c.detail;
    if (c.witness_set) j["witness_set"] = c.witness_set->members;
    if (c.witness_set2) j["witness_set2"] = c.witness_set2->members;
    if (c.witness_light) {
        ordered_json p;
        p["a"] = c.witness_light->a;
        p["b"] = c.witness_light->b;
        if (c.witness_light->common >= 0) p["common_neighbor"] = c.witness_light->common;
        j["witness_light_pair"] = p;
    }
    return j;
}

int run_gen(int n, std::optional<double> p, std::optional<long long> m, std::uint64_t seed,
            bool process) {
    const RngSeed rs{seed, 0};
    if (process) {
        if (p) throw std::invalid_argument("--process orders all edges; --p does not apply (use --m)");
        const treepack::ProcessStream ps(n, rs);
        const long long total = ps.total_edges();
        const long long take = m ? *m : total;
        if (take < 0 || take > total)
            throw std::invalid_argument("--m must lie in [0, C(n,2)] for --process");
        std::cout << n << ' ' << take << '\n';
        for (long long i = 0; i < take; ++i) {
            const auto e = ps.arrival(i);
            std::cout << e.u << ' ' << e.v << '\n';
        }
        return kExitOk;
    }
    if (p.has_value() == m.has_value())
        throw std::invalid_argument("exactly one of --p or --m is required");
    const Graph g = p ? treepack::gen_gnp(n, *p, rs) : treepack::gen_gnm(n, *m, rs);
    treepack::write_edge_list(std::cout, g);
    return kExitOk;
}

int run_stp(const std::string& file, std::optional<int> k, bool certificate,
            const std::string& emit_trees) {
    const Graph g = load_graph(file);
    if (k) {
        const auto res = treepack::pack_k_trees(g, *k);
        std::cout << (res.feasible ? "yes" : "no") << '\n';
        if (res.feasible && !emit_trees.empty())
            emit_forest_blocks(emit_trees, g.vertex_count(), res.packing.forests);
        if (certificate && res.certificate) print_partition_certificate(*res.certificate);
        return kExitOk;
    }
    const auto res = treepack::stp_number(g);
    std::cout << res.value << '\n';
    if (!emit_trees.empty())
        emit_forest_blocks(emit_trees, g.vertex_count(), res.packing.forests);
    if (certificate) print_partition_certificate(res.certificate);
    return kExitOk;
}

int run_arboricity(const std::string& file, std::optional<int> k, bool certificate,
                   const std::string& emit_forests, bool density) {
    const Graph g = load_graph(file);
    if (density) {
        if (g.edge_count() == 0)
            throw std::invalid_argument("--density is undefined for an edgeless graph");
        std::cout << "max_avg_degree " << fraction(treepack::max_avg_degree_subgraph(g).density)
                  << '\n'
                  << "densest_ratio " << fraction(treepack::densest_ratio(g)) << '\n';
        return kExitOk;
    }
    if (k) {
        const auto res = treepack::cover_with_k_forests(g, *k);
        std::cout << (res.feasible ? "yes" : "no") << '\n';
        if (res.feasible && !emit_forests.empty())
            emit_forest_blocks(emit_forests, g.vertex_count(), res.cover.forests);
        if (certificate && res.certificate) print_dense_certificate(*res.certificate);
        return kExitOk;
    }
    const auto res = treepack::arboricity(g);
    std::cout << res.value << '\n';
    if (!emit_forests.empty())
        emit_forest_blocks(emit_forests, g.vertex_count(), res.cover.forests);
    if (certificate && res.certificate) print_dense_certificate(*res.certificate);
    return kExitOk;
}

int run_orient(const std::string& file, std::optional<int> k, bool min_mode, bool certificate) {
    const Graph g = load_graph(file);
    if (k.has_value() == min_mode)
        throw std::invalid_argument("exactly one of --k or --min is required");
    if (min_mode) {
        const auto res = treepack::min_max_indegree_full(g);
        std::cout << res.value << '\n';
        if (certificate && res.certificate) print_orient_certificate(*res.certificate);
        return kExitOk;
    }
    const auto res = treepack::orient_k(g, *k);
    std::cout << (res.feasible ? "yes" : "no") << '\n';
    if (certificate && res.certificate) print_orient_certificate(*res.certificate);
    return kExitOk;
}

int run_loadbalance(int n, long long m, int samples, std::uint64_t seed, bool multigraph) {
    if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
    std::cout << "sample,seed,maxload\n";
    for (int s = 0; s < samples; ++s) {
        const auto res =
            treepack::two_choice_load(n, m, RngSeed{seed, static_cast<std::uint64_t>(s)}, multigraph);
        std::cout << s << ',' << seed << ',' << res.max_load << '\n';
    }
    return kExitOk;
}

int run_predict(const std::string& quantity, std::optional<long long> n, std::optional<long long> m,
                std::optional<long long> k, std::optional<double> c, double eps, bool force) {
    auto need = [&](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("--quantity ") + quantity + " requires " + what);
    };
    ordered_json j;
    j["quantity"] = quantity;
    if (quantity == "beta") {
        j["value"] = treepack::beta();
        j["formula"] = "beta = 2 / (1 - log 2)";
        j["validity"] = "exact constant";
    } else if (quantity == "threshold") {
        need(n.has_value(), "--n");
        j["value"] = treepack::threshold_p(*n, force);
        j["formula"] = "p*(n) = beta (log n - (log log n)/2) / (n - 1)";
        j["validity"] = "sharp threshold for delta <= floor(m/(n-1)); asymptotic in n, n >= 3";
    } else if (quantity == "phi") {
        need(k.has_value() && n.has_value(), "--k and --n");
        j["value"] = treepack::orientability_phi(*k, *n, eps);
        j["eps"] = eps;
        j["formula"] = "phi = n exp(-2(1-eps)k/beta), or 0 once k >= (1+eps) beta log(n)/2";
        j["validity"] = "G(n,m) k-orientable a.a.s. if m <= k(n-1) - phi; not if m >= kn + 1";
    } else if (quantity == "arboricity") {
        need(m.has_value() && n.has_value(), "--m and --n");
        j["value"] = treepack::arboricity_prediction(*m, *n, eps);
        j["eps"] = eps;
        j["formula"] = "remainder trichotomy on q = ceil(m/(n-1)) with phi window";
        j["validity"] = "regime m/n -> infinity with delta(G_m) <= m/(n-1)";
    } else if (quantity == "ck") {
        need(k.has_value(), "--k");
        j["value"] = treepack::c_k(*k);
        j["formula"] = "c_k = min_{mu>0} mu / P(Poisson(mu) >= k-1)";
        j["validity"] = "k-core emergence threshold in G(n, c/n); c_2 = 1 exactly";
    } else if (quantity == "mu") {
        need(c.has_value() && k.has_value(), "--c and --k");
        j["value"] = treepack::mu_ck(*c, *k);
        j["formula"] = "mu_{c,k} = largest root of mu / P(Poisson(mu) >= k-1) = c";
        j["validity"] = "defined for c > c_k";
    } else if (quantity == "core") {
        need(c.has_value() && k.has_value(), "--c and --k");
        const auto cp = treepack::core_prediction(*c, *k);
        ordered_json v;
        v["mu"] = cp.mu;
        v["vertex_fraction"] = cp.vertex_fraction;
        v["edges_per_n"] = cp.edges_per_n;
        j["value"] = v;
        j["formula"] = "|core|/n -> f_k(mu_{c,k}); edges/n -> mu f_{k-1}(mu)/2";
        j["validity"] = "G(n, c/n) with c > c_k; a.a.s. as n -> infinity";
    } else if (quantity == "kc") {
        need(c.has_value(), "--c");
        j["value"] = treepack::k_c(*c);
        j["formula"] = "largest k with c_k <= c and mu f_{k-1}(mu)/f_k(mu) > 2(k-1)";
        j["validity"] = "arboricity of G(n, c/n) concentrates on {k_c, k_c + 1}";
    } else {
        throw std::invalid_argument("unknown quantity '" + quantity + "'");
    }
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int run_check(const std::string& file, const std::string& prop, const std::string& eps,
              const std::string& zeta, const std::string& eta, const std::string& slack,
              std::uint64_t seed, int samples) {
    const Graph g = load_graph(file);
    const Rational reps = treepack::parse_decimal_rational(eps);
    const Rational rzeta = treepack::parse_decimal_rational(zeta);
    const Rational reta = treepack::parse_decimal_rational(eta);
    treepack::ConditionReport rep;
    if (prop == "a") {
        rep = treepack::check_prop_a(g, reps, rzeta, reta, RngSeed{seed, 0}, samples);
    } else if (prop == "b") {
        rep = treepack::check_prop_b(g, reps, rzeta, reta, treepack::parse_decimal_rational(slack),
                                     RngSeed{seed, 0}, samples);
    } else {
        throw std::invalid_argument("--prop must be 'a' or 'b'");
    }
    ordered_json j;
    j["prop"] = std::string(1, rep.prop);
    j["n"] = g.vertex_count();
    j["m"] = g.edge_count();
    j["eps"] = treepack::format_rational(rep.eps);
    j["zeta"] = treepack::format_rational(rep.zeta);
    j["eta"] = treepack::format_rational(rep.eta);
    if (prop == "b") j["slack"] = treepack::format_rational(rep.slack);
    j["conditions"] = ordered_json::array();
    for (const auto& c : rep.conditions) j["conditions"].push_back(json_condition(c));
    j["all_hold"] = rep.all_hold();
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int run_experiment_cmd(const std::string& configfile, std::optional<std::uint64_t> seed,
                       std::optional<std::string> out, double budget_secs) {
    std::ifstream in(configfile);
    if (!in) throw std::runtime_error("cannot open '" + configfile + "'");
    auto cfg = treepack::parse_experiment_config(in);
    if (seed) cfg.seed = *seed;
    if (out) cfg.out = *out;
    const auto res = treepack::run_experiment(cfg, budget_secs);

    const std::filesystem::path dir(cfg.out);
    std::filesystem::create_directories(dir);
    {
        std::ofstream csv(dir / "report.csv", std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + (dir / "report.csv").string());
        csv << res.report_csv;
    }
    {
        std::ofstream js(dir / "summary.json", std::ios::binary);
        if (!js) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
        js << res.summary_json;
    }
    std::cerr << "experiment " << cfg.id << ": " << res.cells << " cells, " << res.executed_samples
              << " samples";
    if (res.any_skipped()) std::cerr << ", " << res.skipped_samples << " skipped (budget)";
    std::cerr << " -> " << (dir / "report.csv").string() << '\n';
    return res.any_skipped() ? kExitSkipped : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spanning-tree packing, arboricity, and orientation toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a random graph as an edge list on stdout");
    int gen_n = 0;
    std::optional<double> gen_p;
    std::optional<long long> gen_m;
    std::uint64_t gen_seed = 0;
    bool gen_process = false;
    gen->add_option("--n", gen_n, "Number of vertices")->required();
    gen->add_option("--p", gen_p, "Edge probability (G(n,p))");
    gen->add_option("--m", gen_m, "Number of edges (G(n,m)); with --process, prefix length");
    gen->add_option("--seed", gen_seed, "Master seed (default 0)");
    gen->add_flag("--process", gen_process,
                  "Emit a uniformly random edge permutation in arrival order");

    // stp
    auto* stp = app.add_subcommand("stp", "Spanning-tree packing number");
    std::string stp_file;
    std::optional<int> stp_k;
    bool stp_cert = false;
    std::string stp_emit;
    stp->add_option("file", stp_file, "Edge-list file ('-' for stdin)")->required();
    stp->add_option("--k", stp_k, "Decision mode: can k edge-disjoint spanning trees be packed?");
    stp->add_flag("--certificate", stp_cert, "Print the violated-partition certificate");
    stp->add_option("--emit-trees", stp_emit, "Write the packed trees to this file, one block per tree");

    // arboricity
    auto* arb = app.add_subcommand("arboricity", "Arboricity (minimum forest cover)");
    std::string arb_file;
    std::optional<int> arb_k;
    bool arb_cert = false, arb_density = false;
    std::string arb_emit;
    arb->add_option("file", arb_file, "Edge-list file ('-' for stdin)")->required();
    arb->add_option("--k", arb_k, "Decision mode: can k forests cover every edge?");
    arb->add_flag("--certificate", arb_cert, "Print the dense-set certificate");
    arb->add_option("--emit-forests", arb_emit, "Write the cover to this file, one block per forest");
    arb->add_flag("--density", arb_density,
                  "Print max average degree and Nash-Williams density as exact fractions p/q");

    // orient
    auto* ori = app.add_subcommand("orient", "Bounded-indegree orientation");
    std::string ori_file;
    std::optional<int> ori_k;
    bool ori_min = false, ori_cert = false;
    ori->add_option("file", ori_file, "Edge-list file ('-' for stdin)")->required();
    ori->add_option("--k", ori_k, "Decision mode: is the graph k-orientable?");
    ori->add_flag("--min", ori_min, "Search mode: smallest feasible max indegree");
    ori->add_flag("--certificate", ori_cert, "Print the dense-set certificate");

    // loadbalance
    auto* load = app.add_subcommand("loadbalance", "Two-choice load balancing (CSV on stdout)");
    int load_n = 0, load_samples = 1;
    long long load_m = 0;
    std::uint64_t load_seed = 0;
    bool load_multi = false;
    load->add_option("--n", load_n, "Number of bins")->required();
    load->add_option("--m", load_m, "Number of balls")->required();
    load->add_option("--samples", load_samples, "Samples (default 1)");
    load->add_option("--seed", load_seed, "Master seed; sample s uses stream id s");
    load->add_flag("--multigraph", load_multi,
                   "Draw the two choices independently per ball (with replacement)");

    // predict
    auto* pre = app.add_subcommand("predict", "Asymptotic predictions (JSON on stdout)");
    std::string pre_quantity;
    std::optional<long long> pre_n, pre_m, pre_k;
    std::optional<double> pre_c;
    double pre_eps = 0.3;
    bool pre_force = false;
    pre->add_option("--quantity", pre_quantity, "beta|threshold|phi|arboricity|ck|mu|core|kc")
        ->required();
    pre->add_option("--n", pre_n, "Number of vertices");
    pre->add_option("--m", pre_m, "Number of edges");
    pre->add_option("--k", pre_k, "Level (trees/forests/indegree/core)");
    pre->add_option("--c", pre_c, "Mean-degree parameter of G(n, c/n)");
    pre->add_option("--eps", pre_eps, "Window epsilon in (0,1) (default 0.3)");
    pre->add_flag("--force", pre_force, "Return NaN instead of erroring outside a formula's domain");

    // check
    auto* chk = app.add_subcommand("check", "Structural condition checker (JSON on stdout)");
    std::string chk_file, chk_prop;
    std::string chk_eps = "0.25", chk_zeta = "0.1", chk_eta = "0.05", chk_slack = "0.1";
    std::uint64_t chk_seed = 0;
    int chk_samples = 200;
    chk->add_option("file", chk_file, "Edge-list file ('-' for stdin)")->required();
    chk->add_option("--prop", chk_prop, "Which condition set: 'a' or 'b'")->required();
    chk->add_option("--eps", chk_eps, "Lightness epsilon (exact decimal or p/q)");
    chk->add_option("--zeta", chk_zeta, "Small-set size fraction (exact decimal or p/q)");
    chk->add_option("--eta", chk_eta, "Crossing-density constant (exact decimal or p/q)");
    chk->add_option("--slack", chk_slack, "Mean-degree slack for prop b (exact decimal or p/q)");
    chk->add_option("--seed", chk_seed, "Seed for sampled falsification");
    chk->add_option("--samples", chk_samples, "Sampling effort per sampled condition (default 200)");

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment from a config file");
    std::string exp_config;
    std::optional<std::uint64_t> exp_seed;
    std::optional<std::string> exp_out;
    double exp_budget = std::numeric_limits<double>::infinity();
    exp->add_option("configfile", exp_config, "Key-value experiment config")->required();
    exp->add_option("--seed", exp_seed, "Override the config's master seed");
    exp->add_option("--out", exp_out, "Override the config's output directory");
    exp->add_option("--budget-secs", exp_budget, "Per-cell time budget; exceeding cells are skipped");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (gen->parsed()) return run_gen(gen_n, gen_p, gen_m, gen_seed, gen_process);
        if (stp->parsed()) return run_stp(stp_file, stp_k, stp_cert, stp_emit);
        if (arb->parsed()) return run_arboricity(arb_file, arb_k, arb_cert, arb_emit, arb_density);
        if (ori->parsed()) return run_orient(ori_file, ori_k, ori_min, ori_cert);
        if (load->parsed()) return run_loadbalance(load_n, load_m, load_samples, load_seed, load_multi);
        if (pre->parsed())
            return run_predict(pre_quantity, pre_n, pre_m, pre_k, pre_c, pre_eps, pre_force);
        if (chk->parsed())
            return run_check(chk_file, chk_prop, chk_eps, chk_zeta, chk_eta, chk_slack, chk_seed,
                             chk_samples);
        if (exp->parsed()) return run_experiment_cmd(exp_config, exp_seed, exp_out, exp_budget);
    } catch (const std::exception& e) {
        std::cerr << "treepack: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;  // unreachable: require_subcommand(1)
}
