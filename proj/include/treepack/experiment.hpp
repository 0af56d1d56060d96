#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "treepack/asymptotics.hpp"
#include "treepack/forest_cover.hpp"
#include "treepack/graph.hpp"
#include "treepack/orientation.hpp"
#include "treepack/random_process.hpp"
#include "treepack/rng.hpp"
#include "treepack/tree_packing.hpp"

namespace treepack {

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

/// A batch Monte Carlo run. The config file is plain key-value text:
///
///     # comment
///     id = stp_main          # stp_main | cases_threshold | process_scan |
///                            # arboricity_hitting | load_balancing | core_emergence
///     n = 500
///     p = 0.015 0.037 0.12   # grid keys by id: p | p | m | i | k + m | k + c
///     samples = 20
///     seed = 42
///     out = results/run1     # optional, default "."
///
/// Values are whitespace-separated; each key appears at most once; '#' starts
/// a comment. Doubles are written back in shortest round-trip form, so a
/// config survives serialize → parse → serialize byte-identically.
struct ExperimentConfig {
    std::string id;
    int n = 0;
    std::vector<double> p;     // stp_main, cases_threshold: edge probabilities
    std::vector<long long> m;  // process_scan: checkpoints; load_balancing: edge counts
    std::vector<int> k;        // load_balancing: orientation k; core_emergence: core order
    std::vector<int> i;        // arboricity_hitting: target arboricity levels
    std::vector<double> c;     // core_emergence: mean degree parameters
    int samples = 1;
    std::uint64_t seed = 0;
    std::string out = ".";

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

    void validate() const;
};

inline constexpr std::array<std::string_view, 6> kExperimentIds = {
    "stp_main",  "cases_threshold", "process_scan",
    "arboricity_hitting", "load_balancing",  "core_emergence"};

/// eps used for every asymptotic window the harness reports (phi windows,
/// hitting windows, orientability phi). Fixed rather than configurable: the
/// windows are descriptive columns, and acceptance thresholds pin this value.
inline constexpr double kWindowEps = 0.3;

namespace detail {

inline std::string fmt_double(double x) {
    std::array<char, 40> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (res.ec != std::errc()) throw std::logic_error("fmt_double: conversion failed");
    return std::string(buf.data(), res.ptr);
}

inline double parse_double_token(const std::string& tok, int line) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::invalid_argument("config line " + std::to_string(line) + ": bad number '" + tok + "'");
    return v;
}

template <typename Int>
inline Int parse_int_token(const std::string& tok, int line) {
    Int v = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::invalid_argument("config line " + std::to_string(line) + ": bad integer '" + tok + "'");
    return v;
}

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

inline void ExperimentConfig::validate() const {
    const bool known = std::find(kExperimentIds.begin(), kExperimentIds.end(), id) != kExperimentIds.end();
    if (!known) throw std::invalid_argument("config: unknown experiment id '" + id + "'");
    if (n < 2) throw std::invalid_argument("config: n must be >= 2");
    if (id == "cases_threshold" && n < 3)
        throw std::invalid_argument("config: cases_threshold needs n >= 3 (threshold_p)");
    if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
    if (out.empty()) throw std::invalid_argument("config: out must not be empty");

    const bool wants_p = id == "stp_main" || id == "cases_threshold";
    const bool wants_m = id == "process_scan" || id == "load_balancing";
    const bool wants_k = id == "load_balancing" || id == "core_emergence";
    const bool wants_i = id == "arboricity_hitting";
    const bool wants_c = id == "core_emergence";
    auto expect = [&](bool wanted, bool present, const char* key) {
        if (wanted && !present)
            throw std::invalid_argument(std::string("config: ") + id + " needs a nonempty '" + key +
                                        "' grid");
        if (!wanted && present)
            throw std::invalid_argument(std::string("config: ") + id + " does not take a '" + key +
                                        "' grid");
    };
    expect(wants_p, !p.empty(), "p");
    expect(wants_m, !m.empty(), "m");
    expect(wants_k, !k.empty(), "k");
    expect(wants_i, !i.empty(), "i");
    expect(wants_c, !c.empty(), "c");

    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    for (const double v : p)
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("config: p values must lie in [0,1]");
    for (const long long v : m)
        if (v < 0 || v > total)
            throw std::invalid_argument("config: m values must lie in [0, C(n,2)]");
    if (id == "process_scan" &&
        std::adjacent_find(m.begin(), m.end(), std::greater_equal<>()) != m.end())
        throw std::invalid_argument("config: process_scan checkpoints must be strictly increasing");
    if (wants_i) {
        if (std::adjacent_find(i.begin(), i.end(), std::greater_equal<>()) != i.end())
            throw std::invalid_argument("config: i values must be strictly increasing");
        const int max_i = (n + 1) / 2;  // A(K_n) = ceil(n/2)
        for (const int v : i)
            if (v < 1 || v > max_i)
                throw std::invalid_argument("config: i values must lie in [1, ceil(n/2)]");
    }
    for (const int v : k) {
        if (id == "load_balancing" && v < 1)
            throw std::invalid_argument("config: load_balancing k values must be >= 1");
        if (id == "core_emergence" && v < 2)
            throw std::invalid_argument("config: core_emergence k values must be >= 2");
    }
    for (const double v : c)
        if (!(v > 0.0)) throw std::invalid_argument("config: c values must be > 0");
}

inline ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    std::vector<std::string> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string text = detail::trim(raw);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line) + ": expected key = value");
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(line) + ": empty key or value");
        if (std::find(seen.begin(), seen.end(), key) != seen.end())
            throw std::invalid_argument("config line " + std::to_string(line) + ": duplicate key '" +
                                        key + "'");
        seen.push_back(key);
        std::istringstream vs(value);
        std::vector<std::string> toks;
        for (std::string t; vs >> t;) toks.push_back(t);
        auto single = [&]() -> const std::string& {
            if (toks.size() != 1)
                throw std::invalid_argument("config line " + std::to_string(line) + ": key '" + key +
                                            "' takes exactly one value");
            return toks.front();
        };
        if (key == "id") {
            cfg.id = single();
        } else if (key == "n") {
            cfg.n = detail::parse_int_token<int>(single(), line);
        } else if (key == "samples") {
            cfg.samples = detail::parse_int_token<int>(single(), line);
        } else if (key == "seed") {
            cfg.seed = detail::parse_int_token<std::uint64_t>(single(), line);
        } else if (key == "out") {
            cfg.out = single();
        } else if (key == "p") {
            for (const auto& t : toks) cfg.p.push_back(detail::parse_double_token(t, line));
        } else if (key == "m") {
            for (const auto& t : toks) cfg.m.push_back(detail::parse_int_token<long long>(t, line));
        } else if (key == "k") {
            for (const auto& t : toks) cfg.k.push_back(detail::parse_int_token<int>(t, line));
        } else if (key == "i") {
            for (const auto& t : toks) cfg.i.push_back(detail::parse_int_token<int>(t, line));
        } else if (key == "c") {
            for (const auto& t : toks) cfg.c.push_back(detail::parse_double_token(t, line));
        } else {
            throw std::invalid_argument("config line " + std::to_string(line) + ": unknown key '" +
                                        key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

inline ExperimentConfig parse_experiment_config(const std::string& text) {
    std::istringstream in(text);
    return parse_experiment_config(in);
}

inline std::string serialize_experiment_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "id = " << cfg.id << "\n";
    out << "n = " << cfg.n << "\n";
    auto list = [&out](const char* key, const auto& values, auto&& fmt) {
        if (values.empty()) return;
        out << key << " =";
        for (const auto& v : values) out << ' ' << fmt(v);
        out << "\n";
    };
    list("p", cfg.p, [](double v) { return detail::fmt_double(v); });
    list("m", cfg.m, [](long long v) { return std::to_string(v); });
    list("k", cfg.k, [](int v) { return std::to_string(v); });
    list("i", cfg.i, [](int v) { return std::to_string(v); });
    list("c", cfg.c, [](double v) { return detail::fmt_double(v); });
    out << "samples = " << cfg.samples << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "out = " << cfg.out << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Running experiments
// ---------------------------------------------------------------------------

struct ExperimentResult {
    std::string report_csv;    // one row per executed sample, ordered by (cell, sample)
    std::string summary_json;  // per-cell aggregates + asymptotics predictions
    int cells = 0;
    long long executed_samples = 0;
    long long skipped_samples = 0;

    [[nodiscard]] bool any_skipped() const { return skipped_samples > 0; }
};

namespace detail {

/// Rows may be produced sample-major (process experiments run one process per
/// sample across every cell); the writer re-establishes (cell, sample) order.
struct RowBuffer {
    std::string header;
    std::vector<std::tuple<int, int, std::string>> rows;

    void add(int cell, int sample, std::string text) { rows.emplace_back(cell, sample, std::move(text)); }

    [[nodiscard]] std::string render() const {
        auto sorted = rows;
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& a, const auto& b) {
                      return std::tie(std::get<0>(a), std::get<1>(a)) <
                             std::tie(std::get<0>(b), std::get<1>(b));
                  });
        std::string out = header;
        out += '\n';
        for (const auto& [cell, sample, text] : sorted) {
            out += text;
            out += '\n';
        }
        return out;
    }
};

/// Wall-clock budget with per-cell or per-run scope. Never consulted when the
/// budget is infinite, so unbudgeted runs are fully deterministic.
class BudgetClock {
public:
    explicit BudgetClock(double budget_secs) : budget_(budget_secs) { reset(); }
    void reset() { start_ = std::chrono::steady_clock::now(); }
    [[nodiscard]] bool exceeded() const {
        if (!std::isfinite(budget_)) return false;
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
        return elapsed.count() > budget_;
    }

private:
    double budget_;
    std::chrono::steady_clock::time_point start_;
};

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::ordered_json summary_shell(const ExperimentConfig& cfg, const std::string& generated_at) {
    nlohmann::ordered_json root;
    root["id"] = cfg.id;
    root["n"] = cfg.n;
    root["samples"] = cfg.samples;
    root["seed"] = cfg.seed;
    root["generated_at"] = generated_at.empty() ? utc_timestamp() : generated_at;
    root["cells"] = nlohmann::ordered_json::array();
    return root;
}

inline double fraction(long long hits, long long executed) {
    return executed > 0 ? static_cast<double>(hits) / static_cast<double>(executed) : 0.0;
}

// ---- stp_main -------------------------------------------------------------

inline ExperimentResult run_stp_main(const ExperimentConfig& cfg, double budget_secs,
                                     const std::string& generated_at) {
    const RngSeed master{cfg.seed, 0};
    RowBuffer rows;
    rows.header = "cell,sample,p,m,delta,floor_ratio,stp,predicted_stp,agree";
    auto root = summary_shell(cfg, generated_at);
    ExperimentResult res;
    res.cells = static_cast<int>(cfg.p.size());
    for (int cell = 0; cell < res.cells; ++cell) {
        const double p = cfg.p[static_cast<std::size_t>(cell)];
        BudgetClock clock(budget_secs);
        long long executed = 0, skipped = 0, agree_count = 0, stp_sum = 0;
        for (int s = 0; s < cfg.samples; ++s) {
            if (clock.exceeded()) {
                skipped = cfg.samples - s;
                break;
            }
            const RngSeed seed = master.child(static_cast<std::uint64_t>(cell))
                                     .child(static_cast<std::uint64_t>(s));
            const Graph g = gen_gnp(cfg.n, p, seed);
            const long long m = g.edge_count();
            const int delta = min_degree(g);
            const int stp = stp_number(g).value;
            const long long predicted = stp_prediction(delta, m, cfg.n);
            const int agree = stp == predicted ? 1 : 0;
            agree_count += agree;
            stp_sum += stp;
            ++executed;
            rows.add(cell, s,
                     std::to_string(cell) + ',' + std::to_string(s) + ',' + fmt_double(p) + ',' +
                         std::to_string(m) + ',' + std::to_string(delta) + ',' +
                         std::to_string(m / (cfg.n - 1)) + ',' + std::to_string(stp) + ',' +
                         std::to_string(predicted) + ',' + std::to_string(agree));
        }
        nlohmann::ordered_json jc;
        jc["cell"] = cell;
        jc["p"] = p;
        jc["executed"] = executed;
        jc["skipped"] = skipped;
        jc["agreement_fraction"] = fraction(agree_count, executed);
        jc["mean_stp"] = fraction(stp_sum, executed);
        nlohmann::ordered_json pred;
        if (cfg.n >= 3) pred["threshold_p"] = threshold_p(cfg.n);
        pred["predicted_agreement"] = 1.0;  // the min rule holds a.a.s. for every p
        jc["predictions"] = pred;
        root["cells"].push_back(jc);
        res.executed_samples += executed;
        res.skipped_samples += skipped;
    }
    res.report_csv = rows.render();
    root["skipped_samples"] = res.skipped_samples;
    res.summary_json = root.dump(2) + "\n";
    return res;
}

// ---- cases_threshold --------------------------------------------------------

inline ExperimentResult run_cases_threshold(const ExperimentConfig& cfg, double budget_secs,
                                            const std::string& generated_at) {
    const RngSeed master{cfg.seed, 0};
    RowBuffer rows;
    rows.header = "cell,sample,p,m,delta,floor_ratio,delta_le_floor";
    auto root = summary_shell(cfg, generated_at);
    ExperimentResult res;
    res.cells = static_cast<int>(cfg.p.size());
    const double tp = threshold_p(cfg.n);
    for (int cell = 0; cell < res.cells; ++cell) {
        const double p = cfg.p[static_cast<std::size_t>(cell)];
        BudgetClock clock(budget_secs);
        long long executed = 0, skipped = 0, le_count = 0;
        for (int s = 0; s < cfg.samples; ++s) {
            if (clock.exceeded()) {
                skipped = cfg.samples - s;
                break;
            }
            const RngSeed seed = master.child(static_cast<std::uint64_t>(cell))
                                     .child(static_cast<std::uint64_t>(s));
            const Graph g = gen_gnp(cfg.n, p, seed);
            const long long m = g.edge_count();
            const int delta = min_degree(g);
            const long long floor_ratio = m / (cfg.n - 1);
            const int le = delta <= floor_ratio ? 1 : 0;
            le_count += le;
            ++executed;
            rows.add(cell, s,
                     std::to_string(cell) + ',' + std::to_string(s) + ',' + fmt_double(p) + ',' +
                         std::to_string(m) + ',' + std::to_string(delta) + ',' +
                         std::to_string(floor_ratio) + ',' + std::to_string(le));
        }
        nlohmann::ordered_json jc;
        jc["cell"] = cell;
        jc["p"] = p;
        jc["executed"] = executed;
        jc["skipped"] = skipped;
        jc["fraction_delta_le_floor"] = fraction(le_count, executed);
        nlohmann::ordered_json pred;
        pred["threshold_p"] = tp;
        if (p < tp) {
            pred["side"] = "below";
            pred["predicted_fraction"] = 1.0;
        } else if (p > tp) {
            pred["side"] = "above";
            pred["predicted_fraction"] = 0.0;
        } else {
            pred["side"] = "at";
        }
        jc["predictions"] = pred;
        root["cells"].push_back(jc);
        res.executed_samples += executed;
        res.skipped_samples += skipped;
    }
    res.report_csv = rows.render();
    root["skipped_samples"] = res.skipped_samples;
    res.summary_json = root.dump(2) + "\n";
    return res;
}

// ---- process_scan -----------------------------------------------------------

inline ExperimentResult run_process_scan(const ExperimentConfig& cfg, double budget_secs,
                                         const std::string& generated_at) {
    const RngSeed master{cfg.seed, 0};
    RowBuffer rows;
    rows.header =
        "cell,sample,m,delta,lambda,stp,arboricity,predicted_stp,agree,window_lo,window_hi,"
        "in_window,monotone_ok";
    auto root = summary_shell(cfg, generated_at);
    ExperimentResult res;
    res.cells = static_cast<int>(cfg.m.size());
    const int cells = res.cells;
    std::vector<long long> executed(static_cast<std::size_t>(cells), 0);
    std::vector<long long> agree_count(static_cast<std::size_t>(cells), 0);
    std::vector<long long> window_count(static_cast<std::size_t>(cells), 0);
    std::vector<long long> monotone_bad(static_cast<std::size_t>(cells), 0);
    long long skipped_processes = 0;
    // One process spans every cell, so the budget here governs the whole run:
    // the per-sample seed is master.child(sample) and checkpoints are
    // observation points, not independent draws.
    BudgetClock clock(budget_secs);
    for (int s = 0; s < cfg.samples; ++s) {
        if (clock.exceeded()) {
            skipped_processes = cfg.samples - s;
            break;
        }
        const ProcessStream ps(cfg.n, master.child(static_cast<std::uint64_t>(s)));
        int prev_delta = -1, prev_lambda = -1, prev_stp = -1, prev_arb = -1;
        for (int cell = 0; cell < cells; ++cell) {
            const long long m = cfg.m[static_cast<std::size_t>(cell)];
            const Graph g = ps.prefix(m);
            const int delta = min_degree(g);
            const int lambda = edge_connectivity(g);
            const int stp = stp_number(g).value;
            const int arb = arboricity(g).value;
            const long long predicted = stp_prediction(delta, m, cfg.n);
            const int agree = stp == predicted ? 1 : 0;
            std::string window_lo = "", window_hi = "";
            int in_window = 1;  // vacuous at m = 0
            if (m >= 1) {
                const auto window = arboricity_prediction(m, cfg.n, kWindowEps);
                window_lo = std::to_string(window.front());
                window_hi = std::to_string(window.back());
                in_window = window.front() <= arb && arb <= window.back() ? 1 : 0;
            }
            const bool monotone =
                cell == 0 || (delta >= prev_delta && lambda >= prev_lambda && stp >= prev_stp &&
                              arb >= prev_arb);
            prev_delta = delta;
            prev_lambda = lambda;
            prev_stp = stp;
            prev_arb = arb;
            agree_count[static_cast<std::size_t>(cell)] += agree;
            window_count[static_cast<std::size_t>(cell)] += in_window;
            monotone_bad[static_cast<std::size_t>(cell)] += monotone ? 0 : 1;
            ++executed[static_cast<std::size_t>(cell)];
            rows.add(cell, s,
                     std::to_string(cell) + ',' + std::to_string(s) + ',' + std::to_string(m) + ',' +
                         std::to_string(delta) + ',' + std::to_string(lambda) + ',' +
                         std::to_string(stp) + ',' + std::to_string(arb) + ',' +
                         std::to_string(predicted) + ',' + std::to_string(agree) + ',' + window_lo +
                         ',' + window_hi + ',' + std::to_string(in_window) + ',' +
                         (monotone ? "1" : "0"));
        }
    }
    for (int cell = 0; cell < cells; ++cell) {
        const long long m = cfg.m[static_cast<std::size_t>(cell)];
        nlohmann::ordered_json jc;
        jc["cell"] = cell;
        jc["m"] = m;
        jc["executed"] = executed[static_cast<std::size_t>(cell)];
        jc["skipped"] = skipped_processes;
        jc["agreement_fraction"] =
            fraction(agree_count[static_cast<std::size_t>(cell)], executed[static_cast<std::size_t>(cell)]);
        jc["window_fraction"] =
            fraction(window_count[static_cast<std::size_t>(cell)], executed[static_cast<std::size_t>(cell)]);
        jc["monotone_violations"] = monotone_bad[static_cast<std::size_t>(cell)];
        nlohmann::ordered_json pred;
        if (m >= 1) {
            const auto window = arboricity_prediction(m, cfg.n, kWindowEps);
            pred["arboricity_window"] = window;
        }
        pred["predicted_agreement"] = 1.0;
        jc["predictions"] = pred;
        root["cells"].push_back(jc);
        res.executed_samples += executed[static_cast<std::size_t>(cell)];
        res.skipped_samples += skipped_processes;
    }
    res.report_csv = rows.render();
    root["skipped_samples"] = res.skipped_samples;
    res.summary_json = root.dump(2) + "\n";
    return res;
}

// ---- arboricity_hitting -------------------------------------------------------

inline ExperimentResult run_arboricity_hitting(const ExperimentConfig& cfg, double budget_secs,
                                               const std::string& generated_at) {
    const RngSeed master{cfg.seed, 0};
    RowBuffer rows;
    rows.header = "cell,sample,i,m_hit,exact_value,equal,window_lower,window_upper,regime,in_window";
    auto root = summary_shell(cfg, generated_at);
    ExperimentResult res;
    res.cells = static_cast<int>(cfg.i.size());
    const int cells = res.cells;
    const int top = cfg.i.back();
    std::vector<long long> executed(static_cast<std::size_t>(cells), 0);
    std::vector<long long> equal_count(static_cast<std::size_t>(cells), 0);
    std::vector<long long> window_hits(static_cast<std::size_t>(cells), 0);
    long long skipped_processes = 0;
    BudgetClock clock(budget_secs);  // whole-run scope, as in process_scan
    for (int s = 0; s < cfg.samples; ++s) {
        if (clock.exceeded()) {
            skipped_processes = cfg.samples - s;
            break;
        }
        const ProcessStream ps(cfg.n, master.child(static_cast<std::uint64_t>(s)));
        // Hitting times for every level up to the largest requested, in one
        // incremental sweep: arboricity never decreases, and rises by at most
        // one per arriving edge.
        std::vector<long long> hit(static_cast<std::size_t>(top) + 1, -1);
        IncrementalArboricity inc(cfg.n);
        int reached = 0;
        for (long long step = 1; step <= ps.total_edges() && reached < top; ++step) {
            const int a = inc.add_edge(ps.arrival(step - 1));
            if (a > reached) {
                reached = a;
                if (a <= top) hit[static_cast<std::size_t>(a)] = step;
            }
        }
        for (int cell = 0; cell < cells; ++cell) {
            const int level = cfg.i[static_cast<std::size_t>(cell)];
            const long long m_hit = hit[static_cast<std::size_t>(level)];
            if (m_hit < 0) throw std::logic_error("arboricity level not reached on the full process");
            const HittingWindow w = hitting_window(level, cfg.n, kWindowEps);
            const int equal = m_hit == w.exact_value ? 1 : 0;
            const std::string regime = w.high_regime ? "high" : (w.low_regime ? "low" : "mid");
            int in_window;
            if (w.high_regime)
                in_window = equal;
            else if (w.low_regime)
                in_window = (static_cast<double>(m_hit) > w.lower &&
                             static_cast<double>(m_hit) < w.upper)
                                ? 1
                                : 0;
            else
                in_window = static_cast<double>(m_hit) > w.lower ? 1 : 0;
            equal_count[static_cast<std::size_t>(cell)] += equal;
            window_hits[static_cast<std::size_t>(cell)] += in_window;
            ++executed[static_cast<std::size_t>(cell)];
            rows.add(cell, s,
                     std::to_string(cell) + ',' + std::to_string(s) + ',' + std::to_string(level) +
                         ',' + std::to_string(m_hit) + ',' + std::to_string(w.exact_value) + ',' +
                         std::to_string(equal) + ',' + fmt_double(w.lower) + ',' +
                         fmt_double(w.upper) + ',' + regime + ',' + std::to_string(in_window));
        }
    }
    for (int cell = 0; cell < cells; ++cell) {
        const int level = cfg.i[static_cast<std::size_t>(cell)];
        const HittingWindow w = hitting_window(level, cfg.n, kWindowEps);
        nlohmann::ordered_json jc;
        jc["cell"] = cell;
        jc["i"] = level;
        jc["executed"] = executed[static_cast<std::size_t>(cell)];
        jc["skipped"] = skipped_processes;
        jc["equal_fraction"] =
            fraction(equal_count[static_cast<std::size_t>(cell)], executed[static_cast<std::size_t>(cell)]);
        jc["in_window_fraction"] =
            fraction(window_hits[static_cast<std::size_t>(cell)], executed[static_cast<std::size_t>(cell)]);
        nlohmann::ordered_json pred;
        pred["exact_value"] = w.exact_value;
        pred["lower"] = w.lower;
        pred["upper"] = w.upper;
        pred["regime"] = w.high_regime ? "high" : (w.low_regime ? "low" : "mid");
        jc["predictions"] = pred;
        root["cells"].push_back(jc);
        res.executed_samples += executed[static_cast<std::size_t>(cell)];
        res.skipped_samples += skipped_processes;
    }
    res.report_csv = rows.render();
    root["skipped_samples"] = res.skipped_samples;
    res.summary_json = root.dump(2) + "\n";
    return res;
}

// ---- load_balancing -----------------------------------------------------------

inline ExperimentResult run_load_balancing(const ExperimentConfig& cfg, double budget_secs,
                                           const std::string& generated_at) {
    const RngSeed master{cfg.seed, 0};
    RowBuffer rows;
    rows.header = "cell,sample,k,m,orientable";
    auto root = summary_shell(cfg, generated_at);
    ExperimentResult res;
    res.cells = static_cast<int>(cfg.k.size() * cfg.m.size());
    int cell = -1;
    for (const int k : cfg.k) {
        const double phi = orientability_phi(k, cfg.n, kWindowEps);
        for (const long long m : cfg.m) {
            ++cell;
            BudgetClock clock(budget_secs);
            long long executed = 0, skipped = 0, orientable_count = 0;
            for (int s = 0; s < cfg.samples; ++s) {
                if (clock.exceeded()) {
                    skipped = cfg.samples - s;
                    break;
                }
                const RngSeed seed = master.child(static_cast<std::uint64_t>(cell))
                                         .child(static_cast<std::uint64_t>(s));
                const Graph g = gen_gnm(cfg.n, m, seed);
                const int orientable = orient_k(g, k).feasible ? 1 : 0;
                orientable_count += orientable;
                ++executed;
                rows.add(cell, s,
                         std::to_string(cell) + ',' + std::to_string(s) + ',' + std::to_string(k) +
                             ',' + std::to_string(m) + ',' + std::to_string(orientable));
            }
            nlohmann::ordered_json jc;
            jc["cell"] = cell;
            jc["k"] = k;
            jc["m"] = m;
            jc["executed"] = executed;
            jc["skipped"] = skipped;
            jc["orientable_fraction"] = fraction(orientable_count, executed);
            nlohmann::ordered_json pred;
            pred["phi"] = phi;
            const double certify = static_cast<double>(k) * (cfg.n - 1) - phi;
            pred["orientable_if_m_le"] = certify;
            pred["not_orientable_if_m_ge"] = static_cast<long long>(k) * cfg.n + 1;
            if (m >= static_cast<long long>(k) * cfg.n + 1)
                pred["predicted"] = "not-orientable";
            else if (static_cast<double>(m) <= certify)
                pred["predicted"] = "orientable";
            else
                pred["predicted"] = "transition";
            jc["predictions"] = pred;
            root["cells"].push_back(jc);
            res.executed_samples += executed;
            res.skipped_samples += skipped;
        }
    }
    res.report_csv = rows.render();
    root["skipped_samples"] = res.skipped_samples;
    res.summary_json = root.dump(2) + "\n";
    return res;
}

// ---- core_emergence -------------------------------------------------------------

inline ExperimentResult run_core_emergence(const ExperimentConfig& cfg, double budget_secs,
                                           const std::string& generated_at) {
    const RngSeed master{cfg.seed, 0};
    RowBuffer rows;
    rows.header = "cell,sample,k,c,core_vertices,core_edges,vertex_fraction,edges_per_n,empty";
    auto root = summary_shell(cfg, generated_at);
    ExperimentResult res;
    res.cells = static_cast<int>(cfg.k.size() * cfg.c.size());
    int cell = -1;
    for (const int k : cfg.k) {
        const double ck = c_k(k);
        for (const double c : cfg.c) {
            ++cell;
            BudgetClock clock(budget_secs);
            long long executed = 0, skipped = 0, empty_count = 0;
            double frac_sum = 0.0, edge_sum = 0.0;
            for (int s = 0; s < cfg.samples; ++s) {
                if (clock.exceeded()) {
                    skipped = cfg.samples - s;
                    break;
                }
                const RngSeed seed = master.child(static_cast<std::uint64_t>(cell))
                                         .child(static_cast<std::uint64_t>(s));
                const Graph g = gen_gnp(cfg.n, c / static_cast<double>(cfg.n), seed);
                const VertexSet core = k_core(g, k);
                const long long core_edges = core.empty() ? 0 : induced_edge_count(g, core);
                const double vf = static_cast<double>(core.size()) / static_cast<double>(cfg.n);
                const double epn = static_cast<double>(core_edges) / static_cast<double>(cfg.n);
                frac_sum += vf;
                edge_sum += epn;
                empty_count += core.empty() ? 1 : 0;
                ++executed;
                rows.add(cell, s,
                         std::to_string(cell) + ',' + std::to_string(s) + ',' + std::to_string(k) +
                             ',' + fmt_double(c) + ',' + std::to_string(core.size()) + ',' +
                             std::to_string(core_edges) + ',' + fmt_double(vf) + ',' +
                             fmt_double(epn) + ',' + (core.empty() ? "1" : "0"));
            }
            nlohmann::ordered_json jc;
            jc["cell"] = cell;
            jc["k"] = k;
            jc["c"] = c;
            jc["executed"] = executed;
            jc["skipped"] = skipped;
            jc["empty_fraction"] = fraction(empty_count, executed);
            jc["mean_vertex_fraction"] = executed > 0 ? frac_sum / static_cast<double>(executed) : 0.0;
            jc["mean_edges_per_n"] = executed > 0 ? edge_sum / static_cast<double>(executed) : 0.0;
            nlohmann::ordered_json pred;
            pred["c_k"] = ck;
            if (c > ck) {
                const CorePrediction cp = core_prediction(c, k);
                pred["mu"] = cp.mu;
                pred["vertex_fraction"] = cp.vertex_fraction;
                pred["edges_per_n"] = cp.edges_per_n;
            } else {
                pred["empty_core"] = true;
            }
            jc["predictions"] = pred;
            root["cells"].push_back(jc);
            res.executed_samples += executed;
            res.skipped_samples += skipped;
        }
    }
    res.report_csv = rows.render();
    root["skipped_samples"] = res.skipped_samples;
    res.summary_json = root.dump(2) + "\n";
    return res;
}

}  // namespace detail

/// Runs a validated config to completion (or until the per-cell budget trims
/// samples; skipped samples are reported, never silently folded into
/// denominators). With an infinite budget the outputs are byte-deterministic
/// functions of the config; `generated_at` overrides the summary timestamp
/// (pass a fixed string to make summary.json reproducible too).
inline ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                       double budget_secs = std::numeric_limits<double>::infinity(),
                                       const std::string& generated_at = "") {
    cfg.validate();
    if (cfg.id == "stp_main") return detail::run_stp_main(cfg, budget_secs, generated_at);
    if (cfg.id == "cases_threshold") return detail::run_cases_threshold(cfg, budget_secs, generated_at);
    if (cfg.id == "process_scan") return detail::run_process_scan(cfg, budget_secs, generated_at);
    if (cfg.id == "arboricity_hitting")
        return detail::run_arboricity_hitting(cfg, budget_secs, generated_at);
    if (cfg.id == "load_balancing") return detail::run_load_balancing(cfg, budget_secs, generated_at);
    if (cfg.id == "core_emergence") return detail::run_core_emergence(cfg, budget_secs, generated_at);
    throw std::invalid_argument("run_experiment: unknown id " + cfg.id);
}

}  // namespace treepack
