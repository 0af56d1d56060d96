#include <catch2/catch_amalgamated.hpp>

#include <treepack/experiment.hpp>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

using namespace treepack;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(std::move(cells));
    }
    return rows;
}

const std::string kConfigs[] = {
    "id = stp_main\nn = 24\np = 0.2 0.6\nsamples = 3\nseed = 7\n",
    "id = cases_threshold\nn = 40\np = 0.05 0.4\nsamples = 3\nseed = 7\n",
    "id = process_scan\nn = 16\nm = 0 10 40 120\nsamples = 2\nseed = 7\n",
    "id = arboricity_hitting\nn = 20\ni = 1 2 4\nsamples = 2\nseed = 7\n",
    "id = load_balancing\nn = 30\nk = 2\nm = 20 61\nsamples = 3\nseed = 7\n",
    "id = core_emergence\nn = 200\nk = 3\nc = 2 5\nsamples = 3\nseed = 7\n",
};

}  // namespace

TEST_CASE("config files round-trip losslessly") {
    for (const auto& text : kConfigs) {
        const auto cfg = parse_experiment_config(text);
        const std::string ser = serialize_experiment_config(cfg);
        const auto again = parse_experiment_config(ser);
        CHECK(again == cfg);
        CHECK(serialize_experiment_config(again) == ser);
    }
    // Doubles that are not exactly representable survive the trip bit-for-bit.
    const auto cfg = parse_experiment_config(
        std::string("id = stp_main\nn = 9\np = 0.1 0.3333333333333333 1e-3\nsamples = 1\nseed = 1\n"));
    REQUIRE(cfg.p.size() == 3);
    CHECK(cfg.p[0] == 0.1);
    CHECK(cfg.p[2] == 1e-3);
    CHECK(parse_experiment_config(serialize_experiment_config(cfg)) == cfg);
}

TEST_CASE("config parser and validation reject malformed input") {
    auto bad = [](const std::string& text) {
        CHECK_THROWS_AS(parse_experiment_config(text), std::invalid_argument);
    };
    bad("id = unknown_experiment\nn = 10\np = 0.5\nsamples = 1\nseed = 0\n");
    bad("id = stp_main\nn = 10\nsamples = 1\nseed = 0\n");                      // missing grid
    bad("id = stp_main\nn = 10\np = 0.5\nk = 3\nsamples = 1\nseed = 0\n");      // foreign grid
    bad("id = stp_main\nn = 1\np = 0.5\nsamples = 1\nseed = 0\n");              // n too small
    bad("id = stp_main\nn = 10\np = 1.5\nsamples = 1\nseed = 0\n");             // p out of range
    bad("id = stp_main\nn = 10\np = 0.5\nsamples = 0\nseed = 0\n");             // samples < 1
    bad("id = stp_main\nn = 10\np = 0.5\np = 0.6\nsamples = 1\nseed = 0\n");    // duplicate key
    bad("id = stp_main\nn = 10\np = 0.5\nbudget = 3\nsamples = 1\nseed = 0\n"); // unknown key
    bad("id = stp_main\nn = 10\np = zero\nsamples = 1\nseed = 0\n");            // bad number
    bad("id = stp_main\nn = 10 extra\np = 0.5\nsamples = 1\nseed = 0\n");       // multi-valued scalar
    bad("no equals sign here\n");
    bad("id = process_scan\nn = 10\nm = 5 5 9\nsamples = 1\nseed = 0\n");       // not increasing
    bad("id = process_scan\nn = 10\nm = 5 99\nsamples = 1\nseed = 0\n");        // m > C(n,2)
    bad("id = arboricity_hitting\nn = 10\ni = 0 2\nsamples = 1\nseed = 0\n");   // i < 1
    bad("id = arboricity_hitting\nn = 10\ni = 6\nsamples = 1\nseed = 0\n");     // i > ceil(n/2)
    bad("id = core_emergence\nn = 10\nk = 1\nc = 2\nsamples = 1\nseed = 0\n");  // k < 2
    bad("id = core_emergence\nn = 10\nk = 3\nc = 0\nsamples = 1\nseed = 0\n");  // c <= 0
    bad("id = cases_threshold\nn = 2\np = 0.5\nsamples = 1\nseed = 0\n");       // threshold_p needs n >= 3
}

TEST_CASE("comments, blank lines, and out paths parse") {
    const auto cfg = parse_experiment_config(std::string(
        "# experiment\n\nid = load_balancing   # trailing comment\n n = 12 \nk = 2 3\nm = 5\n"
        "samples = 2\nseed = 9\nout = results/run_a\n"));
    CHECK(cfg.id == "load_balancing");
    CHECK(cfg.n == 12);
    CHECK(cfg.k == std::vector<int>{2, 3});
    CHECK(cfg.out == "results/run_a");
    CHECK(parse_experiment_config(serialize_experiment_config(cfg)) == cfg);
}

TEST_CASE("identical seeds reproduce reports byte-for-byte, one config per id") {
    for (const auto& text : kConfigs) {
        const auto cfg = parse_experiment_config(text);
        const auto r1 = run_experiment(cfg, 1e18, "FIXED");
        const auto r2 = run_experiment(cfg, 1e18, "FIXED");
        INFO(cfg.id);
        CHECK(r1.report_csv == r2.report_csv);
        CHECK(r1.summary_json == r2.summary_json);
        CHECK_FALSE(r1.any_skipped());
        // A different master seed must change the data.  (load_balancing is
        // exempt: its only data column is the orientable bit, and both m
        // values in the config are deterministic — m = 20 is far below the
        // transition window and m = kn+1 = 61 is never orientable.)
        if (cfg.id == "load_balancing") continue;
        auto other = cfg;
        other.seed += 1;
        CHECK(run_experiment(other, 1e18, "FIXED").report_csv != r1.report_csv);
    }
}

TEST_CASE("reports are complete and ordered by (cell, sample)") {
    for (const auto& text : kConfigs) {
        const auto cfg = parse_experiment_config(text);
        const auto res = run_experiment(cfg, 1e18, "FIXED");
        const auto rows = parse_csv(res.report_csv);
        REQUIRE(rows.size() >= 2);
        const std::size_t expected =
            static_cast<std::size_t>(res.cells) * static_cast<std::size_t>(cfg.samples);
        CHECK(rows.size() - 1 == expected);
        CHECK(static_cast<long long>(expected) == res.executed_samples);
        int prev_cell = -1, prev_sample = -1;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const int cell = std::stoi(rows[r][0]);
            const int sample = std::stoi(rows[r][1]);
            const bool advanced = cell > prev_cell || (cell == prev_cell && sample > prev_sample);
            CHECK(advanced);
            prev_cell = cell;
            prev_sample = sample;
        }
    }
}

TEST_CASE("a zero budget skips every sample and reports it") {
    const auto cfg = parse_experiment_config(kConfigs[0]);
    const auto res = run_experiment(cfg, 0.0, "FIXED");
    CHECK(res.any_skipped());
    CHECK(res.executed_samples == 0);
    CHECK(res.skipped_samples == static_cast<long long>(res.cells) * cfg.samples);
    const auto rows = parse_csv(res.report_csv);
    CHECK(rows.size() == 1);  // header only
    // Skips are visible per cell, and fractions are not diluted by them.
    const auto summary = nlohmann::json::parse(res.summary_json);
    for (const auto& cell : summary["cells"]) {
        CHECK(cell["executed"] == 0);
        CHECK(cell["skipped"] == cfg.samples);
        CHECK(cell["agreement_fraction"] == 0.0);
    }
    CHECK(summary["skipped_samples"] == res.skipped_samples);
}

TEST_CASE("stp_main trivia: p = 0 and p = 1 agree exactly") {
    const auto cfg = parse_experiment_config(
        std::string("id = stp_main\nn = 8\np = 0 1\nsamples = 2\nseed = 3\n"));
    const auto res = run_experiment(cfg, 1e18, "FIXED");
    const auto rows = parse_csv(res.report_csv);
    REQUIRE(rows.size() == 5);
    // p = 0: T = 0 = delta; p = 1: K_8 has T = floor(8/2) = 4.
    for (std::size_t r = 1; r <= 2; ++r) {
        CHECK(rows[r][4] == "0");  // delta
        CHECK(rows[r][6] == "0");  // stp
        CHECK(rows[r][8] == "1");  // agree
    }
    for (std::size_t r = 3; r <= 4; ++r) {
        CHECK(rows[r][3] == "28");  // m = C(8,2)
        CHECK(rows[r][6] == "4");   // stp = floor(n/2)
        CHECK(rows[r][8] == "1");
    }
    const auto summary = nlohmann::json::parse(res.summary_json);
    CHECK(summary["cells"][0]["agreement_fraction"] == 1.0);
    CHECK(summary["cells"][1]["agreement_fraction"] == 1.0);
}

TEST_CASE("sample seeds follow the documented (master, cell, sample) derivation") {
    const auto cfg = parse_experiment_config(kConfigs[0]);
    const auto res = run_experiment(cfg, 1e18, "FIXED");
    const auto rows = parse_csv(res.report_csv);
    const RngSeed master{cfg.seed, 0};
    for (const std::size_t r : {std::size_t{1}, std::size_t{5}}) {
        const int cell = std::stoi(rows[r][0]);
        const int sample = std::stoi(rows[r][1]);
        const Graph g = gen_gnp(cfg.n, cfg.p[static_cast<std::size_t>(cell)],
                                master.child(static_cast<std::uint64_t>(cell))
                                    .child(static_cast<std::uint64_t>(sample)));
        CHECK(std::to_string(g.edge_count()) == rows[r][3]);
        CHECK(std::to_string(min_degree(g)) == rows[r][4]);
    }
}

TEST_CASE("process_scan endpoints: m = 0 and m = C(n,2)") {
    const auto cfg = parse_experiment_config(
        std::string("id = process_scan\nn = 10\nm = 0 45\nsamples = 2\nseed = 5\n"));
    const auto res = run_experiment(cfg, 1e18, "FIXED");
    const auto rows = parse_csv(res.report_csv);
    REQUIRE(rows.size() == 5);
    for (std::size_t r = 1; r <= 2; ++r) {
        CHECK(rows[r][3] == "0");  // delta
        CHECK(rows[r][5] == "0");  // stp
        CHECK(rows[r][6] == "0");  // arboricity
    }
    for (std::size_t r = 3; r <= 4; ++r) {
        CHECK(rows[r][5] == "5");  // T(K_10) = 5
        CHECK(rows[r][6] == "5");  // A(K_10) = ceil(10/2)
        CHECK(rows[r][12] == "1");  // monotone
    }
    const auto summary = nlohmann::json::parse(res.summary_json);
    for (const auto& cell : summary["cells"]) CHECK(cell["monotone_violations"] == 0);
}

TEST_CASE("arboricity hitting times: level 1 is the first edge, level 2 the first cycle") {
    const auto cfg = parse_experiment_config(
        std::string("id = arboricity_hitting\nn = 24\ni = 1 2\nsamples = 4\nseed = 11\n"));
    const auto res = run_experiment(cfg, 1e18, "FIXED");
    const auto rows = parse_csv(res.report_csv);
    REQUIRE(rows.size() == 9);
    const RngSeed master{cfg.seed, 0};
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const int sample = std::stoi(rows[r][1]);
        const int level = std::stoi(rows[r][2]);
        const long long m_hit = std::stoll(rows[r][3]);
        if (level == 1) {
            CHECK(m_hit == 1);
        } else {
            // m_{A=2} = the hitting time of "contains a cycle".
            const ProcessStream ps(cfg.n, master.child(static_cast<std::uint64_t>(sample)));
            const auto first_cycle = ps.hitting_time([](const Graph& g) {
                const auto labels = component_labels(g);
                const int components = *std::max_element(labels.begin(), labels.end()) + 1;
                return g.edge_count() > static_cast<long long>(g.vertex_count() - components);
            });
            REQUIRE(first_cycle.has_value());
            CHECK(m_hit == *first_cycle);
        }
    }
}

TEST_CASE("load balancing refutes at m = kn+1 deterministically") {
    const auto cfg = parse_experiment_config(
        std::string("id = load_balancing\nn = 40\nk = 3\nm = 121\nsamples = 6\nseed = 13\n"));
    const auto res = run_experiment(cfg, 1e18, "FIXED");
    const auto rows = parse_csv(res.report_csv);
    REQUIRE(rows.size() == 7);
    for (std::size_t r = 1; r < rows.size(); ++r) CHECK(rows[r][4] == "0");
    const auto summary = nlohmann::json::parse(res.summary_json);
    CHECK(summary["cells"][0]["orientable_fraction"] == 0.0);
    CHECK(summary["cells"][0]["predictions"]["predicted"] == "not-orientable");
}

TEST_CASE("core emergence below c_k: 2-core of G(n, 0.5/n) is tiny") {
    const auto cfg = parse_experiment_config(
        std::string("id = core_emergence\nn = 300\nk = 2\nc = 0.5\nsamples = 5\nseed = 17\n"));
    const auto res = run_experiment(cfg, 1e18, "FIXED");
    const auto summary = nlohmann::json::parse(res.summary_json);
    CHECK(summary["cells"][0]["mean_vertex_fraction"].get<double>() <= 0.1);
    CHECK(summary["cells"][0]["predictions"]["empty_core"] == true);
}

TEST_CASE("summary predictions match the asymptotics module exactly") {
    {
        const auto cfg = parse_experiment_config(kConfigs[4]);  // load_balancing
        const auto summary = nlohmann::json::parse(run_experiment(cfg, 1e18, "FIXED").summary_json);
        CHECK(summary["cells"][0]["predictions"]["phi"].get<double>() ==
              orientability_phi(2, cfg.n, kWindowEps));
    }
    {
        const auto cfg = parse_experiment_config(kConfigs[5]);  // core_emergence
        const auto summary = nlohmann::json::parse(run_experiment(cfg, 1e18, "FIXED").summary_json);
        CHECK(summary["cells"][0]["predictions"]["c_k"].get<double>() == c_k(3));
        const CorePrediction cp = core_prediction(5.0, 3);
        CHECK(summary["cells"][1]["predictions"]["mu"].get<double>() == cp.mu);
        CHECK(summary["cells"][1]["predictions"]["vertex_fraction"].get<double>() ==
              cp.vertex_fraction);
        CHECK(summary["cells"][1]["predictions"]["edges_per_n"].get<double>() == cp.edges_per_n);
    }
    {
        const auto cfg = parse_experiment_config(kConfigs[3]);  // arboricity_hitting
        const auto summary = nlohmann::json::parse(run_experiment(cfg, 1e18, "FIXED").summary_json);
        const HittingWindow w = hitting_window(2, cfg.n, kWindowEps);
        CHECK(summary["cells"][1]["predictions"]["exact_value"].get<long long>() == w.exact_value);
        CHECK(summary["cells"][1]["predictions"]["lower"].get<double>() == w.lower);
    }
    {
        const auto cfg = parse_experiment_config(kConfigs[1]);  // cases_threshold
        const auto summary = nlohmann::json::parse(run_experiment(cfg, 1e18, "FIXED").summary_json);
        CHECK(summary["cells"][0]["predictions"]["threshold_p"].get<double>() == threshold_p(cfg.n));
        CHECK(summary["cells"][0]["predictions"]["side"] == "below");
    }
}

TEST_CASE("summary timestamp defaults to wall clock but never touches the csv") {
    const auto cfg = parse_experiment_config(kConfigs[2]);
    const auto a = run_experiment(cfg);  // real timestamp
    const auto b = run_experiment(cfg, 1e18, "FIXED");
    CHECK(a.report_csv == b.report_csv);
    const auto ja = nlohmann::json::parse(a.summary_json);
    CHECK(ja["generated_at"].get<std::string>().size() == 20);  // ISO-8601 Z form
    auto jb = nlohmann::json::parse(b.summary_json);
    CHECK(jb["generated_at"] == "FIXED");
    // Everything except the timestamp is deterministic.
    auto ja2 = ja;
    ja2["generated_at"] = "FIXED";
    CHECK(ja2 == jb);
}
