#include <catch2/catch_amalgamated.hpp>

#include <treepack/asymptotics.hpp>
#include <treepack/graph.hpp>
#include <treepack/random_process.hpp>

#include <cmath>
#include <vector>

using namespace treepack;
using Catch::Approx;

TEST_CASE("beta") {
    CHECK(beta() == Approx(6.51778).margin(1e-5));
    // Two machine-precision identities tying the constant to its definition.
    CHECK(std::log(std::exp(1.0) / 2.0) == Approx(1.0 - std::log(2.0)).margin(1e-15));
    CHECK(beta() * std::log(std::exp(1.0) / 2.0) == Approx(2.0).margin(1e-12));
    // Frozen to full double precision (regression pin).
    CHECK(beta() == Approx(6.517782706541859).margin(1e-12));
}

TEST_CASE("stp_prediction") {
    CHECK(stp_prediction(5, 100, 21) == 5);
    CHECK(stp_prediction(0, 12345, 100) == 0);
    CHECK(stp_prediction(40, 1000, 26) == 40);
    CHECK(stp_prediction(7, 100, 21) == 5);  // m-bound side: floor(100/20)
    CHECK_THROWS_AS(stp_prediction(3, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(stp_prediction(-1, 10, 5), std::invalid_argument);
    // Idempotent under scaling m by (n-1): floor((k(n-1))/(n-1)) = k.
    for (long long k = 0; k < 20; ++k) CHECK(stp_prediction(1000, k * 99, 100) == std::min(1000LL, k));
}

TEST_CASE("threshold_p") {
    CHECK_THROWS_AS(threshold_p(2), std::domain_error);
    CHECK(std::isnan(threshold_p(2, /*force=*/true)));
    // n = 1e6: value * (n-1)/log n pinned from an independent evaluation.
    const long long n = 1000000;
    const double v = threshold_p(n);
    CHECK(v * static_cast<double>(n - 1) / std::log(static_cast<double>(n)) ==
          Approx(5.898394046986197).margin(1e-9));
    // Second implementation of the same formula (different grouping).
    const double ln = std::log(static_cast<double>(n));
    const double alt = (beta() * ln - beta() * std::log(ln) / 2.0) / static_cast<double>(n - 1);
    CHECK(v == Approx(alt).margin(1e-18));
    // Monotone decreasing for n >= 20.
    double prev = threshold_p(20);
    for (long long x = 21; x <= 2000; x += 7) {
        const double cur = threshold_p(x);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("phi_window") {
    // eps -> 0 limit: the two phis coincide.
    const auto [a1, a2] = phi_window(5000, 1000, 1e-9);
    CHECK(a1 == Approx(a2).epsilon(1e-6));

    // m = beta*n*ln(n)/2 makes phi2 = n^eps exactly.
    const long long n = 1000;
    const double eps = 0.1;
    const double m_real = beta() * n * std::log(static_cast<double>(n)) / 2.0;
    const auto m = static_cast<long long>(std::llround(m_real));
    const auto [p1, p2] = phi_window(m, n, eps);
    CHECK(p2 == Approx(std::pow(static_cast<double>(n), eps)).epsilon(0.01));
    CHECK(p1 <= p2);

    // Pinned from an independent evaluation: n=1e4, m=1e5, eps=0.1.
    const auto [q1, q2] = phi_window(100000, 10000, 0.1);
    CHECK(q1 == Approx(342.05083218).margin(1e-4));
    CHECK(q2 == Approx(631.85819692).margin(1e-4));
    CHECK(q1 < 10000);
    CHECK(q2 < 10000);

    // phi1 <= phi2 and both strictly decreasing in m.
    double prev1 = 1e18, prev2 = 1e18;
    for (long long mm = 1000; mm <= 20000; mm += 1000) {
        const auto [f1, f2] = phi_window(mm, 1000, 0.25);
        CHECK(f1 <= f2);
        CHECK(f1 < prev1);
        CHECK(f2 < prev2);
        prev1 = f1;
        prev2 = f2;
    }

    CHECK_THROWS_AS(phi_window(0, 1000, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(phi_window(10, 1, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(phi_window(10, 1000, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(phi_window(10, 1000, 1.0), std::invalid_argument);
}

TEST_CASE("arboricity_prediction trichotomy") {
    // R = 0: exact multiple of n-1 predicts q+1.
    CHECK(arboricity_prediction(2 * 99, 100, 0.1) == std::vector<long long>{3});
    // Middle of the safe band: singleton ceil(m/(n-1)).
    // n=100, m=5*99+49: R=49 <= 99 - phi2 comfortably (2m/n ~ 10.9).
    CHECK(arboricity_prediction(5 * 99 + 49, 100, 0.1) == std::vector<long long>{6});
    // Constructed gap hit: n=1000, eps=0.5, m=9891 gives R=900 inside
    // (999-phi2, 999-phi1] = (779.7, 988.5] — two candidates.
    CHECK(arboricity_prediction(9891, 1000, 0.5) == std::vector<long long>{10, 11});
    // R just above n-1-phi1 predicts q+1: m with R=995 > 988.5.
    CHECK(arboricity_prediction(9 * 999 + 995, 1000, 0.5) == std::vector<long long>{11});
}

TEST_CASE("phi_hitting and hitting_window") {
    // phi exponent uses the level i: phi2 = n * exp(-2(1-eps) i / beta).
    const auto [h1, h2] = phi_hitting(10, 500, 0.2);
    CHECK(h1 == Approx(500.0 * std::exp(-2.0 * 1.2 * 10.0 / beta())).epsilon(1e-12));
    CHECK(h2 == Approx(500.0 * std::exp(-2.0 * 0.8 * 10.0 / beta())).epsilon(1e-12));
    CHECK(h1 <= h2);

    // i=25, n=300, eps=0.3 sits in the high regime: threshold is 24.16.
    const auto high = hitting_window(25, 300, 0.3);
    CHECK(high.high_regime);
    CHECK(high.exact);
    CHECK(high.exact_value == 24 * 299 + 1);

    // Low regime: i=5, n=1e6 (beta log n / 2 ~ 45).
    const auto low = hitting_window(5, 1000000, 0.3);
    CHECK(low.low_regime);
    CHECK_FALSE(low.high_regime);
    CHECK(low.lower < low.upper);
    CHECK(low.lower == Approx(4.0 * 999999.0 - phi_hitting(5, 1000000, 0.3).second).margin(1e-6));
}

TEST_CASE("orientability_phi") {
    // High-k regime: phi vanishes.
    CHECK(orientability_phi(40, 2000, 0.3) == 0.0);
    // Low-k regime pinned value: k=16, n=2000, eps=0.3.
    CHECK(orientability_phi(16, 2000, 0.3) == Approx(64.33802865).margin(1e-5));
    CHECK(std::ceil(orientability_phi(16, 2000, 0.3)) == 65.0);
    CHECK_THROWS_AS(orientability_phi(0, 2000, 0.3), std::invalid_argument);
}

TEST_CASE("chernoff_bounds") {
    const auto [up, lo] = chernoff_bounds(100.0, 0.5);
    CHECK(up == Approx(std::exp(-25.0 / 3.0)).epsilon(1e-12));
    CHECK(lo == Approx(std::exp(-12.5)).epsilon(1e-12));
    const auto [u0, l0] = chernoff_bounds(100.0, 1e-7);
    CHECK(u0 == Approx(1.0).margin(1e-9));
    CHECK(l0 == Approx(1.0).margin(1e-9));
    CHECK_THROWS_AS(chernoff_bounds(10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_bounds(10.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_bounds(-1.0, 0.5), std::invalid_argument);
}

TEST_CASE("chernoff bounds majorize Monte Carlo binomial tails") {
    // Bin(1000, 0.1), tau = 0.3: empirical tail frequencies stay below the bounds.
    const int samples = 20000;
    const auto thr = bernoulli_threshold(0.1);
    int upper_hits = 0, lower_hits = 0;
    Rng rng(RngSeed{800, 0});
    for (int s = 0; s < samples; ++s) {
        int x = 0;
        for (int i = 0; i < 1000; ++i) x += rng.next_bernoulli(thr) ? 1 : 0;
        if (x >= 130) ++upper_hits;
        if (x <= 70) ++lower_hits;
    }
    const auto [up, lo] = chernoff_bounds(100.0, 0.3);
    CHECK(static_cast<double>(upper_hits) / samples <= up);
    CHECK(static_cast<double>(lower_hits) / samples <= lo);
}

namespace {

// Exact Pr(Bin(n,p) <= k) via stable log-space summation (test oracle).
double exact_binomial_cdf(long long n, double p, long long k) {
    double sum = 0.0;
    for (long long i = 0; i <= k; ++i) {
        const double lt = std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(i) + 1) -
                          std::lgamma(static_cast<double>(n - i) + 1) + static_cast<double>(i) * std::log(p) +
                          static_cast<double>(n - i) * std::log1p(-p);
        sum += std::exp(lt);
    }
    return sum;
}

}  // namespace

TEST_CASE("binomial_lower_tail_estimate") {
    // n=1e4, p=1e-3: ratio of exact CDF to the constant-free kernel stays in
    // the documented sanity envelope [0.05, 20].
    for (long long k : {2, 4, 6, 8}) {
        const auto est = binomial_lower_tail_estimate(10000, 0.001, k);
        CHECK(est.in_regime);  // p = 1e-3 <= 1/sqrt(1e4) = 0.01
        const double ratio = exact_binomial_cdf(10000, 0.001, k) / est.value;
        INFO("k=" << k << " ratio=" << ratio);
        CHECK(ratio >= 0.05);
        CHECK(ratio <= 20.0);
    }
    // Ratio stays bounded as n grows with k = floor(0.9 np), p = 1/(2 sqrt n).
    for (long long n : {1000, 10000, 100000}) {
        const double p = 0.5 / std::sqrt(static_cast<double>(n));
        const auto k = static_cast<long long>(0.9 * p * static_cast<double>(n));
        const auto est = binomial_lower_tail_estimate(n, p, k);
        const double ratio = exact_binomial_cdf(n, p, k) / est.value;
        INFO("n=" << n << " ratio=" << ratio);
        CHECK(ratio >= 0.05);
        CHECK(ratio <= 20.0);
    }
    // Out-of-regime p sets the flag but still evaluates.
    CHECK_FALSE(binomial_lower_tail_estimate(100, 0.5, 10).in_regime);
    // k out of range: throws, or NaN under force.
    CHECK_THROWS_AS(binomial_lower_tail_estimate(10000, 0.001, 10), std::domain_error);
    CHECK(std::isnan(binomial_lower_tail_estimate(10000, 0.001, 10, 0.1, true).value));
    CHECK_THROWS_AS(binomial_lower_tail_estimate(10000, 0.0, 2), std::invalid_argument);
}

TEST_CASE("f_k Poisson tails") {
    for (double mu : {0.1, 1.0, 2.0, 7.5, 40.0}) {
        CHECK(f_k(0, mu) == 1.0);
        CHECK(f_k(1, mu) == Approx(1.0 - std::exp(-mu)).margin(1e-14));
    }
    // f_3(2.0) against a direct 50-term summation.
    double direct = 0.0;
    {
        double term = std::exp(-2.0) * 8.0 / 6.0;  // i = 3 term: e^-2 2^3/3!
        for (int i = 3; i < 53; ++i) {
            direct += term;
            term *= 2.0 / (i + 1);
        }
    }
    CHECK(f_k(3, 2.0) == Approx(direct).margin(1e-12));

    // In [0,1]; decreasing in k; increasing in mu for k >= 1.
    for (double mu : {0.3, 1.7, 9.0, 300.0}) {
        double prev = 1.0;
        for (long long k = 0; k <= 40; ++k) {
            const double v = f_k(k, mu);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }
    for (long long k : {1, 3, 10}) {
        double prev = 0.0;
        for (double mu = 0.25; mu <= 30.0; mu += 0.25) {
            const double v = f_k(k, mu);
            CHECK(v >= prev - 1e-13);
            prev = v;
        }
    }
    // Stability far in the head-dominated regime (exp(-mu) underflows).
    CHECK(f_k(800, 800.0) == Approx(0.5047016124216413).margin(1e-9));
    CHECK(f_k(1, 800.0) == 1.0);
    CHECK_THROWS_AS(f_k(-1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(f_k(1, -0.5), std::invalid_argument);
}

TEST_CASE("h_k and c_k") {
    CHECK(h_k(3, 1.0) == Approx(1.0 / f_k(2, 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(h_k(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(h_k(3, 0.0), std::invalid_argument);

    // h_k diverges toward both ends of the bracket for k >= 3.
    for (long long k : {3, 5, 8}) {
        const double mid = c_k(k);
        CHECK(h_k(k, 1e-4) > 10 * mid);
        CHECK(h_k(k, 1000.0) > 10 * mid);
    }

    CHECK(c_k(2) == 1.0);
    // Frozen against an independent high-precision evaluation.
    CHECK(c_k(3) == Approx(3.35091887151167).margin(1e-6));
    CHECK(c_k(4) == Approx(5.14940274698645).margin(1e-6));
    CHECK(c_k(5) == Approx(6.79927548861809).margin(1e-6));
    CHECK(c_k(8) == Approx(11.3441288974901).margin(1e-6));
    // Strictly increasing for k = 3..8 (and above c_2 = 1).
    double prev = 1.0;
    for (long long k = 3; k <= 8; ++k) {
        const double ck = c_k(k);
        CHECK(ck > prev);
        prev = ck;
    }
    CHECK_THROWS_AS(c_k(1), std::invalid_argument);
}

TEST_CASE("mu_ck solves h_k = c on the larger branch") {
    // Round trip c -> mu -> c, and the root sits on the increasing branch
    // (h is nondecreasing just beyond it).
    for (long long k : {2, 3, 5}) {
        for (double c : {1.7, 4.0, 7.5, 12.0}) {
            if (c <= c_k(k) + 1e-9) continue;
            const double mu = mu_ck(c, k);
            CHECK(h_k(k, mu) == Approx(c).margin(1e-6));
            CHECK(h_k(k, mu + 1e-3) > h_k(k, mu) - 1e-9);
        }
    }
    // Pinned: mu_{5,3} from an independent evaluation.
    CHECK(mu_ck(5.0, 3) == Approx(4.75159033666771).margin(1e-6));
    // The larger solution is >= the minimizer.
    const double mu_star_guess = 1.79328213290076;  // argmin of h_3
    CHECK(mu_ck(3.36, 3) >= mu_star_guess - 1e-6);
    CHECK_THROWS_AS(mu_ck(0.9, 2), std::invalid_argument);
    CHECK_THROWS_AS(mu_ck(3.0, 3), std::invalid_argument);  // below c_3
}

TEST_CASE("CoreFunctionals caches the same quantities") {
    const CoreFunctionals cf(3);
    CHECK(cf.k() == 3);
    CHECK(cf.threshold() == Approx(c_k(3)).margin(1e-10));
    CHECK(cf.f(2.0) == Approx(f_k(3, 2.0)).margin(1e-15));
    CHECK(cf.h(2.0) == Approx(h_k(3, 2.0)).margin(1e-15));
    CHECK(cf.mu_for(5.0) == Approx(mu_ck(5.0, 3)).margin(1e-8));
    CHECK_THROWS_AS(cf.mu_for(1.0), std::invalid_argument);
    CHECK_THROWS_AS(CoreFunctionals(1), std::invalid_argument);
    const CoreFunctionals cf2(2);
    CHECK(cf2.threshold() == 1.0);
    CHECK(cf2.mu_for(1.5) == Approx(mu_ck(1.5, 2)).margin(1e-8));
}

TEST_CASE("core_prediction") {
    // k=2 just above c=1: continuous emergence, tiny core.
    const auto tiny = core_prediction(1.01, 2);
    CHECK(tiny.vertex_fraction < 0.01);
    CHECK(tiny.vertex_fraction > 0.0);

    // Pinned: k=3, c=5.
    const auto p = core_prediction(5.0, 3);
    CHECK(p.mu == Approx(4.75159033666771).margin(1e-6));
    CHECK(p.vertex_fraction == Approx(0.852805964569308).margin(1e-6));
    CHECK(p.edges_per_n == Approx(2.25776107275140).margin(1e-6));

    // Internal consistency: predicted core average degree >= k.
    for (long long k : {2, 3, 4, 6}) {
        for (double c : {1.4, 3.5, 5.0, 7.0, 9.0, 12.0}) {
            if (c <= c_k(k) + 1e-9) continue;
            const auto cp = core_prediction(c, k);
            CHECK(cp.mu * f_k(k - 1, cp.mu) / f_k(k, cp.mu) >= static_cast<double>(k) - 1e-9);
        }
    }
    CHECK_THROWS_AS(core_prediction(3.0, 3), std::invalid_argument);
}

TEST_CASE("core_prediction matches a peeling simulation") {
    // G(n, c/n) with c=5, k=3, n=20000: observed 3-core fraction within 0.02.
    const int n = 20000;
    const Graph g = gen_gnp(n, 5.0 / n, RngSeed{800, 0});
    const auto core = k_core(g, 3);
    const auto pred = core_prediction(5.0, 3);
    const double observed = static_cast<double>(core.size()) / n;
    CHECK(observed == Approx(pred.vertex_fraction).margin(0.02));
    // Edge prediction too (within 2% of n).
    const long long core_edges = induced_edge_count(g, core);
    CHECK(static_cast<double>(core_edges) / n == Approx(pred.edges_per_n).margin(0.04));
}

TEST_CASE("k_c") {
    CHECK(k_c(0.5) == 1);
    CHECK(k_c(1.0) == 1);
    CHECK(k_c(1.5) == 2);
    CHECK(k_c(10.0) == 6);  // frozen: k=7 fails the average-degree test at c=10
    CHECK_THROWS_AS(k_c(0.0), std::invalid_argument);
    // Nondecreasing in c on a grid.
    long long prev = 1;
    for (double c = 0.5; c <= 14.0; c += 0.5) {
        const long long kc = k_c(c);
        CHECK(kc >= prev);
        prev = kc;
    }
}
