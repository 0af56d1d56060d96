#pragma once

// Closed-form evaluation of the quantities predicted by the threshold theory:
// the constant beta = 2/log(e/2), the STP threshold, the phi-window bounds for
// arboricity and orientability, Chernoff/binomial tail kernels, and the
// Poisson k-core functionals f_k / h_k / c_k / mu_{c,k} / k_c.
//
// All functions here are pure and deterministic.  Domain violations throw
// std::invalid_argument; asymptotic-regime violations throw std::domain_error
// unless the caller passes force=true, in which case NaN is returned (a
// formula evaluated far outside its regime is worse than no answer, so the
// caller must opt in explicitly).

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace treepack {

// --------------------------------------------------------------------------
// Basic constants and threshold formulas
// --------------------------------------------------------------------------

// beta = 2 / log(e/2) = 2 / (1 - log 2) ~= 6.51778.
inline double beta() {
    return 2.0 / (1.0 - std::log(2.0));
}

// Predicted spanning-tree packing number: min(delta, floor(m/(n-1))).
inline long long stp_prediction(long long delta, long long m, long long n) {
    if (n < 2) throw std::invalid_argument("stp_prediction: n must be >= 2");
    if (delta < 0 || m < 0) throw std::invalid_argument("stp_prediction: delta and m must be >= 0");
    return std::min(delta, m / (n - 1));
}

// Threshold edge probability p*(n) = beta (log n - (log log n)/2) / (n - 1).
inline double threshold_p(long long n, bool force = false) {
    if (n < 3) {
        if (force) return std::numeric_limits<double>::quiet_NaN();
        throw std::domain_error("threshold_p: n must be >= 3 (pass force=true for NaN)");
    }
    const double ln = std::log(static_cast<double>(n));
    return beta() * (ln - 0.5 * std::log(ln)) / static_cast<double>(n - 1);
}

// --------------------------------------------------------------------------
// phi windows
// --------------------------------------------------------------------------

// phi_1 = n exp(-(1+eps) 2m / (beta n)),  phi_2 = n exp(-(1-eps) 2m / (beta n)).
// These bound the arboricity window ceil((m+phi1)/(n-1)) <= A <= ceil((m+phi2)/(n-1))
// in the regime m/n -> infinity with delta(G_m) <= m/(n-1).  Always phi1 <= phi2.
inline std::pair<double, double> phi_window(long long m, long long n, double eps) {
    if (n < 2) throw std::invalid_argument("phi_window: n must be >= 2");
    if (m < 1) throw std::invalid_argument("phi_window: m must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("phi_window: eps must lie in (0,1)");
    const double x = 2.0 * static_cast<double>(m) / (beta() * static_cast<double>(n));
    const double phi1 = static_cast<double>(n) * std::exp(-(1.0 + eps) * x);
    const double phi2 = static_cast<double>(n) * std::exp(-(1.0 - eps) * x);
    return {phi1, phi2};
}

// Candidate arboricity values via the remainder trichotomy.  With
// R = m mod (n-1) and q = ceil(m/(n-1)):
//   0 < R <= n-1-phi2          -> {q}
//   R = 0 or R > n-1-phi1      -> {q+1}
//   otherwise                  -> {q, q+1}
// Result is sorted ascending (one or two entries).
inline std::vector<long long> arboricity_prediction(long long m, long long n, double eps) {
    const auto [phi1, phi2] = phi_window(m, n, eps);
    const long long r = m % (n - 1);
    const long long q = (m + n - 2) / (n - 1);  // ceil(m/(n-1)), m >= 1
    const double band = static_cast<double>(n - 1);
    if (r == 0 || static_cast<double>(r) > band - phi1) return {q + 1};
    if (static_cast<double>(r) <= band - phi2) return {q};
    return {q, q + 1};
}

// phi pair for the arboricity hitting time of level i (exponent uses i, not m):
// phi_1 = n exp(-2(1+eps) i / beta),  phi_2 = n exp(-2(1-eps) i / beta).
inline std::pair<double, double> phi_hitting(long long i, long long n, double eps) {
    if (n < 2) throw std::invalid_argument("phi_hitting: n must be >= 2");
    if (i < 1) throw std::invalid_argument("phi_hitting: i must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("phi_hitting: eps must lie in (0,1)");
    const double x = 2.0 * static_cast<double>(i) / beta();
    const double phi1 = static_cast<double>(n) * std::exp(-(1.0 + eps) * x);
    const double phi2 = static_cast<double>(n) * std::exp(-(1.0 - eps) * x);
    return {phi1, phi2};
}

// Predicted window for m_{A=i}, the first process step with arboricity i.
struct HittingWindow {
    double lower = 0.0;           // exclusive lower bound: m_{A=i} > lower
    double upper = 0.0;           // exclusive upper bound: m_{A=i} < upper (low-i regime)
    bool exact = false;           // high-i regime: m_{A=i} = exact_value
    long long exact_value = 0;    // (i-1)(n-1) + 1 when exact
    bool low_regime = false;      // i <= (1-eps) beta log(n) / 2 (window bounds apply)
    bool high_regime = false;     // i >= (1+eps) beta log(n) / 2 (equality applies)
};

// Window for m_{A=i}: in the low regime,
//   (i-1)(n-1) - phi2 < m_{A=i} < (i-1)(n-1) - phi1;
// in the high regime, m_{A=i} = (i-1)(n-1) + 1 exactly.  Between the two
// regimes only the lower bound is asserted (it extends up to (1+eps) beta log n / 2).
inline HittingWindow hitting_window(long long i, long long n, double eps) {
    const auto [phi1, phi2] = phi_hitting(i, n, eps);
    const double base = static_cast<double>(i - 1) * static_cast<double>(n - 1);
    const double logn = std::log(static_cast<double>(n));
    HittingWindow w;
    w.lower = base - phi2;
    w.upper = base - phi1;
    w.exact_value = (i - 1) * (n - 1) + 1;
    w.low_regime = static_cast<double>(i) <= (1.0 - eps) * beta() * logn / 2.0;
    w.high_regime = static_cast<double>(i) >= (1.0 + eps) * beta() * logn / 2.0;
    w.exact = w.high_regime;
    return w;
}

// phi for k-orientability of G(n,m): 0 when k >= (1+eps) beta log(n) / 2,
// otherwise n exp(-2(1-eps) k / beta).  G(n,m) is a.a.s. k-orientable when
// m <= k(n-1) - phi and a.a.s. not k-orientable when m >= kn + 1.
inline double orientability_phi(long long k, long long n, double eps) {
    if (n < 2) throw std::invalid_argument("orientability_phi: n must be >= 2");
    if (k < 1) throw std::invalid_argument("orientability_phi: k must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("orientability_phi: eps must lie in (0,1)");
    const double logn = std::log(static_cast<double>(n));
    if (static_cast<double>(k) >= (1.0 + eps) * beta() * logn / 2.0) return 0.0;
    return static_cast<double>(n) * std::exp(-2.0 * (1.0 - eps) * static_cast<double>(k) / beta());
}

// --------------------------------------------------------------------------
// Tail bounds
// --------------------------------------------------------------------------

// Chernoff kernels for Bin/Poisson concentration:
//   upper tail  Pr(X >= (1+tau) mu) <= exp(-tau^2 mu / 3)
//   lower tail  Pr(X <= (1-tau) mu) <= exp(-tau^2 mu / 2)
// Returns (upper, lower) in that order.
inline std::pair<double, double> chernoff_bounds(double mu, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("chernoff_bounds: tau must lie in (0,1)");
    if (!(mu >= 0.0)) throw std::invalid_argument("chernoff_bounds: mu must be >= 0");
    return {std::exp(-tau * tau * mu / 3.0), std::exp(-tau * tau * mu / 2.0)};
}

struct TailEstimate {
    double value = 0.0;
    // True when p <= 1/sqrt(n), the regime in which the kernel is known to be
    // accurate up to bounded constants; outside it the value is still returned
    // but should be treated as heuristic.
    bool in_regime = true;
};

// Constant-free kernel for the lower binomial tail:
//   Pr(Bin(n,p) <= k) ~ C . e^{-pn} (e p n / k)^k / sqrt(k)
// with C bounded between unspecified constants; this returns the C = 1
// normalization.  Requires 0 < k <= (1-eta) n p; with force=true an
// out-of-range k yields NaN instead of throwing.
inline TailEstimate binomial_lower_tail_estimate(long long n, double p, long long k,
                                                 double eta = 0.1, bool force = false) {
    if (n < 1) throw std::invalid_argument("binomial_lower_tail_estimate: n must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_lower_tail_estimate: p must lie in (0,1]");
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("binomial_lower_tail_estimate: eta must lie in (0,1)");
    const double np = p * static_cast<double>(n);
    TailEstimate est;
    est.in_regime = p <= 1.0 / std::sqrt(static_cast<double>(n));
    if (k < 1 || static_cast<double>(k) > (1.0 - eta) * np) {
        if (force) {
            est.value = std::numeric_limits<double>::quiet_NaN();
            return est;
        }
        throw std::domain_error(
            "binomial_lower_tail_estimate: need 0 < k <= (1-eta) n p (pass force=true for NaN)");
    }
    const double kk = static_cast<double>(k);
    const double log_value = -np + kk * (1.0 + std::log(np) - std::log(kk)) - 0.5 * std::log(kk);
    est.value = std::exp(log_value);
    return est;
}

// --------------------------------------------------------------------------
// Poisson k-core functionals
// --------------------------------------------------------------------------

// f_k(mu) = Pr(Poisson(mu) >= k), evaluated stably for all mu >= 0.
inline double f_k(long long k, double mu) {
    if (k < 0) throw std::invalid_argument("f_k: k must be >= 0");
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("f_k: mu must be finite and >= 0");
    if (k == 0) return 1.0;
    if (mu == 0.0) return 0.0;
    const double kk = static_cast<double>(k);
    if (kk > mu) {
        // Tail is the smaller piece: sum e^{-mu} mu^i / i! from i = k upward.
        // Terms decrease (ratio mu/(i+1) < 1), so the running sum is stable.
        double term = std::exp(kk * std::log(mu) - mu - std::lgamma(kk + 1.0));
        double sum = 0.0;
        for (long long i = k; term > 0.0; ++i) {
            sum += term;
            if (term <= sum * 1e-18) break;
            term *= mu / static_cast<double>(i + 1);
        }
        return std::min(sum, 1.0);
    }
    // Head is the smaller piece: sum i = k-1 down to 0, starting from the
    // largest head term at i = k-1 (terms increase with i while i <= mu).
    const double km1 = kk - 1.0;
    double term = std::exp(km1 * std::log(mu) - mu - std::lgamma(kk));
    double head = 0.0;
    for (long long i = k - 1; i >= 0 && term > 0.0; --i) {
        head += term;
        if (term <= head * 1e-18) break;
        term *= static_cast<double>(i) / mu;
    }
    return std::max(0.0, 1.0 - head);
}

// h_k(mu) = mu / f_{k-1}(mu) for k >= 2, mu > 0.
inline double h_k(long long k, double mu) {
    if (k < 2) throw std::invalid_argument("h_k: k must be >= 2");
    if (!(mu > 0.0)) throw std::invalid_argument("h_k: mu must be > 0");
    return mu / f_k(k - 1, mu);
}

namespace detail {

inline constexpr double kMuTol = 1e-8;    // absolute tolerance on mu
inline constexpr double kValTol = 1e-10;  // absolute tolerance on function values

// Golden-section minimization of h_k over [lo, hi] (h_k is unimodal for
// k >= 3: it diverges at both ends and attains its infimum in between).
inline std::pair<double, double> minimize_h(long long k) {
    double a = 1e-8;
    double b = 4.0 * static_cast<double>(k) + 64.0;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = h_k(k, c);
    double fd = h_k(k, d);
    while (b - a > kMuTol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = h_k(k, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = h_k(k, d);
        }
    }
    const double mu_star = (a + b) / 2.0;
    return {mu_star, h_k(k, mu_star)};
}

// Larger solution of h_k(mu) = c by bisection on [lo, hi], where
// h_k(lo) <= c and hi is expanded until h_k(hi) > c (h_k -> infinity).
inline double mu_larger(long long k, double c, double lo) {
    double hi = std::max(lo, 1.0) * 2.0;
    while (h_k(k, hi) <= c) {
        hi *= 2.0;
        if (hi > 1e12) throw std::logic_error("mu_larger: failed to bracket the root");
    }
    while (hi - lo > kMuTol) {
        const double mid = (lo + hi) / 2.0;
        if (h_k(k, mid) <= c) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2.0;
}

}  // namespace detail

// c_k = inf_{mu > 0} h_k(mu) for k >= 3, and c_2 = 1 exactly (the infimum of
// h_2 as mu -> 0+, adopted as a definition).
inline double c_k(long long k) {
    if (k < 2) throw std::invalid_argument("c_k: k must be >= 2");
    if (k == 2) return 1.0;
    return detail::minimize_h(k).second;
}

// mu_{c,k}: the larger solution of h_k(mu) = c.  Requires c > c_k.
inline double mu_ck(double c, long long k) {
    if (k < 2) throw std::invalid_argument("mu_ck: k must be >= 2");
    if (k == 2) {
        if (!(c > 1.0)) throw std::invalid_argument("mu_ck: need c > c_2 = 1");
        // h_2 is strictly increasing from 1, so the larger solution is the
        // unique root; bracket from near zero.
        return detail::mu_larger(2, c, 1e-12);
    }
    const auto [mu_star, ck] = detail::minimize_h(k);
    if (!(c > ck)) throw std::invalid_argument("mu_ck: need c > c_k");
    return detail::mu_larger(k, c, mu_star);
}

// Cached functionals for a fixed core order k.
class CoreFunctionals {
  public:
    explicit CoreFunctionals(long long k) : k_(k) {
        if (k < 2) throw std::invalid_argument("CoreFunctionals: k must be >= 2");
        if (k == 2) {
            mu_star_ = 0.0;
            ck_ = 1.0;
        } else {
            const auto [mu_star, ck] = detail::minimize_h(k);
            mu_star_ = mu_star;
            ck_ = ck;
        }
    }

    long long k() const { return k_; }
    double threshold() const { return ck_; }                  // c_k
    double f(double mu) const { return f_k(k_, mu); }         // f_k(mu)
    double h(double mu) const { return h_k(k_, mu); }         // h_k(mu)

    // mu_{c,k}; requires c > c_k.
    double mu_for(double c) const {
        if (!(c > ck_)) throw std::invalid_argument("CoreFunctionals::mu_for: need c > c_k");
        return detail::mu_larger(k_, c, k_ == 2 ? 1e-12 : mu_star_);
    }

  private:
    long long k_;
    double ck_ = 0.0;
    double mu_star_ = 0.0;
};

// Predicted k-core size for G(n, c/n) with c > c_k: the core spans
// f_k(mu) n + o(n) vertices and mu f_{k-1}(mu) n / 2 + o(n) edges,
// where mu = mu_{c,k}.
struct CorePrediction {
    double vertex_fraction = 0.0;  // f_k(mu_{c,k})
    double edges_per_n = 0.0;      // mu_{c,k} f_{k-1}(mu_{c,k}) / 2
    double mu = 0.0;               // mu_{c,k}
};

inline CorePrediction core_prediction(double c, long long k) {
    const double mu = mu_ck(c, k);  // validates c > c_k
    CorePrediction out;
    out.mu = mu;
    out.vertex_fraction = f_k(k, mu);
    out.edges_per_n = mu * f_k(k - 1, mu) / 2.0;
    return out;
}

// k_c: the largest k in K_c = { k : c_k <= c and
// mu_{c,k} f_{k-1}(mu_{c,k}) / f_k(mu_{c,k}) > 2(k-1) }, with k_c = 1 for
// c <= 1.  The predicted arboricity concentration set for G(n, c/n) with
// c constant is {k_c, k_c + 1}.
inline long long k_c(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("k_c: c must be > 0");
    if (c <= 1.0) return 1;
    long long best = 1;
    const long long cap = std::max<long long>(16, static_cast<long long>(4.0 * c) + 16);
    for (long long k = 2; k <= cap; ++k) {
        double ck;
        double mu_lo;  // left end of the bracket for the larger root
        if (k == 2) {
            ck = 1.0;
            mu_lo = 1e-12;
        } else {
            const auto [mu_star, ck_val] = detail::minimize_h(k);
            ck = ck_val;
            mu_lo = mu_star;
        }
        if (ck > c) return best;  // c_k is increasing, so no further k qualifies
        const double mu = (c > ck + detail::kValTol) ? detail::mu_larger(k, c, mu_lo)
                                                     : std::max(mu_lo, 1e-12);
        const double fk = f_k(k, mu);
        if (fk > 0.0 && mu * f_k(k - 1, mu) / fk > 2.0 * static_cast<double>(k - 1)) {
            best = k;
        }
    }
    throw std::logic_error("k_c: scan exceeded its cap without c_k passing c");
}

// A named scalar prediction with an explicit regime note, for reporting.
struct Prediction {
    std::string quantity;   // e.g. "beta", "threshold_p", "phi1"
    double value = 0.0;
    double abs_error = 0.0; // absolute-error bound on value (0 for exact formulas)
    std::string validity;   // the asymptotic regime the formula assumes
};

}  // namespace treepack
