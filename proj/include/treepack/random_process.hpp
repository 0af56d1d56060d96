#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "treepack/graph.hpp"
#include "treepack/rng.hpp"

namespace treepack {

namespace detail {

/// Linear index of edge (u,v), u < v, in lexicographic order over K_n.
inline long long edge_index(int n, Vertex u, Vertex v) {
    return static_cast<long long>(u) * (2LL * n - u - 1) / 2 + (v - u - 1);
}

/// Inverse of edge_index.
inline Edge edge_from_index(int n, long long id) {
    // base(u) = u(n-1) - u(u-1)/2 is the first index of row u; find the row
    // with a sqrt estimate, then fix up (exact integer comparisons).
    const double nn = 2.0 * n - 1.0;
    auto base = [&](long long u) { return u * (n - 1) - u * (u - 1) / 2; };
    auto u = static_cast<long long>((nn - std::sqrt(nn * nn - 8.0 * static_cast<double>(id))) / 2.0);
    if (u < 0) u = 0;
    if (u > n - 2) u = n - 2;
    while (u > 0 && base(u) > id) --u;
    while (u < n - 2 && base(u + 1) <= id) ++u;
    const long long v = id - base(u) + u + 1;
    return Edge{static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

inline long long complete_edge_count(int n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    return static_cast<long long>(n) * (n - 1) / 2;
}

}  // namespace detail

/// G(n,p): every possible edge present independently with probability p.
/// Small p uses geometric skipping (expected O(p n^2 + n) time); p ≥ 0.05 uses
/// one integer Bernoulli draw per candidate edge.
inline Graph gen_gnp(int n, double p, RngSeed seed) {
    if (n < 0) throw std::invalid_argument("gen_gnp: negative vertex count");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_gnp: p outside [0,1]");
    const long long total = detail::complete_edge_count(n);
    std::vector<Edge> edges;
    if (p == 0.0 || total == 0) return Graph(n, {});
    if (p == 1.0) {
        edges.reserve(static_cast<std::size_t>(total));
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) edges.push_back(Edge{u, v});
        return Graph(n, std::move(edges));
    }
    Rng rng(seed);
    if (p < 0.05) {
        edges.reserve(static_cast<std::size_t>(p * static_cast<double>(total) * 1.2) + 16);
        const double log_q = std::log1p(-p);
        long long idx = -1;
        while (true) {
            const double r = 1.0 - rng.next_double();  // uniform in (0, 1]
            const double skip = std::floor(std::log(r) / log_q);
            if (skip >= static_cast<double>(total)) break;  // guards inf/huge skips
            idx += 1 + static_cast<long long>(skip);
            if (idx >= total) break;
            edges.push_back(detail::edge_from_index(n, idx));
        }
    } else {
        const std::uint64_t threshold = bernoulli_threshold(p);
        edges.reserve(static_cast<std::size_t>(p * static_cast<double>(total) * 1.1) + 16);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                if (rng.next_bernoulli(threshold)) edges.push_back(Edge{u, v});
    }
    return Graph(n, std::move(edges));
}

/// G(n,m): uniformly random m-subset of the C(n,2) possible edges
/// (Floyd's sampling: m hash insertions, no full shuffle).
inline Graph gen_gnm(int n, long long m, RngSeed seed) {
    if (n < 0) throw std::invalid_argument("gen_gnm: negative vertex count");
    const long long total = detail::complete_edge_count(n);
    if (m < 0 || m > total)
        throw std::invalid_argument("gen_gnm: m out of range [0, " + std::to_string(total) + "]");
    Rng rng(seed);
    std::unordered_set<long long> chosen;
    chosen.reserve(static_cast<std::size_t>(m) * 2 + 16);
    for (long long j = total - m; j < total; ++j) {
        const auto t = static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(j) + 1));
        chosen.insert(chosen.contains(t) ? j : t);
    }
    std::vector<long long> ids(chosen.begin(), chosen.end());
    std::sort(ids.begin(), ids.end());
    std::vector<Edge> edges;
    edges.reserve(ids.size());
    for (long long id : ids) edges.push_back(detail::edge_from_index(n, id));
    return Graph(n, std::move(edges));
}

/// The random graph process: a seeded uniform permutation (e₁,…,e_{C(n,2)}) of
/// all possible edges; G_m is the graph on the first m arrivals. The whole
/// permutation is materialized, so n is capped at C(n,2) ≤ 5·10^7.
class ProcessStream {
public:
    ProcessStream(int n, RngSeed seed) : n_(n) {
        const long long total = detail::complete_edge_count(n);
        if (total > 50'000'000)
            throw std::invalid_argument("ProcessStream: C(n,2) exceeds the 5e7 materialization cap");
        order_.resize(static_cast<std::size_t>(total));
        for (long long i = 0; i < total; ++i) order_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
        Rng rng(seed);
        for (long long i = total - 1; i > 0; --i) {
            const auto j = static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(order_[static_cast<std::size_t>(i)], order_[static_cast<std::size_t>(j)]);
        }
    }

    [[nodiscard]] int vertex_count() const { return n_; }
    [[nodiscard]] long long total_edges() const { return static_cast<long long>(order_.size()); }

    /// i-th arriving edge, 0-based: prefix(m) consists of arrivals 0..m−1.
    [[nodiscard]] Edge arrival(long long i) const {
        if (i < 0 || i >= total_edges()) throw std::invalid_argument("arrival index out of range");
        return detail::edge_from_index(n_, order_[static_cast<std::size_t>(i)]);
    }

    /// G_m: the graph on the first m arrivals.
    [[nodiscard]] Graph prefix(long long m) const {
        if (m < 0 || m > total_edges()) throw std::invalid_argument("prefix length out of range");
        std::vector<Edge> edges;
        edges.reserve(static_cast<std::size_t>(m));
        for (long long i = 0; i < m; ++i) edges.push_back(arrival(i));
        return Graph(n_, std::move(edges));
    }

    /// Smallest m with pred(G_m) true, or nullopt if pred fails even on K_n.
    /// pred must be monotone under edge addition (caller contract); found by
    /// binary search, O(log C(n,2)) predicate evaluations.
    [[nodiscard]] std::optional<long long> hitting_time(
        const std::function<bool(const Graph&)>& pred) const {
        long long lo = 0, hi = total_edges();
        if (!pred(prefix(hi))) return std::nullopt;
        if (pred(prefix(0))) return 0;
        // invariant: pred(prefix(lo)) false, pred(prefix(hi)) true
        while (hi - lo > 1) {
            const long long mid = lo + (hi - lo) / 2;
            (pred(prefix(mid)) ? hi : lo) = mid;
        }
        return hi;
    }

private:
    int n_;
    std::vector<std::uint32_t> order_;
};

/// process_prefix(ps, m) — free-function spelling of ProcessStream::prefix.
inline Graph process_prefix(const ProcessStream& ps, long long m) { return ps.prefix(m); }

}  // namespace treepack
