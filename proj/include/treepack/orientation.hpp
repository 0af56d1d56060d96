#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "treepack/forest_cover.hpp"
#include "treepack/graph.hpp"
#include "treepack/random_process.hpp"
#include "treepack/rng.hpp"

namespace treepack {

/// An edge orientation: head[j] is the endpoint edge j points to (indegree of
/// the head counts the edge); indegree is the derived per-vertex count.
struct Orientation {
    std::vector<Vertex> head;     // per edge
    std::vector<int> indegree;    // per vertex
    [[nodiscard]] int max_indegree() const {
        return indegree.empty() ? 0 : *std::max_element(indegree.begin(), indegree.end());
    }
};

struct OrientResult {
    bool feasible = false;
    Orientation orientation;                        // set iff feasible
    std::optional<DenseSetCertificate> certificate; // Hakimi form: induced > t·|set| (t = k)
};

namespace detail {

/// Incremental k-orientation over an explicit edge list (parallel edges
/// permitted — the load-balancing simulator reuses this in multigraph mode).
/// Each edge enters pointing at its lower-indegree endpoint; if that endpoint
/// overflows, a breadth-first search walks incoming edges backwards looking
/// for a vertex with indegree < k and reverses the path. A saturated search
/// yields the witness: the reachable set S has every inner indegree ≥ k, one
/// at k+1, and all edges into S originate in S, so |E[S]| ≥ k|S|+1.
inline OrientResult orient_edges(int n, std::span<const Edge> edges, int k) {
    if (k < 0) throw std::invalid_argument("orient_edges: k must be nonnegative");
    OrientResult result;
    auto& ori = result.orientation;
    ori.head.assign(edges.size(), -1);
    ori.indegree.assign(static_cast<std::size_t>(n), 0);
    // incoming[v]: ids of edges currently pointing at v
    std::vector<std::vector<int>> incoming(static_cast<std::size_t>(n));

    auto point_at = [&](int id, Vertex to) {
        ori.head[static_cast<std::size_t>(id)] = to;
        ++ori.indegree[static_cast<std::size_t>(to)];
        incoming[static_cast<std::size_t>(to)].push_back(id);
    };
    auto detach = [&](int id) {
        const Vertex from = ori.head[static_cast<std::size_t>(id)];
        auto& list = incoming[static_cast<std::size_t>(from)];
        list.erase(std::find(list.begin(), list.end(), id));
        --ori.indegree[static_cast<std::size_t>(from)];
    };

    std::vector<int> seen_stamp(static_cast<std::size_t>(n), -1);
    std::vector<int> via_edge(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> queue;

    for (std::size_t j = 0; j < edges.size(); ++j) {
        const Edge e = edges[j];
        const Vertex to = ori.indegree[static_cast<std::size_t>(e.u)] <=
                                  ori.indegree[static_cast<std::size_t>(e.v)]
                              ? e.u
                              : e.v;
        point_at(static_cast<int>(j), to);
        if (ori.indegree[static_cast<std::size_t>(to)] <= k) continue;

        // `to` overflowed to k+1: search backwards over incoming edges for a
        // vertex that can absorb one unit, then reverse the path to it.
        const int stamp = static_cast<int>(j);
        queue.clear();
        queue.push_back(to);
        seen_stamp[static_cast<std::size_t>(to)] = stamp;
        via_edge[static_cast<std::size_t>(to)] = -1;
        Vertex relief = -1;
        for (std::size_t qi = 0; qi < queue.size() && relief == -1; ++qi) {
            const Vertex v = queue[qi];
            for (const int id : incoming[static_cast<std::size_t>(v)]) {
                const Edge f = edges[static_cast<std::size_t>(id)];
                const Vertex tail = f.u == v ? f.v : f.u;
                if (seen_stamp[static_cast<std::size_t>(tail)] == stamp) continue;
                seen_stamp[static_cast<std::size_t>(tail)] = stamp;
                via_edge[static_cast<std::size_t>(tail)] = id;
                if (ori.indegree[static_cast<std::size_t>(tail)] <= k - 1) {
                    relief = tail;
                    break;
                }
                queue.push_back(tail);
            }
        }

        if (relief == -1) {
            // Saturated: the searched region is the Hakimi witness.
            result.feasible = false;
            DenseSetCertificate cert;
            cert.t = k;
            for (Vertex v = 0; v < n; ++v)
                if (seen_stamp[static_cast<std::size_t>(v)] == stamp) cert.set.members.push_back(v);
            long long inside = 0;
            for (const Edge& f : edges)
                if (cert.set.contains(f.u) && cert.set.contains(f.v)) ++inside;
            cert.induced = inside;
            if (cert.induced <= static_cast<long long>(k) * cert.set.size())
                throw std::logic_error("orientation certificate failed revalidation");
            result.certificate = std::move(cert);
            result.orientation = Orientation{};
            return result;
        }

        // Reverse the path relief → … → to: each hop edge currently points one
        // step toward `to`; flip it toward the tail side.
        for (Vertex v = relief; v != to;) {
            const int id = via_edge[static_cast<std::size_t>(v)];
            const Edge f = edges[static_cast<std::size_t>(id)];
            const Vertex other = f.u == v ? f.v : f.u;
            detach(id);
            point_at(id, v);
            v = other;
        }
    }
    result.feasible = true;
    return result;
}

}  // namespace detail

/// Decides k-orientability of g; on success all indegrees ≤ k, on failure the
/// certificate set S has 2|E[S]|/|S| > 2k (average degree above 2k).
inline OrientResult orient_k(const Graph& g, int k) {
    if (k < 0) throw std::invalid_argument("orient_k: k must be nonnegative");
    const long long m = g.edge_count();
    // Pigeonhole fast path: more than kn edges can never k-orient; S = V is
    // already a witness, no search needed.
    if (m > static_cast<long long>(k) * g.vertex_count()) {
        OrientResult result;
        DenseSetCertificate cert;
        cert.t = k;
        for (Vertex v = 0; v < g.vertex_count(); ++v) cert.set.members.push_back(v);
        cert.induced = m;
        result.certificate = std::move(cert);
        return result;
    }
    return detail::orient_edges(g.vertex_count(), g.edges(), k);
}

struct MinMaxIndegree {
    int value = 0;                                  // smallest feasible k
    Orientation orientation;                        // an optimal orientation
    std::optional<DenseSetCertificate> certificate; // witness for value−1 (absent iff edgeless)
};

/// Smallest k admitting a k-orientation, with an optimal orientation and a
/// witness that k−1 fails. Walks k upward from the average-degree bound.
inline MinMaxIndegree min_max_indegree_full(const Graph& g) {
    MinMaxIndegree result;
    const long long m = g.edge_count();
    const int n = g.vertex_count();
    if (m == 0) {
        result.orientation.indegree.assign(static_cast<std::size_t>(n), 0);
        return result;  // k = 0, no certificate
    }
    int k = static_cast<int>(ceil_div(m, n));
    for (;; ++k) {
        auto attempt = detail::orient_edges(n, g.edges(), k);
        if (attempt.feasible) {
            result.value = k;
            result.orientation = std::move(attempt.orientation);
            if (!result.certificate) {
                // Succeeded at the seed: S = V certifies k−1 (m > (k−1)n by
                // minimality of the ceiling).
                DenseSetCertificate cert;
                cert.t = k - 1;
                for (Vertex v = 0; v < n; ++v) cert.set.members.push_back(v);
                cert.induced = m;
                if (cert.induced <= static_cast<long long>(k - 1) * n)
                    throw std::logic_error("min_max_indegree: seed certificate failed revalidation");
                result.certificate = std::move(cert);
            }
            return result;
        }
        result.certificate = std::move(attempt.certificate);
    }
}

inline int min_max_indegree(const Graph& g) { return min_max_indegree_full(g).value; }

struct LoadResult {
    int max_load = 0;
    std::vector<long long> histogram;  // histogram[i] = #bins with load i under an optimal orientation
};

/// Two-choice load balancing: m balls (edges) each join two random distinct
/// bins (vertices); the offline optimum assignment is a minimum-max-indegree
/// orientation. Default draws the simple graph G(n,m) (the model the sharp
/// threshold analyses use); multigraph mode draws the m pairs independently
/// with replacement instead (folklore balls-into-bins; excluded from
/// acceptance).
inline LoadResult two_choice_load(int n, long long m, RngSeed seed, bool multigraph = false) {
    if (n < 2) throw std::invalid_argument("two_choice_load: need at least 2 bins");
    LoadResult result;
    Orientation optimal;
    if (multigraph) {
        Rng rng(seed);
        std::vector<Edge> edges;
        edges.reserve(static_cast<std::size_t>(m));
        for (long long i = 0; i < m; ++i) {
            const auto a = static_cast<Vertex>(rng.next_below(static_cast<std::uint64_t>(n)));
            auto b = static_cast<Vertex>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
            if (b >= a) ++b;  // uniform distinct pair
            edges.push_back(a < b ? Edge{a, b} : Edge{b, a});
        }
        // Upward scan exactly as min_max_indegree, over the multiset.
        int k = static_cast<int>(ceil_div(std::max(m, 1LL), n));
        if (m == 0) k = 0;
        for (;; ++k) {
            auto attempt = detail::orient_edges(n, edges, k);
            if (attempt.feasible) {
                optimal = std::move(attempt.orientation);
                result.max_load = k;
                break;
            }
        }
        if (m == 0) optimal.indegree.assign(static_cast<std::size_t>(n), 0);
    } else {
        const Graph g = gen_gnm(n, m, seed);
        auto full = min_max_indegree_full(g);
        result.max_load = full.value;
        optimal = std::move(full.orientation);
        if (optimal.indegree.empty()) optimal.indegree.assign(static_cast<std::size_t>(n), 0);
    }
    result.histogram.assign(static_cast<std::size_t>(result.max_load) + 1, 0);
    for (int load : optimal.indegree) ++result.histogram[static_cast<std::size_t>(load)];
    return result;
}

}  // namespace treepack
