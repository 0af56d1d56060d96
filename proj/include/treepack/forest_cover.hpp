#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treepack/densest.hpp"
#include "treepack/forests.hpp"
#include "treepack/graph.hpp"
#include "treepack/rational.hpp"
#include "treepack/tree_packing.hpp"

namespace treepack {

/// Witness that k forests cannot cover: a vertex set inducing too many edges,
/// |E[S]| > t·(|S|−1)  (the Nash-Williams condition, violated).
struct DenseSetCertificate {
    VertexSet set;
    long long t = 0;
    long long induced = 0;
};

namespace detail {

/// Extracts a Nash-Williams certificate (t = k) from the matroid closure of a
/// failed cover run: some closure component must carry more closure edges
/// than k forests can hold. Revalidated by recount before returning.
inline DenseSetCertificate dense_certificate_from_closure(const Graph& g,
                                                          const ForestUnion::Closure& closure,
                                                          int k) {
    std::vector<long long> edge_count(static_cast<std::size_t>(closure.component_count), 0);
    std::vector<long long> size(static_cast<std::size_t>(closure.component_count), 0);
    for (int id : closure.edge_ids) {
        const Edge e = g.edge(id);
        ++edge_count[static_cast<std::size_t>(
            closure.vertex_component[static_cast<std::size_t>(e.u)])];
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        ++size[static_cast<std::size_t>(closure.vertex_component[static_cast<std::size_t>(v)])];

    for (int c = 0; c < closure.component_count; ++c) {
        if (edge_count[static_cast<std::size_t>(c)] <=
            static_cast<long long>(k) * (size[static_cast<std::size_t>(c)] - 1))
            continue;
        DenseSetCertificate cert;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (closure.vertex_component[static_cast<std::size_t>(v)] == c) cert.set.members.push_back(v);
        cert.t = k;
        cert.induced = induced_edge_count(g, cert.set);
        if (cert.set.size() < 2 || cert.induced <= cert.t * (cert.set.size() - 1))
            throw std::logic_error("cover certificate failed revalidation");
        return cert;
    }
    throw std::logic_error("cover failure produced no violating closure component");
}

}  // namespace detail

struct CoverResult {
    bool feasible = false;
    ForestDecomposition cover;                      // set iff feasible (≤ k nonempty forests)
    std::optional<DenseSetCertificate> certificate; // set iff infeasible
};

/// Decides whether k forests can partition E(G); constructive either way.
inline CoverResult cover_with_k_forests(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("cover_with_k_forests: k must be positive");
    ForestUnion fu = detail::make_forest_union(g, k);
    detail::cover_pass(fu, /*target=*/-1);
    CoverResult result;
    result.feasible = fu.covered_count() == g.edge_count();
    if (result.feasible) {
        result.cover.kind = ForestDecomposition::Kind::cover;
        for (auto& forest : fu.forests())
            if (!forest.empty()) result.cover.forests.push_back(std::move(forest));
    } else {
        result.certificate = detail::dense_certificate_from_closure(g, fu.closure_of_unused(), k);
    }
    return result;
}

struct ArboricityResult {
    int value = 0;                                  // A(G)
    ForestDecomposition cover;                      // A forests partitioning E(G)
    std::optional<DenseSetCertificate> certificate; // witness for A−1 (absent iff edgeless)
};

/// A(G): the arboricity, with a minimum cover and a certificate that A−1
/// forests do not suffice. Seeds at the density lower bound ⌈m/(n−1)⌉ and
/// walks k upward, warm-starting the forest structure.
inline ArboricityResult arboricity(const Graph& g) {
    ArboricityResult result;
    result.cover.kind = ForestDecomposition::Kind::cover;
    const long long m = g.edge_count();
    if (m == 0) return result;  // A = 0 by convention, no certificate

    const int n = g.vertex_count();  // m ≥ 1 implies n ≥ 2
    int k = static_cast<int>(ceil_div(m, n - 1));
    ForestUnion fu(n);
    for (const auto& e : g.edges()) fu.add_edge(e);
    for (int i = 0; i < k; ++i) fu.add_forest();

    detail::cover_pass(fu, -1);
    if (fu.covered_count() == m) {
        // Seed succeeded: certify k−1 with S = V (m > (k−1)(n−1) since the
        // ceiling is the least k with k(n−1) ≥ m).
        DenseSetCertificate cert;
        for (Vertex v = 0; v < n; ++v) cert.set.members.push_back(v);
        cert.t = k - 1;
        cert.induced = m;
        if (cert.induced <= cert.t * (n - 1))
            throw std::logic_error("arboricity: seed certificate failed revalidation");
        result.certificate = cert;
    } else {
        while (fu.covered_count() < m) {
            result.certificate = detail::dense_certificate_from_closure(g, fu.closure_of_unused(), k);
            fu.add_forest();
            ++k;
            detail::cover_pass(fu, -1);
        }
    }
    result.value = k;
    for (auto& forest : fu.forests())
        if (!forest.empty()) result.cover.forests.push_back(std::move(forest));
    return result;
}

/// Nash-Williams by exhaustion: max over S with |S| ≥ 2 of ⌈|E[S]|/(|S|−1)⌉,
/// 0 for edgeless graphs. Oracle-scale only (2^n subsets).
inline int brute_force_arboricity(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 14) throw std::invalid_argument("brute_force_arboricity: n > 14 (oracle guard)");
    if (g.edge_count() == 0) return 0;
    long long best = 1;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size < 2) continue;
        long long induced = 0;
        for (const auto& e : g.edges())
            if ((mask >> e.u & 1u) && (mask >> e.v & 1u)) ++induced;
        best = std::max(best, ceil_div(induced, size - 1));
    }
    return static_cast<int>(best);
}

/// Independent validity check for covers: forests are acyclic, edge-disjoint,
/// and together contain every edge of g exactly once.
inline bool verify_cover(const Graph& g, const ForestDecomposition& fd, std::string* reason = nullptr) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    if (fd.kind != ForestDecomposition::Kind::cover) return fail("decomposition kind is not cover");
    const int n = g.vertex_count();
    std::vector<Edge> all;
    for (std::size_t i = 0; i < fd.forests.size(); ++i) {
        Dsu dsu(n);
        for (const auto& raw : fd.forests[i]) {
            if (raw.u == raw.v || raw.u < 0 || raw.v >= n)
                return fail("forest " + std::to_string(i) + " contains an invalid edge");
            const Edge e = raw.u < raw.v ? raw : Edge{raw.v, raw.u};
            if (!g.has_edge(e.u, e.v))
                return fail("forest " + std::to_string(i) + " uses edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") not present in the graph");
            if (!dsu.unite(e.u, e.v)) return fail("forest " + std::to_string(i) + " contains a cycle");
            all.push_back(e);
        }
    }
    if (static_cast<long long>(all.size()) != g.edge_count())
        return fail("cover holds " + std::to_string(all.size()) + " edges, graph has " +
                    std::to_string(g.edge_count()));
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        return fail("an edge appears in two forests");
    if (reason) reason->clear();
    return true;
}

/// Maintains A(G_m) along an edge-by-edge process: one augmentation attempt
/// per arriving edge (the arrival is the only uncovered element, so failure
/// proves A = k+1 and the arrival opens a fresh forest).
class IncrementalArboricity {
public:
    explicit IncrementalArboricity(int n) : fu_(n) {}

    /// Inserts the next edge; returns the arboricity of the grown graph.
    int add_edge(Edge e) {
        const int id = fu_.add_edge(e.u < e.v ? e : Edge{e.v, e.u});
        if (!fu_.try_insert(id)) {
            fu_.add_forest();
            if (!fu_.try_insert(id)) throw std::logic_error("fresh forest rejected a new edge");
        }
        return fu_.forest_count();
    }

    [[nodiscard]] int value() const { return fu_.forest_count(); }
    [[nodiscard]] int edge_count() const { return fu_.ground_size(); }

private:
    ForestUnion fu_;
};

}  // namespace treepack
