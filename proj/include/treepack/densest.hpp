#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "treepack/graph.hpp"
#include "treepack/maxflow.hpp"
#include "treepack/rational.hpp"

namespace treepack {

namespace detail {

/// For λ = p/q, computes max over vertex sets S of q·|E[S]| − p·|S∖{root}|
/// (root < 0 means every vertex is charged) via the max-weight-closure
/// reduction: source→edge arcs of capacity q, edge→endpoint arcs of infinite
/// capacity, vertex→sink arcs of capacity p. Returns the optimum and a set
/// attaining it (the min cut's source side; ∅ attains 0).
struct ClosureOutcome {
    long long value = 0;
    std::vector<Vertex> set;
};

inline ClosureOutcome best_closure(const Graph& g, long long p, long long q, Vertex root) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    // Nodes: 0 = source, 1..m = edges, m+1..m+n = vertices, m+n+1 = sink.
    const int source = 0, sink = m + n + 1;
    MaxFlow flow(m + n + 2);
    for (int j = 0; j < m; ++j) {
        const Edge e = g.edge(j);
        flow.add_arc(source, 1 + j, q);
        flow.add_arc(1 + j, m + 1 + e.u, MaxFlow::kInf);
        flow.add_arc(1 + j, m + 1 + e.v, MaxFlow::kInf);
    }
    for (Vertex v = 0; v < n; ++v)
        if (v != root) flow.add_arc(m + 1 + v, sink, p);
    const long long cut = flow.run(source, sink);
    ClosureOutcome out;
    out.value = static_cast<long long>(q) * m - cut;
    const auto side = flow.min_cut_source_side(source);
    for (Vertex v = 0; v < n; ++v)
        if (side[static_cast<std::size_t>(m + 1 + v)]) out.set.push_back(v);
    return out;
}

}  // namespace detail

struct DensestSubgraph {
    Rational density;  // 2|E[S]| / |S|
    VertexSet witness;
};

/// Exact maximizer of the average degree 2|E[S]|/|S| over nonempty S
/// (Goldberg's densest subgraph, Dinkelbach iteration over exact rationals).
inline DensestSubgraph max_avg_degree_subgraph(const Graph& g) {
    const int n = g.vertex_count();
    if (g.edge_count() < 1) throw std::invalid_argument("max_avg_degree_subgraph: edgeless graph");

    std::vector<Vertex> everything(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) everything[static_cast<std::size_t>(v)] = v;
    VertexSet witness{std::move(everything)};
    Rational density(2LL * g.edge_count(), n);

    while (true) {
        // Test: any S with 2|E[S]|·den > num·|S|, i.e. den·2|E[S]| − num·|S| > 0?
        const auto outcome =
            detail::best_closure(g, density.numerator(), 2 * density.denominator(), /*root=*/-1);
        if (outcome.value <= 0) break;
        VertexSet s{outcome.set};
        const long long induced = induced_edge_count(g, s);
        const Rational improved(2 * induced, s.size());
        if (improved <= density) throw std::logic_error("densest subgraph iteration failed to improve");
        density = improved;
        witness = std::move(s);
    }
    return DensestSubgraph{density, std::move(witness)};
}

struct DensestRatio {
    Rational ratio;  // |E[S]| / (|S| − 1)
    VertexSet witness;
};

/// Exact maximizer of the Nash-Williams density |E[S]|/(|S|−1) over |S| ≥ 2.
/// The |S|−1 denominator breaks the plain closure reduction (∅ and singletons
/// degenerate), so each test fixes a root vertex r that is exempt from the
/// vertex charge: max over S ∋ r of q|E[S]| − p(|S|−1) — and r may be assumed
/// in an optimal S since including it costs nothing.
inline DensestRatio densest_ratio_witness(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("densest_ratio: need at least 2 vertices");
    if (g.edge_count() < 1) throw std::invalid_argument("densest_ratio: edgeless graph");

    std::vector<Vertex> everything(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) everything[static_cast<std::size_t>(v)] = v;
    VertexSet witness{std::move(everything)};
    Rational ratio(g.edge_count(), n - 1);

    bool improved_any = true;
    while (improved_any) {
        improved_any = false;
        for (Vertex root = 0; root < n; ++root) {
            const auto outcome =
                detail::best_closure(g, ratio.numerator(), ratio.denominator(), root);
            if (outcome.value <= 0) continue;
            std::vector<Vertex> members = outcome.set;
            members.push_back(root);  // harmless if already present
            VertexSet s = VertexSet::of(std::move(members));
            const long long induced = induced_edge_count(g, s);
            if (s.size() < 2) throw std::logic_error("densest ratio witness degenerated");
            const Rational improved(induced, s.size() - 1);
            if (improved <= ratio) throw std::logic_error("densest ratio iteration failed to improve");
            ratio = improved;
            witness = std::move(s);
            improved_any = true;
            break;  // restart the root scan at the improved ratio
        }
    }
    return DensestRatio{ratio, std::move(witness)};
}

/// max over S with |S| ≥ 2 of |E[S]|/(|S|−1), exact.
inline Rational densest_ratio(const Graph& g) { return densest_ratio_witness(g).ratio; }

}  // namespace treepack
