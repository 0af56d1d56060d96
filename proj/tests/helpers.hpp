#pragma once

// Shared graph constructors for the test suites.

#include <treepack/graph.hpp>

#include <vector>

namespace tph {

inline treepack::Graph complete_graph(int n) {
    std::vector<treepack::Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
    return treepack::Graph(n, edges);
}

inline treepack::Graph cycle_graph(int n) {
    std::vector<treepack::Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back(treepack::make_edge(i, (i + 1) % n));
    return treepack::Graph(n, edges);
}

inline treepack::Graph path_graph(int n) {
    std::vector<treepack::Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return treepack::Graph(n, edges);
}

// Star K_{1,leaves}: vertex 0 is the center.
inline treepack::Graph star_graph(int leaves) {
    std::vector<treepack::Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
    return treepack::Graph(leaves + 1, edges);
}

// Complete bipartite K_{a,b}: side A = {0..a-1}, side B = {a..a+b-1}.
inline treepack::Graph complete_bipartite(int a, int b) {
    std::vector<treepack::Edge> edges;
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) edges.push_back({u, v});
    return treepack::Graph(a + b, edges);
}

// Petersen graph: outer cycle 0..4, spokes i—(i+5), inner pentagram.
inline treepack::Graph petersen() {
    std::vector<treepack::Edge> edges;
    for (int i = 0; i < 5; ++i) edges.push_back(treepack::make_edge(i, (i + 1) % 5));
    for (int i = 0; i < 5; ++i) edges.push_back({i, i + 5});
    for (int i = 0; i < 5; ++i) edges.push_back(treepack::make_edge(5 + i, 5 + (i + 2) % 5));
    return treepack::Graph(10, edges);
}

// Disjoint union of two graphs (second graph's labels shifted).
inline treepack::Graph disjoint_union(const treepack::Graph& g1, const treepack::Graph& g2) {
    const int shift = g1.vertex_count();
    std::vector<treepack::Edge> edges(g1.edges().begin(), g1.edges().end());
    for (const auto& e : g2.edges()) edges.push_back({e.u + shift, e.v + shift});
    return treepack::Graph(g1.vertex_count() + g2.vertex_count(), edges);
}

}  // namespace tph
