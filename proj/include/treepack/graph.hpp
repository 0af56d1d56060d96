#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treepack/mincut.hpp"
#include "treepack/rational.hpp"

namespace treepack {

using Vertex = int;

/// Undirected simple edge, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Normalizes an endpoint pair into an Edge; self-loops are invalid.
inline Edge make_edge(Vertex a, Vertex b) {
    if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
    return a < b ? Edge{a, b} : Edge{b, a};
}

/// Set of vertex indices, kept sorted and duplicate-free.
struct VertexSet {
    std::vector<Vertex> members;

    static VertexSet of(std::vector<Vertex> vs) {
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return VertexSet{std::move(vs)};
    }

    [[nodiscard]] int size() const { return static_cast<int>(members.size()); }
    [[nodiscard]] bool empty() const { return members.empty(); }
    [[nodiscard]] bool contains(Vertex v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }

    /// Validates members ⊆ [0, n), strictly increasing.
    void validate(int n) const {
        Vertex prev = -1;
        for (Vertex v : members) {
            if (v < 0 || v >= n) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
            if (v <= prev) throw std::invalid_argument("vertex set not strictly increasing");
            prev = v;
        }
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

/// Partition of {0..n−1} into nonempty classes.
struct Partition {
    std::vector<std::vector<Vertex>> classes;

    static Partition singletons(int n) {
        Partition p;
        p.classes.reserve(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) p.classes.push_back({v});
        return p;
    }

    /// Builds a partition from per-vertex class labels (labels need not be dense).
    static Partition from_labels(const std::vector<int>& labels) {
        std::vector<int> order(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return labels[a] != labels[b] ? labels[a] < labels[b] : a < b; });
        Partition p;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (i == 0 || labels[order[i]] != labels[order[i - 1]]) p.classes.emplace_back();
            p.classes.back().push_back(order[i]);
        }
        return p;
    }

    [[nodiscard]] int size() const { return static_cast<int>(classes.size()); }

    /// Throws unless classes are nonempty, disjoint, and cover {0..n−1}.
    void validate(int n) const {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        int covered = 0;
        for (const auto& cls : classes) {
            if (cls.empty()) throw std::invalid_argument("partition has an empty class");
            for (Vertex v : cls) {
                if (v < 0 || v >= n)
                    throw std::invalid_argument("partition vertex " + std::to_string(v) + " out of range");
                if (seen[static_cast<std::size_t>(v)])
                    throw std::invalid_argument("partition classes overlap at vertex " + std::to_string(v));
                seen[static_cast<std::size_t>(v)] = 1;
                ++covered;
            }
        }
        if (covered != n) throw std::invalid_argument("partition does not cover all vertices");
    }
};

/// Immutable simple undirected graph over dense 0-based vertex indices.
/// Construction validates endpoints, rejects self-loops and duplicate edges,
/// and preserves the caller's edge order (edge index = position in edges()).
/// All queries are const, so instances are safe to share across threads.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ < 0) throw std::invalid_argument("negative vertex count");
        for (auto& e : edges_) {
            if (e.u == e.v) throw std::invalid_argument("self-loop on vertex " + std::to_string(e.u));
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u < 0 || e.v >= n_)
                throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                            ") out of range for n=" + std::to_string(n_));
        }
        {
            auto sorted = edges_;
            std::sort(sorted.begin(), sorted.end());
            auto dup = std::adjacent_find(sorted.begin(), sorted.end());
            if (dup != sorted.end())
                throw std::invalid_argument("duplicate edge (" + std::to_string(dup->u) + "," +
                                            std::to_string(dup->v) + ")");
        }
        build_adjacency();
    }

    [[nodiscard]] int vertex_count() const { return n_; }
    [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const Edge& edge(int index) const { return edges_.at(static_cast<std::size_t>(index)); }

    [[nodiscard]] int degree(Vertex v) const {
        check_vertex(v);
        return adj_offset_[static_cast<std::size_t>(v) + 1] - adj_offset_[static_cast<std::size_t>(v)];
    }

    [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const {
        check_vertex(v);
        const auto begin = static_cast<std::size_t>(adj_offset_[static_cast<std::size_t>(v)]);
        const auto end = static_cast<std::size_t>(adj_offset_[static_cast<std::size_t>(v) + 1]);
        return {adj_.data() + begin, end - begin};
    }

    [[nodiscard]] bool has_edge(Vertex a, Vertex b) const {
        if (a == b) return false;
        check_vertex(a);
        check_vertex(b);
        auto nb = neighbors(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    }

private:
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
    }

    void build_adjacency() {
        adj_offset_.assign(static_cast<std::size_t>(n_) + 1, 0);
        for (const auto& e : edges_) {
            ++adj_offset_[static_cast<std::size_t>(e.u) + 1];
            ++adj_offset_[static_cast<std::size_t>(e.v) + 1];
        }
        for (std::size_t i = 1; i < adj_offset_.size(); ++i) adj_offset_[i] += adj_offset_[i - 1];
        adj_.resize(2 * edges_.size());
        std::vector<int> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
        for (const auto& e : edges_) {
            adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)]++)] = e.v;
            adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.v)]++)] = e.u;
        }
        for (Vertex v = 0; v < n_; ++v) {
            auto begin = adj_.begin() + adj_offset_[static_cast<std::size_t>(v)];
            auto end = adj_.begin() + adj_offset_[static_cast<std::size_t>(v) + 1];
            std::sort(begin, end);
        }
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> adj_offset_;  // CSR offsets into adj_
    std::vector<Vertex> adj_;
};

// ---------------------------------------------------------------------------
// Degree statistics
// ---------------------------------------------------------------------------

inline int min_degree(const Graph& g) {
    if (g.vertex_count() == 0) throw std::invalid_argument("min_degree: empty graph");
    int best = g.degree(0);
    for (Vertex v = 1; v < g.vertex_count(); ++v) best = std::min(best, g.degree(v));
    return best;
}

/// d̄(G) = 2m/(n−1), exact.
inline Rational dbar(const Graph& g) {
    if (g.vertex_count() < 2) throw std::invalid_argument("dbar: need at least 2 vertices");
    return Rational(2LL * g.edge_count(), g.vertex_count() - 1);
}

/// t(G) = min(δ(G), d̄(G)/2) = min(δ, m/(n−1)), exact.
inline Rational t_value(const Graph& g) {
    if (g.vertex_count() < 2) throw std::invalid_argument("t_value: need at least 2 vertices");
    const Rational half_dbar(g.edge_count(), g.vertex_count() - 1);
    const Rational delta(min_degree(g));
    return std::min(delta, half_dbar);
}

// ---------------------------------------------------------------------------
// Partition / subset edge counts
// ---------------------------------------------------------------------------

/// m(𝒫): edges with endpoints in distinct classes.
inline long long crossing_edges(const Graph& g, const Partition& p) {
    p.validate(g.vertex_count());
    std::vector<int> cls(static_cast<std::size_t>(g.vertex_count()));
    for (std::size_t i = 0; i < p.classes.size(); ++i)
        for (Vertex v : p.classes[i]) cls[static_cast<std::size_t>(v)] = static_cast<int>(i);
    long long crossing = 0;
    for (const auto& e : g.edges())
        if (cls[static_cast<std::size_t>(e.u)] != cls[static_cast<std::size_t>(e.v)]) ++crossing;
    return crossing;
}

/// |E[S]|: edges with both endpoints in s.
inline long long induced_edge_count(const Graph& g, const VertexSet& s) {
    s.validate(g.vertex_count());
    std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : s.members) in[static_cast<std::size_t>(v)] = 1;
    long long count = 0;
    for (const auto& e : g.edges())
        if (in[static_cast<std::size_t>(e.u)] && in[static_cast<std::size_t>(e.v)]) ++count;
    return count;
}

/// |E(S,S')| for disjoint S, S'.
inline long long edges_between(const Graph& g, const VertexSet& s, const VertexSet& s2) {
    s.validate(g.vertex_count());
    s2.validate(g.vertex_count());
    std::vector<char> side(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : s.members) side[static_cast<std::size_t>(v)] = 1;
    for (Vertex v : s2.members) {
        if (side[static_cast<std::size_t>(v)])
            throw std::invalid_argument("edges_between: sets overlap at vertex " + std::to_string(v));
        side[static_cast<std::size_t>(v)] = 2;
    }
    long long count = 0;
    for (const auto& e : g.edges()) {
        const int a = side[static_cast<std::size_t>(e.u)];
        const int b = side[static_cast<std::size_t>(e.v)];
        if ((a == 1 && b == 2) || (a == 2 && b == 1)) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// k-core and connectivity
// ---------------------------------------------------------------------------

/// Maximal vertex set whose induced subgraph has minimum degree ≥ k
/// (iterative peeling; result is order-independent).
inline VertexSet k_core(const Graph& g, int k) {
    if (k < 0) throw std::invalid_argument("k_core: k must be nonnegative");
    const int n = g.vertex_count();
    std::vector<int> deg(static_cast<std::size_t>(n));
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[static_cast<std::size_t>(v)] = g.degree(v);
        if (deg[static_cast<std::size_t>(v)] < k) {
            removed[static_cast<std::size_t>(v)] = 1;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const Vertex v = queue.back();
        queue.pop_back();
        for (Vertex w : g.neighbors(v)) {
            if (removed[static_cast<std::size_t>(w)]) continue;
            if (--deg[static_cast<std::size_t>(w)] < k) {
                removed[static_cast<std::size_t>(w)] = 1;
                queue.push_back(w);
            }
        }
    }
    VertexSet core;
    for (Vertex v = 0; v < n; ++v)
        if (!removed[static_cast<std::size_t>(v)]) core.members.push_back(v);
    return core;
}

/// Per-vertex connected-component labels (0-based, in order of discovery).
inline std::vector<int> component_labels(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    int components = 0;
    std::vector<Vertex> stack;
    for (Vertex start = 0; start < n; ++start) {
        if (label[static_cast<std::size_t>(start)] != -1) continue;
        label[static_cast<std::size_t>(start)] = components;
        stack.push_back(start);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (label[static_cast<std::size_t>(w)] == -1) {
                    label[static_cast<std::size_t>(w)] = components;
                    stack.push_back(w);
                }
            }
        }
        ++components;
    }
    return label;
}

inline bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    const auto labels = component_labels(g);
    return std::all_of(labels.begin(), labels.end(), [](int c) { return c == 0; });
}

/// λ(G): minimum over nonempty proper S of |E(S,S̄)|; 0 iff disconnected.
inline int edge_connectivity(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("edge_connectivity: need at least 2 vertices");
    if (!is_connected(g)) return 0;
    std::vector<std::vector<long long>> w(static_cast<std::size_t>(n),
                                          std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (const auto& e : g.edges()) {
        w[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = 1;
        w[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = 1;
    }
    return static_cast<int>(stoer_wagner_min_cut(std::move(w)));
}

// ---------------------------------------------------------------------------
// Edge-list file format
// ---------------------------------------------------------------------------
// First line "n m", then m lines "u v" with 0 ≤ u < v < n. Blank lines and
// lines starting with '#' are ignored. Errors carry 1-based line numbers.

inline Graph read_edge_list(std::istream& in) {
    auto fail = [](int line, const std::string& what) -> void {
        throw std::runtime_error("edge list line " + std::to_string(line) + ": " + what);
    };
    std::string raw;
    int line_no = 0;
    auto next_content_line = [&](std::string& out) -> bool {
        while (std::getline(in, raw)) {
            ++line_no;
            const auto first = raw.find_first_not_of(" \t\r");
            if (first == std::string::npos || raw[first] == '#') continue;
            out = raw;
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_content_line(header)) throw std::runtime_error("edge list: missing header line");
    long long n = 0, m = 0;
    {
        std::istringstream hs(header);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra)) fail(line_no, "expected header 'n m'");
        if (n < 0 || m < 0) fail(line_no, "negative counts in header");
        if (n > 50'000'000) fail(line_no, "vertex count too large");
        if (m > 2'000'000'000LL || (n >= 2 && m > n * (n - 1) / 2))
            fail(line_no, "edge count exceeds C(n,2)");
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        std::string body;
        if (!next_content_line(body)) throw std::runtime_error("edge list: expected " + std::to_string(m) +
                                                               " edges, found " + std::to_string(i));
        std::istringstream es(body);
        long long u = 0, v = 0;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra)) fail(line_no, "expected 'u v'");
        if (u < 0 || v < 0 || u >= n || v >= n) fail(line_no, "vertex out of range");
        if (u == v) fail(line_no, "self-loop");
        if (u > v) fail(line_no, "endpoints must satisfy u < v");
        edges.push_back(Edge{static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    std::string trailing;
    if (next_content_line(trailing)) fail(line_no, "unexpected content after last edge");

    {
        // Duplicate detection with a line diagnostic (the constructor would
        // reject duplicates too, but without the offending line number).
        auto sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end()) {
            for (std::size_t i = 1; i < edges.size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (edges[i] == edges[j])
                        throw std::runtime_error("edge list: duplicate edge (" + std::to_string(edges[i].u) +
                                                 "," + std::to_string(edges[i].v) + ")");
        }
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace treepack
