#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treepack/forests.hpp"
#include "treepack/graph.hpp"

namespace treepack {

/// A set of edge-disjoint forests: either a packing (every forest a spanning
/// tree) or a cover (forests partition all edges of the host graph).
struct ForestDecomposition {
    enum class Kind { packing, cover };
    Kind kind = Kind::packing;
    std::vector<std::vector<Edge>> forests;
};

/// Witness that k spanning trees cannot pack: a partition with too few
/// crossing edges, m(𝒫) < t·(|𝒫|−1)  (the Tutte–Nash-Williams condition,
/// violated).
struct PartitionCertificate {
    Partition partition;
    long long t = 0;
    long long crossing = 0;
};

namespace detail {

/// Turns the matroid closure of a failed packing run into a partition
/// certificate for t = k, revalidating the defining inequality by recount.
inline PartitionCertificate partition_certificate_from_closure(const Graph& g,
                                                               const ForestUnion::Closure& closure,
                                                               int k) {
    PartitionCertificate cert;
    cert.partition = Partition::from_labels(closure.vertex_component);
    cert.t = k;
    cert.crossing = crossing_edges(g, cert.partition);
    if (cert.crossing >= cert.t * (cert.partition.size() - 1))
        throw std::logic_error("packing certificate failed revalidation");
    return cert;
}

/// Builds the k-forest union over g's edges (in edge-index order), attempting
/// every edge once per forest level; stops early once `target` edges are
/// covered (pass -1 for no early stop). Assumes fu already has some forests
/// and possibly covered edges from a previous (smaller k) run — warm starts
/// are sound because an independent set in a matroid always extends to a
/// maximum one.
inline void cover_pass(ForestUnion& fu, long long target) {
    const int m = fu.ground_size();
    for (int id = 0; id < m; ++id) {
        if (target >= 0 && fu.covered_count() >= target) return;
        fu.try_insert(id);
    }
}

inline ForestUnion make_forest_union(const Graph& g, int k) {
    ForestUnion fu(g.vertex_count());
    for (const auto& e : g.edges()) fu.add_edge(e);
    for (int i = 0; i < k; ++i) fu.add_forest();
    return fu;
}

}  // namespace detail

struct PackResult {
    bool feasible = false;
    ForestDecomposition packing;                     // set iff feasible
    std::optional<PartitionCertificate> certificate; // set iff infeasible
};

/// Decides whether g packs k edge-disjoint spanning trees; constructive
/// either way (trees, or a violated-partition certificate).
inline PackResult pack_k_trees(const Graph& g, int k) {
    if (g.vertex_count() < 2) throw std::invalid_argument("pack_k_trees: need at least 2 vertices");
    if (k < 1) throw std::invalid_argument("pack_k_trees: k must be positive");
    const long long target = static_cast<long long>(k) * (g.vertex_count() - 1);
    ForestUnion fu = detail::make_forest_union(g, k);
    detail::cover_pass(fu, target);
    PackResult result;
    result.feasible = fu.covered_count() == target;
    if (result.feasible) {
        result.packing = ForestDecomposition{ForestDecomposition::Kind::packing, fu.forests()};
    } else {
        result.certificate = detail::partition_certificate_from_closure(g, fu.closure_of_unused(), k);
    }
    return result;
}

struct StpResult {
    int value = 0;                     // T(G)
    ForestDecomposition packing;       // T edge-disjoint spanning trees
    PartitionCertificate certificate;  // witness that T+1 trees cannot pack
};

/// T(G): the spanning-tree packing number, with a T-packing and a certificate
/// for T+1. Walks k upward from 1 reusing the forest structure (one extra
/// forest per level); at the first failing level the matroid closure yields
/// the certificate. If every k up to the trivial upper bound min(δ, ⌊m/(n−1)⌋)
/// succeeds, the binding trivial bound supplies the certificate directly.
inline StpResult stp_number(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("stp_number: need at least 2 vertices");
    StpResult result;
    result.packing.kind = ForestDecomposition::Kind::packing;

    if (!is_connected(g)) {
        result.value = 0;
        result.certificate.partition = Partition::from_labels(component_labels(g));
        result.certificate.t = 1;
        result.certificate.crossing = crossing_edges(g, result.certificate.partition);
        return result;
    }

    const long long m = g.edge_count();
    const long long upper = std::min<long long>(min_degree(g), m / (n - 1));
    ForestUnion fu(n);
    for (const auto& e : g.edges()) fu.add_edge(e);

    for (long long k = 1; k <= upper; ++k) {
        fu.add_forest();
        detail::cover_pass(fu, k * (n - 1));
        if (fu.covered_count() == k * (n - 1)) {
            result.value = static_cast<int>(k);
            result.packing.forests = fu.forests();
        } else {
            result.certificate =
                detail::partition_certificate_from_closure(g, fu.closure_of_unused(), static_cast<int>(k));
            return result;
        }
    }

    // All levels up to the trivial upper bound packed; certify T+1 from the
    // binding bound. (Connected ⇒ upper ≥ 1 ⇒ value ≥ 1 here.)
    const long long next = upper + 1;
    if (m < next * (n - 1)) {
        result.certificate.partition = Partition::singletons(n);
        result.certificate.crossing = m;
    } else {
        // δ must bind: split a minimum-degree vertex off.
        Vertex v = 0;
        for (Vertex u = 1; u < n; ++u)
            if (g.degree(u) < g.degree(v)) v = u;
        std::vector<int> labels(static_cast<std::size_t>(n), 0);
        labels[static_cast<std::size_t>(v)] = 1;
        result.certificate.partition = Partition::from_labels(labels);
        result.certificate.crossing = g.degree(v);
    }
    result.certificate.t = next;
    if (result.certificate.crossing >=
        result.certificate.t * (result.certificate.partition.size() - 1))
        throw std::logic_error("stp_number: trivial certificate failed revalidation");
    return result;
}

/// Tutte–Nash-Williams min-max by exhaustion: min over all partitions 𝒫 with
/// |𝒫| ≥ 2 of ⌊m(𝒫)/(|𝒫|−1)⌋. Oracle-scale only (Bell-number loop).
inline int brute_force_stp(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2) throw std::invalid_argument("brute_force_stp: need at least 2 vertices");
    if (n > 12) throw std::invalid_argument("brute_force_stp: n > 12 (oracle guard)");

    // Enumerate set partitions as restricted growth strings.
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    std::vector<int> maxi(static_cast<std::size_t>(n), 0);  // maxi[i] = max(label[0..i])
    long long best = std::numeric_limits<long long>::max();
    const auto& edges = g.edges();
    while (true) {
        const int classes = maxi[static_cast<std::size_t>(n - 1)] + 1;
        if (classes >= 2) {
            long long crossing = 0;
            for (const auto& e : edges)
                if (label[static_cast<std::size_t>(e.u)] != label[static_cast<std::size_t>(e.v)]) ++crossing;
            best = std::min(best, crossing / (classes - 1));
        }
        // Next restricted growth string.
        int i = n - 1;
        while (i > 0 && label[static_cast<std::size_t>(i)] == maxi[static_cast<std::size_t>(i - 1)] + 1) --i;
        if (i == 0) break;
        ++label[static_cast<std::size_t>(i)];
        maxi[static_cast<std::size_t>(i)] =
            std::max(maxi[static_cast<std::size_t>(i - 1)], label[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < n; ++j) {
            label[static_cast<std::size_t>(j)] = 0;
            maxi[static_cast<std::size_t>(j)] = maxi[static_cast<std::size_t>(j - 1)];
        }
    }
    return static_cast<int>(best);
}

/// Independent validity check for packings (never consults the engine):
/// all forests are spanning trees of g, pairwise edge-disjoint. On failure
/// writes a reason when `reason` is non-null.
inline bool verify_packing(const Graph& g, const ForestDecomposition& fd, std::string* reason = nullptr) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    if (fd.kind != ForestDecomposition::Kind::packing) return fail("decomposition kind is not packing");
    const int n = g.vertex_count();
    std::vector<Edge> all;
    for (std::size_t i = 0; i < fd.forests.size(); ++i) {
        const auto& tree = fd.forests[i];
        if (static_cast<int>(tree.size()) != n - 1)
            return fail("forest " + std::to_string(i) + " has " + std::to_string(tree.size()) +
                        " edges, expected n-1 = " + std::to_string(n - 1));
        Dsu dsu(n);
        for (const auto& raw : tree) {
            if (raw.u == raw.v || raw.u < 0 || raw.v >= n)
                return fail("forest " + std::to_string(i) + " contains an invalid edge");
            const Edge e = raw.u < raw.v ? raw : Edge{raw.v, raw.u};
            if (!g.has_edge(e.u, e.v))
                return fail("forest " + std::to_string(i) + " uses edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") not present in the graph");
            if (!dsu.unite(e.u, e.v))
                return fail("forest " + std::to_string(i) + " contains a cycle");
            all.push_back(e);
        }
        // n-1 acyclic edges on n vertices: spanning tree. No further check needed.
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        return fail("an edge appears in two forests");
    if (reason) reason->clear();
    return true;
}

}  // namespace treepack
