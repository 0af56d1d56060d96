#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

/// Disjoint-set union with path halving and union by size.
class Dsu {
public:
    explicit Dsu(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
        for (int i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
    }

    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
        parent_[static_cast<std::size_t>(b)] = a;
        size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
        return true;
    }

    void reset() {
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            parent_[i] = static_cast<int>(i);
            size_[i] = 1;
        }
    }

private:
    std::vector<int> parent_;
    std::vector<long long> size_;
};

/// Maintains k edge-disjoint forests over a growing ground set of edges —
/// matroid union for k copies of the graphic matroid. try_insert runs the
/// augmenting-chain search (breadth-first over the exchange structure: an
/// uncovered edge either fits some forest directly, or displaces an edge on
/// the tree path joining its endpoints, recursively). Failed searches merge
/// the spanned vertex sets into "clumps"; an edge inside one clump component
/// can never be inserted while the forest count stays fixed, so later
/// attempts skip the search. Certificates are recomputed from scratch by
/// closure_of_unused and revalidated by the callers, so the clump shortcut is
/// checked, not trusted.
class ForestUnion {
public:
    explicit ForestUnion(int n) : n_(n), clumps_(n) {
        if (n < 0) throw std::invalid_argument("ForestUnion: negative vertex count");
    }

    /// Appends an edge to the ground set (initially uncovered); returns its id.
    int add_edge(Edge e) {
        if (e.u < 0 || e.v >= n_ || e.u >= e.v)
            throw std::invalid_argument("ForestUnion: bad edge endpoints");
        edges_.push_back(e);
        owner_.push_back(-1);
        visit_stamp_.push_back(-1);
        pred_.push_back(-1);
        return static_cast<int>(edges_.size()) - 1;
    }

    /// Opens one more forest. Invalidates clumps (a wider union may cover
    /// previously hopeless edges).
    void add_forest() {
        ++k_;
        forests_state_.emplace_back(n_);
        rebuild_components(k_ - 1);
        clumps_.reset();
    }

    [[nodiscard]] int vertex_count() const { return n_; }
    [[nodiscard]] int forest_count() const { return k_; }
    [[nodiscard]] int ground_size() const { return static_cast<int>(edges_.size()); }
    [[nodiscard]] long long covered_count() const { return covered_; }
    [[nodiscard]] Edge edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }
    [[nodiscard]] int owner(int id) const { return owner_.at(static_cast<std::size_t>(id)); }

    [[nodiscard]] std::vector<std::vector<Edge>> forests() const {
        std::vector<std::vector<Edge>> out(static_cast<std::size_t>(k_));
        for (std::size_t id = 0; id < edges_.size(); ++id)
            if (owner_[id] >= 0) out[static_cast<std::size_t>(owner_[id])].push_back(edges_[id]);
        return out;
    }

    /// Attempts to cover edge `id` (no-op if already covered). Returns true on
    /// success. On failure the searched region is merged into the clumps.
    bool try_insert(int id) {
        if (id < 0 || static_cast<std::size_t>(id) >= edges_.size())
            throw std::invalid_argument("ForestUnion: edge id out of range");
        if (owner_[static_cast<std::size_t>(id)] != -1) return true;
        if (k_ == 0) return false;
        const Edge start = edges_[static_cast<std::size_t>(id)];
        if (clumps_.find(start.u) == clumps_.find(start.v)) return false;  // known hopeless

        ++epoch_;
        queue_.clear();
        queue_.push_back(id);
        visit_stamp_[static_cast<std::size_t>(id)] = epoch_;
        pred_[static_cast<std::size_t>(id)] = -1;

        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            const int x = queue_[qi];
            const Edge ex = edges_[static_cast<std::size_t>(x)];
            for (int f = 0; f < k_; ++f) {
                const auto& st = forests_state_[static_cast<std::size_t>(f)];
                if (st.comp[static_cast<std::size_t>(ex.u)] != st.comp[static_cast<std::size_t>(ex.v)]) {
                    apply_chain(x, f);
                    ++covered_;
                    return true;
                }
                label_tree_path(f, ex.u, ex.v, x);
            }
        }
        // Exhausted: everything searched is jointly saturated; remember it.
        for (int x : queue_) clumps_.unite(edges_[static_cast<std::size_t>(x)].u, edges_[static_cast<std::size_t>(x)].v);
        return false;
    }

    /// The closure A of all currently uncovered edges: every uncovered edge and
    /// every edge reachable from one through the exchange search, evaluated at
    /// the current state without mutating it. Standard matroid-union analysis
    /// gives, with c = number of components of (V, A): every forest restricted
    /// to A spans each component, so covered = k(n − c) + |E∖A|, which callers
    /// turn into Tutte-partition / Nash-Williams-set certificates. Throws
    /// logic_error if some uncovered edge turns out to be insertable (engine
    /// invariant violation — callers treat certificates as recomputed facts).
    struct Closure {
        std::vector<int> edge_ids;          // members of A
        std::vector<int> vertex_component;  // component label of (V, A) per vertex
        int component_count = 0;
    };

    [[nodiscard]] Closure closure_of_unused() const {
        std::vector<char> seen(edges_.size(), 0);
        Closure closure;
        std::vector<int> local_queue;
        for (std::size_t start = 0; start < edges_.size(); ++start) {
            if (owner_[start] != -1 || seen[start]) continue;
            local_queue.clear();
            local_queue.push_back(static_cast<int>(start));
            seen[start] = 1;
            for (std::size_t qi = 0; qi < local_queue.size(); ++qi) {
                const Edge ex = edges_[static_cast<std::size_t>(local_queue[qi])];
                for (int f = 0; f < k_; ++f) {
                    const auto& st = forests_state_[static_cast<std::size_t>(f)];
                    if (st.comp[static_cast<std::size_t>(ex.u)] != st.comp[static_cast<std::size_t>(ex.v)])
                        throw std::logic_error("ForestUnion: uncovered edge is insertable; clump state corrupt");
                    collect_tree_path(f, ex.u, ex.v, seen, local_queue);
                }
            }
            closure.edge_ids.insert(closure.edge_ids.end(), local_queue.begin(), local_queue.end());
        }

        Dsu comps(n_);
        for (int id : closure.edge_ids)
            comps.unite(edges_[static_cast<std::size_t>(id)].u, edges_[static_cast<std::size_t>(id)].v);
        closure.vertex_component.assign(static_cast<std::size_t>(n_), -1);
        for (Vertex v = 0; v < n_; ++v) {
            const int root = comps.find(v);
            if (closure.vertex_component[static_cast<std::size_t>(root)] == -1)
                closure.vertex_component[static_cast<std::size_t>(root)] = closure.component_count++;
            closure.vertex_component[static_cast<std::size_t>(v)] =
                closure.vertex_component[static_cast<std::size_t>(root)];
        }
        return closure;
    }

private:
    // One forest: tree adjacency plus a rooted view (parent pointers + depths)
    // so that tree-path walks cost O(path length) instead of a component BFS.
    struct ForestState {
        explicit ForestState(int n)
            : adj(static_cast<std::size_t>(n)),
              comp(static_cast<std::size_t>(n), -1),
              depth(static_cast<std::size_t>(n), 0),
              parent(static_cast<std::size_t>(n), -1),
              parent_edge(static_cast<std::size_t>(n), -1) {}
        std::vector<std::vector<std::pair<Vertex, int>>> adj;  // (other endpoint, edge id)
        std::vector<int> comp;                                 // component label per vertex
        std::vector<int> depth;                                // depth below the component root
        std::vector<Vertex> parent;                            // parent vertex (-1 at roots)
        std::vector<int> parent_edge;                          // edge id to parent (-1 at roots)
    };

    void forest_add(int f, int id) {
        const Edge e = edges_[static_cast<std::size_t>(id)];
        auto& st = forests_state_[static_cast<std::size_t>(f)];
        st.adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, id);
        st.adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, id);
    }

    void forest_remove(int f, int id) {
        const Edge e = edges_[static_cast<std::size_t>(id)];
        auto drop = [&](Vertex at) {
            auto& list = forests_state_[static_cast<std::size_t>(f)].adj[static_cast<std::size_t>(at)];
            const auto it = std::find_if(list.begin(), list.end(),
                                         [&](const auto& entry) { return entry.second == id; });
            list.erase(it);
        };
        drop(e.u);
        drop(e.v);
    }

    /// Resolves the augmenting chain ending at edge `last`, which enters
    /// forest `dest`; each predecessor takes the slot its successor vacated.
    void apply_chain(int last, int dest) {
        std::vector<int> touched;
        int cur = last;
        while (cur != -1) {
            const int src = owner_[static_cast<std::size_t>(cur)];
            if (src != -1) forest_remove(src, cur);
            forest_add(dest, cur);
            owner_[static_cast<std::size_t>(cur)] = dest;
            touched.push_back(dest);
            if (src != -1) touched.push_back(src);
            cur = pred_[static_cast<std::size_t>(cur)];
            dest = src;
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (int f : touched) rebuild_components(f);
    }

    void rebuild_components(int f) {
        auto& st = forests_state_[static_cast<std::size_t>(f)];
        std::fill(st.comp.begin(), st.comp.end(), -1);
        int label = 0;
        std::vector<Vertex> queue;
        for (Vertex s = 0; s < n_; ++s) {
            if (st.comp[static_cast<std::size_t>(s)] != -1) continue;
            st.comp[static_cast<std::size_t>(s)] = label;
            st.depth[static_cast<std::size_t>(s)] = 0;
            st.parent[static_cast<std::size_t>(s)] = -1;
            st.parent_edge[static_cast<std::size_t>(s)] = -1;
            queue.clear();
            queue.push_back(s);
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                const Vertex v = queue[qi];
                for (const auto& [w, id] : st.adj[static_cast<std::size_t>(v)]) {
                    if (st.comp[static_cast<std::size_t>(w)] != -1) continue;
                    st.comp[static_cast<std::size_t>(w)] = label;
                    st.depth[static_cast<std::size_t>(w)] = st.depth[static_cast<std::size_t>(v)] + 1;
                    st.parent[static_cast<std::size_t>(w)] = v;
                    st.parent_edge[static_cast<std::size_t>(w)] = id;
                    queue.push_back(w);
                }
            }
            ++label;
        }
    }

    /// Walks the (unique) a–b path in forest f; labels unvisited path edges
    /// with predecessor `cause` and enqueues them.
    void label_tree_path(int f, Vertex a, Vertex b, int cause) {
        walk_tree_path(f, a, b, [&](int id) {
            if (visit_stamp_[static_cast<std::size_t>(id)] != epoch_) {
                visit_stamp_[static_cast<std::size_t>(id)] = epoch_;
                pred_[static_cast<std::size_t>(id)] = cause;
                queue_.push_back(id);
            }
        });
    }

    void collect_tree_path(int f, Vertex a, Vertex b, std::vector<char>& seen,
                           std::vector<int>& out) const {
        walk_tree_path(f, a, b, [&](int id) {
            if (!seen[static_cast<std::size_t>(id)]) {
                seen[static_cast<std::size_t>(id)] = 1;
                out.push_back(id);
            }
        });
    }

    /// Applies fn to every edge id on the unique a–b path in forest f (same
    /// component by caller contract) by climbing parent pointers from the
    /// deeper endpoint — O(path length), never scans adjacency.
    template <typename Fn>
    void walk_tree_path(int f, Vertex a, Vertex b, Fn&& fn) const {
        const auto& st = forests_state_[static_cast<std::size_t>(f)];
        while (a != b) {
            const bool lift_a = st.depth[static_cast<std::size_t>(a)] >= st.depth[static_cast<std::size_t>(b)];
            Vertex& side = lift_a ? a : b;
            const int up = st.parent_edge[static_cast<std::size_t>(side)];
            if (up < 0) throw std::logic_error("ForestUnion: endpoints not connected in forest during path walk");
            fn(up);
            side = st.parent[static_cast<std::size_t>(side)];
        }
    }

    int n_;
    int k_ = 0;
    long long covered_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> owner_;                 // forest index per edge, -1 = uncovered
    std::vector<ForestState> forests_state_;  // one rooted forest per index

    Dsu clumps_;

    // try_insert scratch (epoch-stamped, cleared lazily)
    int epoch_ = 0;
    std::vector<int> visit_stamp_;  // per edge
    std::vector<int> pred_;         // per edge: the edge that labeled it
    std::vector<int> queue_;
};

}  // namespace treepack
