#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace treepack {

struct MinCutResult {
    long long weight = 0;
    // side[v] == 1 for vertices on one shore of an optimal cut (never empty,
    // never all of V).
    std::vector<char> side;
};

/// Global minimum cut of an undirected weighted graph (Stoer–Wagner, O(n^3)),
/// returning the cut weight together with one shore of an optimal cut.
/// `weights` is a symmetric n×n matrix (diagonal ignored); a disconnected
/// graph yields weight 0 with one component as the shore.
inline MinCutResult stoer_wagner_min_cut_side(std::vector<std::vector<long long>> weights) {
    const std::size_t n = weights.size();
    if (n < 2) throw std::invalid_argument("stoer_wagner_min_cut_side: need at least 2 vertices");
    for (const auto& row : weights)
        if (row.size() != n) throw std::invalid_argument("stoer_wagner_min_cut_side: matrix not square");

    std::vector<int> active(n);
    std::vector<std::vector<int>> group(n);  // original vertices inside each supervertex
    for (std::size_t i = 0; i < n; ++i) {
        active[i] = static_cast<int>(i);
        group[i] = {static_cast<int>(i)};
    }

    MinCutResult best;
    best.weight = std::numeric_limits<long long>::max();
    std::vector<long long> w(n);
    std::vector<char> added(n);

    while (active.size() > 1) {
        // Maximum-adjacency ordering of the currently-active supervertices.
        std::fill(w.begin(), w.end(), 0);
        std::fill(added.begin(), added.end(), 0);
        int prev = -1, last = -1;
        for (std::size_t step = 0; step < active.size(); ++step) {
            int pick = -1;
            for (int v : active)
                if (!added[v] && (pick == -1 || w[v] > w[pick])) pick = v;
            added[pick] = 1;
            prev = last;
            last = pick;
            if (step + 1 == active.size()) {
                // Cut of the phase: group[last] versus everything else.
                if (w[pick] < best.weight) {
                    best.weight = w[pick];
                    best.side.assign(n, 0);
                    for (int u : group[last]) best.side[static_cast<std::size_t>(u)] = 1;
                }
                break;
            }
            for (int v : active)
                if (!added[v]) w[v] += weights[pick][v];
        }
        // Merge the last two vertices of the ordering.
        for (int v : active) {
            if (v == prev || v == last) continue;
            weights[prev][v] += weights[last][v];
            weights[v][prev] = weights[prev][v];
        }
        group[prev].insert(group[prev].end(), group[last].begin(), group[last].end());
        group[last].clear();
        active.erase(std::find(active.begin(), active.end(), last));
    }
    return best;
}

/// Global minimum cut weight only (0 when the graph is disconnected).
inline long long stoer_wagner_min_cut(std::vector<std::vector<long long>> weights) {
    return stoer_wagner_min_cut_side(std::move(weights)).weight;
}

}  // namespace treepack
