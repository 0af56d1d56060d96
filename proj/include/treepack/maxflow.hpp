#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace treepack {

/// Dinic max-flow on a directed network with int64 capacities. Node count is
/// fixed at construction; arcs are added with their reverse arcs paired.
class MaxFlow {
public:
    static constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

    explicit MaxFlow(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {
        if (nodes <= 0) throw std::invalid_argument("MaxFlow: need at least one node");
    }

    /// Adds arc from→to with the given capacity (reverse capacity 0).
    void add_arc(int from, int to, long long capacity) {
        check_node(from);
        check_node(to);
        if (capacity < 0) throw std::invalid_argument("MaxFlow: negative capacity");
        arcs_.push_back({to, head_[static_cast<std::size_t>(from)], capacity});
        head_[static_cast<std::size_t>(from)] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, head_[static_cast<std::size_t>(to)], 0});
        head_[static_cast<std::size_t>(to)] = static_cast<int>(arcs_.size()) - 1;
    }

    long long run(int source, int sink) {
        check_node(source);
        check_node(sink);
        if (source == sink) throw std::invalid_argument("MaxFlow: source equals sink");
        long long total = 0;
        while (build_levels(source, sink)) {
            cursor_ = head_;
            long long pushed;
            while ((pushed = push(source, sink, kInf)) > 0) total += pushed;
        }
        return total;
    }

    /// After run(): nodes still reachable from the source in the residual
    /// network (the source side of a minimum cut).
    [[nodiscard]] std::vector<char> min_cut_source_side(int source) const {
        std::vector<char> seen(head_.size(), 0);
        std::vector<int> stack{source};
        seen[static_cast<std::size_t>(source)] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int a = head_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
                const auto& arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.capacity > 0 && !seen[static_cast<std::size_t>(arc.to)]) {
                    seen[static_cast<std::size_t>(arc.to)] = 1;
                    stack.push_back(arc.to);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        int to;
        int next;
        long long capacity;
    };

    void check_node(int v) const {
        if (v < 0 || static_cast<std::size_t>(v) >= head_.size())
            throw std::invalid_argument("MaxFlow: node out of range");
    }

    bool build_levels(int source, int sink) {
        level_.assign(head_.size(), -1);
        level_[static_cast<std::size_t>(source)] = 0;
        queue_.clear();
        queue_.push_back(source);
        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            const int v = queue_[qi];
            for (int a = head_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
                const auto& arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.capacity > 0 && level_[static_cast<std::size_t>(arc.to)] == -1) {
                    level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(v)] + 1;
                    queue_.push_back(arc.to);
                }
            }
        }
        return level_[static_cast<std::size_t>(sink)] != -1;
    }

    long long push(int v, int sink, long long limit) {
        if (v == sink) return limit;
        for (int& a = cursor_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
            auto& arc = arcs_[static_cast<std::size_t>(a)];
            if (arc.capacity <= 0 || level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(v)] + 1)
                continue;
            const long long pushed = push(arc.to, sink, std::min(limit, arc.capacity));
            if (pushed > 0) {
                arc.capacity -= pushed;
                arcs_[static_cast<std::size_t>(a ^ 1)].capacity += pushed;
                return pushed;
            }
        }
        level_[static_cast<std::size_t>(v)] = -1;  // dead end; prune
        return 0;
    }

    std::vector<int> head_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<int> cursor_;
    std::vector<int> queue_;
};

}  // namespace treepack
