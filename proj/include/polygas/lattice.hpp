#pragma once

// Lattice branched polymers on Z^d, counted two independent ways:
//
//   tree-sum: (1/N!) sum over labeled trees and unit-step edge assignments,
//             rejecting coinciding vertices (depth-first with early
//             pruning); the raw total is always divisible by N!.
//   direct:   enumerate translation-normalized connected N-site sets
//             (lexicographically smallest site at the origin) and sum the
//             spanning-tree count of each unit-distance adjacency graph.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "polygas/errors.hpp"
#include "polygas/graphs.hpp"

namespace polygas::lattice {

struct LatticePolymerCount {
    int d = 2;
    int n = 1;
    unsigned long long count = 0;
    const char* method = "";
};

namespace detail {

using Cell = std::array<int, 4>;

inline void check_caps(int d, int n) {
    if (d < 1 || d > 4) throw std::invalid_argument("lattice count: d must be 1..4");
    if (n < 1) throw std::invalid_argument("lattice count: N must be >= 1");
    const int cap = d == 2 ? 8 : (d == 3 ? 7 : 6);
    if (n > cap) throw size_error("lattice count: N exceeds cap for this dimension");
}

}  // namespace detail

inline LatticePolymerCount count_tree_sum(int d, int n) {
    detail::check_caps(d, n);
    if (n == 1) return {d, n, 1, "tree-sum"};

    // Unit steps +-e_k in a fixed order.
    std::vector<detail::Cell> steps;
    for (int k = 0; k < d; ++k)
        for (int sgn : {+1, -1}) {
            detail::Cell s{};
            s[static_cast<std::size_t>(k)] = sgn;
            steps.push_back(s);
        }

    unsigned long long raw = 0;
    graphs::for_each_tree(n, [&](const graphs::LabeledTree& tree) {
        // BFS edge order from vertex 1 so each step places a new vertex.
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
        for (const auto& [a, b] : tree.edges) {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        std::vector<std::pair<int, int>> order;  // (parent, child)
        std::vector<int> queue{1};
        std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
        seen[1] = true;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (int w : adj[static_cast<std::size_t>(queue[head])])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    order.emplace_back(queue[head], w);
                    queue.push_back(w);
                }

        std::vector<detail::Cell> pos(static_cast<std::size_t>(n) + 1, detail::Cell{});
        std::vector<int> placed{1};

        auto rec = [&](auto&& self, std::size_t edge_idx) -> void {
            if (edge_idx == order.size()) {
                ++raw;
                return;
            }
            const auto [parent, child] = order[edge_idx];
            for (const detail::Cell& step : steps) {
                detail::Cell p = pos[static_cast<std::size_t>(parent)];
                for (int k = 0; k < d; ++k)
                    p[static_cast<std::size_t>(k)] += step[static_cast<std::size_t>(k)];
                bool coincides = false;
                for (int v : placed)
                    if (pos[static_cast<std::size_t>(v)] == p) {
                        coincides = true;
                        break;
                    }
                if (coincides) continue;
                pos[static_cast<std::size_t>(child)] = p;
                placed.push_back(child);
                self(self, edge_idx + 1);
                placed.pop_back();
            }
        };
        rec(rec, 0);
    });

    unsigned long long fact = 1;
    for (int k = 2; k <= n; ++k) fact *= static_cast<unsigned long long>(k);
    if (raw % fact != 0)
        throw std::logic_error("count_tree_sum: total not divisible by N!");
    return {d, n, raw / fact, "tree-sum"};
}

// Raw assignment total before dividing by N! (exposed for the divisibility
// property test).
inline unsigned long long tree_sum_raw(int d, int n) {
    const LatticePolymerCount c = count_tree_sum(d, n);
    unsigned long long fact = 1;
    for (int k = 2; k <= n; ++k) fact *= static_cast<unsigned long long>(k);
    return c.count * fact;
}

inline LatticePolymerCount count_direct(int d, int n) {
    detail::check_caps(d, n);

    using Cell = detail::Cell;
    using Shape = std::vector<Cell>;  // sorted, lex-min cell at the origin

    auto canonical = [&](Shape s) {
        std::sort(s.begin(), s.end());
        const Cell base = s.front();
        for (Cell& c : s)
            for (int k = 0; k < d; ++k)
                c[static_cast<std::size_t>(k)] -= base[static_cast<std::size_t>(k)];
        return s;
    };

    std::vector<Shape> current{Shape{Cell{}}};
    for (int size = 1; size < n; ++size) {
        std::vector<Shape> next;
        std::map<Shape, bool> seen;
        for (const Shape& s : current) {
            for (const Cell& c : s) {
                for (int k = 0; k < d; ++k)
                    for (int sgn : {+1, -1}) {
                        Cell nb = c;
                        nb[static_cast<std::size_t>(k)] += sgn;
                        if (std::find(s.begin(), s.end(), nb) != s.end()) continue;
                        Shape grown = s;
                        grown.push_back(nb);
                        grown = canonical(std::move(grown));
                        if (!seen.emplace(grown, true).second) continue;
                        next.push_back(grown);
                    }
            }
        }
        current = std::move(next);
    }

    unsigned long long total = 0;
    for (const Shape& s : current) {
        const int m = static_cast<int>(s.size());
        std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(m),
                                                std::vector<int>(static_cast<std::size_t>(m), 0));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                int dist = 0;
                for (int k = 0; k < d; ++k)
                    dist += std::abs(s[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -
                                     s[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
                if (dist == 1) {
                    adjacency[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
                    adjacency[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
                }
            }
        total += static_cast<unsigned long long>(graphs::spanning_tree_count(adjacency));
    }
    return {d, n, total, "direct"};
}

}  // namespace polygas::lattice
