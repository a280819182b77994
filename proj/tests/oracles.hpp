#pragma once

// Brute-force enumeration oracles, deliberately independent of the
// library's generators: edge subsets of K_n filtered by explicit
// connectivity/acyclicity checks.

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "polygas/graphs.hpp"

namespace oracles {

using polygas::graphs::Edge;

inline std::vector<Edge> complete_graph_pairs(int n) {
    std::vector<Edge> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.push_back({i, j});
    return pairs;
}

struct Components {
    int count = 0;
    std::vector<int> label;  // 1-based vertices
    bool acyclic = true;
};

inline Components analyze(int n, const std::vector<Edge>& edges) {
    Components c;
    c.label.assign(n + 1, -1);
    std::vector<std::vector<int>> adj(n + 1);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    c.acyclic = static_cast<int>(edges.size()) <= n - 1;
    int labels = 0;
    for (int start = 1; start <= n; ++start) {
        if (c.label[start] != -1) continue;
        const int id = labels++;
        std::vector<int> stack{start};
        c.label[start] = id;
        int vertices_in = 0, edges_in = 0;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            ++vertices_in;
            for (int w : adj[v]) {
                ++edges_in;
                if (c.label[w] == -1) {
                    c.label[w] = id;
                    stack.push_back(w);
                }
            }
        }
        if (edges_in / 2 != vertices_in - 1) c.acyclic = false;
    }
    c.count = labels;
    return c;
}

inline std::string edge_key(const std::vector<Edge>& edges) {
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    std::string key;
    for (const auto& [a, b] : sorted) key += std::to_string(a) + "-" + std::to_string(b) + ";";
    return key;
}

inline std::set<std::string> trees_brute(int n) {
    std::set<std::string> out;
    if (n == 1) {
        out.insert("");
        return out;
    }
    const auto pairs = complete_graph_pairs(n);
    const int m = static_cast<int>(pairs.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<Edge> edges;
        for (int p = 0; p < m; ++p)
            if ((mask >> p) & 1u) edges.push_back(pairs[p]);
        if (static_cast<int>(edges.size()) != n - 1) continue;
        const Components c = analyze(n, edges);
        if (c.count == 1 && c.acyclic) out.insert(edge_key(edges));
    }
    return out;
}

// (forest, roots) pairs encoded as "edges|roots".
inline std::set<std::string> rooted_forests_brute(int n) {
    std::set<std::string> out;
    const auto pairs = complete_graph_pairs(n);
    const int m = static_cast<int>(pairs.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<Edge> edges;
        for (int p = 0; p < m; ++p)
            if ((mask >> p) & 1u) edges.push_back(pairs[p]);
        const Components c = analyze(n, edges);
        if (!c.acyclic) continue;
        for (unsigned roots = 0; roots < (1u << n); ++roots) {
            std::vector<int> per_component(c.count, 0);
            std::vector<int> root_list;
            for (int v = 1; v <= n; ++v)
                if ((roots >> (v - 1)) & 1u) {
                    ++per_component[c.label[v]];
                    root_list.push_back(v);
                }
            bool ok = true;
            for (int comp = 0; comp < c.count; ++comp)
                if (per_component[comp] != 1) ok = false;
            if (!ok) continue;
            std::string key = edge_key(edges) + "|";
            for (int r : root_list) key += std::to_string(r) + ",";
            out.insert(key);
        }
    }
    return out;
}

inline std::set<std::string> anchored_forests_brute(int n_anchors, int n_vertices) {
    std::set<std::string> out;
    const auto pairs = complete_graph_pairs(n_vertices);
    const int m = static_cast<int>(pairs.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<Edge> edges;
        for (int p = 0; p < m; ++p)
            if ((mask >> p) & 1u) edges.push_back(pairs[p]);
        const Components c = analyze(n_vertices, edges);
        if (!c.acyclic || c.count != n_anchors) continue;
        std::set<int> anchor_components;
        for (int a = 1; a <= n_anchors; ++a) anchor_components.insert(c.label[a]);
        if (static_cast<int>(anchor_components.size()) != n_anchors) continue;
        out.insert(edge_key(edges));
    }
    return out;
}

// Real solutions of s e^s = z by plain bisection (no Newton).
inline double lambert_bisect(double z, double lo, double hi) {
    auto f = [&](double s) { return s * std::exp(s) - z; };
    const bool rising = f(hi) > f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool below = f(mid) < 0.0;
        if (below == rising)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracles
