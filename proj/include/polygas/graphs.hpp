#pragma once

// Enumeration of the combinatorial skeletons summed over by the tree and
// forest integrals: labeled trees, rooted forests (one root per tree),
// forests anchored at designated vertices, plus a Matrix-Tree counter.
// Vertex labels are 1-based throughout.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "polygas/errors.hpp"

namespace polygas::graphs {

using Edge = std::pair<int, int>;  // normalized: first < second

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct LabeledTree {
    int n_vertices = 0;
    std::vector<Edge> edges;  // exactly n_vertices - 1, sorted
};

struct RootedForest {
    int n_vertices = 0;
    std::vector<Edge> edges;
    std::vector<int> roots;  // one per component, sorted ascending
};

struct AnchoredForest {
    int n_anchors = 0;
    int n_vertices = 0;      // anchors are vertices 1..n_anchors
    std::vector<Edge> edges; // exactly n_vertices - n_anchors of them
};

inline constexpr int default_vertex_cap = 9;

namespace detail {

inline void check_cap(int n, int cap, const char* op) {
    if (n < 1)
        throw std::invalid_argument(std::string(op) + ": vertex count must be positive");
    if (n > cap)
        throw size_error(std::string(op) + ": " + std::to_string(n) +
                         " vertices exceeds cap " + std::to_string(cap));
}

// Union-find over 1..n, used for acyclicity checks.
class DisjointSet {
public:
    explicit DisjointSet(int n) : parent_(n + 1) {
        for (int i = 0; i <= n; ++i) parent_[i] = i;
    }
    int find(int v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::vector<int> parent_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Prüfer bijection

inline LabeledTree prufer_decode(const std::vector<int>& code) {
    const int n = static_cast<int>(code.size()) + 2;
    for (int c : code)
        if (c < 1 || c > n) throw std::invalid_argument("prufer_decode: entry out of range");
    std::vector<int> degree(n + 1, 1);
    for (int c : code) ++degree[c];

    LabeledTree tree;
    tree.n_vertices = n;
    tree.edges.reserve(n - 1);

    // Standard linear-time decode: repeatedly attach the smallest leaf.
    int ptr = 1;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int c : code) {
        tree.edges.push_back(make_edge(leaf, c));
        if (--degree[c] == 1 && c < ptr) {
            leaf = c;
        } else {
            ++ptr;
            while (ptr <= n && degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    tree.edges.push_back(make_edge(leaf, n));
    std::sort(tree.edges.begin(), tree.edges.end());
    return tree;
}

inline std::vector<int> prufer_encode(const LabeledTree& tree) {
    const int n = tree.n_vertices;
    if (n < 1) throw std::invalid_argument("prufer_encode: empty tree");
    if (static_cast<int>(tree.edges.size()) != n - 1)
        throw std::invalid_argument("prufer_encode: tree must have n-1 edges");
    if (n <= 2) return {};

    std::vector<std::vector<int>> adj(n + 1);
    for (const auto& [a, b] : tree.edges) {
        if (a < 1 || b > n) throw std::invalid_argument("prufer_encode: vertex out of range");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> degree(n + 1);
    for (int v = 1; v <= n; ++v) degree[v] = static_cast<int>(adj[v].size());
    std::vector<bool> removed(n + 1, false);

    std::vector<int> code;
    code.reserve(n - 2);
    int ptr = 1;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int step = 0; step < n - 2; ++step) {
        int neighbor = -1;
        for (int w : adj[leaf])
            if (!removed[w]) neighbor = w;
        code.push_back(neighbor);
        removed[leaf] = true;
        if (--degree[neighbor] == 1 && neighbor < ptr) {
            leaf = neighbor;
        } else {
            ++ptr;
            while (ptr <= n && (degree[ptr] != 1 || removed[ptr])) ++ptr;
            leaf = ptr;
        }
    }
    return code;
}

// ---------------------------------------------------------------------------
// Enumerations. Order is deterministic: lexicographic in the underlying
// Prüfer code (trees, rooted forests) or parent vector (anchored forests).

template <class Fn>
void for_each_tree(int n, Fn&& fn, int cap = default_vertex_cap) {
    detail::check_cap(n, cap, "enumerate_trees");
    if (n == 1) {
        fn(LabeledTree{1, {}});
        return;
    }
    if (n == 2) {
        fn(LabeledTree{2, {make_edge(1, 2)}});
        return;
    }
    std::vector<int> code(n - 2, 1);
    while (true) {
        fn(prufer_decode(code));
        int i = n - 3;
        while (i >= 0 && code[i] == n) {
            code[i] = 1;
            --i;
        }
        if (i < 0) break;
        ++code[i];
    }
}

inline std::vector<LabeledTree> enumerate_trees(int n, int cap = default_vertex_cap) {
    std::vector<LabeledTree> out;
    for_each_tree(n, [&](LabeledTree t) { out.push_back(std::move(t)); }, cap);
    return out;
}

// Rooted forests on {1..n} via the Cayley bijection: a tree on {1..n+1}
// maps to a forest by deleting vertex n+1; its neighbors become the roots.
template <class Fn>
void for_each_rooted_forest(int n, Fn&& fn, int cap = default_vertex_cap) {
    detail::check_cap(n, cap, "enumerate_rooted_forests");
    const int aux = n + 1;
    for_each_tree(
        aux,
        [&](const LabeledTree& t) {
            RootedForest f;
            f.n_vertices = n;
            for (const auto& [a, b] : t.edges) {
                if (b == aux)
                    f.roots.push_back(a);
                else
                    f.edges.push_back(Edge{a, b});
            }
            std::sort(f.roots.begin(), f.roots.end());
            fn(std::move(f));
        },
        cap + 1);
}

inline std::vector<RootedForest> enumerate_rooted_forests(int n, int cap = default_vertex_cap) {
    std::vector<RootedForest> out;
    for_each_rooted_forest(n, [&](RootedForest f) { out.push_back(std::move(f)); }, cap);
    return out;
}

// Forests on {1..n_vertices} with exactly n_anchors components, component i
// containing vertex i. Oriented toward the anchors, such a forest is a
// parent assignment for each non-anchor vertex whose iteration terminates;
// we enumerate assignments and keep the acyclic ones (each forest appears
// exactly once).
template <class Fn>
void for_each_anchored_forest(int n_anchors, int n_vertices, Fn&& fn,
                              int cap = default_vertex_cap) {
    if (n_anchors < 1) throw std::invalid_argument("enumerate_anchored_forests: need n_anchors >= 1");
    if (n_anchors > n_vertices)
        throw std::invalid_argument("enumerate_anchored_forests: n_anchors > n_vertices");
    detail::check_cap(n_vertices, cap, "enumerate_anchored_forests");

    const int free_count = n_vertices - n_anchors;
    if (free_count == 0) {
        fn(AnchoredForest{n_anchors, n_vertices, {}});
        return;
    }
    std::vector<int> parent(n_vertices + 1, 0);
    std::function<void(int)> rec = [&](int v) {
        if (v > n_vertices) {
            // Check every free vertex reaches an anchor (no cycles among free).
            for (int s = n_anchors + 1; s <= n_vertices; ++s) {
                int cur = s;
                int hops = 0;
                while (cur > n_anchors) {
                    cur = parent[cur];
                    if (++hops > n_vertices) return;  // cycle
                }
            }
            AnchoredForest f;
            f.n_anchors = n_anchors;
            f.n_vertices = n_vertices;
            for (int s = n_anchors + 1; s <= n_vertices; ++s)
                f.edges.push_back(make_edge(s, parent[s]));
            std::sort(f.edges.begin(), f.edges.end());
            fn(std::move(f));
            return;
        }
        for (int p = 1; p <= n_vertices; ++p) {
            if (p == v) continue;
            parent[v] = p;
            rec(v + 1);
        }
    };
    rec(n_anchors + 1);
}

inline std::vector<AnchoredForest> enumerate_anchored_forests(int n_anchors, int n_vertices,
                                                              int cap = default_vertex_cap) {
    std::vector<AnchoredForest> out;
    for_each_anchored_forest(n_anchors, n_vertices,
                             [&](AnchoredForest f) { out.push_back(std::move(f)); }, cap);
    return out;
}

// ---------------------------------------------------------------------------
// Matrix-Tree spanning tree count, exact integer arithmetic (Bareiss
// fraction-free elimination on a Laplacian minor).

inline std::int64_t spanning_tree_count(const std::vector<std::vector<int>>& adjacency) {
    const int n = static_cast<int>(adjacency.size());
    if (n == 0) throw std::invalid_argument("spanning_tree_count: empty matrix");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(adjacency[i].size()) != n)
            throw std::invalid_argument("spanning_tree_count: matrix not square");
        if (adjacency[i][i] != 0)
            throw std::invalid_argument("spanning_tree_count: nonzero diagonal");
        for (int j = 0; j < n; ++j) {
            if (adjacency[i][j] != adjacency[j][i])
                throw std::invalid_argument("spanning_tree_count: matrix not symmetric");
            if (adjacency[i][j] != 0 && adjacency[i][j] != 1)
                throw std::invalid_argument("spanning_tree_count: entries must be 0/1");
        }
    }
    if (n == 1) return 1;

    const int m = n - 1;  // Laplacian minor (drop last row/column)
    std::vector<std::vector<std::int64_t>> a(m, std::vector<std::int64_t>(m, 0));
    for (int i = 0; i < m; ++i) {
        std::int64_t deg = 0;
        for (int j = 0; j < n; ++j) deg += adjacency[i][j];
        for (int j = 0; j < m; ++j) a[i][j] = (i == j) ? deg : -adjacency[i][j];
    }

    std::int64_t prev = 1;
    std::int64_t sign = 1;
    for (int k = 0; k < m - 1; ++k) {
        if (a[k][k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < m; ++r)
                if (a[r][k] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row == -1) return 0;  // singular: disconnected graph
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i)
            for (int j = k + 1; j < m; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[m - 1][m - 1];
}

}  // namespace polygas::graphs
