#pragma once

// Vertex-labeled trees on an arbitrary finite label set, the Pruefer codec for
// Cayley trees on {1..n}, exhaustive enumeration, reproducible uniform
// sampling, and the statistics deg_i, L_i and deg'_2.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "json.hpp"
#include "rng.hpp"

namespace mfact {

using Edge = std::pair<int, int>;

class VertexTree {
public:
    VertexTree() = default;

    /// Builds and validates a tree: distinct positive labels, |labels|-1
    /// edges between known labels, connected.
    VertexTree(std::vector<int> labels, const std::vector<Edge>& edges)
        : labels_(std::move(labels))
    {
        std::sort(labels_.begin(), labels_.end());
        if (labels_.empty())
            throw validation_error("tree needs at least one vertex");
        if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
            throw validation_error("tree labels must be distinct");
        if (labels_.front() < 1)
            throw validation_error("tree labels must be positive");
        if (edges.size() + 1 != labels_.size())
            throw validation_error("a tree on " + std::to_string(labels_.size()) + " vertices has " +
                                   std::to_string(labels_.size() - 1) + " edges, got " +
                                   std::to_string(edges.size()));
        adj_.assign(labels_.size(), {});
        for (auto [u, v] : edges) {
            if (u == v)
                throw validation_error("self-loop at " + std::to_string(u));
            adj_[index_of(u)].push_back(v);
            adj_[index_of(v)].push_back(u);
        }
        for (auto& a : adj_) {
            std::sort(a.begin(), a.end());
            if (std::adjacent_find(a.begin(), a.end()) != a.end())
                throw validation_error("repeated edge");
        }
        // connectivity
        std::vector<char> seen(labels_.size(), 0);
        std::vector<int> stack{labels_.front()};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj_[index_of(v)]) {
                auto iw = index_of(w);
                if (!seen[iw]) {
                    seen[iw] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != labels_.size())
            throw validation_error("edges do not form a tree (disconnected)");
    }

    /// Tree on {1..n} from an edge list.
    static VertexTree on_range(int n, const std::vector<Edge>& edges)
    {
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i)
            labels[i] = i + 1;
        return VertexTree(std::move(labels), edges);
    }

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<int>& labels() const noexcept { return labels_; }
    bool has(int label) const { return std::binary_search(labels_.begin(), labels_.end(), label); }

    /// Sorted neighbor labels.
    const std::vector<int>& neighbors(int label) const { return adj_[index_of(label)]; }

    /// True iff the label set is exactly {1..n}.
    bool is_cayley() const noexcept { return labels_.front() == 1 && labels_.back() == static_cast<int>(size()); }

    /// Edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(size() - 1);
        for (std::size_t i = 0; i < size(); ++i)
            for (int w : adj_[i])
                if (labels_[i] < w)
                    out.emplace_back(labels_[i], w);
        return out;
    }

    bool operator==(const VertexTree& other) const = default;

private:
    std::size_t index_of(int label) const
    {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
        if (it == labels_.end() || *it != label)
            throw validation_error("label " + std::to_string(label) + " is not a vertex of the tree");
        return static_cast<std::size_t>(it - labels_.begin());
    }

    std::vector<int> labels_;
    std::vector<std::vector<int>> adj_;
};

struct PruferSeq {
    int n = 2;
    std::vector<int> seq;

    bool operator==(const PruferSeq&) const = default;
};

namespace detail {

inline void check_prufer(int n, std::span<const int> seq)
{
    if (n < 2)
        throw validation_error("Pruefer sequence needs n >= 2");
    if (static_cast<int>(seq.size()) != n - 2)
        throw validation_error("Pruefer sequence for n=" + std::to_string(n) + " has " + std::to_string(n - 2) +
                               " entries, got " + std::to_string(seq.size()));
    for (int v : seq)
        if (v < 1 || v > n)
            throw validation_error("Pruefer entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
}

/// Linear-time decoding; emit(u, v) is called once per edge. `degree` is
/// scratch of size n+1.
template <typename Emit>
void decode_prufer_edges(int n, std::span<const int> seq, std::vector<int>& degree, Emit&& emit)
{
    degree.assign(n + 1, 1);
    for (int v : seq)
        ++degree[v];
    int ptr = 1;
    while (degree[ptr] != 1)
        ++ptr;
    int leaf = ptr;
    for (int v : seq) {
        emit(leaf, v);
        if (--degree[v] == 1 && v < ptr) {
            leaf = v;
        } else {
            ++ptr;
            while (degree[ptr] != 1)
                ++ptr;
            leaf = ptr;
        }
    }
    emit(leaf, n);
}

} // namespace detail

inline VertexTree prufer_decode(const PruferSeq& p)
{
    detail::check_prufer(p.n, p.seq);
    std::vector<Edge> edges;
    edges.reserve(p.n - 1);
    std::vector<int> degree;
    detail::decode_prufer_edges(p.n, p.seq, degree, [&](int u, int v) { edges.emplace_back(u, v); });
    return VertexTree::on_range(p.n, edges);
}

inline PruferSeq prufer_encode(const VertexTree& t)
{
    if (!t.is_cayley())
        throw validation_error("Pruefer encoding needs the label set {1..n}");
    const int n = static_cast<int>(t.size());
    if (n < 2)
        throw validation_error("Pruefer encoding needs n >= 2");

    // parent pointers towards n
    std::vector<int> parent(n + 1, 0);
    std::vector<int> stack{n};
    parent[n] = -1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : t.neighbors(v))
            if (w != parent[v]) {
                parent[w] = v;
                stack.push_back(w);
            }
    }
    std::vector<int> degree(n + 1);
    for (int v = 1; v <= n; ++v)
        degree[v] = static_cast<int>(t.neighbors(v).size());

    PruferSeq out{n, std::vector<int>(n - 2)};
    int ptr = 1;
    while (degree[ptr] != 1)
        ++ptr;
    int leaf = ptr;
    for (int i = 0; i < n - 2; ++i) {
        int next = parent[leaf];
        out.seq[i] = next;
        if (--degree[next] == 1 && next < ptr) {
            leaf = next;
        } else {
            ++ptr;
            while (degree[ptr] != 1)
                ++ptr;
            leaf = ptr;
        }
    }
    return out;
}

inline constexpr int max_enumerated_tree_size = 9;

/// n^(n-2), the number of Cayley trees on n vertices (1 for n = 1, 2).
inline std::uint64_t cayley_count(int n)
{
    std::uint64_t c = 1;
    for (int i = 0; i < n - 2; ++i)
        c *= static_cast<std::uint64_t>(n);
    return c;
}

/// Visits the Pruefer sequences with lexicographic rank in [begin, end).
template <typename Visit>
void for_each_prufer(int n, std::uint64_t begin, std::uint64_t end, Visit&& visit)
{
    detail::require_cap(n, 2, max_enumerated_tree_size, "enumerate_trees", "use sampling for n > 9");
    end = std::min(end, cayley_count(n));
    if (begin >= end)
        return;
    std::vector<int> seq(n - 2);
    std::uint64_t r = begin;
    for (int i = n - 3; i >= 0; --i) {
        seq[i] = static_cast<int>(r % n) + 1;
        r /= n;
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
        visit(std::span<const int>(seq));
        for (int i = n - 3; i >= 0; --i) {
            if (seq[i] < n) {
                ++seq[i];
                break;
            }
            seq[i] = 1;
        }
    }
}

inline void for_each_tree(int n, const std::function<void(const VertexTree&)>& visit)
{
    for_each_prufer(n, 0, cayley_count(n), [&](std::span<const int> s) {
        visit(prufer_decode(PruferSeq{n, std::vector<int>(s.begin(), s.end())}));
    });
}

/// All n^(n-2) Cayley trees, in lexicographic order of their Pruefer sequences.
inline std::vector<VertexTree> enumerate_trees(int n)
{
    detail::require_cap(n, 2, max_enumerated_tree_size, "enumerate_trees", "use sampling for n > 9");
    std::vector<VertexTree> out;
    out.reserve(cayley_count(n));
    for_each_tree(n, [&](const VertexTree& t) { out.push_back(t); });
    return out;
}

/// Pruefer entries for sample `index` under `seed`.
inline PruferSeq sample_prufer(int n, std::uint64_t seed, std::uint64_t index)
{
    if (n < 2)
        throw validation_error("sample_tree needs n >= 2");
    Philox4x32 rng(seed, index);
    PruferSeq p{n, std::vector<int>(n - 2)};
    for (auto& v : p.seq)
        v = static_cast<int>(rng.uniform(static_cast<std::uint32_t>(n))) + 1;
    return p;
}

/// Uniform Cayley tree determined entirely by (n, seed, index).
inline VertexTree sample_tree(int n, std::uint64_t seed, std::uint64_t index)
{
    return prufer_decode(sample_prufer(n, seed, index));
}

inline int degree(const VertexTree& t, int i) { return static_cast<int>(t.neighbors(i).size()); }

/// Greedy increasing path from i: repeatedly step to the smallest neighbor
/// larger than the current vertex. The start vertex is not included.
inline std::vector<int> l_path(const VertexTree& t, int i)
{
    std::vector<int> path;
    int cur = i;
    for (;;) {
        const auto& nb = t.neighbors(cur);
        auto it = std::upper_bound(nb.begin(), nb.end(), cur);
        if (it == nb.end())
            break;
        cur = *it;
        path.push_back(cur);
    }
    return path;
}

/// Degree of the last vertex of L_1(t).
inline int deg2_prime(const VertexTree& t)
{
    if (t.size() < 2)
        throw validation_error("deg2_prime needs a tree with at least 2 vertices");
    // Any neighbour of the smallest label is larger, so the path is non-empty.
    auto path = l_path(t, 1);
    return degree(t, path.back());
}

/// The four statistics collected by the generating-function enumerations.
struct TreeStats {
    int deg1 = 0;
    int deg2 = 0;
    int deg2_prime = 0;
    int l1 = 0;

    bool operator==(const TreeStats&) const = default;
};

/// Statistics of the Cayley tree with Pruefer sequence `seq`, computed straight
/// from the decoded edge list. `scratch` avoids per-call allocation.
struct PruferStatsScratch {
    std::vector<int> degree;
    std::vector<int> tree_degree;
    std::vector<int> next_up;
};

inline TreeStats prufer_stats(int n, std::span<const int> seq, PruferStatsScratch& s)
{
    s.tree_degree.assign(n + 1, 0);
    s.next_up.assign(n + 1, std::numeric_limits<int>::max());
    detail::decode_prufer_edges(n, seq, s.degree, [&](int u, int v) {
        ++s.tree_degree[u];
        ++s.tree_degree[v];
        if (u > v)
            std::swap(u, v);
        s.next_up[u] = std::min(s.next_up[u], v);
    });
    TreeStats st;
    st.deg1 = s.tree_degree[1];
    st.deg2 = s.tree_degree[2];
    int cur = 1;
    while (s.next_up[cur] != std::numeric_limits<int>::max()) {
        cur = s.next_up[cur];
        ++st.l1;
    }
    st.deg2_prime = s.tree_degree[cur];
    return st;
}

inline TreeStats tree_stats(const VertexTree& t)
{
    if (t.size() < 2 || !t.is_cayley())
        throw validation_error("tree_stats needs a Cayley tree with n >= 2");
    return TreeStats{degree(t, 1), degree(t, 2), deg2_prime(t), static_cast<int>(l_path(t, 1).size())};
}

/// {"labels":[...],"edges":[[u,v],...]} with u < v and edges sorted.
inline nlohmann::ordered_json to_json(const VertexTree& t)
{
    nlohmann::ordered_json j;
    j["labels"] = t.labels();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : t.edges())
        edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

inline VertexTree vertex_tree_from_json(const nlohmann::json& j)
{
    try {
        auto labels = j.at("labels").get<std::vector<int>>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw parse_error("tree edge must be a pair [u, v]");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return VertexTree(std::move(labels), edges);
    } catch (const nlohmann::json::exception& ex) {
        throw parse_error(std::string("malformed tree JSON: ") + ex.what());
    }
}

} // namespace mfact
