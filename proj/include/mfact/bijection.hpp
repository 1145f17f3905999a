#pragma once

// Bijections between minimal factorizations, rooted edge-labeled trees and
// Cayley trees:
//
//   f_map       factorization -> vertex- and edge-labeled tree
//   e_map       factorization -> rooted edge-labeled tree (vertex labels erased)
//   e_inverse   recovers the factorization by replaying next_label
//   alpha       Cayley tree   -> rooted edge-labeled tree
//
// and the statistic correspondence
//   (T_1, T_2, M_1)(f) = (deg_1, deg'_2, |L_1|)(alpha_inverse(e_map(f))).

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "json.hpp"
#include "perm.hpp"
#include "tree.hpp"

namespace mfact {

/// Rooted tree with anonymous vertices and edges labeled 1..n-1. Always held
/// in canonical form: vertex 0 is the root and ids follow a depth-first
/// preorder that visits children in increasing edge-label order. Two trees are
/// equal iff they are the same labeled rooted tree.
class EdgeTree {
public:
    struct LabeledEdge {
        int parent;
        int child;
        int label;

        bool operator==(const LabeledEdge&) const = default;
    };

    struct Incident {
        int label;
        int neighbor;
    };

    EdgeTree() = default;

    /// Canonicalizes a rooted tree given on arbitrary vertex ids 0..n-1.
    /// `remap`, if non-null, receives old id -> canonical id.
    static EdgeTree from_edges(int n, int root, const std::vector<std::tuple<int, int, int>>& edges,
                               std::vector<int>* remap = nullptr)
    {
        if (n < 1)
            throw validation_error("edge tree needs n >= 1");
        if (static_cast<int>(edges.size()) != n - 1)
            throw validation_error("edge tree on " + std::to_string(n) + " vertices needs " +
                                   std::to_string(n - 1) + " edges");
        if (root < 0 || root >= n)
            throw validation_error("root id out of range");
        std::vector<std::vector<Incident>> inc(n);
        std::vector<char> label_used(n, 0);
        for (auto [u, v, l] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n || u == v)
                throw validation_error("edge endpoint out of range");
            if (l < 1 || l > n - 1 || label_used[l])
                throw validation_error("edge labels must be a permutation of 1..n-1");
            label_used[l] = 1;
            inc[u].push_back({l, v});
            inc[v].push_back({l, u});
        }
        for (auto& list : inc)
            std::sort(list.begin(), list.end(), [](const Incident& a, const Incident& b) { return a.label < b.label; });

        EdgeTree t;
        t.n_ = n;
        t.parent_.assign(n, -1);
        t.parent_label_.assign(n, 0);
        std::vector<int> id(n, -1);
        int next_id = 0;
        // iterative preorder; children pushed in reverse label order
        std::vector<std::pair<int, int>> stack{{root, -1}};
        std::vector<std::pair<int, int>> parent_info(n, {-1, 0});
        while (!stack.empty()) {
            auto [v, from] = stack.back();
            stack.pop_back();
            if (id[v] != -1)
                throw validation_error("edges contain a cycle");
            id[v] = next_id++;
            if (from != -1) {
                t.parent_[id[v]] = id[parent_info[v].first];
                t.parent_label_[id[v]] = parent_info[v].second;
            }
            for (auto it = inc[v].rbegin(); it != inc[v].rend(); ++it)
                if (it->neighbor != from) {
                    parent_info[it->neighbor] = {v, it->label};
                    stack.emplace_back(it->neighbor, v);
                }
        }
        if (next_id != n)
            throw validation_error("edges do not form a tree (disconnected)");
        t.build_incidence();
        if (remap)
            *remap = std::move(id);
        return t;
    }

    int n() const noexcept { return n_; }
    int parent(int id) const { return parent_.at(id); }
    int parent_label(int id) const { return parent_label_.at(id); }

    /// Incident edges of `id`, sorted by label.
    const std::vector<Incident>& incident(int id) const { return incidence_.at(id); }

    /// Edges sorted by label.
    std::vector<LabeledEdge> edges() const
    {
        std::vector<LabeledEdge> out(n_ - 1);
        for (int v = 1; v < n_; ++v)
            out[parent_label_[v] - 1] = {parent_[v], v, parent_label_[v]};
        return out;
    }

    bool operator==(const EdgeTree& o) const { return n_ == o.n_ && parent_ == o.parent_ && parent_label_ == o.parent_label_; }

private:
    void build_incidence()
    {
        incidence_.assign(n_, {});
        for (int v = 1; v < n_; ++v) {
            incidence_[v].push_back({parent_label_[v], parent_[v]});
            incidence_[parent_[v]].push_back({parent_label_[v], v});
        }
        for (auto& list : incidence_)
            std::sort(list.begin(), list.end(), [](const Incident& a, const Incident& b) { return a.label < b.label; });
    }

    int n_ = 1;
    std::vector<int> parent_{-1};
    std::vector<int> parent_label_{0};
    std::vector<std::vector<Incident>> incidence_{{}};
};

/// An EdgeTree with a partial vertex labeling (0 = unassigned).
struct DecoratedTree {
    EdgeTree tree;
    std::vector<int> vertex_labels;

    explicit DecoratedTree(EdgeTree t)
        : tree(std::move(t))
        , vertex_labels(tree.n(), 0)
    {
    }

    /// Canonical id carrying `label`, or -1.
    int find(int label) const
    {
        auto it = std::find(vertex_labels.begin(), vertex_labels.end(), label);
        return it == vertex_labels.end() ? -1 : static_cast<int>(it - vertex_labels.begin());
    }

    bool fully_assigned() const
    {
        return std::none_of(vertex_labels.begin(), vertex_labels.end(), [](int l) { return l == 0; });
    }

    bool operator==(const DecoratedTree&) const = default;
};

/// Vertices 1..n, an edge labeled l between the two points of t_l, rooted at
/// vertex 1.
inline DecoratedTree f_map(const Factorization& f)
{
    require_minimal(f, "f_map");
    const int n = f.n();
    std::vector<std::tuple<int, int, int>> edges;
    for (int l = 1; l <= n - 1; ++l) {
        const auto& t = f[l - 1];
        edges.emplace_back(t.a() - 1, t.b() - 1, l);
    }
    std::vector<int> remap;
    DecoratedTree d(EdgeTree::from_edges(n, 0, edges, &remap));
    for (int v = 0; v < n; ++v)
        d.vertex_labels[remap[v]] = v + 1;
    return d;
}

inline EdgeTree e_map(const Factorization& f) { return f_map(f).tree; }

/// One step of label recovery. k = 0 labels the root 1. Otherwise, starting at
/// the vertex labeled k, take its smallest edge, then repeatedly the smallest
/// edge larger than the previous one, and label the endpoint k+1. A no-op when
/// k is not assigned yet.
inline DecoratedTree next_label(DecoratedTree d, int k)
{
    const int n = d.tree.n();
    if (k < 0 || k > n - 1)
        throw validation_error("next_label: k=" + std::to_string(k) + " outside 0.." + std::to_string(n - 1));
    if (d.find(k + 1) != -1)
        throw consistency_error("next_label: label " + std::to_string(k + 1) + " already assigned");
    if (k == 0) {
        if (d.vertex_labels[0] != 0)
            throw consistency_error("next_label: root already labeled");
        d.vertex_labels[0] = 1;
        return d;
    }
    int v = d.find(k);
    if (v == -1)
        return d;
    int last = 0;
    for (;;) {
        const auto& inc = d.tree.incident(v);
        auto it = std::find_if(inc.begin(), inc.end(), [last](const EdgeTree::Incident& e) { return e.label > last; });
        if (it == inc.end())
            break;
        last = it->label;
        v = it->neighbor;
    }
    if (d.vertex_labels[v] != 0)
        throw consistency_error("next_label: path from label " + std::to_string(k) + " ends on labeled vertex " +
                                std::to_string(d.vertex_labels[v]));
    d.vertex_labels[v] = k + 1;
    return d;
}

/// next_label with k = 0, 1, ..., k_max-1.
inline DecoratedTree find_labels(const EdgeTree& t, int k_max)
{
    if (k_max < 1 || k_max > t.n())
        throw validation_error("find_labels: k=" + std::to_string(k_max) + " outside 1.." + std::to_string(t.n()));
    DecoratedTree d(t);
    for (int k = 0; k < k_max; ++k)
        d = next_label(std::move(d), k);
    return d;
}

inline Factorization e_inverse(const EdgeTree& t)
{
    const auto d = find_labels(t, t.n());
    if (!d.fully_assigned())
        throw consistency_error("e_inverse: label recovery left vertices unlabeled");
    std::vector<Transposition> taus;
    for (const auto& e : t.edges())
        taus.emplace_back(d.vertex_labels[e.parent], d.vertex_labels[e.child]);
    return Factorization(t.n(), std::move(taus));
}

/// Roots a Cayley tree at 1 and moves each vertex label, minus one, onto the
/// edge towards the root.
inline EdgeTree alpha(const VertexTree& t)
{
    if (!t.is_cayley())
        throw validation_error("alpha needs the label set {1..n}");
    const int n = static_cast<int>(t.size());
    std::vector<std::tuple<int, int, int>> edges;
    std::vector<int> parent(n + 1, 0);
    std::vector<int> stack{1};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : t.neighbors(v))
            if (w != parent[v]) {
                parent[w] = v;
                edges.emplace_back(v - 1, w - 1, w - 1);
                stack.push_back(w);
            }
    }
    return EdgeTree::from_edges(n, 0, edges);
}

inline VertexTree alpha_inverse(const EdgeTree& t)
{
    std::vector<Edge> edges;
    auto label = [&](int id) { return id == 0 ? 1 : t.parent_label(id) + 1; };
    for (const auto& e : t.edges())
        edges.emplace_back(label(e.parent), label(e.child));
    return VertexTree::on_range(t.n(), edges);
}

struct StatTriple {
    int t1 = 0;
    int t2 = 0;
    int m1 = 0;

    auto operator<=>(const StatTriple&) const = default;
};

inline StatTriple triple_of(const Factorization& f)
{
    require_minimal(f, "triple_of");
    return {stat_T(f, 1), stat_T(f, 2), stat_M(f, 1)};
}

/// (deg_1, deg'_2, |L_1|) of a Cayley tree.
inline StatTriple tree_triple(const VertexTree& t)
{
    return {degree(t, 1), deg2_prime(t), static_cast<int>(l_path(t, 1).size())};
}

/// Computes the factorization side and the tree side; throws
/// consistency_error carrying the counterexample when they differ.
inline StatTriple verify_triple(const Factorization& f)
{
    auto lhs = triple_of(f);
    auto rhs = tree_triple(alpha_inverse(e_map(f)));
    if (lhs != rhs)
        throw consistency_error("triple mismatch for " + to_string(f) + ": (" + std::to_string(lhs.t1) + "," +
                                std::to_string(lhs.t2) + "," + std::to_string(lhs.m1) + ") vs (" +
                                std::to_string(rhs.t1) + "," + std::to_string(rhs.t2) + "," +
                                std::to_string(rhs.m1) + ")");
    return lhs;
}

inline nlohmann::ordered_json to_json(const EdgeTree& t)
{
    nlohmann::ordered_json j;
    j["n"] = t.n();
    j["root"] = 0;
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : t.edges()) {
        nlohmann::ordered_json je;
        je["parent"] = e.parent;
        je["child"] = e.child;
        je["label"] = e.label;
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j;
}

inline nlohmann::ordered_json to_json(const DecoratedTree& d)
{
    auto j = to_json(d.tree);
    nlohmann::ordered_json labels = nlohmann::ordered_json::object();
    for (int v = 0; v < d.tree.n(); ++v)
        if (d.vertex_labels[v] != 0)
            labels[std::to_string(v)] = d.vertex_labels[v];
    j["vertex_labels"] = std::move(labels);
    return j;
}

/// Accepts any rooted edge-labeled tree; the result is re-canonicalized.
inline EdgeTree edge_tree_from_json(const nlohmann::json& j)
{
    try {
        const int n = j.at("n").get<int>();
        const int root = j.contains("root") ? j.at("root").get<int>() : 0;
        std::vector<std::tuple<int, int, int>> edges;
        for (const auto& e : j.at("edges"))
            edges.emplace_back(e.at("parent").get<int>(), e.at("child").get<int>(), e.at("label").get<int>());
        return EdgeTree::from_edges(n, root, edges);
    } catch (const nlohmann::json::exception& ex) {
        throw parse_error(std::string("malformed edge-tree JSON: ") + ex.what());
    }
}

} // namespace mfact
