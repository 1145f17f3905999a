#include <gtest/gtest.h>

#include <set>

#include "mfact/bijection.hpp"
#include "mfact/verify.hpp"

using namespace mfact;

namespace {

using E3 = std::tuple<int, int, int>;

const Factorization ten = parse_factorization("(9 10)(7 9)(1 5)(2 5)(3 5)(8 9)(4 5)(1 6)(1 7)");

// Its edge-labeled tree, on hand-picked node ids.
const std::vector<E3> ten_edges{{0, 1, 3}, {0, 2, 8}, {0, 3, 9}, {1, 4, 4}, {1, 5, 5},
                                 {1, 6, 7}, {3, 7, 2}, {7, 8, 1}, {7, 9, 6}};
// ... and the vertex labels f_map puts on the same ids.
const std::vector<int> ten_labels{1, 5, 6, 7, 2, 3, 4, 9, 10, 8};

} // namespace

TEST(EdgeTree, CanonicalFormIndependentOfInputIds)
{
    // Same rooted tree, two different numberings.
    const auto a = EdgeTree::from_edges(4, 0, {{0, 1, 2}, {0, 2, 1}, {2, 3, 3}});
    const auto b = EdgeTree::from_edges(4, 3, {{3, 2, 1}, {3, 0, 2}, {2, 1, 3}});
    EXPECT_EQ(a, b);
    EXPECT_EQ(to_json(a).dump(), R"({"n":4,"root":0,"edges":[{"parent":0,"child":1,"label":1},{"parent":0,"child":3,"label":2},{"parent":1,"child":2,"label":3}]})");
    EXPECT_EQ(edge_tree_from_json(nlohmann::json::parse(to_json(a).dump())), a);
}

TEST(EdgeTree, Validation)
{
    EXPECT_THROW(EdgeTree::from_edges(3, 0, {{0, 1, 1}, {0, 2, 1}}), validation_error);
    EXPECT_THROW(EdgeTree::from_edges(3, 0, {{0, 1, 1}}), validation_error);
    EXPECT_THROW(EdgeTree::from_edges(4, 0, {{0, 1, 1}, {1, 0, 2}, {2, 3, 3}}), validation_error);
    EXPECT_THROW(edge_tree_from_json(nlohmann::json::parse(R"({"n":2})")), parse_error);
}

TEST(FMap, Examples)
{
    const auto d = f_map(ten);
    ASSERT_TRUE(d.fully_assigned());
    auto joins = [&](int label, int u, int v) {
        for (const auto& e : d.tree.edges())
            if (e.label == label) {
                const std::set<int> got{d.vertex_labels[e.parent], d.vertex_labels[e.child]};
                return got == std::set<int>{u, v};
            }
        return false;
    };
    EXPECT_TRUE(joins(3, 1, 5));
    EXPECT_TRUE(joins(1, 9, 10));
    EXPECT_TRUE(joins(9, 1, 7));

    const auto d2 = f_map(parse_factorization("(1 2)"));
    EXPECT_EQ(d2.vertex_labels, (std::vector<int>{1, 2}));

    const auto d3 = f_map(parse_factorization("(1 2)(1 3)"));
    EXPECT_EQ(d3.tree, EdgeTree::from_edges(3, 0, {{0, 1, 1}, {0, 2, 2}}));
    EXPECT_EQ(d3.vertex_labels, (std::vector<int>{1, 2, 3}));

    EXPECT_THROW(f_map(parse_factorization("(1 2)(1 2)")), domain_error);
}

TEST(EMap, Examples)
{
    EXPECT_EQ(e_map(ten), EdgeTree::from_edges(10, 0, ten_edges));
    EXPECT_EQ(e_map(parse_factorization("(1 2)")), EdgeTree::from_edges(2, 0, {{0, 1, 1}}));
    EXPECT_EQ(e_map(parse_factorization("(1 3)(2 3)")), EdgeTree::from_edges(3, 0, {{0, 1, 1}, {1, 2, 2}}));
}

TEST(NextLabel, Examples)
{
    std::vector<int> remap;
    const auto t = EdgeTree::from_edges(10, 0, ten_edges, &remap);
    auto d = next_label(DecoratedTree(t), 0);
    EXPECT_EQ(d.vertex_labels[0], 1);

    // Labels 1..9 in place, then k = 9 must place label 10.
    DecoratedTree partial(t);
    for (int old = 0; old < 10; ++old)
        if (ten_labels[old] != 10)
            partial.vertex_labels[remap[old]] = ten_labels[old];
    const auto full = next_label(partial, 9);
    for (int old = 0; old < 10; ++old)
        EXPECT_EQ(full.vertex_labels[remap[old]], ten_labels[old]);

    const auto two = next_label(next_label(DecoratedTree(EdgeTree::from_edges(2, 0, {{0, 1, 1}})), 0), 1);
    EXPECT_EQ(two.vertex_labels, (std::vector<int>{1, 2}));
}

TEST(NextLabel, NoOpWhenUnassignedAndErrors)
{
    const auto t = EdgeTree::from_edges(3, 0, {{0, 1, 1}, {1, 2, 2}});
    const DecoratedTree blank(t);
    EXPECT_EQ(next_label(blank, 2), blank);
    const auto d = next_label(blank, 0);
    EXPECT_THROW(next_label(d, 0), consistency_error);
    EXPECT_THROW(next_label(blank, 3), validation_error);
}

TEST(FindLabels, Examples)
{
    std::vector<int> remap;
    const auto t = EdgeTree::from_edges(10, 0, ten_edges, &remap);
    const auto d = find_labels(t, 10);
    for (int old = 0; old < 10; ++old)
        EXPECT_EQ(d.vertex_labels[remap[old]], ten_labels[old]);
    EXPECT_EQ(d, f_map(ten));

    const auto one = find_labels(t, 1);
    EXPECT_EQ(std::count(one.vertex_labels.begin(), one.vertex_labels.end(), 0), 9);
    EXPECT_EQ(one.vertex_labels[0], 1);

    const auto path = find_labels(EdgeTree::from_edges(3, 0, {{0, 1, 1}, {1, 2, 2}}), 3);
    EXPECT_EQ(path.vertex_labels, (std::vector<int>{1, 3, 2}));
    EXPECT_EQ(path, f_map(parse_factorization("(1 3)(2 3)")));
}

TEST(EInverse, Examples)
{
    EXPECT_EQ(e_inverse(EdgeTree::from_edges(10, 0, ten_edges)), ten);
    EXPECT_EQ(e_inverse(EdgeTree::from_edges(2, 0, {{0, 1, 1}})), parse_factorization("(1 2)"));
    for (const auto& f : enumerate_factorizations(5))
        EXPECT_EQ(e_inverse(e_map(f)), f);
}

TEST(Alpha, SixVertexExample)
{
    const auto t = VertexTree::on_range(6, {{1, 5}, {1, 2}, {5, 4}, {2, 6}, {2, 3}});
    // Node ids: root, then the vertices 5, 2, 4, 6, 3.
    const auto want = EdgeTree::from_edges(6, 0, {{0, 1, 4}, {0, 2, 1}, {1, 3, 3}, {2, 4, 5}, {2, 5, 2}});
    EXPECT_EQ(alpha(t), want);
    EXPECT_EQ(alpha_inverse(want), t);
    EXPECT_EQ(alpha(VertexTree::on_range(2, {{1, 2}})), EdgeTree::from_edges(2, 0, {{0, 1, 1}}));
    EXPECT_EQ(alpha_inverse(EdgeTree::from_edges(2, 0, {{0, 1, 1}})), VertexTree::on_range(2, {{1, 2}}));
    EXPECT_THROW(alpha(VertexTree({1, 3}, {{1, 3}})), validation_error);
}

TEST(Alpha, ExhaustiveInverse)
{
    for (int n = 2; n <= 7; ++n)
        for_each_tree(n, [&](const VertexTree& t) { ASSERT_EQ(alpha_inverse(alpha(t)), t); });
}

TEST(Triple, Examples)
{
    EXPECT_EQ(verify_triple(parse_factorization("(1 3)(2 3)")), (StatTriple{1, 1, 2}));
    EXPECT_EQ(tree_triple(alpha_inverse(e_map(parse_factorization("(1 3)(2 3)")))), (StatTriple{1, 1, 2}));
    EXPECT_EQ(verify_triple(parse_factorization("(1 2)(1 3)")), (StatTriple{2, 1, 1}));
    EXPECT_EQ(verify_triple(parse_factorization("(1 2)")), (StatTriple{1, 1, 1}));
    EXPECT_EQ(verify_triple(ten), triple_of(ten));
}

// With t = alpha_inverse(e_map(f)); alpha itself takes a Cayley tree, not an
// edge-labeled one, so that is the only composition that type-checks.
TEST(Triple, ExhaustiveUpToSeven)
{
    for (int n = 2; n <= 7; ++n)
        EXPECT_TRUE(check_triple_correspondence(n).pass) << "n=" << n;
}

TEST(RoundTrip, ExhaustiveUpToSeven)
{
    for (int n = 2; n <= 7; ++n)
        EXPECT_TRUE(check_bijection_roundtrip(n).pass) << "n=" << n;
}

TEST(RoundTrip, ImagesAgreeUpToSix)
{
    for (int n = 2; n <= 6; ++n) {
        std::set<std::string> via_f;
        std::set<std::string> via_t;
        for_each_factorization(n, [&](const Factorization& f) { via_f.insert(to_json(e_map(f)).dump()); });
        for_each_tree(n, [&](const VertexTree& t) { via_t.insert(to_json(alpha(t)).dump()); });
        EXPECT_EQ(via_f, via_t) << "n=" << n;
    }
}

TEST(Json, DecoratedTree)
{
    const auto d = f_map(parse_factorization("(1 3)(2 3)"));
    EXPECT_EQ(to_json(d).dump(),
              R"({"n":3,"root":0,"edges":[{"parent":0,"child":1,"label":1},{"parent":1,"child":2,"label":2}],"vertex_labels":{"0":1,"1":3,"2":2}})");
}
