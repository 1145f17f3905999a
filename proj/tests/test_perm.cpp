#include <gtest/gtest.h>

#include <set>

#include "mfact/perm.hpp"

using namespace mfact;

namespace {

Factorization F(int n, std::initializer_list<std::pair<int, int>> pairs)
{
    std::vector<Transposition> taus;
    for (auto [a, b] : pairs)
        taus.emplace_back(a, b);
    return Factorization(n, taus);
}

const Factorization ten = F(10, {{9, 10}, {7, 9}, {1, 5}, {2, 5}, {3, 5}, {8, 9}, {4, 5}, {1, 6}, {1, 7}});

} // namespace

TEST(Transposition, NormalizesAndRejectsDegenerate)
{
    Transposition t(5, 2);
    EXPECT_EQ(t.a(), 2);
    EXPECT_EQ(t.b(), 5);
    EXPECT_EQ(t, Transposition(2, 5));
    EXPECT_EQ(t.apply(2), 5);
    EXPECT_EQ(t.apply(5), 2);
    EXPECT_EQ(t.apply(3), 3);
    EXPECT_THROW(Transposition(3, 3), validation_error);
    EXPECT_THROW(Transposition(0, 3), validation_error);
}

TEST(Factorization, ShapeValidation)
{
    EXPECT_THROW(F(3, {{1, 2}}), validation_error);
    EXPECT_THROW(F(3, {{1, 2}, {1, 4}}), validation_error);
    EXPECT_THROW(F(1, {}), validation_error);
}

TEST(IsMinimal, Examples)
{
    EXPECT_TRUE(is_minimal(F(2, {{1, 2}})));
    EXPECT_TRUE(is_minimal(F(3, {{1, 2}, {1, 3}})));
    EXPECT_TRUE(is_minimal(ten));
    EXPECT_FALSE(is_minimal(F(3, {{1, 2}, {1, 2}})));
    // Product in the wrong order gives the inverse cycle.
    EXPECT_FALSE(is_minimal(F(3, {{1, 3}, {1, 2}})));
}

TEST(Stats, TExamples)
{
    const auto f = F(3, {{1, 2}, {1, 3}});
    EXPECT_EQ(stat_T(f, 1), 2);
    EXPECT_EQ(stat_T(f, 2), 1);
    EXPECT_EQ(stat_T(F(2, {{1, 2}}), 1), 1);
    EXPECT_THROW(stat_T(f, 4), validation_error);
}

TEST(Stats, MExamples)
{
    EXPECT_EQ(stat_M(F(3, {{1, 2}, {1, 3}}), 1), 1);
    EXPECT_EQ(stat_M(F(3, {{1, 3}, {2, 3}}), 1), 2);
    EXPECT_EQ(stat_M(F(2, {{1, 2}}), 1), 1);
    EXPECT_THROW(stat_M(F(2, {{1, 2}}), 0), validation_error);
}

TEST(Gamma, Examples)
{
    EXPECT_EQ(gamma(10, 2), 1);
    EXPECT_EQ(gamma(3, 3), 3);
    EXPECT_EQ(gamma(10, 5), 8);
    EXPECT_THROW(gamma(3, 4), validation_error);
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; k <= n; ++k)
            EXPECT_EQ(gamma(n, gamma(n, k)), k);
}

TEST(Phi, Examples)
{
    EXPECT_EQ(phi(F(3, {{1, 2}, {1, 3}})), F(3, {{2, 3}, {1, 2}}));
    EXPECT_EQ(phi(F(2, {{1, 2}})), F(2, {{1, 2}}));
    EXPECT_EQ(phi(F(3, {{1, 3}, {2, 3}})), F(3, {{1, 3}, {2, 3}}));
    EXPECT_THROW(phi(F(3, {{1, 2}, {1, 2}})), domain_error);
}

TEST(Enumerate, SmallSets)
{
    const auto m3 = enumerate_factorizations(3);
    const std::vector<Factorization> want{F(3, {{1, 2}, {1, 3}}), F(3, {{1, 3}, {2, 3}}), F(3, {{2, 3}, {1, 2}})};
    EXPECT_EQ(m3, want);
    EXPECT_EQ(enumerate_factorizations(2).size(), 1u);
    EXPECT_EQ(enumerate_factorizations(4).size(), 16u);
}

TEST(Enumerate, CapsRefused)
{
    EXPECT_THROW(enumerate_factorizations(7), cap_error);
    EXPECT_THROW(enumerate_factorizations(1), cap_error);
}

// Brute force over all C(n,2)^(n-1) sequences agrees with the pruned DFS.
TEST(Enumerate, MatchesBruteForce)
{
    for (int n = 2; n <= 5; ++n) {
        std::vector<Transposition> all;
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                all.emplace_back(a, b);
        std::vector<Factorization> brute;
        std::vector<std::size_t> idx(n - 1, 0);
        for (;;) {
            std::vector<Transposition> taus;
            for (auto i : idx)
                taus.push_back(all[i]);
            Factorization f(n, taus);
            if (is_minimal(f))
                brute.push_back(f);
            std::size_t p = idx.size();
            while (p > 0 && ++idx[p - 1] == all.size())
                idx[--p] = 0;
            if (p == 0)
                break;
        }
        EXPECT_EQ(enumerate_factorizations(n), brute) << "n=" << n;
    }
}

TEST(Enumerate, ExhaustiveProperties)
{
    for (int n = 2; n <= 6; ++n) {
        std::size_t count = 0;
        std::set<Factorization> seen;
        for_each_factorization(n, [&](const Factorization& f) {
            ++count;
            seen.insert(f);
            ASSERT_TRUE(is_minimal(f));
            for (int k = 1; k <= n; ++k) {
                EXPECT_GE(stat_T(f, k), 1);
                EXPECT_LE(stat_T(f, k), n - 1);
            }
            EXPECT_GE(stat_M(f, 1), 1);
            EXPECT_LE(stat_T(f, 1) + stat_T(f, 2), n);

            const Factorization g = phi(f);
            ASSERT_TRUE(is_minimal(g));
            EXPECT_EQ(phi(g), f);
            EXPECT_EQ(stat_T(g, 1), stat_T(f, 2));
            EXPECT_EQ(stat_T(g, 2), stat_T(f, 1));
            EXPECT_EQ(stat_M(g, 1), stat_M(f, 1));
        });
        std::size_t want = 1;
        for (int i = 0; i < n - 2; ++i)
            want *= n;
        EXPECT_EQ(count, want);
        EXPECT_EQ(seen.size(), want);
    }
}

TEST(Parse, RoundTripAndWhitespace)
{
    EXPECT_EQ(parse_factorization("(1 2)(1 3)"), F(3, {{1, 2}, {1, 3}}));
    EXPECT_EQ(parse_factorization("  ( 2 1 ) ( 3,1 ) "), F(3, {{1, 2}, {1, 3}}));
    EXPECT_EQ(parse_factorization(to_string(ten)), ten);
    EXPECT_EQ(to_string(ten), "(9 10)(7 9)(1 5)(2 5)(3 5)(8 9)(4 5)(1 6)(1 7)");
}

TEST(Parse, Errors)
{
    EXPECT_THROW(parse_factorization("(1 2"), parse_error);
    EXPECT_THROW(parse_factorization("(1 1)(1 2)"), parse_error);
    EXPECT_THROW(parse_factorization("(1 x)"), parse_error);
    EXPECT_THROW(parse_factorization("(1 2)(1 5)"), parse_error);
    EXPECT_THROW(parse_factorization("(1 2)(1 3)", 5), parse_error);
    EXPECT_THROW(parse_factorization(""), parse_error);
    // Well-formed but not minimal: parses, then fails the minimality check.
    const auto f = parse_factorization("(1 2)(1 2)");
    EXPECT_FALSE(is_minimal(f));
}
