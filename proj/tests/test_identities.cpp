#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "mfact/identities.hpp"

using namespace mfact;

namespace {

const Poly3 X = Poly3::x();
const Poly3 Y = Poly3::y();
const Poly3 Z = Poly3::z();

Poly3 golden(const std::string& name)
{
    std::ifstream in(std::string(MFACT_GOLDEN_DIR) + "/" + name);
    if (!in)
        throw std::runtime_error("missing golden file " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return poly_from_lines(ss.str());
}

// Enumeration up to n = 8 is shared across the whole file.
GenCache& cache()
{
    static GenCache c(2);
    return c;
}

} // namespace

TEST(Generating, GoldenPolynomials)
{
    for (int n = 2; n <= 6; ++n) {
        EXPECT_EQ(gen_F(n), golden("gen_F_" + std::to_string(n) + ".txt")) << "n=" << n;
        EXPECT_EQ(gen_G(n), golden("gen_G_" + std::to_string(n) + ".txt")) << "n=" << n;
    }
}

TEST(Generating, SmallCases)
{
    EXPECT_EQ(gen_F(2), X * Y * Z);
    EXPECT_EQ(gen_G(4).substitute(Var::z, 1),
              Poly3(3) * X * Y + Poly3(5) * X * X * Y + Poly3(5) * X * Y * Y + X.pow(3) * Y + X * Y.pow(3) +
                  X * X * Y * Y);
    for (int n = 2; n <= 7; ++n)
        EXPECT_EQ(gen_G(n).substitute({Rat(1), Rat(1), Rat(1)}), Poly3(Rat(Int(static_cast<unsigned long>(cayley_count(n))))));
}

TEST(Generating, WorkerCountDoesNotChangeResult)
{
    const auto one = tree_histogram(7, 1);
    for (unsigned t : {2u, 3u, 8u})
        EXPECT_EQ(tree_histogram(7, t), one) << "threads=" << t;
}

TEST(Identities, SettledChecksPass)
{
    for (int n = 2; n <= 8; ++n) {
        EXPECT_TRUE(check_deg1_marginal(n, cache()).pass) << n;
        EXPECT_TRUE(check_sym_G(n, cache()).pass) << n;
        EXPECT_TRUE(check_sym_F(n, cache()).pass) << n;
    }
    EXPECT_TRUE(check_closed_F_n2_y1(cache()).pass);
    for (int n = 3; n <= 8; ++n)
        EXPECT_TRUE(check_closed_F(n, cache()).pass) << n;
    for (int n = 0; n <= 12; ++n)
        for (auto f : {AbelForm::base, AbelForm::variant1, AbelForm::variant2, AbelForm::variant3})
            EXPECT_TRUE(check_abel(f, n).pass) << to_string(f) << " n=" << n;
}

TEST(Identities, ClosedFSmall)
{
    EXPECT_EQ((Y + Z - Poly3(1)) * gen_F(3), closed_F(3));
    EXPECT_THROW(closed_F(2), validation_error);
}

TEST(Recursions, WeightedFormsHold)
{
    for (int n = 3; n <= 8; ++n)
        EXPECT_TRUE(check_recursion_F(n, cache(), RecursionForm::weighted).pass) << n;
    for (int n = 2; n <= 7; ++n)
        EXPECT_TRUE(check_recursion_G(n, cache(), RecursionForm::weighted).pass) << n;
}

// The printed forms drop the count of detached subtrees; they first fail once
// that subtree can have more than one shape.
TEST(Recursions, PrintedFormsFailWithWitness)
{
    EXPECT_TRUE(check_recursion_F(3, cache()).pass);
    const auto f4 = check_recursion_F(4, cache());
    EXPECT_FALSE(f4.pass);
    EXPECT_EQ(f4.status, Status::contested);
    EXPECT_EQ(f4.witness_params["n"], 4);
    // Only the xz term is short: 3 detached 3-vertex trees, counted once.
    EXPECT_EQ(f4.difference, nlohmann::ordered_json::array({"coeff 2/1 x^1 y^0 z^1"}));

    EXPECT_TRUE(check_recursion_G(2, cache()).pass);
    EXPECT_TRUE(check_recursion_G(3, cache()).pass);
    EXPECT_FALSE(check_recursion_G(4, cache()).pass);
}

TEST(Recursions, PerturbationIsCaught)
{
    for (int n = 4; n <= 7; ++n) {
        EXPECT_FALSE(check_recursion_F(n, cache(), RecursionForm::weighted, true).pass) << n;
        EXPECT_FALSE(check_recursion_G(n, cache(), RecursionForm::weighted, true).pass) << n;
    }
}

TEST(UDisplay, LowOrdersAgreeThenDiverge)
{
    EXPECT_TRUE(check_u(1, cache()).pass);
    EXPECT_TRUE(check_u(2, cache()).pass);
    EXPECT_FALSE(check_u(3, cache()).pass);
    EXPECT_EQ(u_poly(0), X * Y * Z * ((X - Poly3(1)) * (Y + Z - Poly3(1)) - (Y - Poly3(1)) * (X + Z - Poly3(1)) +
                                      Z * (Y - X)));
}

TEST(PPolynomials, ExamplesAndEgf)
{
    EXPECT_EQ(p_poly(0), Poly3(1));
    EXPECT_EQ(p_poly(1), X - Poly3(1));
    EXPECT_EQ(p_poly(3), X.pow(3) + Poly3(3) * X * X + Poly3(6) * X - Poly3(1));
    EXPECT_TRUE(check_pn_egf(10).pass);
}

TEST(PPolynomials, GpRelationVerdicts)
{
    for (int n = 1; n <= 7; ++n) {
        const auto v = check_gp_relation(n, cache());
        EXPECT_EQ(v.status, Status::contested);
        EXPECT_TRUE(v.pass || !v.difference.empty());
    }
}

TEST(BinomialInversion, RoundTrip)
{
    std::vector<Poly3> g{Poly3(1), X, X * Y + Poly3(2), Z.pow(3), Poly3(make_rat(-1, 3))};
    EXPECT_EQ(binomial_inversion(binomial_transform(g)), g);
    EXPECT_EQ(binomial_transform(binomial_inversion(g)), g);
    EXPECT_EQ(binomial_transform({Poly3(1), Poly3(1)})[1], Poly3(2));
}

TEST(SValues, SpotValuesAndSeries)
{
    EXPECT_EQ(s_value(3, 1), 1);
    EXPECT_EQ(s_value(2, 1), 0);
    EXPECT_EQ(s_value(4, 2), make_rat(5, 2));
    EXPECT_EQ(s_value(2, 0), make_rat(1, 2));
    for (int m = 1; m <= 16; ++m)
        for (int l = 1; l <= m; ++l)
            ASSERT_TRUE(check_s_sum(m, l).pass) << m << "," << l;
    EXPECT_THROW(s_value(2, 3), validation_error);
}

TEST(SValues, PrintedClosedForm)
{
    // Agrees on the diagonal and at (2,1); (3,1) is a witness.
    for (int m = 1; m <= 8; ++m)
        EXPECT_TRUE(check_s_closed(m, m).pass) << m;
    EXPECT_TRUE(check_s_closed(2, 1).pass);
    const auto v = check_s_closed(3, 1);
    EXPECT_FALSE(v.pass);
    EXPECT_EQ(v.difference, "1/1");
}

TEST(Egf, LowOrders)
{
    const auto v = check_egf_prop5(4, cache());
    ASSERT_EQ(v.size(), 5u);
    EXPECT_TRUE(v[0].pass);
    EXPECT_TRUE(v[1].pass);
    for (const auto& p : v)
        EXPECT_EQ(p.status, Status::contested);
    EXPECT_EQ(egf_lhs(4, cache()).coefficient(0), Poly3());
}

TEST(Egf, ExtractExamples)
{
    const auto minus = extract_xiyj(1, 1, 3, -1);
    EXPECT_EQ(*minus.coefficient(1).constant(), 1);
    EXPECT_EQ(*minus.coefficient(2).constant(), make_rat(1, 2));
    EXPECT_EQ(*extract_xiyj(1, 1, 3, +1).coefficient(2).constant(), make_rat(3, 2));
    EXPECT_THROW(extract_xiyj(0, 1, 3, 1), validation_error);
    EXPECT_THROW(extract_xiyj(1, 1, 3, 2), validation_error);
}

// Telescoping the printed right side needs the minus sign. Against the
// enumeration neither sign survives past the first orders, because the EGF
// itself is already off at t^3.
TEST(Egf, ThirdTermSign)
{
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; i + j <= 5; ++j) {
            EXPECT_TRUE(check_third_term_telescoping(i, j, 6, -1).pass) << i << "," << j;
            EXPECT_FALSE(check_third_term_telescoping(i, j, 6, +1).pass) << i << "," << j;
            EXPECT_FALSE(check_third_term_sign(i, j, 6, +1, cache()).pass) << i << "," << j;
            EXPECT_FALSE(check_third_term_sign(i, j, 6, -1, cache()).pass) << i << "," << j;
        }
    const auto minus = check_third_term_sign(1, 1, 6, -1, cache());
    EXPECT_EQ(minus.witness_params["order"], 3);
    EXPECT_EQ(minus.difference, "-1/1");
    const auto plus = check_third_term_sign(1, 1, 6, +1, cache());
    EXPECT_EQ(plus.witness_params["order"], 2);
}

TEST(DivideExact, QuotientAndRejection)
{
    const Poly3 d = X * Y * (Y - X);
    const Poly3 q = X * X + Poly3(3) * Z - Y;
    EXPECT_EQ(divide_exact(q * d, d), q);
    EXPECT_THROW(divide_exact(q * d + Poly3(1), d), domain_error);
    EXPECT_THROW(divide_exact(q, Poly3()), domain_error);
}

TEST(Verdicts, JsonShape)
{
    const auto ok = check_abel(AbelForm::base, 3);
    EXPECT_EQ(to_json(ok).dump(), R"({"id":"abel.base","status":"settled","range":"n=3","verdict":"PASS"})");
    const auto bad = check_s_closed(3, 1);
    EXPECT_EQ(to_json(bad)["witness"]["params"]["m"], 3);
    EXPECT_EQ(to_json(bad)["witness"]["difference"], "1/1");
}
