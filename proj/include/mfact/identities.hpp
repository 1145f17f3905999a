#pragma once

// Exact machine checks of the generating-function identities: the closed form
// of F_n, both tree-cutting recursions, the symmetries, Abel's binomial
// identity and its variants, the u / P_n / S machinery and the exponential
// generating function of G_n.
//
// Every rational-function identity is compared after multiplying both sides by
// its denominators, so all comparisons are exact polynomial equalities.
// Checks are "settled" (expected to hold, they gate the verify exit status) or
// "contested" (printed forms that desk checks flagged; reported only).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "generating.hpp"
#include "json.hpp"
#include "poly3.hpp"
#include "rat.hpp"
#include "series.hpp"

namespace mfact {

enum class Status { settled, contested };

inline const char* to_string(Status s) { return s == Status::settled ? "settled" : "contested"; }

struct IdentityVerdict {
    IdentityVerdict() = default;
    IdentityVerdict(std::string id_, Status status_, std::string range_)
        : id(std::move(id_))
        , status(status_)
        , range(std::move(range_))
    {
    }

    std::string id;
    Status status = Status::settled;
    std::string range;
    bool pass = true;
    /// Parameters of the (smallest) counterexample; null on PASS.
    nlohmann::ordered_json witness_params;
    /// lhs - rhs at the witness, as polynomial lines or "num/den".
    nlohmann::ordered_json difference;
};

inline nlohmann::ordered_json to_json(const IdentityVerdict& v)
{
    nlohmann::ordered_json j;
    j["id"] = v.id;
    j["status"] = to_string(v.status);
    j["range"] = v.range;
    j["verdict"] = v.pass ? "PASS" : "FAIL";
    if (!v.pass) {
        j["witness"]["params"] = v.witness_params;
        j["witness"]["difference"] = v.difference;
    }
    return j;
}

namespace detail {

inline nlohmann::ordered_json poly_json(const Poly3& p)
{
    auto lines = nlohmann::ordered_json::array();
    for (const auto& [m, c] : p.terms())
        lines.push_back("coeff " + to_string(c) + " x^" + std::to_string(m.i) + " y^" + std::to_string(m.j) + " z^" +
                        std::to_string(m.k));
    return lines;
}

inline std::string describe(const nlohmann::ordered_json& params)
{
    std::string s;
    for (auto it = params.begin(); it != params.end(); ++it) {
        if (!s.empty())
            s += ",";
        s += it.key() + "=" + it.value().dump();
    }
    return s;
}

} // namespace detail

inline IdentityVerdict compare_polys(std::string id, Status status, const nlohmann::ordered_json& params,
                                     const Poly3& lhs, const Poly3& rhs)
{
    IdentityVerdict v{std::move(id), status, detail::describe(params)};
    v.pass = lhs == rhs;
    if (!v.pass) {
        v.witness_params = params;
        v.difference = detail::poly_json(lhs - rhs);
    }
    return v;
}

inline IdentityVerdict compare_rats(std::string id, Status status, const nlohmann::ordered_json& params,
                                    const Rat& lhs, const Rat& rhs)
{
    IdentityVerdict v{std::move(id), status, detail::describe(params)};
    v.pass = lhs == rhs;
    if (!v.pass) {
        v.witness_params = params;
        v.difference = to_string(Rat(lhs - rhs));
    }
    return v;
}

/// Folds per-point verdicts (given in increasing parameter order) into one
/// verdict over the whole range; the first failure is the smallest witness.
inline IdentityVerdict summarize(const std::string& id, const std::string& range,
                                 const std::vector<IdentityVerdict>& points)
{
    IdentityVerdict out{id, points.empty() ? Status::settled : points.front().status, range};
    for (const auto& p : points)
        if (!p.pass) {
            out.pass = false;
            out.witness_params = p.witness_params;
            out.difference = p.difference;
            break;
        }
    return out;
}

/// Lazily enumerated F_n and G_n, shared by every check in a run.
class GenCache {
public:
    explicit GenCache(unsigned threads = 1)
        : threads_(threads)
    {
    }

    const TreeHistogram& histogram(int n)
    {
        auto it = hist_.find(n);
        if (it == hist_.end())
            it = hist_.emplace(n, tree_histogram(n, threads_)).first;
        return it->second;
    }

    const Poly3& F(int n) { return memo(f_, n, [&] { return histogram(n).F(); }); }
    const Poly3& G(int n) { return memo(g_, n, [&] { return histogram(n).G(); }); }

    /// F_n(x, 1, z).
    Poly3 F_x1z(int n) { return F(n).substitute(Var::y, 1); }

    /// Enumerated sum_t v^deg_1(t); the single-vertex tree contributes 1.
    Poly3 F_uni(int n, Var v)
    {
        if (n == 1)
            return Poly3(1);
        Poly3 p = F(n).substitute({std::nullopt, Rat(1), Rat(1)});
        return v == Var::x ? p : p.swap(Var::x, v);
    }

private:
    template <typename Make>
    const Poly3& memo(std::map<int, Poly3>& m, int n, Make&& make)
    {
        auto it = m.find(n);
        if (it == m.end())
            it = m.emplace(n, make()).first;
        return it->second;
    }

    unsigned threads_;
    std::map<int, TreeHistogram> hist_;
    std::map<int, Poly3> f_;
    std::map<int, Poly3> g_;
};

namespace detail {
inline Poly3 P(long c) { return Poly3(c); }
inline const Poly3 X = Poly3::x();
inline const Poly3 Y = Poly3::y();
inline const Poly3 Z = Poly3::z();
inline Rat binom(long n, long k) { return Rat(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k))); }
} // namespace detail

// ---------------------------------------------------------------------------
// F_n and its closed form

/// (y+z-1) F_n with the right side's denominator cleared:
/// xyz[ x(n-2+x)^(n-3) ((y+z-1) - yz) + (x+y+z+n-3)^(n-3) ((n-2+yz)(y+z-1) + xyz) ].
inline Poly3 closed_F(int n)
{
    using namespace detail;
    if (n < 3)
        throw validation_error("closed_F needs n >= 3");
    const Poly3 yz1 = Y + Z - P(1);
    const auto e = static_cast<unsigned>(n - 3);
    return X * Y * Z *
           (X * (P(n - 2) + X).pow(e) * (yz1 - Y * Z) +
            (X + Y + Z + P(n - 3)).pow(e) * ((P(n - 2) + Y * Z) * yz1 + X * Y * Z));
}

inline IdentityVerdict check_deg1_marginal(int n, GenCache& cache)
{
    const std::array<std::optional<Rat>, 3> y1z1{std::nullopt, Rat(1), Rat(1)};
    const Poly3 target = deg1_poly(n);
    const Poly3 f = cache.F(n).substitute(y1z1);
    const Poly3 g = cache.G(n).substitute(y1z1);
    auto v = compare_polys("deg1_marginal.F", Status::settled, {{"n", n}}, f, target);
    if (!v.pass)
        return v;
    v = compare_polys("deg1_marginal.G", Status::settled, {{"n", n}}, g, target);
    v.id = "deg1_marginal";
    return v;
}

inline IdentityVerdict check_closed_F(int n, GenCache& cache)
{
    using namespace detail;
    return compare_polys("closed_F", Status::settled, {{"n", n}}, (Y + Z - P(1)) * cache.F(n), closed_F(n));
}

/// The closed form at n = 2, y = 1 (one vertex-2 leaf), cleared by z(x+z):
/// z(x+z) F_2(x,1,z) = xz [ (z - z)(x+z) + z^2 + xz ].
inline IdentityVerdict check_closed_F_n2_y1(GenCache& cache)
{
    using namespace detail;
    const Poly3 lhs = Z * (X + Z) * cache.F_x1z(2);
    const Poly3 rhs = X * Z * ((Z - Z) * (X + Z) + Z * Z + X * Z);
    return compare_polys("closed_F.n2_y1", Status::settled, {{"n", 2}}, lhs, rhs);
}

inline IdentityVerdict check_sym_G(int n, GenCache& cache)
{
    const Poly3& g = cache.G(n);
    return compare_polys("sym_G", Status::settled, {{"n", n}}, g, g.swap(Var::x, Var::y));
}

inline IdentityVerdict check_sym_F(int n, GenCache& cache)
{
    const Poly3& f = cache.F(n);
    return compare_polys("sym_F", Status::settled, {{"n", n}}, f, f.swap(Var::y, Var::z));
}

// ---------------------------------------------------------------------------
// Abel's binomial identity

enum class AbelForm { base, variant1, variant2, variant3 };

inline const char* to_string(AbelForm f)
{
    switch (f) {
    case AbelForm::base: return "abel.base";
    case AbelForm::variant1: return "abel.variant1";
    case AbelForm::variant2: return "abel.variant2";
    case AbelForm::variant3: return "abel.variant3";
    }
    return "abel";
}

/// Both sides of the identity with denominators x, y or xy cleared.
inline std::pair<Poly3, Poly3> abel_sides(AbelForm form, int n)
{
    using namespace detail;
    if (n < 0)
        throw validation_error("Abel identities need n >= 0");
    Poly3 lhs;
    Poly3 rhs;
    for (int k = 0; k <= n; ++k) {
        const Rat c = binom(n, k);
        switch (form) {
        case AbelForm::base:
            // x (x - kz)^(k-1) (y + kz)^(n-k)
            lhs += c * r_times_shifted_pow(X, P(-k) * Z, k - 1) * (Y + P(k) * Z).pow(n - k);
            break;
        case AbelForm::variant1:
            // x (x + k)^(k-1) (y - k)^(n-k)
            lhs += c * r_times_shifted_pow(X, P(k), k - 1) * (Y - P(k)).pow(n - k);
            break;
        case AbelForm::variant2:
            // (x + k)^k y (n - k + y)^(n-k-1)
            lhs += c * (X + P(k)).pow(k) * r_times_shifted_pow(Y, P(n - k), n - k - 1);
            break;
        case AbelForm::variant3:
            // x (x + k)^(k-1) y (n - k + y)^(n-k-1)
            lhs += c * r_times_shifted_pow(X, P(k), k - 1) * r_times_shifted_pow(Y, P(n - k), n - k - 1);
            break;
        }
    }
    switch (form) {
    case AbelForm::base:
    case AbelForm::variant1: rhs = (X + Y).pow(n); break;
    case AbelForm::variant2: rhs = (X + Y + P(n)).pow(n); break;
    case AbelForm::variant3: rhs = r_times_shifted_pow(X + Y, P(n), n - 1); break;
    }
    return {lhs, rhs};
}

inline IdentityVerdict check_abel(AbelForm form, int n)
{
    auto [lhs, rhs] = abel_sides(form, n);
    return compare_polys(to_string(form), Status::settled, {{"n", n}}, lhs, rhs);
}

// ---------------------------------------------------------------------------
// Tree-cutting recursions

/// Which form of a tree-cutting recursion to check. `printed` is the displayed
/// recursion verbatim. `weighted` also counts the detached subtree t_2 on its
/// label set B: a term that does not depend on t_2 is multiplied by
/// |B|^(|B|-2), the number of such subtrees.
enum class RecursionForm { printed, weighted };

namespace detail {
/// m^(m-2), with 1 for m = 1.
inline Rat cayley_rat(int m) { return m <= 1 ? Rat(1) : rat_pow(m, m - 2); }
} // namespace detail

/// F_n(x,1,z) = xz + sum_{a=2}^{n-1} C(n-2,a-1) F_a(x,1,z) (a-2+x+z)   (printed)
/// F_n(x,1,z) = (n-1)^(n-3) xz
///            + sum_{a=2}^{n-1} C(n-2,a-1) (n-a)^(n-a-2) F_a(x,1,z) (a-2+x+z)   (weighted)
/// `perturb` adds one to the a = 2 binomial weight (negative control).
inline IdentityVerdict check_recursion_F(int n, GenCache& cache, RecursionForm form = RecursionForm::printed,
                                         bool perturb = false)
{
    using namespace detail;
    if (n < 3)
        throw validation_error("check_recursion_F needs n >= 3");
    const bool weighted = form == RecursionForm::weighted;
    Poly3 rhs = (weighted ? cayley_rat(n - 1) : Rat(1)) * (X * Z);
    for (int a = 2; a <= n - 1; ++a) {
        Rat w = binom(n - 2, a - 1) + ((perturb && a == 2) ? 1 : 0);
        if (weighted)
            w *= cayley_rat(n - a);
        rhs += w * cache.F_x1z(a) * (P(a - 2) + X + Z);
    }
    return compare_polys(weighted ? "recursion_F.weighted" : "recursion_F",
                         weighted ? Status::settled : Status::contested, {{"n", n}}, cache.F_x1z(n), rhs);
}

/// G_{n+1} = xyz F_n(y)
///         + sum_{a=2}^{n} C(n-1,a-1) [ (a-2+x) G_a + yz F_a(x,1,z) F_{n+1-a}(y) ]   (printed)
/// The weighted form multiplies (a-2+x) G_a by (n+1-a)^(n-1-a); the other terms
/// already sum over t_2.
inline IdentityVerdict check_recursion_G(int n, GenCache& cache, RecursionForm form = RecursionForm::printed,
                                         bool perturb = false)
{
    using namespace detail;
    if (n < 2)
        throw validation_error("check_recursion_G needs n >= 2");
    const bool weighted = form == RecursionForm::weighted;
    Poly3 rhs = X * Y * Z * cache.F_uni(n, Var::y);
    for (int a = 2; a <= n; ++a) {
        const Rat w = binom(n - 1, a - 1) + ((perturb && a == 2) ? 1 : 0);
        const Rat subtrees = weighted ? cayley_rat(n + 1 - a) : Rat(1);
        rhs += w * (subtrees * ((P(a - 2) + X) * cache.G(a)) +
                    Y * Z * cache.F_x1z(a) * cache.F_uni(n + 1 - a, Var::y));
    }
    return compare_polys(weighted ? "recursion_G.weighted" : "recursion_G",
                         weighted ? Status::settled : Status::contested, {{"n", n}}, cache.G(n + 1), rhs);
}

// ---------------------------------------------------------------------------
// The u display, P_n and binomial inversion

/// (x+z-1)(y+z-1), the common denominator of u and of the EGF of G_n.
inline Poly3 u_denominator()
{
    using namespace detail;
    return (X + Z - P(1)) * (Y + Z - P(1));
}

/// The printed u_k multiplied by (x+z-1)(y+z-1):
///   xyz(x-1)(y+z-1) y(y+k)^(k-1) - xyz(y-1)(x+z-1) x(x+k)^(k-1)
///   + xyz^2 (y-x) (x+y+z-1)(x+y+z-1+k)^(k-1).
inline Poly3 u_poly(int k)
{
    using namespace detail;
    if (k < 0)
        throw validation_error("u_poly needs k >= 0");
    const Poly3 xyz = X * Y * Z;
    return xyz * (X - P(1)) * (Y + Z - P(1)) * r_times_shifted_pow(Y, P(k), k - 1) -
           xyz * (Y - P(1)) * (X + Z - P(1)) * r_times_shifted_pow(X, P(k), k - 1) +
           xyz * Z * (Y - X) * r_times_shifted_pow(X + Y + Z - P(1), P(k), k - 1);
}

/// (y-x) sum_{a=2}^{m+1} C(m,a-1) G_a against the printed u_m, both cleared.
inline IdentityVerdict check_u(int m, GenCache& cache)
{
    using namespace detail;
    if (m < 1)
        throw validation_error("check_u needs m >= 1");
    Poly3 sum;
    for (int a = 2; a <= m + 1; ++a)
        sum += binom(m, a - 1) * cache.G(a);
    return compare_polys("u_display", Status::contested, {{"m", m}}, u_denominator() * (Y - X) * sum, u_poly(m));
}

/// g_n = sum_k C(n,k) (-1)^(n-k) b_k.
inline std::vector<Poly3> binomial_inversion(const std::vector<Poly3>& b)
{
    std::vector<Poly3> g(b.size());
    for (std::size_t n = 0; n < b.size(); ++n)
        for (std::size_t k = 0; k <= n; ++k)
            g[n] += Rat(binomial(n, k) * sign_pow(static_cast<long>(n - k))) * b[k];
    return g;
}

/// b_n = sum_k C(n,k) g_k; inverse of binomial_inversion.
inline std::vector<Poly3> binomial_transform(const std::vector<Poly3>& g)
{
    std::vector<Poly3> b(g.size());
    for (std::size_t n = 0; n < g.size(); ++n)
        for (std::size_t k = 0; k <= n; ++k)
            b[n] += Rat(binomial(n, k)) * g[k];
    return b;
}

/// P_n(u) = sum_k u C(n,k) (-1)^(n-k) (k+u)^(k-1), in the variable x; the k = 0
/// term's u * u^-1 is rewritten to 1.
inline Poly3 p_poly(int n)
{
    using namespace detail;
    if (n < 0)
        throw validation_error("p_poly needs n >= 0");
    Poly3 p;
    for (int k = 0; k <= n; ++k)
        p += Rat(binomial(n, k) * sign_pow(n - k)) * r_times_shifted_pow(X, P(k), k - 1);
    return p;
}

/// sum_n P_n(u) t^n / n! against exp(-t) exp(-u W(-t)), order by order.
inline IdentityVerdict check_pn_egf(int order)
{
    std::vector<IdentityVerdict> points;
    const SeriesT rhs = exp_rW_series(Poly3::x(), order).mul_exp_t(-1);
    for (int n = 0; n <= order; ++n)
        points.push_back(compare_polys("pn_egf", Status::settled, {{"order", n}},
                                       p_poly(n) * (1 / Rat(factorial(n))), rhs.coefficient(n)));
    return summarize("pn_egf", "order=0.." + std::to_string(order), points);
}

/// G_{n+1}(x,1,1) against P_n(x+1) - P_n(1).
inline IdentityVerdict check_gp_relation(int n, GenCache& cache)
{
    using namespace detail;
    const Poly3 p = p_poly(n);
    const Poly3 rhs = p.compose(Var::x, X + P(1)) - p.substitute(Var::x, 1);
    const Poly3 lhs = cache.G(n + 1).substitute({std::nullopt, Rat(1), Rat(1)});
    return compare_polys("gp_relation", Status::contested, {{"n", n}}, lhs, rhs);
}

// ---------------------------------------------------------------------------
// S(m, l) = [t^m] e^-t T(t)^l

/// l sum_{k=l}^{m} (-1)^(m-k) k^(k-1-l) / ((m-k)! (k-l)!), with l * l^-1 = 1 at
/// k = l and S(m, 0) = (-1)^m / m!.
inline Rat s_value(int m, int l)
{
    if (l < 0 || m < 0 || l > m)
        throw validation_error("s_value needs 0 <= l <= m");
    if (l == 0)
        return Rat(sign_pow(m)) / Rat(factorial(m));
    Rat s = 0;
    for (int k = l; k <= m; ++k) {
        Rat term = (k == l) ? Rat(1) : Rat(l) * rat_pow(k, k - 1 - l);
        s += Rat(sign_pow(m - k)) * term / Rat(factorial(m - k) * factorial(k - l));
    }
    return s;
}

/// The printed closed form (m-1)^(m-l-1) (l-1) / (m-l)!, read as
/// r (shift + r)^e with r = l-1 so that l = m uses the same r * r^-1 = 1 rule.
inline Rat s_closed(int m, int l)
{
    if (l < 1 || l > m)
        throw validation_error("s_closed needs 1 <= l <= m");
    const Poly3 v = r_times_shifted_pow(Poly3(l - 1), Poly3(m - l), m - l - 1);
    return *v.constant() / Rat(factorial(m - l));
}

inline Rat s_series(int m, int l)
{
    if (l < 0 || l > m)
        throw validation_error("s_series needs 0 <= l <= m");
    const SeriesT T = tree_fn_series(std::max(m, 1));
    return *T.pow(static_cast<unsigned>(l)).mul_exp_t(-1).coefficient(m).constant();
}

inline IdentityVerdict check_s_sum(int m, int l)
{
    return compare_rats("s_sum", Status::settled, {{"m", m}, {"l", l}}, s_value(m, l), s_series(m, l));
}

inline IdentityVerdict check_s_closed(int m, int l)
{
    return compare_rats("s_closed", Status::contested, {{"m", m}, {"l", l}}, s_value(m, l), s_closed(m, l));
}

// ---------------------------------------------------------------------------
// Exponential generating function of G_n

/// (x+z-1)(y+z-1) e^t (y-x) sum_{n>=1} G_{n+1} t^n / n!, up to `order`.
inline SeriesT egf_lhs(int order, GenCache& cache)
{
    using namespace detail;
    SeriesT s(order);
    for (int n = 1; n <= order; ++n)
        s.coefficient_ref(n) = cache.G(n + 1) * (1 / Rat(factorial(n)));
    return (u_denominator() * (Y - X)) * s.mul_exp_t(+1);
}

/// The right side, cleared: xyz(x-1)(y+z-1) E_y - xyz(y-1)(x+z-1) E_x
/// + third_sign * xyz^2 (y-x) E_{x+y+z-1}, where E_r = exp(-r W(-t)).
inline SeriesT egf_rhs(int order, int third_sign = +1)
{
    using namespace detail;
    const Poly3 xyz = X * Y * Z;
    return (xyz * (X - P(1)) * (Y + Z - P(1))) * exp_rW_series(Y, order) -
           (xyz * (Y - P(1)) * (X + Z - P(1))) * exp_rW_series(X, order) +
           (Rat(third_sign) * xyz * Z * (Y - X)) * exp_rW_series(X + Y + Z - P(1), order);
}

/// One verdict per order t^0..t^order.
inline std::vector<IdentityVerdict> check_egf_prop5(int order, GenCache& cache, int third_sign = +1)
{
    const SeriesT lhs = egf_lhs(order, cache);
    const SeriesT rhs = egf_rhs(order, third_sign);
    std::vector<IdentityVerdict> out;
    for (int n = 0; n <= order; ++n)
        out.push_back(compare_polys("egf_prop5", Status::contested, {{"order", n}}, lhs.coefficient(n),
                                    rhs.coefficient(n)));
    return out;
}

/// [x^i y^j] of the divided right side (z = 1), via the telescoped form
/// e^-t [ T^(i+j-1)/(i+j-1)! + T^(i+j)/(i! j!) + sign3 T^(i+j)/(i+j)! ].
inline SeriesT extract_xiyj(int i, int j, int order, int sign3)
{
    if (i < 1 || j < 1)
        throw validation_error("extract_xiyj needs i, j >= 1");
    if (sign3 != 1 && sign3 != -1)
        throw validation_error("extract_xiyj: sign3 must be +1 or -1");
    const SeriesT T = tree_fn_series(std::max(order, 1)).truncated(std::max(order, 1));
    const SeriesT Tm = T.pow(static_cast<unsigned>(i + j - 1));
    const SeriesT Tn = Tm * T;
    const Rat c1 = 1 / Rat(factorial(i + j - 1));
    const Rat c2 = 1 / Rat(factorial(i) * factorial(j)) + Rat(sign3) / Rat(factorial(i + j));
    SeriesT s = Poly3(c1) * Tm + Poly3(c2) * Tn;
    return s.mul_exp_t(-1).truncated(order);
}

/// [x^i y^j] G_{n+1}(x,y,1) / n! against [t^n] extract_xiyj, for n = 0..order.
inline IdentityVerdict check_third_term_sign(int i, int j, int order, int sign3, GenCache& cache)
{
    const SeriesT rhs = extract_xiyj(i, j, order, sign3);
    std::vector<IdentityVerdict> points;
    for (int n = 0; n <= order; ++n) {
        Rat lhs = 0;
        if (n >= 1) {
            const Poly3 g = cache.G(n + 1).substitute(Var::z, 1);
            lhs = g.coefficient(i, j, 0) / Rat(factorial(n));
        }
        points.push_back(compare_rats("third_term_sign", Status::contested,
                                      {{"sign3", sign3}, {"i", i}, {"j", j}, {"order", n}}, lhs,
                                      *rhs.coefficient(n).constant()));
    }
    auto v = summarize("third_term_sign", "sign3=" + std::to_string(sign3) + ",i=" + std::to_string(i) +
                                              ",j=" + std::to_string(j) + ",order=0.." + std::to_string(order),
                       points);
    v.status = Status::contested;
    return v;
}

/// Exact quotient p / d; throws domain_error when d does not divide p.
inline Poly3 divide_exact(Poly3 p, const Poly3& d)
{
    if (d.is_zero())
        throw domain_error("divide_exact: division by zero");
    const auto& [lead_m, lead_c] = *d.terms().rbegin();
    Poly3 q;
    while (!p.is_zero()) {
        const auto& [m, c] = *p.terms().rbegin();
        if (m.i < lead_m.i || m.j < lead_m.j || m.k < lead_m.k)
            throw domain_error("divide_exact: not divisible");
        const Poly3 t = Poly3::monomial({m.i - lead_m.i, m.j - lead_m.j, m.k - lead_m.k}, c / lead_c);
        q += t;
        p -= t * d;
    }
    return q;
}

/// [x^i y^j] of the printed EGF right side at z = 1, divided by xy(y-x) and
/// multiplied by e^-t, against [t^n] extract_xiyj, for n = 0..order. Tests
/// which sign of the third term the telescoping produces.
inline IdentityVerdict check_third_term_telescoping(int i, int j, int order, int sign3)
{
    using namespace detail;
    const SeriesT printed = egf_rhs(order).mul_exp_t(-1);
    const Poly3 divisor = X * Y * (Y - X);
    const SeriesT ext = extract_xiyj(i, j, order, sign3);
    std::vector<IdentityVerdict> points;
    for (int n = 0; n <= order; ++n) {
        const Poly3 q = divide_exact(printed.coefficient(n).substitute(Var::z, 1), divisor);
        points.push_back(compare_rats("third_term_sign.telescoping", Status::contested,
                                      {{"sign3", sign3}, {"i", i}, {"j", j}, {"order", n}}, q.coefficient(i, j, 0),
                                      *ext.coefficient(n).constant()));
    }
    auto v = summarize("third_term_sign.telescoping",
                       "sign3=" + std::to_string(sign3) + ",i=" + std::to_string(i) + ",j=" + std::to_string(j) +
                           ",order=0.." + std::to_string(order),
                       points);
    v.status = Status::contested;
    return v;
}

} // namespace mfact
