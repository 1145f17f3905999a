#pragma once

// Sparse polynomials in x, y, z with exact rational coefficients.
//
// Terms are kept in graded-lex order (total degree ascending, then x-exponent
// descending, then y-exponent descending) and zero coefficients are never
// stored, so equality and serialization are canonical.

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rat.hpp"

namespace mfact {

enum class Var { x = 0, y = 1, z = 2 };

struct Mono {
    int i = 0;
    int j = 0;
    int k = 0;

    int degree() const noexcept { return i + j + k; }
    int& operator[](Var v) { return v == Var::x ? i : (v == Var::y ? j : k); }
    int operator[](Var v) const { return v == Var::x ? i : (v == Var::y ? j : k); }
    Mono operator+(const Mono& o) const noexcept { return {i + o.i, j + o.j, k + o.k}; }
    bool operator==(const Mono&) const = default;
};

struct GradedLex {
    bool operator()(const Mono& a, const Mono& b) const noexcept
    {
        if (a.degree() != b.degree())
            return a.degree() < b.degree();
        if (a.i != b.i)
            return a.i > b.i;
        return a.j > b.j;
    }
};

class Poly3 {
public:
    using term_map = std::map<Mono, Rat, GradedLex>;

    Poly3() = default;
    Poly3(const Rat& c) { add_term({}, c); }
    Poly3(long c)
        : Poly3(Rat(c))
    {
    }

    static Poly3 monomial(Mono m, const Rat& c = 1)
    {
        Poly3 p;
        p.add_term(m, c);
        return p;
    }
    static Poly3 var(Var v)
    {
        Mono m;
        m[v] = 1;
        return monomial(m);
    }
    static Poly3 x() { return var(Var::x); }
    static Poly3 y() { return var(Var::y); }
    static Poly3 z() { return var(Var::z); }

    const term_map& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Rat coefficient(Mono m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    Rat coefficient(int i, int j, int k) const { return coefficient(Mono{i, j, k}); }

    /// Constant term if the polynomial is a constant.
    std::optional<Rat> constant() const
    {
        if (terms_.empty())
            return Rat(0);
        if (terms_.size() == 1 && terms_.begin()->first == Mono{})
            return terms_.begin()->second;
        return std::nullopt;
    }

    int degree_in(Var v) const
    {
        int d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m[v]);
        return d;
    }

    void add_term(const Mono& m, const Rat& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    Poly3& operator+=(const Poly3& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    Poly3& operator-=(const Poly3& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    Poly3& operator*=(const Poly3& o) { return *this = *this * o; }
    Poly3& operator*=(const Rat& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }

    friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
    friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
    friend Poly3 operator-(Poly3 a)
    {
        for (auto& [m, c] : a.terms_)
            c = -c;
        return a;
    }
    friend Poly3 operator*(const Poly3& a, const Poly3& b)
    {
        Poly3 out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                out.add_term(ma + mb, ca * cb);
        return out;
    }
    friend Poly3 operator*(Poly3 a, const Rat& s) { return a *= s; }
    friend Poly3 operator*(const Rat& s, Poly3 a) { return a *= s; }

    bool operator==(const Poly3& o) const { return terms_ == o.terms_; }

    Poly3 pow(unsigned e) const
    {
        Poly3 result(1);
        Poly3 base = *this;
        while (e > 0) {
            if (e & 1u)
                result *= base;
            e >>= 1u;
            if (e > 0)
                base *= base;
        }
        return result;
    }

    /// Replaces any subset of the variables by rational constants.
    Poly3 substitute(const std::array<std::optional<Rat>, 3>& values) const
    {
        Poly3 out;
        for (const auto& [m, c] : terms_) {
            Mono rest = m;
            Rat coeff = c;
            for (Var v : {Var::x, Var::y, Var::z}) {
                const auto& val = values[static_cast<int>(v)];
                if (val) {
                    coeff *= rat_pow(*val, m[v]);
                    rest[v] = 0;
                }
            }
            out.add_term(rest, coeff);
        }
        return out;
    }

    Poly3 substitute(Var v, const Rat& value) const
    {
        std::array<std::optional<Rat>, 3> values;
        values[static_cast<int>(v)] = value;
        return substitute(values);
    }

    /// Replaces variable v by the polynomial q.
    Poly3 compose(Var v, const Poly3& q) const
    {
        const int d = degree_in(v);
        std::vector<Poly3> powers{Poly3(1)};
        for (int e = 1; e <= d; ++e)
            powers.push_back(powers.back() * q);
        Poly3 out;
        for (const auto& [m, c] : terms_) {
            Mono rest = m;
            rest[v] = 0;
            out += monomial(rest, c) * powers[m[v]];
        }
        return out;
    }

    /// Exchanges two variables.
    Poly3 swap(Var a, Var b) const
    {
        Poly3 out;
        for (const auto& [m, c] : terms_) {
            Mono s = m;
            std::swap(s[a], s[b]);
            out.add_term(s, c);
        }
        return out;
    }

    Poly3 derivative(Var v) const
    {
        Poly3 out;
        for (const auto& [m, c] : terms_) {
            if (m[v] == 0)
                continue;
            Mono d = m;
            --d[v];
            out.add_term(d, c * m[v]);
        }
        return out;
    }

private:
    term_map terms_;
};

/// r * (shift + r)^e for e >= -1. At e = -1 the product is only defined when
/// shift is zero, where r * r^-1 is rewritten to 1 without ever forming a
/// negative power.
inline Poly3 r_times_shifted_pow(const Poly3& r, const Poly3& shift, long e)
{
    if (e >= 0)
        return r * (shift + r).pow(static_cast<unsigned>(e));
    if (e == -1 && shift.is_zero())
        return Poly3(1);
    throw domain_error("r_times_shifted_pow: negative exponent with non-zero shift");
}

/// One line per term: "coeff num/den x^i y^j z^k", in graded-lex order.
inline std::string to_lines(const Poly3& p)
{
    std::string out;
    for (const auto& [m, c] : p.terms())
        out += "coeff " + to_string(c) + " x^" + std::to_string(m.i) + " y^" + std::to_string(m.j) + " z^" +
               std::to_string(m.k) + "\n";
    return out;
}

inline Poly3 poly_from_lines(const std::string& text)
{
    Poly3 p;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string tag, coeff, xs, ys, zs;
        if (!(ls >> tag >> coeff >> xs >> ys >> zs) || tag != "coeff")
            throw parse_error("bad polynomial line: '" + line + "'");
        auto exponent = [&](const std::string& s, char v) {
            if (s.size() < 3 || s[0] != v || s[1] != '^')
                throw parse_error("bad exponent '" + s + "'");
            return std::stoi(s.substr(2));
        };
        p.add_term({exponent(xs, 'x'), exponent(ys, 'y'), exponent(zs, 'z')}, rat_from_string(coeff));
    }
    return p;
}

/// Compact human form, e.g. "x*y^2*z + 3/2*x".
inline std::string to_string(const Poly3& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rat mag = abs(c);
        out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        first = false;
        std::string mono;
        auto factor = [&](const char* name, int e) {
            if (e == 0)
                return;
            if (!mono.empty())
                mono += "*";
            mono += name;
            if (e > 1)
                mono += "^" + std::to_string(e);
        };
        factor("x", m.i);
        factor("y", m.j);
        factor("z", m.k);
        if (mono.empty())
            out += mag.get_str();
        else if (mag == 1)
            out += mono;
        else
            out += mag.get_str() + "*" + mono;
    }
    return out;
}

} // namespace mfact
