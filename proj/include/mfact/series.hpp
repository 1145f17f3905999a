#pragma once

// Truncated power series in t with Poly3 coefficients, the tree function
// T(t) = -W(-t) and the series exp(-r W(-t)).

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly3.hpp"
#include "rat.hpp"

namespace mfact {

class SeriesT {
public:
    /// Zero series truncated at order N (coefficients c_0..c_N).
    explicit SeriesT(int order = 0)
        : coeffs_(static_cast<std::size_t>(check_order(order)) + 1)
    {
    }

    SeriesT(int order, std::vector<Poly3> coeffs)
        : coeffs_(std::move(coeffs))
    {
        coeffs_.resize(static_cast<std::size_t>(check_order(order)) + 1);
    }

    /// The constant series c, truncated at N.
    static SeriesT constant(const Poly3& c, int order)
    {
        SeriesT s(order);
        s.coeffs_[0] = c;
        return s;
    }

    /// exp(sign * t) truncated at N.
    static SeriesT exp_t(int sign, int order)
    {
        SeriesT s(order);
        for (int m = 0; m <= order; ++m)
            s.coeffs_[m] = Poly3(Rat(sign < 0 && m % 2 == 1 ? -1 : 1) / Rat(factorial(m)));
        return s;
    }

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    const Poly3& coefficient(int n) const
    {
        if (n < 0 || n > order())
            throw std::out_of_range("series coefficient " + std::to_string(n) + " beyond truncation order " +
                                    std::to_string(order()));
        return coeffs_[n];
    }
    Poly3& coefficient_ref(int n)
    {
        if (n < 0 || n > order())
            throw std::out_of_range("series coefficient " + std::to_string(n) + " beyond truncation order " +
                                    std::to_string(order()));
        return coeffs_[n];
    }

    SeriesT truncated(int order) const
    {
        const int keep = std::min(order, this->order());
        return SeriesT(keep, std::vector<Poly3>(coeffs_.begin(), coeffs_.begin() + keep + 1));
    }

    friend SeriesT operator+(const SeriesT& a, const SeriesT& b)
    {
        SeriesT out(std::min(a.order(), b.order()));
        for (int n = 0; n <= out.order(); ++n)
            out.coeffs_[n] = a.coeffs_[n] + b.coeffs_[n];
        return out;
    }
    friend SeriesT operator-(const SeriesT& a, const SeriesT& b)
    {
        SeriesT out(std::min(a.order(), b.order()));
        for (int n = 0; n <= out.order(); ++n)
            out.coeffs_[n] = a.coeffs_[n] - b.coeffs_[n];
        return out;
    }
    /// Cauchy product truncated at the smaller order.
    friend SeriesT operator*(const SeriesT& a, const SeriesT& b)
    {
        SeriesT out(std::min(a.order(), b.order()));
        for (int n = 0; n <= out.order(); ++n)
            for (int m = 0; m <= n; ++m)
                if (!a.coeffs_[m].is_zero() && !b.coeffs_[n - m].is_zero())
                    out.coeffs_[n] += a.coeffs_[m] * b.coeffs_[n - m];
        return out;
    }
    friend SeriesT operator*(const Poly3& p, SeriesT s)
    {
        for (auto& c : s.coeffs_)
            c *= p;
        return s;
    }
    friend SeriesT operator*(SeriesT s, const Poly3& p) { return p * s; }

    SeriesT mul_exp_t(int sign) const { return *this * exp_t(sign, order()); }

    SeriesT pow(unsigned e) const
    {
        SeriesT result = constant(Poly3(1), order());
        for (unsigned i = 0; i < e; ++i)
            result = result * *this;
        return result;
    }

    bool operator==(const SeriesT& o) const { return coeffs_ == o.coeffs_; }

private:
    static int check_order(int order)
    {
        if (order < 0)
            throw validation_error("series truncation order must be >= 0");
        return order;
    }

    std::vector<Poly3> coeffs_;
};

/// T(t) = -W(-t) = sum_{n>=1} n^(n-1)/n! t^n.
inline SeriesT tree_fn_series(int order)
{
    if (order < 1)
        throw validation_error("tree_fn_series needs order >= 1");
    SeriesT s(order);
    for (int n = 1; n <= order; ++n)
        s.coefficient_ref(n) = Poly3(rat_pow(n, n - 1) / Rat(factorial(n)));
    return s;
}

/// exp(-r W(-t)) = sum_{n>=0} r (n+r)^(n-1)/n! t^n. The n = 0 coefficient is the
/// rewritten r * r^-1 = 1, which also makes r = 0 give the constant series 1.
inline SeriesT exp_rW_series(const Poly3& r, int order)
{
    SeriesT s(order);
    for (int n = 0; n <= order; ++n)
        s.coefficient_ref(n) = r_times_shifted_pow(r, Poly3(n), n - 1) * (1 / Rat(factorial(n)));
    return s;
}

} // namespace mfact
