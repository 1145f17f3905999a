#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace mfact {

/// Exact rational. Always kept canonical (gcd 1, positive denominator).
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1)
{
    if (den == 0)
        throw validation_error("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den)
{
    if (den == 0)
        throw validation_error("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// "num/den" with den always printed, e.g. "3/1".
inline std::string to_string(const Rat& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s)
{
    Rat r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw parse_error("not a rational: '" + s + "'");
    r.canonicalize();
    return r;
}

inline Int factorial(unsigned long n)
{
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline Int binomial(unsigned long n, unsigned long k)
{
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

/// base^e for any integer e; a negative exponent needs a non-zero base.
inline Rat rat_pow(const Rat& base, long e)
{
    if (e < 0) {
        if (base == 0)
            throw domain_error("rat_pow: zero to a negative power");
        Rat inv = 1 / base;
        return rat_pow(inv, -e);
    }
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return make_rat(num, den);
}

inline Rat rat_pow(long base, long e) { return rat_pow(Rat(base), e); }

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

} // namespace mfact
