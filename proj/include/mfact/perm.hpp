#pragma once

// Transpositions, factorizations of the n-cycle (1 2 ... n) and the statistics
// T_k (occurrences of k) and M_k (moves along the trajectory of k).
//
// Labels are 1-based everywhere. A factorization (t_1, ..., t_{n-1}) acts on a
// point by applying t_1 first, then t_2, and so on; it is minimal when the
// composite sends every k to k+1 (and n to 1).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace mfact {

class Transposition {
public:
    Transposition() = default;

    /// Normalizes (b a) to (a b). Equal points are rejected.
    Transposition(int a, int b)
        : a_(std::min(a, b))
        , b_(std::max(a, b))
    {
        if (a == b)
            throw validation_error("transposition needs two distinct points, got (" + std::to_string(a) + " " +
                                   std::to_string(b) + ")");
        if (a_ < 1)
            throw validation_error("transposition labels are 1-based, got " + std::to_string(a_));
    }

    int a() const noexcept { return a_; }
    int b() const noexcept { return b_; }

    int apply(int k) const noexcept { return k == a_ ? b_ : (k == b_ ? a_ : k); }
    bool contains(int k) const noexcept { return k == a_ || k == b_; }

    auto operator<=>(const Transposition&) const = default;

private:
    int a_ = 1;
    int b_ = 2;
};

class Factorization {
public:
    Factorization() = default;

    /// Shape check only: n >= 2, exactly n-1 factors, every label in 1..n.
    Factorization(int n, std::vector<Transposition> taus)
        : n_(n)
        , taus_(std::move(taus))
    {
        if (n_ < 2)
            throw validation_error("factorization needs n >= 2, got " + std::to_string(n_));
        if (static_cast<int>(taus_.size()) != n_ - 1)
            throw validation_error("factorization of an " + std::to_string(n_) + "-cycle needs " +
                                   std::to_string(n_ - 1) + " transpositions, got " + std::to_string(taus_.size()));
        for (const auto& t : taus_)
            if (t.b() > n_)
                throw validation_error("label " + std::to_string(t.b()) + " outside 1.." + std::to_string(n_));
    }

    int n() const noexcept { return n_; }
    const std::vector<Transposition>& taus() const noexcept { return taus_; }
    const Transposition& operator[](std::size_t i) const { return taus_[i]; }

    /// Image of k under t_{n-1} o ... o t_1.
    int apply(int k) const noexcept
    {
        for (const auto& t : taus_)
            k = t.apply(k);
        return k;
    }

    auto operator<=>(const Factorization&) const = default;

private:
    int n_ = 2;
    std::vector<Transposition> taus_{Transposition(1, 2)};
};

namespace detail {

inline void check_label(int n, int k, const char* what)
{
    if (k < 1 || k > n)
        throw validation_error(std::string(what) + ": label " + std::to_string(k) + " outside 1.." +
                               std::to_string(n));
}

inline int cycle_successor(int n, int k) { return k == n ? 1 : k + 1; }

} // namespace detail

inline bool is_minimal(const Factorization& f)
{
    for (int k = 1; k <= f.n(); ++k)
        if (f.apply(k) != detail::cycle_successor(f.n(), k))
            return false;
    return true;
}

inline void require_minimal(const Factorization& f, const char* what)
{
    if (!is_minimal(f))
        throw domain_error(std::string(what) + ": factorization is not a minimal factorization of the " +
                           std::to_string(f.n()) + "-cycle");
}

/// Number of transpositions containing k.
inline int stat_T(const Factorization& f, int k)
{
    detail::check_label(f.n(), k, "stat_T");
    return static_cast<int>(
        std::count_if(f.taus().begin(), f.taus().end(), [k](const Transposition& t) { return t.contains(k); }));
}

/// Number of steps at which the trajectory k, t_1(k), t_2(t_1(k)), ... moves.
inline int stat_M(const Factorization& f, int k)
{
    detail::check_label(f.n(), k, "stat_M");
    int moves = 0;
    for (const auto& t : f.taus()) {
        int next = t.apply(k);
        moves += (next != k);
        k = next;
    }
    return moves;
}

/// k -> 3 - k, reduced into 1..n. An involution of {1..n}.
inline int gamma(int n, int k)
{
    detail::check_label(n, k, "gamma");
    int r = ((3 - k) % n + n) % n;
    return r == 0 ? n : r;
}

/// Reverses the factor order and conjugates every factor by gamma. Swaps T_1
/// and T_2 while preserving M_1.
inline Factorization phi(const Factorization& f)
{
    require_minimal(f, "phi");
    const int n = f.n();
    std::vector<Transposition> out;
    out.reserve(f.taus().size());
    for (auto it = f.taus().rbegin(); it != f.taus().rend(); ++it)
        out.emplace_back(gamma(n, it->a()), gamma(n, it->b()));
    return Factorization(n, std::move(out));
}

inline constexpr int max_enumerated_factorization_size = 6;

/// Depth-first search over transposition sequences in lexicographic order.
/// A prefix is kept only while the permutation still to be realized is at
/// Cayley distance exactly equal to the remaining budget; every leaf reached is
/// therefore a minimal factorization, and each one is visited once.
inline void for_each_factorization(int n, const std::function<void(const Factorization&)>& visit)
{
    detail::require_cap(n, 2, max_enumerated_factorization_size, "enumerate_factorizations",
                        "search space is C(n,2)^(n-1); enumerate trees instead for larger n");

    std::vector<Transposition> all;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            all.emplace_back(a, b);

    // pos[k] = where the point starting at k currently sits.
    std::vector<int> pos(n + 1);
    std::iota(pos.begin(), pos.end(), 0);
    std::vector<Transposition> prefix;
    prefix.reserve(n - 1);

    // Transpositions still needed to carry every current position to its target.
    auto distance = [&]() {
        std::vector<int> sigma(n + 1);
        for (int k = 1; k <= n; ++k)
            sigma[pos[k]] = detail::cycle_successor(n, k);
        std::vector<char> seen(n + 1, 0);
        int cycles = 0;
        for (int s = 1; s <= n; ++s) {
            if (seen[s])
                continue;
            ++cycles;
            for (int v = s; !seen[v]; v = sigma[v])
                seen[v] = 1;
        }
        return n - cycles;
    };

    std::function<void()> dfs = [&]() {
        const int remaining = n - 1 - static_cast<int>(prefix.size());
        if (remaining == 0) {
            visit(Factorization(n, prefix));
            return;
        }
        for (const auto& t : all) {
            for (int k = 1; k <= n; ++k)
                pos[k] = t.apply(pos[k]);
            if (distance() == remaining - 1) {
                prefix.push_back(t);
                dfs();
                prefix.pop_back();
            }
            for (int k = 1; k <= n; ++k)
                pos[k] = t.apply(pos[k]);
        }
    };
    dfs();
}

inline std::vector<Factorization> enumerate_factorizations(int n)
{
    std::vector<Factorization> out;
    for_each_factorization(n, [&](const Factorization& f) { out.push_back(f); });
    return out;
}

/// "(a b)(c d)..." in factor order t_1, t_2, ...
inline std::string to_string(const Factorization& f)
{
    std::string s;
    for (const auto& t : f.taus())
        s += "(" + std::to_string(t.a()) + " " + std::to_string(t.b()) + ")";
    return s;
}

/// Parses "(a b)(c d)...". Whitespace is ignored outside numbers. The cycle
/// size is the number of pairs plus one unless `n` is given, in which case the
/// pair count must equal n-1. Minimality is not checked here.
inline Factorization parse_factorization(std::string_view text, int n = 0)
{
    std::vector<std::pair<int, int>> pairs;
    std::size_t i = 0;
    auto skip_ws = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto read_int = [&]() {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        if (start == i || i - start > 9)
            throw parse_error("expected a label at offset " + std::to_string(start));
        return std::stoi(std::string(text.substr(start, i - start)));
    };
    auto expect = [&](char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c)
            throw parse_error(std::string("expected '") + c + "' at offset " + std::to_string(i));
        ++i;
    };

    skip_ws();
    while (i < text.size()) {
        expect('(');
        int a = read_int();
        skip_ws();
        if (i < text.size() && text[i] == ',')
            ++i;
        int b = read_int();
        expect(')');
        pairs.emplace_back(a, b);
        skip_ws();
    }
    if (pairs.empty())
        throw parse_error("empty factorization");
    const int size = n > 0 ? n : static_cast<int>(pairs.size()) + 1;
    if (static_cast<int>(pairs.size()) != size - 1)
        throw parse_error("expected " + std::to_string(size - 1) + " transpositions, got " +
                          std::to_string(pairs.size()));

    std::vector<Transposition> taus;
    for (auto [a, b] : pairs) {
        if (a == b || a < 1 || b < 1 || a > size || b > size)
            throw parse_error("invalid pair (" + std::to_string(a) + " " + std::to_string(b) + ") for n=" +
                              std::to_string(size));
        taus.emplace_back(a, b);
    }
    return Factorization(size, std::move(taus));
}

} // namespace mfact
