#pragma once

// Exhaustive generating polynomials over Cayley trees:
//
//   F_n(x,y,z) = sum_t x^deg_1(t) y^deg_2(t)  z^|L_1(t)|
//   G_n(x,y,z) = sum_t x^deg_1(t) y^deg'_2(t) z^|L_1(t)|
//
// Both come out of one pass over all Pruefer sequences. Workers own
// contiguous rank ranges and integer histograms, so the merged result does not
// depend on the worker count.

#include <cstdint>
#include <span>
#include <vector>

#include "parallel.hpp"
#include "poly3.hpp"
#include "tree.hpp"

namespace mfact {

/// Tree counts indexed by (deg_1, deg_2, deg'_2, |L_1|), each in 0..n-1.
class TreeHistogram {
public:
    explicit TreeHistogram(int n)
        : n_(n)
        , counts_(static_cast<std::size_t>(n) * n * n * n, 0)
    {
    }

    int n() const noexcept { return n_; }

    void add(const TreeStats& s, std::uint64_t count = 1) { counts_[index(s.deg1, s.deg2, s.deg2_prime, s.l1)] += count; }

    std::uint64_t count(int deg1, int deg2, int deg2_prime, int l1) const
    {
        return counts_[index(deg1, deg2, deg2_prime, l1)];
    }

    TreeHistogram& operator+=(const TreeHistogram& o)
    {
        for (std::size_t i = 0; i < counts_.size(); ++i)
            counts_[i] += o.counts_[i];
        return *this;
    }

    std::uint64_t total() const
    {
        std::uint64_t t = 0;
        for (auto c : counts_)
            t += c;
        return t;
    }

    Poly3 F() const { return collect(false); }
    Poly3 G() const { return collect(true); }

    bool operator==(const TreeHistogram&) const = default;

private:
    std::size_t index(int a, int b, int c, int d) const
    {
        return ((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d;
    }

    Poly3 collect(bool primed) const
    {
        Poly3 p;
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                for (int c = 0; c < n_; ++c)
                    for (int d = 0; d < n_; ++d)
                        if (auto k = count(a, b, c, d))
                            p.add_term({a, primed ? c : b, d}, Rat(Int(static_cast<unsigned long>(k))));
        return p;
    }

    int n_;
    std::vector<std::uint64_t> counts_;
};

inline TreeHistogram tree_histogram(int n, unsigned threads = 1)
{
    detail::require_cap(n, 2, max_enumerated_tree_size, "tree enumeration", "use sampling for n > 9");
    const std::uint64_t total = cayley_count(n);
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), total));
    std::vector<TreeHistogram> partial(workers, TreeHistogram(n));
    parallel_ranges(total, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        PruferStatsScratch scratch;
        auto& h = partial[w];
        for_each_prufer(n, begin, end, [&](std::span<const int> seq) { h.add(prufer_stats(n, seq, scratch)); });
    });
    TreeHistogram out(n);
    for (const auto& h : partial)
        out += h;
    return out;
}

inline Poly3 gen_F(int n, unsigned threads = 1) { return tree_histogram(n, threads).F(); }
inline Poly3 gen_G(int n, unsigned threads = 1) { return tree_histogram(n, threads).G(); }

/// x (n-1+x)^(n-2) in the chosen variable; the one-vertex tree gives 1.
inline Poly3 deg1_poly(int n, Var v = Var::x)
{
    if (n < 1)
        throw validation_error("deg1_poly needs n >= 1");
    return r_times_shifted_pow(Poly3::var(v), Poly3(n - 1), n - 2);
}

} // namespace mfact
