#pragma once

// Joint law of (T_1, T_2) in a uniform minimal factorization, equivalently of
// (deg_1, deg'_2) in a uniform Cayley tree: exact oracles, the closed-form
// candidate evaluated verbatim, the n -> infinity limit, and Monte Carlo.

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bijection.hpp"
#include "generating.hpp"
#include "json.hpp"
#include "parallel.hpp"
#include "perm.hpp"
#include "rat.hpp"
#include "tree.hpp"

namespace mfact {

enum class PmfSource { oracle_tree, oracle_dfs, theorem1, limit, montecarlo };

inline const char* to_string(PmfSource s)
{
    switch (s) {
    case PmfSource::oracle_tree: return "oracle-tree";
    case PmfSource::oracle_dfs: return "oracle-dfs";
    case PmfSource::theorem1: return "theorem1";
    case PmfSource::limit: return "limit";
    case PmfSource::montecarlo: return "montecarlo";
    }
    return "?";
}

inline PmfSource pmf_source_from_string(const std::string& s)
{
    for (auto src : {PmfSource::oracle_tree, PmfSource::oracle_dfs, PmfSource::theorem1, PmfSource::limit,
                     PmfSource::montecarlo})
        if (s == to_string(src))
            return src;
    throw parse_error("unknown pmf source '" + s + "'");
}

inline bool is_exact(PmfSource s) { return s != PmfSource::limit && s != PmfSource::montecarlo; }

struct PmfEntry {
    std::optional<Rat> exact;
    double p = 0.0;
    double stderr_ = 0.0;
};

struct PmfTable {
    int n = 0;
    PmfSource source = PmfSource::oracle_tree;
    std::map<std::pair<int, int>, PmfEntry> entries;

    /// Exact probability of cell (i, j); zero outside the support.
    Rat exact(int i, int j) const
    {
        auto it = entries.find({i, j});
        if (it == entries.end())
            return 0;
        if (!it->second.exact)
            throw validation_error(std::string("pmf source ") + to_string(source) + " is not exact");
        return *it->second.exact;
    }

    double value(int i, int j) const
    {
        auto it = entries.find({i, j});
        return it == entries.end() ? 0.0 : it->second.p;
    }

    Rat exact_total() const
    {
        Rat s = 0;
        for (const auto& [ij, e] : entries)
            s += e.exact.value_or(Rat(0));
        return s;
    }

    /// Same cells with identical exact values.
    bool exact_equal(const PmfTable& o) const
    {
        if (entries.size() != o.entries.size())
            return false;
        for (const auto& [ij, e] : entries) {
            auto it = o.entries.find(ij);
            if (it == o.entries.end() || e.exact != it->second.exact)
                return false;
        }
        return true;
    }

    void set_exact(int i, int j, const Rat& p) { entries[{i, j}] = PmfEntry{p, p.get_d(), 0.0}; }
};

namespace detail {

inline PmfTable exact_table_from_counts(int n, PmfSource src, const std::map<std::pair<int, int>, Int>& counts)
{
    PmfTable t{n, src, {}};
    const Rat total(Int(static_cast<unsigned long>(cayley_count(n))));
    for (const auto& [ij, c] : counts)
        t.set_exact(ij.first, ij.second, Rat(c) / total);
    return t;
}

} // namespace detail

/// [x^i y^j] G_n(x, y, 1) / n^(n-2).
inline PmfTable pmf_oracle_tree(int n, unsigned threads = 1)
{
    const Poly3 g = gen_G(n, threads);
    std::map<std::pair<int, int>, Int> counts;
    for (const auto& [m, c] : g.terms())
        counts[{m.i, m.j}] += c.get_num();
    return detail::exact_table_from_counts(n, PmfSource::oracle_tree, counts);
}

/// Histogram of (T_1, T_2) over every minimal factorization (n <= 6).
inline PmfTable pmf_oracle_dfs(int n)
{
    std::map<std::pair<int, int>, Int> counts;
    for_each_factorization(n, [&](const Factorization& f) { counts[{stat_T(f, 1), stat_T(f, 2)}] += 1; });
    return detail::exact_table_from_counts(n, PmfSource::oracle_dfs, counts);
}

/// The closed form, evaluated verbatim:
///   n! (n-1)^(n-i-j-1) / ((n-i-j)! (n+1)^(n-1))
///   * [ (i+j-2)(n-1) / ((i+j-1)! (n-i-j+1)) + (i+j-1)/(i! j!) - (i+j-1)/(i+j)! ].
inline Rat pmf_theorem1(int i, int j, int n)
{
    if (i < 1 || j < 1 || n < i + j)
        throw validation_error("pmf_theorem1 needs i, j >= 1 and n >= i + j");
    const int s = i + j;
    const Rat prefactor = Rat(factorial(n)) * rat_pow(n - 1, n - s - 1) /
                          (Rat(factorial(n - s)) * rat_pow(n + 1, n - 1));
    const Rat bracket = Rat(s - 2) * (n - 1) / (Rat(factorial(s - 1)) * (n - s + 1)) +
                        Rat(s - 1) / Rat(factorial(i) * factorial(j)) - Rat(s - 1) / Rat(factorial(s));
    return prefactor * bracket;
}

inline PmfTable pmf_theorem1_table(int n)
{
    PmfTable t{n, PmfSource::theorem1, {}};
    for (int i = 1; i < n; ++i)
        for (int j = 1; i + j <= n; ++j)
            t.set_exact(i, j, pmf_theorem1(i, j, n));
    return t;
}

/// e^-2 [ (i+j-2)/(i+j-1)! + (i+j-1)/(i! j!) - (i+j-1)/(i+j)! ].
inline double pmf_limit(int i, int j)
{
    if (i < 1 || j < 1)
        throw validation_error("pmf_limit needs i, j >= 1");
    const int s = i + j;
    return std::exp(-2.0) * ((s - 2) / std::tgamma(s) + (s - 1) / (std::tgamma(i + 1) * std::tgamma(j + 1)) -
                             (s - 1) / std::tgamma(s + 1));
}

/// Limit law on the window i + j <= window.
inline PmfTable pmf_limit_table(int window)
{
    PmfTable t{0, PmfSource::limit, {}};
    for (int i = 1; i < window; ++i)
        for (int j = 1; i + j <= window; ++j)
            t.entries[{i, j}] = PmfEntry{std::nullopt, pmf_limit(i, j), 0.0};
    return t;
}

/// Empirical (deg_1, deg'_2) frequencies over `samples` uniform Cayley trees;
/// sample s uses the generator stream (seed, s), so the table depends only on
/// (n, samples, seed).
inline PmfTable pmf_montecarlo(int n, std::uint64_t samples, std::uint64_t seed, unsigned threads = 1)
{
    if (n < 2)
        throw validation_error("pmf_montecarlo needs n >= 2");
    if (samples < 1)
        throw validation_error("pmf_montecarlo needs at least one sample");
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), samples));
    std::vector<std::map<std::pair<int, int>, std::uint64_t>> partial(workers);
    parallel_ranges(samples, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        PruferStatsScratch scratch;
        auto& counts = partial[w];
        for (std::uint64_t s = begin; s < end; ++s) {
            const PruferSeq p = sample_prufer(n, seed, s);
            const TreeStats st = prufer_stats(n, p.seq, scratch);
            ++counts[{st.deg1, st.deg2_prime}];
        }
    });
    std::map<std::pair<int, int>, std::uint64_t> counts;
    for (const auto& part : partial)
        for (const auto& [ij, c] : part)
            counts[ij] += c;
    PmfTable t{n, PmfSource::montecarlo, {}};
    const auto total = static_cast<double>(samples);
    for (const auto& [ij, c] : counts) {
        const double p = static_cast<double>(c) / total;
        t.entries[ij] = PmfEntry{std::nullopt, p, std::sqrt(p * (1.0 - p) / total)};
    }
    return t;
}

/// Marginal of deg_1: C(n-2, i-1) (n-1)^(n-1-i) / n^(n-2).
inline Rat deg1_marginal(int n, int i)
{
    if (i < 1 || i > n - 1)
        return 0;
    return Rat(binomial(n - 2, i - 1)) * rat_pow(n - 1, n - 1 - i) / rat_pow(n, n - 2);
}

// ---------------------------------------------------------------------------
// Serialization

inline constexpr int pmf_schema_version = 1;

/// Header: n,source,i,j,p_num,p_den,p_float,stderr. Exact cells leave stderr 0.
inline std::string to_csv(const PmfTable& t, bool header = true)
{
    std::ostringstream out;
    out.precision(17);
    if (header)
        out << "n,source,i,j,p_num,p_den,p_float,stderr\n";
    for (const auto& [ij, e] : t.entries) {
        out << t.n << ',' << to_string(t.source) << ',' << ij.first << ',' << ij.second << ',';
        if (e.exact)
            out << e.exact->get_num().get_str() << ',' << e.exact->get_den().get_str() << ',';
        else
            out << ",,";
        out << e.p << ',' << e.stderr_ << '\n';
    }
    return out.str();
}

inline nlohmann::ordered_json to_json(const PmfTable& t)
{
    nlohmann::ordered_json j;
    j["schema_version"] = pmf_schema_version;
    j["n"] = t.n;
    j["source"] = to_string(t.source);
    auto cells = nlohmann::ordered_json::array();
    for (const auto& [ij, e] : t.entries) {
        nlohmann::ordered_json c;
        c["i"] = ij.first;
        c["j"] = ij.second;
        if (e.exact)
            c["p"] = to_string(*e.exact);
        else {
            c["p_float"] = e.p;
            c["stderr"] = e.stderr_;
        }
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    if (is_exact(t.source))
        j["total"] = to_string(t.exact_total());
    return j;
}

// ---------------------------------------------------------------------------
// Oracle vs closed-form comparison

struct CompareRow {
    int n = 0;
    int i = 0;
    int j = 0;
    Rat oracle;
    Rat theorem1;
    Rat abs_diff;
    std::optional<Rat> rel_diff; ///< |diff| / oracle; absent when the oracle cell is 0
};

struct CompareReport {
    std::vector<CompareRow> rows;
    std::map<int, Rat> oracle_total;
    std::map<int, Rat> theorem1_total;
};

inline CompareReport compare_report(int n_max, unsigned threads = 1)
{
    detail::require_cap(n_max, 2, max_enumerated_tree_size, "compare", "the exact oracle enumerates all trees");
    CompareReport r;
    for (int n = 2; n <= n_max; ++n) {
        const PmfTable oracle = pmf_oracle_tree(n, threads);
        Rat thm_total = 0;
        for (int i = 1; i < n; ++i)
            for (int j = 1; i + j <= n; ++j) {
                CompareRow row{n, i, j, oracle.exact(i, j), pmf_theorem1(i, j, n), 0, std::nullopt};
                row.abs_diff = abs(row.oracle - row.theorem1);
                if (row.oracle != 0)
                    row.rel_diff = Rat(row.abs_diff / row.oracle);
                thm_total += row.theorem1;
                r.rows.push_back(std::move(row));
            }
        r.oracle_total[n] = oracle.exact_total();
        r.theorem1_total[n] = thm_total;
    }
    return r;
}

inline nlohmann::ordered_json to_json(const CompareReport& r)
{
    nlohmann::ordered_json j;
    j["schema_version"] = pmf_schema_version;
    j["status"] = "contested";
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json o;
        o["n"] = row.n;
        o["i"] = row.i;
        o["j"] = row.j;
        o["oracle"] = to_string(row.oracle);
        o["theorem1"] = to_string(row.theorem1);
        o["abs_diff"] = to_string(row.abs_diff);
        o["rel_diff"] = row.rel_diff ? nlohmann::ordered_json(to_string(*row.rel_diff)) : nlohmann::ordered_json();
        o["agree"] = row.oracle == row.theorem1;
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    auto totals = nlohmann::ordered_json::array();
    for (const auto& [n, total] : r.oracle_total) {
        nlohmann::ordered_json o;
        o["n"] = n;
        o["oracle_total"] = to_string(total);
        o["theorem1_total"] = to_string(r.theorem1_total.at(n));
        o["theorem1_sums_to_one"] = r.theorem1_total.at(n) == 1;
        totals.push_back(std::move(o));
    }
    j["totals"] = std::move(totals);
    return j;
}

inline std::string to_text(const CompareReport& r)
{
    std::ostringstream out;
    out << "  n   i   j  oracle          theorem1        |diff|\n";
    char buf[256];
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%3d %3d %3d  %-15s %-15s %s\n", row.n, row.i, row.j,
                      to_string(row.oracle).c_str(), to_string(row.theorem1).c_str(),
                      to_string(row.abs_diff).c_str());
        out << buf;
    }
    for (const auto& [n, total] : r.oracle_total)
        out << "n=" << n << "  sum oracle = " << to_string(total)
            << "  sum theorem1 = " << to_string(r.theorem1_total.at(n))
            << (r.theorem1_total.at(n) == 1 ? "" : "  [theorem1 does not sum to 1]") << "\n";
    return out.str();
}

} // namespace mfact
