// mfact: command-line front end for minimal factorizations of the n-cycle,
// Cayley trees, the bijections between them, the identity suite and the joint
// law of (T_1, T_2).
//
// Exit codes: 0 ok, 1 settled identity failure, 2 parse / bad input,
// 3 size cap exceeded, 4 input outside the operation's domain.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mfact/bijection.hpp"
#include "mfact/distribution.hpp"
#include "mfact/parallel.hpp"
#include "mfact/perm.hpp"
#include "mfact/tree.hpp"
#include "mfact/verify.hpp"

namespace {

using namespace mfact;
using ojson = nlohmann::ordered_json;

enum Exit { ok = 0, settled_fail = 1, bad_input = 2, over_cap = 3, out_of_domain = 4 };

struct Common {
    unsigned threads = 0;
    std::string format = "text";
    std::string output;
};

/// Everything goes through one buffer so that --output and stdout get the same bytes.
class Sink {
public:
    explicit Sink(const std::string& path)
        : path_(path)
    {
    }
    std::ostream& out() { return buf_; }
    void flush()
    {
        if (path_.empty()) {
            std::cout << buf_.str() << std::flush;
            return;
        }
        std::ofstream f(path_, std::ios::binary);
        if (!f)
            throw validation_error("cannot write " + path_);
        f << buf_.str();
    }

private:
    std::string path_;
    std::ostringstream buf_;
};

std::string tree_text(const VertexTree& t)
{
    std::string s;
    for (const auto& [u, v] : t.edges())
        s += (s.empty() ? "" : " ") + std::to_string(u) + "-" + std::to_string(v);
    return s;
}

ojson triple_json(const StatTriple& s, bool tree_side)
{
    ojson j;
    j[tree_side ? "deg1" : "T1"] = s.t1;
    j[tree_side ? "deg2_prime" : "T2"] = s.t2;
    j[tree_side ? "L1" : "M1"] = s.m1;
    return j;
}

std::string triple_text(const StatTriple& s)
{
    return "(" + std::to_string(s.t1) + "," + std::to_string(s.t2) + "," + std::to_string(s.m1) + ")";
}

void emit_tree(std::ostream& out, const std::string& format, std::uint64_t index, const VertexTree& t, bool stats)
{
    if (format == "json") {
        if (!stats) {
            out << to_json(t).dump() << "\n";
            return;
        }
        ojson j;
        j["tree"] = to_json(t);
        j["stats"] = triple_json(tree_triple(t), true);
        out << j.dump() << "\n";
    } else if (format == "csv") {
        out << index << "," << tree_text(t);
        if (stats) {
            const auto s = tree_triple(t);
            out << "," << s.t1 << "," << s.t2 << "," << s.m1;
        }
        out << "\n";
    } else {
        out << tree_text(t);
        if (stats)
            out << "  " << triple_text(tree_triple(t));
        out << "\n";
    }
}

void emit_factorization(std::ostream& out, const std::string& format, std::uint64_t index, const Factorization& f,
                        bool stats)
{
    if (format == "json") {
        if (!stats) {
            out << ojson(to_string(f)).dump() << "\n";
            return;
        }
        ojson j;
        j["factorization"] = to_string(f);
        j["stats"] = triple_json(triple_of(f), false);
        out << j.dump() << "\n";
    } else if (format == "csv") {
        out << index << "," << to_string(f);
        if (stats) {
            const auto s = triple_of(f);
            out << "," << s.t1 << "," << s.t2 << "," << s.m1;
        }
        out << "\n";
    } else {
        out << to_string(f);
        if (stats)
            out << "  " << triple_text(triple_of(f));
        out << "\n";
    }
}

void emit_count(std::ostream& out, const std::string& format, std::uint64_t count)
{
    if (format == "json")
        out << ojson{{"count", count}}.dump() << "\n";
    else if (format == "csv")
        out << "count," << count << "\n";
    else
        out << "count " << count << "\n";
}

void csv_header(std::ostream& out, const std::string& format, bool stats, bool trees)
{
    if (format != "csv")
        return;
    out << "index," << (trees ? "edges" : "factorization");
    if (stats)
        out << (trees ? ",deg1,deg2_prime,L1" : ",T1,T2,M1");
    out << "\n";
}

// ---------------------------------------------------------------------------

struct EnumerateArgs {
    std::string what = "factorizations";
    int n = 0;
    bool stats = false;
};

int cmd_enumerate(const EnumerateArgs& a, const Common& c)
{
    Sink sink(c.output);
    auto& out = sink.out();
    const bool trees = a.what == "trees";
    csv_header(out, c.format, a.stats, trees);
    std::uint64_t count = 0;
    if (trees) {
        detail::require_cap(a.n, 2, max_enumerated_tree_size, "enumerate trees", "use sample for n > 9");
        for_each_tree(a.n, [&](const VertexTree& t) { emit_tree(out, c.format, count++, t, a.stats); });
    } else {
        detail::require_cap(a.n, 2, max_enumerated_factorization_size, "enumerate factorizations",
                            "enumerate trees (n <= 9) and map them with bijection --direction e_inverse");
        for_each_factorization(a.n,
                               [&](const Factorization& f) { emit_factorization(out, c.format, count++, f, a.stats); });
    }
    emit_count(out, c.format, count);
    sink.flush();
    return ok;
}

struct SampleArgs {
    int n = 0;
    std::uint64_t count = 1;
    std::uint64_t seed = 0;
    bool stats = false;
};

inline constexpr int max_sample_n = 10'000'000;

int cmd_sample(const SampleArgs& a, const Common& c)
{
    detail::require_cap(a.n, 2, max_sample_n, "sample", "trees are held in memory");
    Sink sink(c.output);
    auto& out = sink.out();
    csv_header(out, c.format, a.stats, true);
    for (std::uint64_t s = 0; s < a.count; ++s)
        emit_tree(out, c.format, s, sample_tree(a.n, a.seed, s), a.stats);
    emit_count(out, c.format, a.count);
    sink.flush();
    return ok;
}

// ---------------------------------------------------------------------------

struct BijectionArgs {
    std::string input;
    std::string input_file;
    std::string direction;
    int n = 0;
    int k = 0;
    bool roundtrip = false;
};

enum class InputKind { factorization, vertex_tree, edge_tree };

std::string read_input(const BijectionArgs& a)
{
    if (!a.input_file.empty()) {
        std::ifstream f(a.input_file);
        if (!f)
            throw parse_error("cannot read " + a.input_file);
        return std::string(std::istreambuf_iterator<char>(f), {});
    }
    if (a.input.empty())
        throw parse_error("bijection needs --input or --input-file");
    return a.input;
}

void print_object(std::ostream& out, const std::string& format, const ojson& j, const std::string& text)
{
    out << (format == "json" ? j.dump() : text) << "\n";
}

int cmd_bijection(const BijectionArgs& a, const Common& c)
{
    const std::string text = read_input(a);
    const auto first = text.find_first_not_of(" \t\r\n");
    InputKind kind = InputKind::factorization;
    nlohmann::json doc;
    if (first != std::string::npos && text[first] == '{') {
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("bad JSON input: ") + e.what());
        }
        kind = doc.contains("labels") ? InputKind::vertex_tree : InputKind::edge_tree;
    }

    Sink sink(c.output);
    auto& out = sink.out();
    auto show_f = [&](const Factorization& f) { print_object(out, c.format, ojson(to_string(f)), to_string(f)); };
    auto show_e = [&](const EdgeTree& t) { print_object(out, c.format, to_json(t), to_json(t).dump()); };
    auto show_v = [&](const VertexTree& t) { print_object(out, c.format, to_json(t), to_json(t).dump()); };
    auto show_d = [&](const DecoratedTree& d) { print_object(out, c.format, to_json(d), to_json(d).dump()); };
    auto verdict = [&](bool same) {
        out << (same ? "OK" : "MISMATCH") << "\n";
        return same ? ok : settled_fail;
    };

    int rc = ok;
    switch (kind) {
    case InputKind::factorization: {
        const Factorization f = parse_factorization(text, a.n);
        require_minimal(f, "bijection");
        if (a.roundtrip) {
            const EdgeTree t = e_map(f);
            const Factorization back = e_inverse(t);
            show_f(f);
            show_e(t);
            show_f(back);
            rc = verdict(back == f);
            break;
        }
        const std::string dir = a.direction.empty() ? "e_map" : a.direction;
        if (dir == "e_map")
            show_e(e_map(f));
        else if (dir == "f_map")
            show_d(f_map(f));
        else if (dir == "tree")
            show_v(alpha_inverse(e_map(f)));
        else if (dir == "triple") {
            const StatTriple s = verify_triple(f);
            print_object(out, c.format, triple_json(s, false), triple_text(s));
        } else
            throw parse_error("direction '" + dir + "' does not apply to a factorization (e_map, f_map, tree, triple)");
        break;
    }
    case InputKind::edge_tree: {
        const EdgeTree t = edge_tree_from_json(doc);
        if (a.roundtrip) {
            const Factorization f = e_inverse(t);
            const EdgeTree back = e_map(f);
            show_e(t);
            show_f(f);
            show_e(back);
            rc = verdict(back == t);
            break;
        }
        const std::string dir = a.direction.empty() ? "e_inverse" : a.direction;
        if (dir == "e_inverse")
            show_f(e_inverse(t));
        else if (dir == "alpha_inverse")
            show_v(alpha_inverse(t));
        else if (dir == "find_labels")
            show_d(find_labels(t, a.k > 0 ? a.k : t.n()));
        else
            throw parse_error("direction '" + dir +
                              "' does not apply to an edge-labeled tree (e_inverse, alpha_inverse, find_labels)");
        break;
    }
    case InputKind::vertex_tree: {
        const VertexTree t = vertex_tree_from_json(doc);
        if (a.roundtrip) {
            const EdgeTree e = alpha(t);
            const VertexTree back = alpha_inverse(e);
            show_v(t);
            show_e(e);
            show_v(back);
            rc = verdict(back == t);
            break;
        }
        const std::string dir = a.direction.empty() ? "alpha" : a.direction;
        if (dir == "alpha")
            show_e(alpha(t));
        else if (dir == "e_inverse")
            show_f(e_inverse(alpha(t)));
        else if (dir == "triple") {
            const StatTriple s = tree_triple(t);
            print_object(out, c.format, triple_json(s, true), triple_text(s));
        } else
            throw parse_error("direction '" + dir + "' does not apply to a Cayley tree (alpha, e_inverse, triple)");
        break;
    }
    }
    sink.flush();
    return rc;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    int n_max = 7;
    std::string report = "verify_report.json";
};

int cmd_verify(const VerifyArgs& a, const Common& c)
{
    const Suite suite = suite_from_string(a.suite);
    const SuiteReport r = run_suite(suite, a.n_max, resolve_threads(c.threads));
    const std::string json = to_json(r).dump(2) + "\n";
    if (!a.report.empty()) {
        std::ofstream f(a.report, std::ios::binary);
        if (!f)
            throw validation_error("cannot write report " + a.report);
        f << json;
    }
    Sink sink(c.output);
    if (c.format == "json")
        sink.out() << json;
    else if (c.format == "csv") {
        sink.out() << "id,status,range,verdict\n";
        for (const auto& v : r.verdicts)
            sink.out() << v.id << "," << to_string(v.status) << ",\"" << v.range << "\"," << (v.pass ? "PASS" : "FAIL")
                       << "\n";
    } else
        sink.out() << to_text(r);
    sink.flush();
    return r.settled_pass() ? ok : settled_fail;
}

// ---------------------------------------------------------------------------

struct PmfArgs {
    int n = 0;
    std::string source = "oracle-tree";
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    int i = 0;
    int j = 0;
};

inline constexpr int max_theorem1_table_n = 200;
inline constexpr int max_theorem1_cell_n = 100000;

std::string pmf_text(const PmfTable& t)
{
    std::ostringstream out;
    out.precision(10);
    out << "n=" << t.n << " source=" << to_string(t.source) << "\n";
    for (const auto& [ij, e] : t.entries) {
        out << "(" << ij.first << "," << ij.second << ") ";
        if (e.exact)
            out << to_string(*e.exact) << "  ~" << e.p;
        else
            out << e.p << " +- " << e.stderr_;
        out << "\n";
    }
    if (is_exact(t.source))
        out << "total " << to_string(t.exact_total()) << "\n";
    return out.str();
}

int cmd_pmf(const PmfArgs& a, const Common& c)
{
    const PmfSource src = pmf_source_from_string(a.source);
    const bool cell = a.i > 0 || a.j > 0;
    if (cell && (a.i < 1 || a.j < 1))
        throw validation_error("--i and --j must both be >= 1");
    PmfTable t;
    switch (src) {
    case PmfSource::oracle_tree:
        detail::require_cap(a.n, 2, max_enumerated_tree_size, "pmf oracle-tree", "use montecarlo for n > 9");
        t = pmf_oracle_tree(a.n, resolve_threads(c.threads));
        break;
    case PmfSource::oracle_dfs:
        detail::require_cap(a.n, 2, max_enumerated_factorization_size, "pmf oracle-dfs",
                            "use oracle-tree for n <= 9 or montecarlo beyond");
        t = pmf_oracle_dfs(a.n);
        break;
    case PmfSource::theorem1:
        if (cell) {
            detail::require_cap(a.n, 2, max_theorem1_cell_n, "pmf theorem1 cell");
            t = PmfTable{a.n, src, {}};
            t.set_exact(a.i, a.j, pmf_theorem1(a.i, a.j, a.n));
        } else {
            detail::require_cap(a.n, 2, max_theorem1_table_n, "pmf theorem1 table", "pass --i and --j for one cell");
            t = pmf_theorem1_table(a.n);
        }
        break;
    case PmfSource::limit:
        if (cell) {
            t = PmfTable{0, src, {}};
            t.entries[{a.i, a.j}] = PmfEntry{std::nullopt, pmf_limit(a.i, a.j), 0.0};
        } else {
            detail::require_cap(a.n, 2, max_theorem1_table_n, "pmf limit window");
            t = pmf_limit_table(a.n);
        }
        break;
    case PmfSource::montecarlo:
        detail::require_cap(a.n, 2, max_sample_n, "pmf montecarlo");
        t = pmf_montecarlo(a.n, a.samples, a.seed, resolve_threads(c.threads));
        break;
    }
    if (cell && src != PmfSource::theorem1 && src != PmfSource::limit) {
        PmfTable one{t.n, t.source, {}};
        auto it = t.entries.find({a.i, a.j});
        one.entries[{a.i, a.j}] =
            it != t.entries.end() ? it->second
                                  : (is_exact(src) ? PmfEntry{Rat(0), 0.0, 0.0} : PmfEntry{std::nullopt, 0.0, 0.0});
        t = std::move(one);
    }
    Sink sink(c.output);
    if (c.format == "json")
        sink.out() << to_json(t).dump(2) << "\n";
    else if (c.format == "csv")
        sink.out() << to_csv(t);
    else
        sink.out() << pmf_text(t);
    sink.flush();
    return ok;
}

struct CompareArgs {
    int n_max = 6;
};

int cmd_compare(const CompareArgs& a, const Common& c)
{
    const CompareReport r = compare_report(a.n_max, resolve_threads(c.threads));
    Sink sink(c.output);
    if (c.format == "json")
        sink.out() << to_json(r).dump(2) << "\n";
    else if (c.format == "csv") {
        sink.out() << "n,i,j,oracle,theorem1,abs_diff,rel_diff\n";
        for (const auto& row : r.rows)
            sink.out() << row.n << "," << row.i << "," << row.j << "," << to_string(row.oracle) << ","
                       << to_string(row.theorem1) << "," << to_string(row.abs_diff) << ","
                       << (row.rel_diff ? to_string(*row.rel_diff) : "") << "\n";
    } else
        sink.out() << to_text(r);
    sink.flush();
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minimal factorizations of the n-cycle, Cayley trees and the law of (T1, T2)", "mfact"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--threads", common.threads, "worker threads (default: MFACT_THREADS, else all cores)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("-o,--output", common.output, "write output to this file instead of stdout");

    EnumerateArgs ea;
    auto* enumerate = app.add_subcommand("enumerate", "list every factorization (n <= 6) or tree (n <= 9)");
    enumerate->add_option("--what", ea.what)
        ->check(CLI::IsMember({"trees", "factorizations"}))
        ->capture_default_str();
    enumerate->add_option("--n", ea.n, "cycle / tree size")->required();
    enumerate->add_flag("--stats", ea.stats, "append (T1,T2,M1) resp. (deg1,deg2',|L1|)");

    BijectionArgs ba;
    auto* bijection = app.add_subcommand("bijection", "apply e_map, e_inverse, alpha, ... to one object");
    bijection->add_option("--input", ba.input, "factorization text like '(1 3)(2 3)' or tree JSON");
    bijection->add_option("--input-file", ba.input_file, "read the input from a file");
    bijection->add_option("--direction", ba.direction,
                          "e_map | f_map | tree | triple (factorization); e_inverse | alpha_inverse | find_labels "
                          "(edge tree); alpha | e_inverse | triple (Cayley tree)");
    bijection->add_option("--n", ba.n, "cycle size of a factorization (default: pairs + 1)");
    bijection->add_option("--k", ba.k, "find_labels: recover labels 1..k (default n)");
    bijection->add_flag("--roundtrip", ba.roundtrip, "map there and back and check equality");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run the identity suite; exit 1 iff a settled check fails");
    verify->add_option("--suite", va.suite)->check(CLI::IsMember({"settled", "contested", "all"}))->capture_default_str();
    verify->add_option("--n-max", va.n_max, "largest n (enumerated G up to n-max + 1, at most 9)")
        ->capture_default_str();
    verify->add_option("--report", va.report, "JSON report path (empty: no file)")->capture_default_str();

    PmfArgs pa;
    auto* pmf = app.add_subcommand("pmf", "joint law of (T1, T2) from one source");
    pmf->add_option("--n", pa.n, "cycle size (window i+j <= n for the limit law)")->required();
    pmf->add_option("--source", pa.source)
        ->check(CLI::IsMember({"oracle-tree", "oracle-dfs", "theorem1", "limit", "montecarlo"}))
        ->capture_default_str();
    pmf->add_option("--samples", pa.samples, "montecarlo sample count")->capture_default_str()->check(CLI::PositiveNumber);
    pmf->add_option("--seed", pa.seed)->capture_default_str();
    pmf->add_option("--i", pa.i, "restrict to one cell (needs --j)");
    pmf->add_option("--j", pa.j, "restrict to one cell (needs --i)");

    CompareArgs ca;
    auto* compare = app.add_subcommand("compare", "exact oracle against the closed-form law for n <= n-max");
    compare->add_option("--n-max", ca.n_max)->capture_default_str();

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "uniform random Cayley trees");
    sample->add_option("--n", sa.n)->required();
    sample->add_option("--count", sa.count)->capture_default_str();
    sample->add_option("--seed", sa.seed)->capture_default_str();
    sample->add_flag("--stats", sa.stats, "append (deg1,deg2',|L1|)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : bad_input;
    }

    try {
        if (*enumerate)
            return cmd_enumerate(ea, common);
        if (*bijection)
            return cmd_bijection(ba, common);
        if (*verify)
            return cmd_verify(va, common);
        if (*pmf)
            return cmd_pmf(pa, common);
        if (*compare)
            return cmd_compare(ca, common);
        if (*sample)
            return cmd_sample(sa, common);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return bad_input;
    } catch (const validation_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return bad_input;
    } catch (const cap_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return over_cap;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return out_of_domain;
    } catch (const consistency_error& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return settled_fail;
    }
    return ok;
}
