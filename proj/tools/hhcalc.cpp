// hhcalc: Hochschild (co)homology of exterior algebras from the command line.
//
//   hhcalc table      --n N --max-degree D [--ring R | --all-rings] [--method M] [--kind K]
//   hhcalc verify     --n N --max-degree D [--ring R | --all-rings]
//   hhcalc resolution --n N --max-degree D
//   hhcalc cup        --n N --max-degree D --ring R
//
// Exit status: 0 success, 1 a verification suite failed, 2 usage error,
// 3 size limit exceeded, 4 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hh/hh.hpp"

namespace {

using hh::Integer;
using hh::Kind;
using hh::Method;
using hh::Ring;
using json = nlohmann::json;

enum ExitCode : int {
    exit_ok = 0,
    exit_failed = 1,
    exit_usage = 2,
    exit_size_limit = 3,
    exit_internal = 4,
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int n = 1;
    int max_degree = 3;
    std::string ring = "Z";
    bool all_rings = false;
    std::string format = "text";
    std::string method = "closed";
    std::string kind = "both";
    std::optional<std::size_t> size_limit;
    int verbosity = 0;
    bool timing = false;
};

class Stopwatch {
public:
    double ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::size_t size_limit(const Options& o)
{
    if (o.size_limit) {
        return *o.size_limit;
    }
    try {
        return hh::size_limit_from_env();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<Ring> rings_of(const Options& o)
{
    if (o.all_rings) {
        return {Ring::integers(), Ring::rationals(), Ring::prime_field(2), Ring::prime_field(3)};
    }
    try {
        return {Ring::parse(o.ring)};
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<Kind> kinds_of(const Options& o)
{
    if (o.kind == "homology") {
        return {Kind::homology};
    }
    if (o.kind == "cohomology") {
        return {Kind::cohomology};
    }
    return {Kind::homology, Kind::cohomology};
}

std::string group_text(const hh::HomologyGroup& g, const Ring& ring)
{
    if (ring.kind() == Ring::Kind::integers) {
        return g.to_string();
    }
    return g.free_rank == 0 ? "0" : ring.to_string() + "^" + std::to_string(g.free_rank);
}

json integer_json(const Integer& z)
{
    if (z.fits_slong_p()) {
        return z.get_si();
    }
    return z.get_str();
}

json torsion_json(const hh::HomologyGroup& g)
{
    json t = json::array();
    for (const auto& d : g.torsion) {
        t.push_back(integer_json(d));
    }
    return t;
}

std::string torsion_csv(const hh::HomologyGroup& g)
{
    std::string out;
    for (const auto& d : g.torsion) {
        out += (out.empty() ? "" : ";") + d.get_str();
    }
    return out;
}

std::string hh_symbol(Kind kind, int k)
{
    return std::string("HH") + (kind == Kind::homology ? "_" : "^") + std::to_string(k);
}

// ---------------------------------------------------------------------------
// table

struct TableRecord {
    Kind kind;
    int k;
    Ring ring;
    hh::GroupResult result;
    double elapsed_ms;
};

int run_table(const Options& o)
{
    const auto method = hh::parse_method(o.method);
    const auto rings = rings_of(o);
    std::vector<TableRecord> records;
    for (Kind kind : kinds_of(o)) {
        if (*method == Method::closed) {
            for (const Ring& ring : rings) {
                for (int k = 0; k <= o.max_degree; ++k) {
                    Stopwatch sw;
                    const auto cf = kind == Kind::homology ? hh::closed_form_homology(o.n, k, ring)
                                                           : hh::closed_form_cohomology(o.n, k, ring);
                    // the torsion override only matters over Z
                    const bool flagged = cf.flagged && ring.kind() == Ring::Kind::integers;
                    records.push_back({kind, k, ring, {cf.group, flagged, cf.raw_torsion}, sw.ms()});
                }
            }
            continue;
        }
        Stopwatch build;
        const auto c = hh::build_integer_complex(o.n, o.max_degree + 1, kind, *method, size_limit(o));
        if (o.verbosity > 0) {
            std::cerr << "built " << hh::kind_name(kind) << " complex (" << hh::method_name(*method) << ") in "
                      << build.ms() << " ms\n";
        }
        for (const Ring& ring : rings) {
            for (int k = 0; k <= o.max_degree; ++k) {
                Stopwatch sw;
                hh::GroupResult r{hh::homology(c, k, ring), false, 0};
                records.push_back({kind, k, ring, std::move(r), sw.ms()});
            }
        }
    }

    if (o.format == "csv") {
        std::cout << "n,k,ring,free_rank,torsion_divisors,method,elapsed_ms,kind\n";
    } else if (o.format == "text") {
        std::cout << "# Hochschild (co)homology of the exterior algebra on " << o.n << " generator"
                  << (o.n == 1 ? "" : "s") << ", method " << hh::method_name(*method) << "\n";
    }
    for (const auto& r : records) {
        const std::string elapsed = o.timing ? std::to_string(static_cast<long long>(r.elapsed_ms + 0.5)) : "0";
        if (o.format == "json") {
            json j;
            j["n"] = o.n;
            j["k"] = r.k;
            j["kind"] = hh::kind_name(r.kind);
            j["ring"] = r.ring.to_string();
            j["method"] = hh::method_name(*method);
            j["free"] = r.result.group.free_rank;
            j["torsion"] = torsion_json(r.result.group);
            j["flagged"] = r.result.flagged;
            if (r.result.flagged) {
                j["raw_torsion"] = integer_json(r.result.raw_torsion);
            }
            if (o.timing) {
                j["elapsed_ms"] = r.elapsed_ms;
            }
            std::cout << j.dump() << "\n";
        } else if (o.format == "csv") {
            std::cout << o.n << "," << r.k << "," << r.ring.to_string() << "," << r.result.group.free_rank << ","
                      << torsion_csv(r.result.group) << "," << hh::method_name(*method) << "," << elapsed << ","
                      << hh::kind_name(r.kind) << "\n";
        } else {
            std::cout << hh_symbol(r.kind, r.k) << " over " << r.ring.to_string() << " = "
                      << group_text(r.result.group, r.ring);
            if (r.result.flagged) {
                std::cout << "  [closed-form torsion " << r.result.raw_torsion.get_str() << " overridden to 0]";
            }
            if (o.timing) {
                std::cout << "  (" << elapsed << " ms)";
            }
            std::cout << "\n";
        }
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteOutcome {
    hh::SuiteResult result;
    bool size_limited = false;
    double elapsed_ms = 0;
};

SuiteOutcome run_suite(const std::string& name, const std::function<std::vector<hh::SuiteResult>()>& f,
                       std::vector<SuiteOutcome>& out)
{
    Stopwatch sw;
    try {
        auto results = f();
        const double ms = sw.ms();
        for (auto& r : results) {
            out.push_back({std::move(r), false, ms});
        }
    } catch (const hh::SizeLimitError& e) {
        out.push_back({{name, false, e.what()}, true, sw.ms()});
    }
    return out.back();
}

int run_verify(const Options& o)
{
    if (o.format == "csv") {
        throw UsageError("verify supports --format text or json");
    }
    const auto rings = rings_of(o);
    const std::size_t limit = size_limit(o);
    const int n = o.n;
    const int d = o.max_degree;
    bool failed = false;
    bool limited = false;

    std::optional<hh::AgreementReport> agreement;
    std::string agreement_error;
    try {
        agreement = hh::triple_agreement(n, d, rings, {Kind::homology, Kind::cohomology}, limit);
    } catch (const hh::SizeLimitError& e) {
        agreement_error = e.what();
        limited = true;
    }

    std::vector<SuiteOutcome> suites;
    auto one = [](hh::SuiteResult r) { return std::vector<hh::SuiteResult>{std::move(r)}; };
    run_suite("universal coefficients", [&] { return one(hh::universal_coefficients(n, d)); }, suites);
    run_suite("Morse reduction of the bar resolution",
              [&] { return one(hh::morse_reproduces_resolution(n, d, limit)); }, suites);
    run_suite("minimality", [&] { return one(hh::resolution_is_minimal(n, d)); }, suites);
    run_suite("h chain map", [&] { return one(hh::htpy_chain_map(n, d)); }, suites);
    run_suite("h paths", [&] { return one(hh::htpy_paths(n, d)); }, suites);
    run_suite("bar matching", [&] { return one(hh::bar_matching_certificate(n, d, limit)); }, suites);
    run_suite("Koszul chain matching", [&] { return one(hh::koszul_chain_certificate(n, d)); }, suites);
    run_suite("Koszul cochain matching", [&] { return one(hh::koszul_cochain_certificate(n, d)); }, suites);
    run_suite("bar cup over Q", [&] { return hh::bar_cup_suites<hh::Rational>(n, d, limit); }, suites);
    run_suite("bar cup over F2", [&] { return hh::bar_cup_suites<hh::F2>(n, d, limit); }, suites);
    run_suite("reduced cup", [&] { return one(hh::cup_reduced_associative(n, d)); }, suites);
    run_suite("structure tables over Q", [&] { return one(hh::ring_structure_agreement<hh::Rational>(n, d, limit)); },
              suites);
    run_suite("structure tables over F2", [&] { return one(hh::ring_structure_agreement<hh::F2>(n, d, limit)); },
              suites);
    run_suite("characteristic 2 Hilbert series", [&] { return one(hh::char2_hilbert_series(n, d)); }, suites);
    run_suite("generator span", [&] { return one(hh::generator_span(n, d)); }, suites);
    run_suite("shuffle product", [&] { return one(hh::shuffle_char2(n, d / 2, limit)); }, suites);

    for (const auto& s : suites) {
        failed = failed || (!s.result.passed && !s.size_limited);
        limited = limited || s.size_limited;
    }
    if (agreement && !agreement->ok()) {
        failed = true;
    }

    const std::size_t cells = agreement ? agreement->cells.size() : 0;
    if (o.format == "json") {
        if (agreement) {
            for (const auto& c : agreement->cells) {
                json j;
                j["n"] = c.n;
                j["k"] = c.k;
                j["kind"] = hh::kind_name(c.kind);
                j["ring"] = c.ring.to_string();
                j["agree"] = c.agree();
                j["flagged"] = c.flagged;
                j["oracle"] = {{"free", c.oracle.free_rank}, {"torsion", torsion_json(c.oracle)}};
                j["reduced"] = {{"free", c.reduced.free_rank}, {"torsion", torsion_json(c.reduced)}};
                j["closed"] = {{"free", c.closed.free_rank}, {"torsion", torsion_json(c.closed)}};
                std::cout << j.dump() << "\n";
            }
        } else {
            std::cout << json{{"suite", "triple agreement"}, {"passed", false}, {"detail", agreement_error}}.dump()
                      << "\n";
        }
        for (const auto& s : suites) {
            json j{{"suite", s.result.name}, {"passed", s.result.passed}, {"detail", s.result.detail}};
            if (o.timing) {
                j["elapsed_ms"] = s.elapsed_ms;
            }
            std::cout << j.dump() << "\n";
        }
    } else {
        if (!agreement) {
            std::cout << "FAIL triple agreement: " << agreement_error << "\n";
        } else if (agreement->ok()) {
            std::cout << "oracle=reduced=closed-form for " << cells << " (k,ring) cells\n";
        } else {
            const auto diff = agreement->mismatches();
            std::cout << "MISMATCH in " << diff.size() << " of " << cells << " (k,ring) cells\n";
            for (const auto& line : diff) {
                std::cout << "  " << line << "\n";
            }
        }
        if (agreement) {
            for (const auto& c : agreement->cells) {
                if (c.flagged && c.ring.kind() == Ring::Kind::integers) {
                    std::cout << "note: " << hh_symbol(c.kind, c.k) << " over Z: closed-form torsion term "
                              << "overridden to 0, the oracle agrees with the override\n";
                }
            }
        }
        for (const auto& s : suites) {
            std::cout << (s.result.passed ? "PASS " : (s.size_limited ? "LIMIT " : "FAIL ")) << s.result.name;
            if (!s.result.detail.empty()) {
                std::cout << ": " << s.result.detail;
            }
            if (o.timing) {
                std::cout << " (" << static_cast<long long>(s.elapsed_ms + 0.5) << " ms)";
            }
            std::cout << "\n";
        }
    }
    if (failed) {
        return exit_failed;
    }
    return limited ? exit_size_limit : exit_ok;
}

// ---------------------------------------------------------------------------
// resolution

int run_resolution(const Options& o)
{
    if (o.format == "csv") {
        throw UsageError("resolution supports --format text or json");
    }
    const auto r = hh::build_reduced_resolution(o.n, o.max_degree);
    const auto minimal = hh::resolution_is_minimal(o.n, o.max_degree);
    auto print = [](const hh::EnvElement<Integer>& e) { return hh::to_string(e); };
    if (o.format == "json") {
        for (int k = 0; k <= r.max_degree(); ++k) {
            json basis = json::array();
            for (const auto& l : r.basis(k)) {
                basis.push_back(hh::to_string(l));
            }
            std::cout << json{{"degree", k}, {"basis", basis}}.dump() << "\n";
            json entries = json::array();
            for (const auto& e : r.differential(k).triplets()) {
                entries.push_back(json::array({e.row, e.col, print(e.value)}));
            }
            std::cout << json{{"differential", k}, {"target", r.target_degree(k)}, {"entries", entries}}.dump() << "\n";
        }
        std::cout << json{{"minimal", minimal.passed}, {"detail", minimal.detail}}.dump() << "\n";
    } else {
        std::cout << hh::to_text(r, print);
        std::cout << (minimal.passed ? "PASS " : "FAIL ") << minimal.name << ": " << minimal.detail << "\n";
    }
    return minimal.passed ? exit_ok : exit_failed;
}

// ---------------------------------------------------------------------------
// cup

template <class T>
int run_cup_over(const Options& o, const Ring& ring)
{
    const auto rs = hh::ring_structure_constants<T>(o.n, o.max_degree, size_limit(o));
    std::optional<hh::SpanVerdict> with;
    std::optional<hh::SpanVerdict> without;
    if constexpr (hh::coeff_traits<T>::characteristic != 2) {
        with = hh::generator_span_check<T>(o.n, o.max_degree, true);
        without = hh::generator_span_check<T>(o.n, o.max_degree, false);
    }
    auto span_text = [](const hh::SpanVerdict& v) {
        return v.spans ? std::string("spans") : "fails in degree " + std::to_string(v.failing_degree);
    };
    if (o.format == "json") {
        for (std::size_t k = 0; k < rs.names.size(); ++k) {
            std::cout << json{{"degree", k}, {"basis", rs.names[k]}}.dump() << "\n";
        }
        for (const auto& e : rs.table) {
            json product = json::object();
            const auto& names = rs.names[static_cast<std::size_t>(e.left_degree + e.right_degree)];
            for (std::size_t i = 0; i < e.product.size(); ++i) {
                if (!hh::is_zero(e.product[i])) {
                    product[names[i]] = hh::coeff_to_string(e.product[i]);
                }
            }
            std::cout << json{{"left", rs.names[static_cast<std::size_t>(e.left_degree)][e.left]},
                              {"right", rs.names[static_cast<std::size_t>(e.right_degree)][e.right]},
                              {"product", product}}
                             .dump()
                      << "\n";
        }
        json verdict{{"ring", ring.to_string()},
                     {"pushforward_iso", rs.pushforward_iso},
                     {"bar_agrees", rs.bar_agrees},
                     {"checked_pairs", rs.checked_pairs},
                     {"failure", rs.failure}};
        if (with) {
            verdict["span"] = with->spans;
            verdict["span_without_top"] = without->spans;
        }
        std::cout << verdict.dump() << "\n";
    } else {
        std::cout << "# cohomology ring of the exterior algebra on " << o.n << " generator" << (o.n == 1 ? "" : "s")
                  << " over " << ring.to_string() << ", total degree <= " << o.max_degree << "\n";
        for (std::size_t k = 0; k < rs.names.size(); ++k) {
            std::cout << "degree " << k << ":";
            for (const auto& name : rs.names[k]) {
                std::cout << " " << name;
            }
            std::cout << "\n";
        }
        for (const auto& e : rs.table) {
            std::string rhs;
            const auto& names = rs.names[static_cast<std::size_t>(e.left_degree + e.right_degree)];
            for (std::size_t i = 0; i < e.product.size(); ++i) {
                if (hh::is_zero(e.product[i])) {
                    continue;
                }
                const std::string c = hh::coeff_to_string(e.product[i]);
                rhs += (rhs.empty() ? "" : " + ") + (c == "1" ? "" : c + "·") + names[i];
            }
            std::cout << "  (" << rs.names[static_cast<std::size_t>(e.left_degree)][e.left] << ") * ("
                      << rs.names[static_cast<std::size_t>(e.right_degree)][e.right] << ") = "
                      << (rhs.empty() ? "0" : rhs) << "\n";
        }
        std::cout << (rs.verdict() ? "PASS" : "FAIL") << " bar-level products agree through h ("
                  << rs.checked_pairs << " class pairs)" << (rs.failure.empty() ? "" : ": " + rs.failure) << "\n";
        if (with) {
            std::cout << "generator span: " << span_text(*with) << "; without x_[n]⊗1: " << span_text(*without)
                      << "\n";
        } else {
            std::cout << "generator span: not checked in characteristic 2\n";
        }
    }
    const bool span_ok = !with || (with->spans && !without->spans);
    return rs.verdict() && span_ok ? exit_ok : exit_failed;
}

int run_cup(const Options& o)
{
    if (o.format == "csv") {
        throw UsageError("cup supports --format text or json");
    }
    const auto rings = rings_of(o);
    int status = exit_ok;
    for (const Ring& ring : rings) {
        int s = exit_ok;
        if (ring.kind() == Ring::Kind::rationals) {
            s = run_cup_over<hh::Rational>(o, ring);
        } else if (ring.kind() == Ring::Kind::prime_field) {
            switch (ring.characteristic()) {
            case 2: s = run_cup_over<hh::F2>(o, ring); break;
            case 3: s = run_cup_over<hh::F3>(o, ring); break;
            case 5: s = run_cup_over<hh::Zmod<5>>(o, ring); break;
            case 7: s = run_cup_over<hh::Zmod<7>>(o, ring); break;
            default: throw UsageError("cup supports the fields Q, F2, F3, F5 and F7");
            }
        } else if (o.all_rings) {
            continue;
        } else {
            throw UsageError("cup needs a field: Q, F2, F3, F5 or F7");
        }
        status = std::max(status, s);
    }
    return status;
}

void add_common(CLI::App* sub, Options& o, bool with_ring)
{
    sub->add_option("--n", o.n, "number of exterior generators")->required()->check(CLI::Range(1, 8));
    sub->add_option("--max-degree", o.max_degree, "largest degree k")->required()->check(CLI::Range(0, 64));
    if (with_ring) {
        sub->add_option("--ring", o.ring, "coefficients: Z, Q or F<p>");
        sub->add_flag("--all-rings", o.all_rings, "use Z, Q, F2 and F3");
    }
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--size-limit", o.size_limit, "largest number of cells per degree (default $HH_SIZE_LIMIT)");
    sub->add_flag("-v,--verbose", o.verbosity, "progress on stderr");
    sub->add_flag("--timing", o.timing, "report elapsed times");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hochschild (co)homology of exterior algebras"};
    app.require_subcommand(1);
    Options o;
    auto* table = app.add_subcommand("table", "HH_k and HH^k per degree");
    add_common(table, o, true);
    table->add_option("--method", o.method, "closed, reduced or oracle")
        ->check(CLI::IsMember({"closed", "reduced", "oracle"}));
    table->add_option("--kind", o.kind, "homology, cohomology or both")
        ->check(CLI::IsMember({"homology", "cohomology", "both"}));
    auto* verify = app.add_subcommand("verify", "cross-check the three computations and run the suites");
    add_common(verify, o, true);
    auto* resolution = app.add_subcommand("resolution", "print the reduced resolution");
    add_common(resolution, o, false);
    auto* cup = app.add_subcommand("cup", "cohomology ring structure table");
    add_common(cup, o, true);
    cup->get_option("--ring")->default_str("Q");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (cup->parsed() && cup->get_option("--ring")->count() == 0) {
            o.ring = "Q";
        }
        if (table->parsed()) {
            return run_table(o);
        }
        if (verify->parsed()) {
            return run_verify(o);
        }
        if (resolution->parsed()) {
            return run_resolution(o);
        }
        return run_cup(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const hh::SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return exit_size_limit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
}
