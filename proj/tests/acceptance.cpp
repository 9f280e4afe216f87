// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hh/hh.hpp"
#include "oracles.hpp"

using namespace hh;

namespace {

/// Collects the first few failures of one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what)
    {
        ++total_;
        if (!ok && failures_.size() < 5) {
            failures_.push_back(what);
        }
        failed_ += ok ? 0 : 1;
    }

    void suite(const SuiteResult& r) { expect(r.passed, r.name + ": " + r.detail); }

    bool passed() const { return failed_ == 0; }

    std::string summary() const
    {
        std::ostringstream os;
        if (passed()) {
            os << total_ << " checks";
        } else {
            os << failed_ << " of " << total_ << " checks failed";
            for (const auto& f : failures_) {
                os << "; " << f;
            }
        }
        return os.str();
    }

private:
    std::size_t total_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

HomologyGroup group(std::size_t free, std::vector<long> torsion)
{
    return {free, std::vector<Integer>(torsion.begin(), torsion.end())};
}

const std::vector<Ring> all_rings{Ring::integers(), Ring::rationals(), Ring::prime_field(2), Ring::prime_field(3)};

void agreement(Check& c, Kind kind, const std::function<void(Check&, const AgreementReport&, int)>& spots)
{
    for (int n = 1; n <= 3; ++n) {
        const auto report = triple_agreement(n, n == 3 ? 3 : 5, all_rings, {kind});
        for (const auto& cell : report.cells) {
            c.expect(cell.agree(), kind_name(kind) + " n=" + std::to_string(n) + " k=" + std::to_string(cell.k)
                                       + " " + cell.ring.to_string());
        }
        spots(c, report, n);
    }
}

const AgreementCell* find(const AgreementReport& r, int k, const Ring& ring)
{
    for (const auto& c : r.cells) {
        if (c.k == k && c.ring == ring) {
            return &c;
        }
    }
    return nullptr;
}

void spot(Check& c, const AgreementReport& r, int n, int k, const HomologyGroup& expected)
{
    const auto* cell = find(r, k, Ring::integers());
    const std::string what = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " expected "
                             + expected.to_string();
    c.expect(cell != nullptr && cell->oracle == expected && cell->reduced == expected && cell->closed == expected,
             what);
}

Check criterion_homology()
{
    Check c;
    agreement(c, Kind::homology, [](Check& c, const AgreementReport& r, int n) {
        if (n == 2) {
            spot(c, r, 2, 0, group(3, {2}));
        }
        if (n == 1) {
            spot(c, r, 1, 1, group(1, {2}));
        }
        for (const auto& cell : r.cells) {
            if (cell.ring == Ring::prime_field(2)) {
                const auto dim = (std::uint64_t{1} << n)
                                 * multiset_coefficient(static_cast<std::uint64_t>(n),
                                                        static_cast<std::uint64_t>(cell.k));
                c.expect(cell.oracle.free_rank == dim && cell.oracle.torsion.empty(),
                         "F2 dimension n=" + std::to_string(n) + " k=" + std::to_string(cell.k));
            }
        }
    });
    return c;
}

Check criterion_cohomology()
{
    Check c;
    agreement(c, Kind::cohomology, [](Check& c, const AgreementReport& r, int n) {
        if (n == 1) {
            spot(c, r, 1, 0, group(2, {}));
            spot(c, r, 1, 2, group(1, {2}));
            const auto* zero = find(r, 0, Ring::integers());
            c.expect(zero != nullptr && zero->flagged, "HH^0 n=1 flagged");
            const auto cf = closed_form_cohomology(1, 0, Ring::integers());
            c.expect(cf.flagged && cf.raw_torsion != 0 && cf.group.torsion.empty(), "raw HH^0 torsion overridden");
        }
        if (n == 2) {
            spot(c, r, 2, 1, group(4, {2, 2}));
        }
    });
    return c;
}

Check criterion_morse()
{
    Check c;
    for (int n = 1; n <= 3; ++n) {
        c.suite(morse_reproduces_resolution(n, 4));
        c.suite(resolution_is_minimal(n, 4));
    }
    return c;
}

Check criterion_homotopy()
{
    Check c;
    for (int n = 1; n <= 3; ++n) {
        c.suite(htpy_chain_map(n, 4));
        c.suite(htpy_paths(n, 5));
    }
    const BarMorseGraph g(3);
    const auto counts = zigzag_path_counts(g, g.codec().encode(variable_tensor(Multiset{1, 2, 2, 3})));
    const auto end = g.codec().encode({Subset{3}, Subset{2}, Subset{2}, Subset{1}});
    c.expect(counts.count(end) == 1 && counts.at(end) == 1, "one path (1,2,2,3) -> (3,2,2,1)");
    c.expect(counts.size() == 12, "12 endpoints from (1,2,2,3)");
    return c;
}

Check criterion_matchings()
{
    Check c;
    for (int n = 1; n <= 4; ++n) {
        c.suite(bar_matching_certificate(n, 5));
        c.suite(koszul_chain_certificate(n, 5));
        c.suite(koszul_cochain_certificate(n, 5));
    }
    return c;
}

Check criterion_products()
{
    Check c;
    for (int n = 1; n <= 2; ++n) {
        c.suite(ring_structure_agreement<F2>(n, 4));
        c.suite(ring_structure_agreement<Rational>(n, 4));
    }
    for (int n = 1; n <= 3; ++n) {
        const int d = n == 3 ? 3 : 4;
        const auto with = generator_span_check<Rational>(n, d, true);
        const auto without = generator_span_check<Rational>(n, d, false);
        c.expect(with.spans, "generators span n=" + std::to_string(n));
        c.expect(!without.spans, "span fails without x_[n]⊗1 n=" + std::to_string(n));
    }
    return c;
}

Check criterion_uct()
{
    Check c;
    for (int n = 1; n <= 3; ++n) {
        c.suite(universal_coefficients(n, 4));
    }
    return c;
}

// largest j with a nonzero j x j minor
std::size_t minor_rank(const oracle::Dense& m, std::size_t cols)
{
    std::size_t r = 0;
    for (std::size_t j = 1; j <= std::min(m.size(), cols); ++j) {
        if (oracle::minors_gcd(m, cols, j) != 0) {
            r = j;
        }
    }
    return r;
}

oracle::Dense doubled(oracle::Dense m)
{
    for (auto& row : m) {
        for (auto& x : row) {
            x *= 2;
        }
    }
    return m;
}

Check criterion_properties()
{
    Check c;
    std::mt19937 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = oracle::random_zero_pair(rng);
        const auto alpha = oracle::to_sparse(p.alpha, p.m);
        const auto beta = oracle::to_sparse(p.beta, p.c);
        const auto snf = smith_normal_form(beta);
        bool chain = snf.divisors.size() == snf.rank;
        for (std::size_t i = 0; i < snf.divisors.size(); ++i) {
            chain = chain && snf.divisors[i] > 0
                    && (i + 1 == snf.divisors.size() || snf.divisors[i + 1] % snf.divisors[i] == 0);
        }
        c.expect(chain, "divisor chain, trial " + std::to_string(trial));
        c.expect(snf.rank == minor_rank(p.beta, p.c), "SNF rank vs minors, trial " + std::to_string(trial));
        Integer prod = 1;
        for (std::size_t j = 1; j <= std::min<std::size_t>(3, std::min(p.m, p.c)); ++j) {
            prod = j <= snf.rank ? Integer(prod * snf.divisors[j - 1]) : Integer(0);
            c.expect(prod == oracle::minors_gcd(p.beta, p.c, j), "gcd of minors, trial " + std::to_string(trial));
        }

        const auto h = homology_pair(alpha, beta);
        const auto h2 = homology_pair(oracle::to_sparse(doubled(p.alpha), p.m), oracle::to_sparse(doubled(p.beta), p.c));
        std::vector<Integer> twice;
        for (const auto& d : snf.divisors) {
            twice.push_back(2 * d);
        }
        c.expect(h2.free_rank == h.free_rank && h2.torsion == twice, "scaled pair, trial " + std::to_string(trial));
        std::uint64_t lhs = oracle::group_mod_count(h2, 4);
        for (std::size_t i = 0; i < minor_rank(p.alpha, p.m); ++i) {
            lhs *= 4;
        }
        c.expect(lhs == oracle::coset_count(doubled(p.beta), p.c, 4),
                 "scaled pair coset count, trial " + std::to_string(trial));
    }

    for (int n = 1; n <= 3; ++n) {
        const std::string tag = " n=" + std::to_string(n);
        c.expect(validate_complex(build_bar_resolution(n, 4)).ok(), "bar resolution" + tag);
        c.expect(validate_complex(build_bar_hochschild_chain(n, 4)).ok(), "bar chain" + tag);
        c.expect(validate_complex(build_bar_hochschild_cochain(n, 4)).ok(), "bar cochain" + tag);
        c.expect(validate_complex(build_reduced_resolution(n, 5)).ok(), "reduced resolution" + tag);
        c.expect(validate_complex(build_reduced_chain(n, 5)).ok(), "reduced chain" + tag);
        c.expect(validate_complex(build_reduced_cochain(n, 5)).ok(), "reduced cochain" + tag);
        c.expect(validate_complex(reduce(build_bar_resolution(n, 4), bar_matching(n, 4))).ok(), "Morse complex" + tag);
        const auto split = split_parity(build_reduced_chain(n, 5));
        c.expect(validate_complex(split.primary).ok() && validate_complex(split.secondary).ok(), "parity summands" + tag);
    }

    std::mt19937 toy(88);
    int accepted = 0;
    for (int trial = 0; trial < 1000 && accepted < 100; ++trial) {
        const auto cx = oracle::random_complex(toy, 3);
        c.expect(validate_complex(cx).ok(), "random complex " + std::to_string(trial));
        const auto m = oracle::random_matching(toy, cx);
        if (!check_matching(cx, m).ok()) {
            continue;
        }
        ++accepted;
        const auto r = reduce(cx, m);
        c.expect(validate_complex(r).ok(), "reduced random complex " + std::to_string(trial));
        for (int k = 0; k < cx.max_degree(); ++k) {
            c.expect(homology(r, k, Ring::integers()) == homology(cx, k, Ring::integers()),
                     "reduction keeps homology, trial " + std::to_string(trial));
        }
    }
    c.expect(accepted >= 100, "at least 100 matched toy complexes, got " + std::to_string(accepted));
    return c;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"1 triple agreement, homology", criterion_homology},
        {"2 triple agreement, cohomology", criterion_cohomology},
        {"3 Morse reduction reproduces the reduced resolution", criterion_morse},
        {"4 homotopy h: chain map and zig-zag paths", criterion_homotopy},
        {"5 matching certificates", criterion_matchings},
        {"6 ring structure and generator span", criterion_products},
        {"7 universal coefficients", criterion_uct},
        {"8 property suites", criterion_properties},
    };
    bool all = true;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        std::cout << (c.passed() ? "PASS " : "FAIL ") << name << ": " << c.summary() << " (" << ms.count() << " ms)"
                  << std::endl;
        all = all && c.passed();
    }
    return all ? 0 : 1;
}
