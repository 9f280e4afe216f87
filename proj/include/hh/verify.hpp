#pragma once

// Verification suites shared by the command-line tool and the acceptance
// checks: cross-method agreement of (co)homology groups, the Morse
// reproduction of the reduced resolution, the homotopy h, matching
// certificates and the cup product checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hh/coeff.hpp"
#include "hh/combinat.hpp"
#include "hh/complex.hpp"
#include "hh/error.hpp"
#include "hh/hochschild/bar.hpp"
#include "hh/hochschild/closed_form.hpp"
#include "hh/hochschild/matchings.hpp"
#include "hh/hochschild/reduced.hpp"
#include "hh/hochschild/transfer.hpp"
#include "hh/linalg.hpp"
#include "hh/morse.hpp"
#include "hh/products.hpp"

namespace hh {

enum class Kind { homology, cohomology };
enum class Method { closed, reduced, oracle };

inline std::string kind_name(Kind k) { return k == Kind::homology ? "homology" : "cohomology"; }

inline std::string method_name(Method m)
{
    switch (m) {
    case Method::closed:
        return "closed";
    case Method::reduced:
        return "reduced";
    case Method::oracle:
        return "oracle";
    }
    return "";
}

inline std::optional<Method> parse_method(const std::string& s)
{
    if (s == "closed") {
        return Method::closed;
    }
    if (s == "reduced") {
        return Method::reduced;
    }
    if (s == "oracle") {
        return Method::oracle;
    }
    return std::nullopt;
}

struct GroupResult {
    HomologyGroup group;
    bool flagged = false; ///< closed form only: the raw formula was overridden
    Integer raw_torsion = 0;
};

inline BasedComplex<Integer> build_integer_complex(int n, int max_degree, Kind kind, Method method,
                                                   std::size_t limit = default_size_limit)
{
    if (method == Method::oracle) {
        return kind == Kind::homology ? build_bar_hochschild_chain(n, max_degree, limit)
                                      : build_bar_hochschild_cochain(n, max_degree, limit);
    }
    return kind == Kind::homology ? build_reduced_chain(n, max_degree) : build_reduced_cochain(n, max_degree);
}

/// HH_k or HH^k for k = 0..max_degree by one method.
inline std::vector<GroupResult> compute_groups(int n, int max_degree, Kind kind, Method method, const Ring& ring,
                                               std::size_t limit = default_size_limit)
{
    std::vector<GroupResult> out;
    if (method == Method::closed) {
        for (int k = 0; k <= max_degree; ++k) {
            const ClosedForm cf = kind == Kind::homology ? closed_form_homology(n, k, ring)
                                                         : closed_form_cohomology(n, k, ring);
            out.push_back({cf.group, cf.flagged, cf.raw_torsion});
        }
        return out;
    }
    const auto c = build_integer_complex(n, max_degree + 1, kind, method, limit);
    for (int k = 0; k <= max_degree; ++k) {
        out.push_back({homology(c, k, ring), false, 0});
    }
    return out;
}

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// ---------------------------------------------------------------------------
// Triple agreement

struct AgreementCell {
    int n = 0;
    int k = 0;
    Ring ring = Ring::integers();
    Kind kind = Kind::homology;
    HomologyGroup oracle;
    HomologyGroup reduced;
    HomologyGroup closed;
    bool flagged = false;

    bool agree() const { return oracle == reduced && reduced == closed; }
};

struct AgreementReport {
    std::vector<AgreementCell> cells;

    bool ok() const
    {
        return std::all_of(cells.begin(), cells.end(), [](const AgreementCell& c) { return c.agree(); });
    }

    std::vector<std::string> mismatches() const
    {
        std::vector<std::string> out;
        for (const auto& c : cells) {
            if (!c.agree()) {
                out.push_back(kind_name(c.kind) + " n=" + std::to_string(c.n) + " k=" + std::to_string(c.k)
                              + " ring=" + c.ring.to_string() + ": oracle " + c.oracle.to_string() + ", reduced "
                              + c.reduced.to_string() + ", closed " + c.closed.to_string());
            }
        }
        return out;
    }
};

inline AgreementReport triple_agreement(int n, int max_degree, const std::vector<Ring>& rings,
                                        const std::vector<Kind>& kinds, std::size_t limit = default_size_limit)
{
    AgreementReport report;
    for (Kind kind : kinds) {
        const auto oracle = build_integer_complex(n, max_degree + 1, kind, Method::oracle, limit);
        const auto reduced = build_integer_complex(n, max_degree + 1, kind, Method::reduced, limit);
        for (const Ring& ring : rings) {
            for (int k = 0; k <= max_degree; ++k) {
                const ClosedForm cf = kind == Kind::homology ? closed_form_homology(n, k, ring)
                                                             : closed_form_cohomology(n, k, ring);
                report.cells.push_back({n, k, ring, kind, homology(oracle, k, ring), homology(reduced, k, ring),
                                        cf.group, cf.flagged});
            }
        }
    }
    return report;
}

/// dim over F2 in degree k against F_k + T_k + T_{k-1} (chains) or
/// F_k + T_k + T_{k+1} (cochains); T counts torsion summands of even order.
inline SuiteResult universal_coefficients(int n, int max_degree)
{
    SuiteResult r{"universal coefficients n=" + std::to_string(n), true, ""};
    const Ring z = Ring::integers();
    const Ring f2 = Ring::prime_field(2);
    for (Kind kind : {Kind::homology, Kind::cohomology}) {
        const auto c = build_integer_complex(n, max_degree + 2, kind, Method::reduced);
        std::vector<HomologyGroup> groups;
        for (int k = 0; k <= max_degree + 1; ++k) {
            groups.push_back(homology(c, k, z));
        }
        auto two_torsion = [&](int k) -> std::size_t {
            if (k < 0 || k > max_degree + 1) {
                return 0;
            }
            std::size_t t = 0;
            for (const auto& d : groups[static_cast<std::size_t>(k)].torsion) {
                if (d % 2 == 0) {
                    ++t;
                }
            }
            return t;
        };
        for (int k = 0; k <= max_degree; ++k) {
            const std::size_t dim = homology(c, k, f2).free_rank;
            const int other = kind == Kind::homology ? k - 1 : k + 1;
            const std::size_t expected = groups[static_cast<std::size_t>(k)].free_rank + two_torsion(k)
                                         + two_torsion(other);
            if (dim != expected) {
                r.passed = false;
                r.detail = kind_name(kind) + " k=" + std::to_string(k) + ": dim " + std::to_string(dim)
                           + ", from Z " + std::to_string(expected);
                return r;
            }
        }
    }
    r.detail = "degrees 0.." + std::to_string(max_degree);
    return r;
}

// ---------------------------------------------------------------------------
// Complex comparison

/// Compares two complexes label by label through max_degree: same basis
/// sets and the same differential entries between those degrees.
template <class E>
std::optional<std::string> compare_complexes(const BasedComplex<E>& a, const BasedComplex<E>& b, int max_degree)
{
    if (a.orientation() != b.orientation()) {
        return "orientations differ";
    }
    for (int k = 0; k <= max_degree; ++k) {
        std::set<BasisLabel> la(a.basis(k).begin(), a.basis(k).end());
        std::set<BasisLabel> lb(b.basis(k).begin(), b.basis(k).end());
        if (la != lb) {
            return "bases differ in degree " + std::to_string(k);
        }
    }
    auto entries = [](const BasedComplex<E>& c, int k) {
        std::map<std::pair<BasisLabel, BasisLabel>, E> out;
        const auto& d = c.differential(k);
        const int t = c.target_degree(k);
        for (std::size_t col = 0; col < d.cols(); ++col) {
            for (const auto& [row, v] : d.column(col)) {
                out.emplace(std::make_pair(c.basis(k)[col], c.basis(t)[row]), v);
            }
        }
        return out;
    };
    for (int k = 0; k <= max_degree; ++k) {
        const int t = a.target_degree(k);
        if (t > max_degree) {
            continue;
        }
        if (entries(a, k) != entries(b, k)) {
            return "differentials out of degree " + std::to_string(k) + " differ";
        }
    }
    return std::nullopt;
}

/// Replaces every label by f(label).
template <class E, class F>
BasedComplex<E> relabel(const BasedComplex<E>& c, F f)
{
    std::vector<std::vector<BasisLabel>> bases;
    for (const auto& b : c.bases()) {
        std::vector<BasisLabel> nb;
        for (const auto& l : b) {
            nb.push_back(f(l));
        }
        bases.push_back(std::move(nb));
    }
    std::vector<SparseMatrix<E>> diffs;
    for (int k = 0; c.has_differential(k); ++k) {
        diffs.push_back(c.differential(k));
    }
    return BasedComplex<E>(c.orientation(), std::move(bases), std::move(diffs));
}

/// reduce(bar resolution, bar matching) equals the reduced resolution
/// through max_degree, with variable tensors read as generators.
inline SuiteResult morse_reproduces_resolution(int n, int max_degree, std::size_t limit = default_size_limit)
{
    SuiteResult r{"morse reduction reproduces the reduced resolution n=" + std::to_string(n), false, ""};
    const auto bar = build_bar_resolution(n, max_degree + 1, limit);
    const auto morse = reduce(bar, bar_matching(n, max_degree + 1, limit));
    // the top degree keeps spurious critical cells; they stay bar tensors
    const auto named = relabel(morse, [](const BasisLabel& l) -> BasisLabel {
        const auto idx = variable_indices(std::get<BarTensor>(l).factors);
        if (!idx || !std::is_sorted(idx->begin(), idx->end())) {
            return l;
        }
        return Generator{Multiset::from_unsorted(*idx)};
    });
    const auto expected = build_reduced_resolution(n, max_degree + 1);
    if (auto diff = compare_complexes(named, expected, max_degree)) {
        r.detail = *diff;
        return r;
    }
    r.passed = true;
    r.detail = "degrees 0.." + std::to_string(max_degree);
    return r;
}

inline SuiteResult resolution_is_minimal(int n, int max_degree)
{
    SuiteResult r{"reduced resolution is minimal n=" + std::to_string(n), true, ""};
    const auto c = build_reduced_resolution(n, max_degree);
    std::size_t entries = 0;
    for (int k = 0; c.has_differential(k); ++k) {
        const auto& d = c.differential(k);
        for (std::size_t col = 0; col < d.cols(); ++col) {
            for (const auto& [row, v] : d.column(col)) {
                ++entries;
                if (!in_augmentation_ideal(v)) {
                    r.passed = false;
                    r.detail = "entry (" + to_string(c.basis(k - 1)[row]) + ", " + to_string(c.basis(k)[col])
                               + ") = " + to_string(v);
                    return r;
                }
            }
        }
    }
    r.detail = std::to_string(entries) + " entries in the augmentation ideal";
    return r;
}

// ---------------------------------------------------------------------------
// The homotopy h

/// b(h(x_tau)) = h(d(x_tau)) in the bar resolution, for every |tau| <= max_degree.
inline SuiteResult htpy_chain_map(int n, int max_degree)
{
    SuiteResult r{"h is a chain map n=" + std::to_string(n), true, ""};
    const auto red = build_reduced_resolution(n, max_degree);
    std::size_t checked = 0;
    for (int k = 1; k <= max_degree; ++k) {
        const auto& d = red.differential(k);
        for (std::size_t col = 0; col < red.size(k); ++col) {
            const Multiset& tau = std::get<Generator>(red.basis(k)[col]).tau;
            std::map<Tensor, EnvElement<Integer>> lhs;
            for (const auto& [t, c] : htpy_h(tau)) {
                for (const auto& [u, w] : bar_boundary(t)) {
                    lhs[u] += c * w;
                }
            }
            std::map<Tensor, EnvElement<Integer>> rhs;
            for (const auto& [row, e] : d.column(col)) {
                for (const auto& [t, c] : htpy_h(std::get<Generator>(red.basis(k - 1)[row]).tau)) {
                    rhs[t] += c * e;
                }
            }
            std::erase_if(lhs, [](const auto& kv) { return kv.second.empty(); });
            std::erase_if(rhs, [](const auto& kv) { return kv.second.empty(); });
            ++checked;
            if (lhs != rhs) {
                r.passed = false;
                r.detail = "fails at x_" + tau.to_string();
                return r;
            }
        }
    }
    r.detail = std::to_string(checked) + " generators";
    return r;
}

/// Zig-zag paths from x_(tau) in the bar graph end exactly at the distinct
/// rearrangements of tau, one path each.
inline std::optional<std::string> htpy_path_defect(int n, const Multiset& tau)
{
    BarMorseGraph g(n);
    const auto counts = zigzag_path_counts(g, g.codec().encode(variable_tensor(tau)));
    std::set<std::uint64_t> expected;
    for (const auto& p : multiset_permutations(tau)) {
        expected.insert(g.codec().encode(variable_tensor(p)));
    }
    if (counts.size() != expected.size()) {
        return "x_" + tau.to_string() + ": " + std::to_string(counts.size()) + " endpoints, expected "
               + std::to_string(expected.size());
    }
    for (const auto& [l, c] : counts) {
        if (!expected.count(l)) {
            return "x_" + tau.to_string() + ": unexpected endpoint " + g.describe(l);
        }
        if (c != 1) {
            return "x_" + tau.to_string() + ": " + std::to_string(c) + " paths to " + g.describe(l);
        }
    }
    return std::nullopt;
}

inline SuiteResult htpy_paths(int n, int max_degree)
{
    SuiteResult r{"zig-zag paths realize h n=" + std::to_string(n), true, ""};
    std::size_t checked = 0;
    for (int k = 0; k <= max_degree; ++k) {
        for (const auto& tau : enumerate_multisets(n, k)) {
            ++checked;
            if (auto d = htpy_path_defect(n, tau)) {
                r.passed = false;
                r.detail = *d;
                return r;
            }
        }
    }
    r.detail = std::to_string(checked) + " generators";
    return r;
}

// ---------------------------------------------------------------------------
// Matching certificates

inline SuiteResult bar_matching_certificate(int n, int max_degree, std::size_t limit = default_size_limit)
{
    SuiteResult r{"bar matching n=" + std::to_string(n), false, ""};
    BarMorseGraph g(n);
    std::vector<std::uint64_t> cells;
    std::set<std::uint64_t> critical;
    for (int k = 0; k <= max_degree; ++k) {
        for (const auto& t : normalized_tensors(n, k, limit)) {
            const auto l = g.codec().encode(t);
            cells.push_back(l);
            if (!g.matched_target(l) && !g.matched_source(l)) {
                critical.insert(l);
            }
        }
    }
    const auto report = check_morse_graph(g, cells, [&](std::uint64_t l) { return g.describe(l); });
    if (!report.ok()) {
        r.detail = report.detail;
        return r;
    }
    std::set<std::uint64_t> expected;
    for (int k = 0; k <= max_degree; ++k) {
        for (const auto& tau : enumerate_multisets(n, k)) {
            expected.insert(g.codec().encode(variable_tensor(tau)));
        }
    }
    if (critical != expected) {
        r.detail = std::to_string(critical.size()) + " critical cells, expected " + std::to_string(expected.size());
        return r;
    }
    r.passed = true;
    r.detail = std::to_string(cells.size()) + " cells, " + std::to_string(critical.size()) + " critical";
    return r;
}

namespace detail {

inline std::set<BasisLabel> unmatched_cells(const BasedComplex<Integer>& c, const Matching& m, int max_degree)
{
    std::set<BasisLabel> matched;
    for (const auto& e : m.edges) {
        matched.insert(e.source);
        matched.insert(e.target);
    }
    std::set<BasisLabel> out;
    for (int k = 0; k <= max_degree; ++k) {
        for (const auto& l : c.basis(k)) {
            if (!matched.count(l)) {
                out.insert(l);
            }
        }
    }
    return out;
}

inline SuiteResult koszul_certificate(std::string name, const BasedComplex<Integer>& halved, const Matching& m,
                                      const std::set<BasisLabel>& expected, int max_degree)
{
    SuiteResult r{std::move(name), false, ""};
    const auto report = check_matching(halved, m);
    if (!report.ok()) {
        r.detail = report.detail;
        return r;
    }
    const auto critical = unmatched_cells(halved, m, max_degree);
    if (critical != expected) {
        std::string got;
        for (const auto& l : critical) {
            got += (got.empty() ? "" : " ") + to_string(l);
        }
        r.detail = "critical cells {" + got + "}";
        return r;
    }
    r.passed = true;
    r.detail = std::to_string(m.size()) + " edges, " + std::to_string(critical.size()) + " critical";
    return r;
}

} // namespace detail

inline SuiteResult koszul_chain_certificate(int n, int max_degree)
{
    const auto c = halve(split_parity(build_reduced_chain(n, max_degree + 1)).primary);
    return detail::koszul_certificate("Koszul chain matching n=" + std::to_string(n), c,
                                      koszul_matching_chain(n, max_degree + 1),
                                      {ChainCell{Subset(), Multiset()}}, max_degree);
}

inline SuiteResult koszul_cochain_certificate(int n, int max_degree)
{
    const auto c = halve(split_parity(build_reduced_cochain(n, max_degree + 1)).primary);
    std::set<BasisLabel> expected;
    if (n % 2 == 1) {
        expected.insert(CochainCell{Multiset(), Subset::full(n)});
    }
    return detail::koszul_certificate("Koszul cochain matching n=" + std::to_string(n), c,
                                      koszul_matching_cochain(n, max_degree + 1), expected, max_degree);
}

// ---------------------------------------------------------------------------
// Products

/// Over the bar cochain complex with coefficients in T, for p + q <= max_degree:
/// cocycle products are cocycles, [f][g] = (-1)^{pq} [g][f], and products
/// with a coboundary are coboundaries, witnessed by f u de = (-1)^p d(f u e)
/// and de u f = d(e u f) for a cocycle f.
template <class T>
std::vector<SuiteResult> bar_cup_suites(int n, int max_degree, std::size_t limit = default_size_limit)
{
    const std::string tag = " n=" + std::to_string(n) + " over " + coeff_traits<T>::name();
    SuiteResult cocycles{"cup of cocycles is a cocycle" + tag, true, ""};
    SuiteResult coboundaries{"cup with a coboundary is a coboundary" + tag, true, ""};
    SuiteResult commutes{"cup is graded commutative on classes" + tag, true, ""};
    const BasedComplex<T> bar = complex_over<T>(build_bar_hochschild_cochain(n, max_degree + 1, limit));
    std::vector<ClassBasis<T>> cls;
    std::vector<std::vector<BarCochain<T>>> reps;
    for (int k = 0; k <= max_degree; ++k) {
        cls.emplace_back(bar, k);
        std::vector<BarCochain<T>> rk;
        for (const auto& v : cls.back().representatives()) {
            rk.push_back(BarCochain<T>::from_cells(k, cls.back().template combination_of<BarCochainCell>(v)));
        }
        reps.push_back(std::move(rk));
    }
    auto to_vec = [&](int k, const BarCochain<T>& f) {
        return cls[static_cast<std::size_t>(k)].vector_of(f.cells());
    };
    auto coboundary_of = [&](int k, const BarCochain<T>& f) {
        return detail::apply_sparse(bar.differential(k), to_vec(k, f));
    };
    std::size_t pairs = 0;
    std::size_t boundary_pairs = 0;
    for (int p = 0; p <= max_degree; ++p) {
        for (int q = 0; p + q <= max_degree; ++q) {
            const int s = p + q;
            const auto& target = cls[static_cast<std::size_t>(s)];
            for (const auto& f : reps[static_cast<std::size_t>(p)]) {
                for (const auto& g : reps[static_cast<std::size_t>(q)]) {
                    ++pairs;
                    const auto fg = cup_bar(f, g);
                    const auto gf = cup_bar(g, f);
                    if (!target.is_cocycle(to_vec(s, fg)) || !target.is_cocycle(to_vec(s, gf))) {
                        if (cocycles.passed) {
                            cocycles.passed = false;
                            cocycles.detail = "degrees " + std::to_string(p) + "," + std::to_string(q);
                        }
                        continue;
                    }
                    auto a = target.coordinates(to_vec(s, fg));
                    auto b = target.coordinates(to_vec(s, gf));
                    if ((p * q) % 2 == 1) {
                        for (auto& x : b) {
                            x = -x;
                        }
                    }
                    if (a != b && commutes.passed) {
                        commutes.passed = false;
                        commutes.detail = "degrees " + std::to_string(p) + "," + std::to_string(q);
                    }
                }
                if (q == 0) {
                    continue;
                }
                const auto& dq = bar.differential(q - 1);
                for (std::size_t e = 0; e < bar.size(q - 1); ++e) {
                    const auto& label = std::get<BarCochainCell>(bar.basis(q - 1)[e]);
                    const auto ec = BarCochain<T>::from_cells(
                        q - 1, Combination<BarCochainCell, T>::term(label, T(1)));
                    std::vector<std::pair<BarCochainCell, T>> terms;
                    for (const auto& [row, x] : dq.column(e)) {
                        terms.emplace_back(std::get<BarCochainCell>(bar.basis(q)[row]), x);
                    }
                    const auto de = BarCochain<T>::from_cells(
                        q, Combination<BarCochainCell, T>::from_terms(std::move(terms)));
                    ++boundary_pairs;
                    auto left = coboundary_of(s - 1, cup_bar(f, ec));
                    if (p % 2 == 1) {
                        for (auto& [i, x] : left) {
                            x = -x;
                        }
                    }
                    const bool ok = left == to_vec(s, cup_bar(f, de))
                                    && coboundary_of(s - 1, cup_bar(ec, f)) == to_vec(s, cup_bar(de, f));
                    if (!ok && coboundaries.passed) {
                        coboundaries.passed = false;
                        coboundaries.detail = "degrees " + std::to_string(p) + "," + std::to_string(q);
                    }
                }
            }
        }
    }
    if (cocycles.passed) {
        cocycles.detail = std::to_string(pairs) + " class pairs";
    }
    if (commutes.passed) {
        commutes.detail = std::to_string(pairs) + " class pairs";
    }
    if (coboundaries.passed) {
        coboundaries.detail = std::to_string(boundary_pairs) + " class-coboundary pairs";
    }
    return {cocycles, coboundaries, commutes};
}

/// Associativity and the unit of cup_reduced on all cells with |tau| <= max_degree.
inline SuiteResult cup_reduced_associative(int n, int max_degree)
{
    SuiteResult r{"cup on reduced cells is associative and unital n=" + std::to_string(n), true, ""};
    std::vector<CochainCell> cells;
    for (int k = 0; k <= max_degree; ++k) {
        for (const auto& tau : enumerate_multisets(n, k)) {
            for (const auto& s : enumerate_subsets(n)) {
                cells.push_back({tau, s});
            }
        }
    }
    auto mul = [](const std::optional<SignedCochainCell>& a,
                  const CochainCell& b) -> std::optional<SignedCochainCell> {
        if (!a) {
            return std::nullopt;
        }
        auto p = cup_reduced(a->cell, b);
        if (!p) {
            return std::nullopt;
        }
        return SignedCochainCell{a->sign * p->sign, p->cell};
    };
    auto same = [](const std::optional<SignedCochainCell>& a, const std::optional<SignedCochainCell>& b) {
        return a.has_value() == b.has_value() && (!a || (a->sign == b->sign && a->cell == b->cell));
    };
    const CochainCell unit{Multiset(), Subset()};
    std::size_t triples = 0;
    for (const auto& a : cells) {
        const std::optional<SignedCochainCell> self = SignedCochainCell{1, a};
        if (!same(cup_reduced(unit, a), self) || !same(cup_reduced(a, unit), self)) {
            r.passed = false;
            r.detail = "unit fails on " + to_string(BasisLabel(a));
            return r;
        }
        for (const auto& b : cells) {
            const auto ab = cup_reduced(a, b);
            for (const auto& c : cells) {
                ++triples;
                const auto left = mul(ab, c);
                const auto bc = cup_reduced(b, c);
                std::optional<SignedCochainCell> right;
                if (bc) {
                    if (auto p = cup_reduced(a, bc->cell)) {
                        right = SignedCochainCell{p->sign * bc->sign, p->cell};
                    }
                }
                if (!same(left, right)) {
                    r.passed = false;
                    r.detail = "fails on " + to_string(BasisLabel(a)) + ", " + to_string(BasisLabel(b)) + ", "
                               + to_string(BasisLabel(c));
                    return r;
                }
            }
        }
    }
    r.detail = std::to_string(triples) + " triples";
    return r;
}

template <class T>
SuiteResult ring_structure_agreement(int n, int max_degree, std::size_t limit = default_size_limit)
{
    SuiteResult r{"structure tables agree (reduced vs bar through h) n=" + std::to_string(n) + " over "
                      + coeff_traits<T>::name(),
                  false, ""};
    const auto rs = ring_structure_constants<T>(n, max_degree, limit);
    r.passed = rs.verdict();
    r.detail = r.passed ? std::to_string(rs.checked_pairs) + " class pairs, " + std::to_string(rs.table.size())
                              + " table entries"
                        : rs.failure;
    return r;
}

/// In characteristic 2 the degree-k dimension of HH^* is 2^n C(n+k-1, k).
inline SuiteResult char2_hilbert_series(int n, int max_degree)
{
    SuiteResult r{"characteristic 2 Hilbert series n=" + std::to_string(n), true, ""};
    const auto c = complex_over<F2>(build_reduced_cochain(n, max_degree + 1));
    for (int k = 0; k <= max_degree; ++k) {
        const std::uint64_t expected = (std::uint64_t{1} << static_cast<unsigned>(n))
                                       * multiset_coefficient(static_cast<std::uint64_t>(n),
                                                              static_cast<std::uint64_t>(k));
        const std::size_t dim = field_homology_dimension(c, k);
        if (dim != expected) {
            r.passed = false;
            r.detail = "k=" + std::to_string(k) + ": " + std::to_string(dim) + " vs " + std::to_string(expected);
            return r;
        }
    }
    r.detail = "degrees 0.." + std::to_string(max_degree);
    return r;
}

inline SuiteResult generator_span(int n, int max_degree)
{
    SuiteResult r{"generators span, and fail without x_[n]⊗1, n=" + std::to_string(n), false, ""};
    const auto with = generator_span_check<Rational>(n, max_degree, true);
    const auto without = generator_span_check<Rational>(n, max_degree, false);
    if (!with.spans) {
        r.detail = "no span in degree " + std::to_string(with.failing_degree);
        return r;
    }
    if (without.spans) {
        r.detail = "still spans without x_[n]⊗1";
        return r;
    }
    r.passed = true;
    r.detail = "without x_[n]⊗1 the span fails in degree " + std::to_string(without.failing_degree);
    return r;
}

/// Shuffle product over F2 is commutative and associative on bar chain
/// cells with tensors of length <= max_length.
inline SuiteResult shuffle_char2(int n, int max_length, std::size_t limit = default_size_limit)
{
    SuiteResult r{"shuffle product over F2 is commutative and associative n=" + std::to_string(n), true, ""};
    using Chain = Combination<BarChainCell, F2>;
    std::vector<std::vector<Chain>> cells(static_cast<std::size_t>(max_length + 1));
    for (int k = 0; k <= max_length; ++k) {
        for (const auto& t : normalized_tensors(n, k, limit)) {
            for (const auto& s : enumerate_subsets(n)) {
                cells[static_cast<std::size_t>(k)].push_back(Chain::term(BarChainCell{s, t}, F2(1)));
            }
        }
    }
    std::size_t triples = 0;
    for (int a = 0; a <= max_length; ++a) {
        for (int b = 0; a + b <= max_length; ++b) {
            for (const auto& u : cells[static_cast<std::size_t>(a)]) {
                for (const auto& v : cells[static_cast<std::size_t>(b)]) {
                    const auto uv = shuffle_product(u, v, n);
                    if (!(uv == shuffle_product(v, u, n))) {
                        r.passed = false;
                        r.detail = "not commutative on " + to_string(u) + ", " + to_string(v);
                        return r;
                    }
                    for (int c = 0; a + b + c <= max_length; ++c) {
                        for (const auto& w : cells[static_cast<std::size_t>(c)]) {
                            ++triples;
                            if (!(shuffle_product(uv, w, n) == shuffle_product(u, shuffle_product(v, w, n), n))) {
                                r.passed = false;
                                r.detail = "not associative on " + to_string(u) + ", " + to_string(v) + ", "
                                           + to_string(w);
                                return r;
                            }
                        }
                    }
                }
            }
        }
    }
    r.detail = std::to_string(triples) + " triples, total length <= " + std::to_string(max_length);
    return r;
}

} // namespace hh
