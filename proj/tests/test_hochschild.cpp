#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "hh/hh.hpp"

using namespace hh;

namespace {

using Env = EnvElement<Integer>;

Env env(Subset left, Subset right, long c = 1) { return env_term<Integer>(left, right, Integer(c)); }

std::map<Tensor, Env> boundary_map(const Tensor& t)
{
    std::map<Tensor, Env> out;
    for (const auto& [u, w] : bar_boundary(t)) {
        out[u] += w;
    }
    std::erase_if(out, [](const auto& p) { return p.second.empty(); });
    return out;
}

template <class E>
E entry(const BasedComplex<E>& c, int k, const BasisLabel& source, const BasisLabel& target)
{
    const auto s = c.index_of(k, source);
    const auto t = c.index_of(c.target_degree(k), target);
    REQUIRE(s);
    REQUIRE(t);
    return c.differential(k).at(*t, *s);
}

// rank over F_p by plain row reduction on a dense copy
std::size_t rank_mod(const SparseMatrix<Integer>& m, long p)
{
    std::vector<std::vector<long>> a(m.rows(), std::vector<long>(m.cols(), 0));
    for (const auto& e : m.triplets()) {
        Integer r = e.value % p;
        a[e.row][e.col] = (r.get_si() + p) % p;
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < m.rows() && a[piv][col] == 0) {
            ++piv;
        }
        if (piv == m.rows()) {
            continue;
        }
        std::swap(a[piv], a[rank]);
        long inv = 1;
        while ((a[rank][col] * inv) % p != 1) {
            ++inv;
        }
        for (auto& v : a[rank]) {
            v = (v * inv) % p;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != rank && a[r][col] != 0) {
                const long f = a[r][col];
                for (std::size_t j = 0; j < m.cols(); ++j) {
                    a[r][j] = ((a[r][j] - f * a[rank][j]) % p + p) % p;
                }
            }
        }
        ++rank;
    }
    return rank;
}

// dim H_k over F_p of a complex with differentials lowering or raising degree
std::size_t betti_mod(const BasedComplex<Integer>& c, int k, long p)
{
    const std::size_t out = c.has_differential(k) ? rank_mod(c.differential(k), p) : 0;
    std::size_t in = 0;
    for (int j = 0; c.has_differential(j); ++j) {
        if (c.target_degree(j) == k) {
            in = rank_mod(c.differential(j), p);
        }
    }
    return c.size(k) - out - in;
}

HomologyGroup group(std::size_t free, std::size_t twos)
{
    HomologyGroup g;
    g.free_rank = free;
    g.torsion.assign(twos, Integer(2));
    return g;
}

} // namespace

TEST_CASE("bar_boundary examples", "[hochschild]")
{
    CHECK(boundary_map({Subset{1}, Subset{2}})
          == std::map<Tensor, Env>{{{Subset{2}}, env(Subset{1}, Subset())},
                                   {{Subset{1, 2}}, env(Subset(), Subset(), -1)},
                                   {{Subset{1}}, env(Subset(), Subset{2})}});
    // x1 x1 = 0 drops the merged term; the head sign is (-1)^k
    CHECK(boundary_map({Subset{1}, Subset{1}, Subset{1}})
          == std::map<Tensor, Env>{{{Subset{1}, Subset{1}}, env(Subset{1}, Subset()) - env(Subset(), Subset{1})}});
    CHECK(boundary_map({}).empty());
}

TEST_CASE("normalized tensors and the size limit", "[hochschild]")
{
    CHECK(normalized_tensors(2, 3).size() == 27);
    CHECK(normalized_tensors(3, 0).size() == 1);
    CHECK(normalized_tensors(1, 5).size() == 1);
    try {
        normalized_tensors(4, 6, 1000);
        FAIL("expected SizeLimit");
    } catch (const SizeLimitError& e) {
        CHECK(e.code() == ErrorCode::size_limit);
        CHECK(e.degree() == 6);
    }
    CHECK_THROWS_AS(build_bar_resolution(0, 2), std::invalid_argument);
}

TEST_CASE("bar complexes square to zero", "[hochschild]")
{
    for (int n = 1; n <= 3; ++n) {
        CHECK(validate_complex(build_bar_resolution(n, 4)).ok());
        CHECK(validate_complex(build_bar_hochschild_chain(n, 3)).ok());
        CHECK(validate_complex(build_bar_hochschild_cochain(n, 3)).ok());
    }
}

TEST_CASE("bar Hochschild chain examples", "[hochschild]")
{
    const auto c = build_bar_hochschild_chain(2, 2);
    // d(a0 (x) a1) = a0 a1 - a1 a0
    CHECK(entry(c, 1, BarChainCell{Subset{2}, {Subset{1}}}, BarChainCell{Subset{1, 2}, {}}) == -2);
    CHECK(c.differential(1).column(*c.index_of(1, BarChainCell{Subset(), {Subset{1}}})).empty());
    const auto co = build_bar_hochschild_cochain(2, 2);
    // (d phi)(a) = a phi() - phi() a for phi() = x1
    CHECK(entry(co, 0, BarCochainCell{{}, Subset{1}}, BarCochainCell{{Subset{2}}, Subset{1, 2}}) == -2);
    CHECK(entry(co, 0, BarCochainCell{{}, Subset{1}}, BarCochainCell{{Subset{1, 2}}, Subset{1}}) == 0);
}

TEST_CASE("bar complexes agree with the functors applied to the resolution", "[hochschild]")
{
    for (int n = 1; n <= 2; ++n) {
        const auto b = build_bar_resolution(n, 3);
        CHECK_FALSE(compare_complexes(tensor_with_algebra(b, n), build_bar_hochschild_chain(n, 3), 3));
        CHECK_FALSE(compare_complexes(hom_into_algebra(b, n), build_bar_hochschild_cochain(n, 3), 3));
        const auto r = build_reduced_resolution(n, 4);
        CHECK_FALSE(compare_complexes(tensor_with_algebra(r, n), build_reduced_chain(n, 4), 4));
        CHECK_FALSE(compare_complexes(hom_into_algebra(r, n), build_reduced_cochain(n, 4), 4));
    }
}

TEST_CASE("reduced resolution examples", "[hochschild]")
{
    const auto r = build_reduced_resolution(2, 3);
    CHECK(r.size(2) == 3);
    CHECK(entry(r, 2, Generator{Multiset{1, 2}}, Generator{Multiset{2}}) == env(Subset{1}, Subset()) + env(Subset(), Subset{1}));
    CHECK(entry(r, 2, Generator{Multiset{1, 2}}, Generator{Multiset{1}}) == env(Subset{2}, Subset()) + env(Subset(), Subset{2}));
    CHECK(entry(r, 2, Generator{Multiset{1, 1}}, Generator{Multiset{1}}) == env(Subset{1}, Subset()) + env(Subset(), Subset{1}));
    CHECK(entry(r, 1, Generator{Multiset{2}}, Generator{Multiset()}) == env(Subset{2}, Subset()) - env(Subset(), Subset{2}));
    CHECK(entry(r, 3, Generator{Multiset{1, 1, 2}}, Generator{Multiset{1, 1}}) == env(Subset{2}, Subset()) - env(Subset(), Subset{2}));
    CHECK(validate_complex(r).ok());
    CHECK(resolution_is_minimal(3, 4).passed);
    CHECK(morse_reproduces_resolution(1, 4).passed);
}

TEST_CASE("reduced chain and cochain examples", "[hochschild]")
{
    const auto c2 = build_reduced_chain(2, 3);
    CHECK(entry(c2, 1, ChainCell{Subset{2}, Multiset{1}}, ChainCell{Subset{1, 2}, Multiset()}) == -2);
    CHECK(c2.differential(1).column(*c2.index_of(1, ChainCell{Subset(), Multiset{1}})).empty());
    const auto c1 = build_reduced_chain(1, 3);
    CHECK(entry(c1, 2, ChainCell{Subset(), Multiset{1, 1}}, ChainCell{Subset{1}, Multiset{1}}) == 2);
    const auto co = build_reduced_cochain(2, 3);
    CHECK(entry(co, 0, CochainCell{Multiset(), Subset{1}}, CochainCell{Multiset{2}, Subset{1, 2}}) == -2);
    CHECK(co.differential(0).column(*co.index_of(0, CochainCell{Multiset(), Subset()})).empty());
    for (int n = 1; n <= 4; ++n) {
        CHECK(validate_complex(build_reduced_chain(n, 4)).ok());
        CHECK(validate_complex(build_reduced_cochain(n, 4)).ok());
        CHECK(validate_complex(build_reduced_resolution(n, 4)).ok());
    }
}

TEST_CASE("split_parity sizes and the zero summand", "[hochschild]")
{
    for (int n = 1; n <= 4; ++n) {
        for (const auto& c : {build_reduced_chain(n, 4), build_reduced_cochain(n, 4)}) {
            const auto split = split_parity(c);
            for (int k = 0; k <= 4; ++k) {
                const auto expected = (std::size_t{1} << (n - 1))
                                      * multiset_coefficient(static_cast<std::uint64_t>(n),
                                                             static_cast<std::uint64_t>(k));
                CHECK(split.secondary.size(k) == expected);
                CHECK(split.primary.size(k) + split.secondary.size(k) == c.size(k));
                if (split.secondary.has_differential(k)) {
                    CHECK(split.secondary.differential(k).is_zero());
                }
                for (const auto& l : split.primary.basis(k)) {
                    CHECK(in_primary_summand(l, c.orientation()));
                }
            }
            const auto h = halve(split.primary);
            for (int k = 0; h.has_differential(k); ++k) {
                for (const auto& e : h.differential(k).triplets()) {
                    CHECK((e.value == 1 || e.value == -1));
                }
            }
        }
    }
    CHECK(in_primary_summand(ChainCell{Subset{1}, Multiset{2}}, Orientation::chain));
    CHECK_FALSE(in_primary_summand(CochainCell{Multiset{2}, Subset{1}}, Orientation::cochain));
    CHECK_THROWS_AS(in_primary_summand(Generator{Multiset{1}}, Orientation::chain), Error);
}

TEST_CASE("closed form examples", "[hochschild]")
{
    const auto z = Ring::integers();
    // HH_0 = A / [A, A] with [x1, x2] = 2 x1 x2
    CHECK(closed_form_homology(2, 0, z).group == group(3, 1));
    CHECK(closed_form_homology(1, 1, z).group == group(1, 1));
    CHECK(closed_form_homology(1, 0, z).group == group(2, 0));
    CHECK(closed_form_homology(2, 1, z).group == group(4, 3));
    CHECK(closed_form_homology(2, 1, Ring::prime_field(2)).group == group(8, 0));
    CHECK(closed_form_homology(2, 1, Ring::rationals()).group == group(4, 0));
    // the centre of Λ[x1, x2] over Z is spanned by 1 and x1 x2
    CHECK(closed_form_cohomology(2, 0, z).group == group(2, 0));
    CHECK_FALSE(closed_form_cohomology(2, 0, z).flagged);
    const auto c10 = closed_form_cohomology(1, 0, z);
    CHECK(c10.group == group(2, 0));
    CHECK(c10.flagged);
    CHECK(c10.raw_torsion == 1);
    CHECK(closed_form_cohomology(1, 1, z).group == group(1, 0));
    CHECK_THROWS_AS(closed_form_homology(0, 1, z), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_cohomology(1, -1, z), std::invalid_argument);
}

TEST_CASE("closed forms over F_p match an independent rank count", "[hochschild]")
{
    for (int n = 1; n <= 3; ++n) {
        const auto chain = build_reduced_chain(n, 5);
        const auto cochain = build_reduced_cochain(n, 5);
        for (int k = 0; k <= 4; ++k) {
            for (long p : {2L, 3L}) {
                const auto ring = Ring::prime_field(static_cast<std::uint32_t>(p));
                CHECK(betti_mod(chain, k, p) == closed_form_homology(n, k, ring).group.free_rank);
                CHECK(betti_mod(cochain, k, p) == closed_form_cohomology(n, k, ring).group.free_rank);
            }
        }
    }
}

TEST_CASE("oracle, reduced and closed form agree", "[hochschild]")
{
    const std::vector<Ring> rings{Ring::integers(), Ring::rationals(), Ring::prime_field(2), Ring::prime_field(3)};
    const std::vector<Kind> kinds{Kind::homology, Kind::cohomology};
    for (int n = 1; n <= 2; ++n) {
        const auto report = triple_agreement(n, 4, rings, kinds);
        CHECK(report.ok());
        CHECK(report.cells.size() == 5 * rings.size() * kinds.size());
    }
    const auto r3 = triple_agreement(3, 3, rings, kinds);
    CHECK(r3.ok());
    for (const auto& cell : r3.cells) {
        CHECK(cell.flagged == (cell.kind == Kind::cohomology && cell.k == 0));
    }
}

TEST_CASE("universal coefficients relate Z, Q and F_p", "[hochschild]")
{
    CHECK(universal_coefficients(1, 5).passed);
    CHECK(universal_coefficients(2, 4).passed);
    CHECK(universal_coefficients(3, 3).passed);
}

TEST_CASE("htpy_h examples", "[hochschild]")
{
    CHECK(htpy_h(Multiset{1, 2})
          == Combination<Tensor, Integer>::from_terms({{{Subset{1}, Subset{2}}, Integer(1)},
                                                       {{Subset{2}, Subset{1}}, Integer(1)}}));
    CHECK(htpy_h(Multiset{1, 1}).size() == 1);
    CHECK(htpy_h(Multiset{1, 1, 2}).size() == 3);
    CHECK(htpy_h(Multiset()).size() == 1);
    CHECK(htpy_chain_map(2, 4).passed);
    CHECK(htpy_paths(3, 4).passed);
    CHECK_FALSE(htpy_path_defect(3, Multiset{1, 2, 2, 3}));
}

TEST_CASE("pushforward_cochain examples", "[hochschild]")
{
    using BC = Combination<BarCochainCell, Integer>;
    const BC f = BC::from_terms({{BarCochainCell{{Subset{2}, Subset{1}}, Subset{1}}, Integer(3)},
                                 {BarCochainCell{{Subset{1, 2}}, Subset()}, Integer(5)},
                                 {BarCochainCell{{Subset{1}, Subset{2}}, Subset{1}}, Integer(-1)}});
    const auto g = pushforward_cochain(f);
    CHECK(g
          == Combination<CochainCell, Integer>::from_terms({{CochainCell{Multiset{1, 2}, Subset{1}}, Integer(2)}}));
}
