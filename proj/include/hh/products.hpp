#pragma once

// Cup products on bar and reduced cochains, the cohomology ring structure
// with a bar-level cross-check, generator spanning, and the shuffle product.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hh/algebra.hpp"
#include "hh/coeff.hpp"
#include "hh/combinat.hpp"
#include "hh/complex.hpp"
#include "hh/error.hpp"
#include "hh/hochschild/bar.hpp"
#include "hh/hochschild/reduced.hpp"
#include "hh/hochschild/transfer.hpp"
#include "hh/linalg.hpp"

namespace hh {

// ---------------------------------------------------------------------------
// Cochains and cup products

/// A Hochschild k-cochain: values in A on the normalized tensors of length
/// k; tensors not listed map to 0.
template <class T>
struct BarCochain {
    int degree = 0;
    std::map<Tensor, ExtElement<T>> values;

    ExtElement<T> operator()(const Tensor& v) const
    {
        auto it = values.find(v);
        return it == values.end() ? ExtElement<T>() : it->second;
    }

    void set(const Tensor& v, ExtElement<T> a)
    {
        if (static_cast<int>(v.size()) != degree) {
            throw std::invalid_argument("BarCochain: tensor length differs from degree");
        }
        if (a.empty()) {
            values.erase(v);
        } else {
            values[v] = std::move(a);
        }
    }

    static BarCochain constant(ExtElement<T> a)
    {
        BarCochain f;
        f.set(Tensor{}, std::move(a));
        return f;
    }

    /// From coordinates in the dual basis phi_{v,s}.
    static BarCochain from_cells(int degree, const Combination<BarCochainCell, T>& cells)
    {
        BarCochain f;
        f.degree = degree;
        for (const auto& [cell, c] : cells) {
            if (static_cast<int>(cell.tensor.size()) != degree) {
                throw std::invalid_argument("BarCochain::from_cells: mixed degrees");
            }
            f.values[cell.tensor] += ext_monomial<T>(cell.sigma, c);
        }
        std::erase_if(f.values, [](const auto& kv) { return kv.second.empty(); });
        return f;
    }

    Combination<BarCochainCell, T> cells() const
    {
        std::vector<std::pair<BarCochainCell, T>> terms;
        for (const auto& [v, a] : values) {
            for (const auto& [s, c] : a) {
                terms.emplace_back(BarCochainCell{v, s}, c);
            }
        }
        return Combination<BarCochainCell, T>::from_terms(std::move(terms));
    }

    friend bool operator==(const BarCochain&, const BarCochain&) = default;
};

/// (f u g)(a1 .. a_{k+l}) = f(a1 .. ak) g(a_{k+1} .. a_{k+l}).
template <class T>
BarCochain<T> cup_bar(const BarCochain<T>& f, const BarCochain<T>& g)
{
    BarCochain<T> out;
    out.degree = f.degree + g.degree;
    for (const auto& [v, a] : f.values) {
        for (const auto& [w, b] : g.values) {
            Tensor vw = v;
            vw.insert(vw.end(), w.begin(), w.end());
            ExtElement<T> p = ext_mul(a, b);
            if (!p.empty()) {
                out.values[vw] += p;
            }
        }
    }
    std::erase_if(out.values, [](const auto& kv) { return kv.second.empty(); });
    return out;
}

struct SignedCochainCell {
    int sign;
    CochainCell cell;
};

/// phi_{tau,s} u phi_{tau',s'} = sign(s,s') phi_{tau+tau', s u s'}, zero when s and s' meet.
inline std::optional<SignedCochainCell> cup_reduced(const CochainCell& a, const CochainCell& b)
{
    auto p = subset_mul_sign(a.sigma, b.sigma);
    if (!p) {
        return std::nullopt;
    }
    return SignedCochainCell{p->sign, CochainCell{a.tau.merged(b.tau), p->subset}};
}

template <class T>
Combination<CochainCell, T> cup_reduced(const Combination<CochainCell, T>& a, const Combination<CochainCell, T>& b)
{
    std::vector<std::pair<CochainCell, T>> terms;
    for (const auto& [ca, xa] : a) {
        for (const auto& [cb, xb] : b) {
            if (auto p = cup_reduced(ca, cb)) {
                T c = xa * xb;
                if (p->sign < 0) {
                    c = -c;
                }
                terms.emplace_back(p->cell, std::move(c));
            }
        }
    }
    return Combination<CochainCell, T>::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// Cohomology classes over a field

namespace detail {

/// m v with zero entries dropped, rows ascending.
template <class T>
SparseVec<T> apply_sparse(const SparseMatrix<T>& m, const SparseVec<T>& v)
{
    std::map<std::size_t, T> acc;
    for (const auto& [c, x] : v) {
        for (const auto& [r, w] : m.column(c)) {
            acc[r] += w * x;
        }
    }
    SparseVec<T> out;
    for (auto& [r, x] : acc) {
        if (!is_zero(x)) {
            out.emplace_back(r, std::move(x));
        }
    }
    return out;
}

} // namespace detail

/// A basis of H^k of a cochain complex over a field, with coordinates of
/// cocycles modulo coboundaries. Unit-vector cocycles are preferred as
/// representatives.
template <class T>
class ClassBasis {
public:
    ClassBasis(const BasedComplex<T>& c, int k) : complex_(&c), degree_(k)
    {
        static_assert(coeff_traits<T>::is_field);
        out_ = c.differential(k);
        const std::size_t size = c.size(k);
        SparseMatrix<T> in = k == 0 ? SparseMatrix<T>(size, 0) : c.differential(k - 1);
        ColumnEchelon<TypedFieldOps<T>> ech(TypedFieldOps<T>{}, false);
        for (std::size_t j = 0; j < in.cols(); ++j) {
            ech.insert(SparseVec<T>(in.column(j).begin(), in.column(j).end()), {});
        }
        const std::size_t boundary_rank = ech.rank();
        for (std::size_t i = 0; i < size; ++i) {
            if (out_.column(i).empty()) {
                SparseVec<T> e{{i, T(1)}};
                if (!ech.insert(e, {})) {
                    reps_.push_back(std::move(e));
                }
            }
        }
        for (auto& z : kernel_basis(out_)) {
            if (!ech.insert(z, {})) {
                reps_.push_back(std::move(z));
            }
        }
        const std::size_t expected = size - field_rank(out_) - boundary_rank;
        if (reps_.size() != expected) {
            throw std::logic_error("ClassBasis: found " + std::to_string(reps_.size())
                                   + " representatives, expected " + std::to_string(expected));
        }
        std::vector<typename SparseMatrix<T>::column_type> cols;
        for (const auto& r : reps_) {
            cols.push_back(r);
        }
        for (std::size_t j = 0; j < in.cols(); ++j) {
            cols.push_back(in.column(j));
        }
        solver_.emplace(SparseMatrix<T>::from_columns(size, std::move(cols)));
    }

    int degree() const { return degree_; }
    std::size_t dimension() const { return reps_.size(); }
    const std::vector<SparseVec<T>>& representatives() const { return reps_; }
    const BasedComplex<T>& complex() const { return *complex_; }

    bool is_cocycle(const SparseVec<T>& z) const { return detail::apply_sparse(out_, z).empty(); }

    /// Coordinates of the class of the cocycle z; throws when z is not a cocycle.
    std::vector<T> coordinates(const SparseVec<T>& z) const
    {
        if (!is_cocycle(z)) {
            throw std::invalid_argument("ClassBasis::coordinates: not a cocycle");
        }
        std::vector<T> rhs(complex_->size(degree_), T(0));
        for (const auto& [i, x] : z) {
            rhs[i] += x;
        }
        auto w = solver_->solve(rhs);
        if (!w) {
            throw std::logic_error("ClassBasis::coordinates: cocycle outside the span of classes and coboundaries");
        }
        return std::vector<T>(w->begin(), w->begin() + static_cast<std::ptrdiff_t>(reps_.size()));
    }

    /// Labels -> sparse coordinates in this degree.
    template <class Label>
    SparseVec<T> vector_of(const Combination<Label, T>& x) const
    {
        std::map<std::size_t, T> acc;
        for (const auto& [l, c] : x) {
            auto i = complex_->index_of(degree_, BasisLabel(l));
            if (!i) {
                throw std::invalid_argument("ClassBasis: label " + to_string(BasisLabel(l)) + " not in degree "
                                            + std::to_string(degree_));
            }
            acc[*i] += c;
        }
        SparseVec<T> out;
        for (auto& [i, c] : acc) {
            if (!is_zero(c)) {
                out.emplace_back(i, std::move(c));
            }
        }
        return out;
    }

    template <class Label>
    Combination<Label, T> combination_of(const SparseVec<T>& v) const
    {
        std::vector<std::pair<Label, T>> terms;
        for (const auto& [i, c] : v) {
            terms.emplace_back(std::get<Label>(complex_->basis(degree_)[i]), c);
        }
        return Combination<Label, T>::from_terms(std::move(terms));
    }

private:
    const BasedComplex<T>* complex_;
    int degree_;
    SparseMatrix<T> out_;
    std::vector<SparseVec<T>> reps_;
    std::optional<ImageSolver<T>> solver_;
};

template <class T>
BasedComplex<T> complex_over(const BasedComplex<Integer>& c)
{
    return map_complex(c, [](const Integer& z) { return coeff_traits<T>::from_integer(z); });
}

/// "x1^x2⊗y1^2·y2": the reduced class x_sigma (x) x_tau, polynomial part in y.
inline std::string reduced_monomial_name(const CochainCell& c)
{
    std::string poly;
    const auto& e = c.tau.elements();
    for (std::size_t i = 0; i < e.size();) {
        std::size_t j = i;
        while (j < e.size() && e[j] == e[i]) {
            ++j;
        }
        if (!poly.empty()) {
            poly += "·";
        }
        poly += "y" + std::to_string(e[i]);
        if (j - i > 1) {
            poly += "^" + std::to_string(j - i);
        }
        i = j;
    }
    return detail::monomial_string(c.sigma) + "⊗" + (poly.empty() ? "1" : poly);
}

template <class T>
struct StructureEntry {
    int left_degree = 0;
    std::size_t left = 0;
    int right_degree = 0;
    std::size_t right = 0;
    std::vector<T> product; ///< coordinates in the basis of degree left_degree + right_degree
};

template <class T>
struct RingStructure {
    int n = 0;
    int max_total_degree = 0;
    std::vector<std::vector<Combination<CochainCell, T>>> basis; ///< class representatives per degree
    std::vector<std::vector<std::string>> names;
    std::vector<StructureEntry<T>> table;
    bool pushforward_iso = false; ///< h-bar maps bar classes onto a basis, degree by degree
    bool bar_agrees = false;      ///< bar products pushed forward match reduced products
    std::size_t checked_pairs = 0;
    std::string failure;

    bool verdict() const { return pushforward_iso && bar_agrees; }
};

/// Cohomology ring of Λ[x1..xn] through total degree D over the field T:
/// a class basis of the reduced complex, its cup_reduced structure table,
/// and the comparison with bar-level cup products pushed through h-bar.
template <class T>
RingStructure<T> ring_structure_constants(int n, int max_total_degree, std::size_t limit = default_size_limit)
{
    static_assert(coeff_traits<T>::is_field);
    const int D = max_total_degree;
    RingStructure<T> rs;
    rs.n = n;
    rs.max_total_degree = D;
    const BasedComplex<T> red = complex_over<T>(build_reduced_cochain(n, D + 1));
    const BasedComplex<T> bar = complex_over<T>(build_bar_hochschild_cochain(n, D + 1, limit));
    std::vector<ClassBasis<T>> red_cls;
    std::vector<ClassBasis<T>> bar_cls;
    for (int k = 0; k <= D; ++k) {
        red_cls.emplace_back(red, k);
        bar_cls.emplace_back(bar, k);
    }
    for (int k = 0; k <= D; ++k) {
        std::vector<Combination<CochainCell, T>> b;
        std::vector<std::string> names;
        for (const auto& r : red_cls[static_cast<std::size_t>(k)].representatives()) {
            auto comb = red_cls[static_cast<std::size_t>(k)].template combination_of<CochainCell>(r);
            if (comb.size() == 1 && comb.begin()->second == T(1)) {
                names.push_back(reduced_monomial_name(comb.begin()->first));
            } else {
                names.push_back("[" + to_string(comb) + "]");
            }
            b.push_back(std::move(comb));
        }
        rs.basis.push_back(std::move(b));
        rs.names.push_back(std::move(names));
    }
    for (int p = 0; p <= D; ++p) {
        for (int q = 0; p + q <= D; ++q) {
            const auto& target = red_cls[static_cast<std::size_t>(p + q)];
            for (std::size_t i = 0; i < rs.basis[static_cast<std::size_t>(p)].size(); ++i) {
                for (std::size_t j = 0; j < rs.basis[static_cast<std::size_t>(q)].size(); ++j) {
                    auto prod = cup_reduced(rs.basis[static_cast<std::size_t>(p)][i],
                                            rs.basis[static_cast<std::size_t>(q)][j]);
                    rs.table.push_back({p, i, q, j, target.coordinates(target.vector_of(prod))});
                }
            }
        }
    }

    // bar side
    std::vector<std::vector<BarCochain<T>>> bar_reps(static_cast<std::size_t>(D + 1));
    std::vector<std::vector<Combination<CochainCell, T>>> pushed(static_cast<std::size_t>(D + 1));
    rs.pushforward_iso = true;
    for (int k = 0; k <= D; ++k) {
        const auto& bc = bar_cls[static_cast<std::size_t>(k)];
        const auto& rc = red_cls[static_cast<std::size_t>(k)];
        std::vector<std::vector<T>> images;
        for (const auto& r : bc.representatives()) {
            auto cells = bc.template combination_of<BarCochainCell>(r);
            bar_reps[static_cast<std::size_t>(k)].push_back(BarCochain<T>::from_cells(k, cells));
            auto h = pushforward_cochain(cells);
            auto hv = rc.vector_of(h);
            if (!rc.is_cocycle(hv)) {
                rs.pushforward_iso = false;
                rs.failure = "h-bar of a bar cocycle in degree " + std::to_string(k) + " is not a cocycle";
                return rs;
            }
            images.push_back(rc.coordinates(hv));
            pushed[static_cast<std::size_t>(k)].push_back(std::move(h));
        }
        if (bc.dimension() != rc.dimension()) {
            rs.pushforward_iso = false;
            rs.failure = "degree " + std::to_string(k) + ": bar and reduced cohomology dimensions differ";
            return rs;
        }
        std::vector<Triplet<T>> t;
        for (std::size_t a = 0; a < images.size(); ++a) {
            for (std::size_t r = 0; r < images[a].size(); ++r) {
                t.push_back({r, a, images[a][r]});
            }
        }
        if (field_rank(SparseMatrix<T>::from_triplets(rc.dimension(), images.size(), std::move(t))) != rc.dimension()) {
            rs.pushforward_iso = false;
            rs.failure = "degree " + std::to_string(k) + ": h-bar is not an isomorphism on classes";
            return rs;
        }
    }
    rs.bar_agrees = true;
    for (int p = 0; p <= D; ++p) {
        for (int q = 0; p + q <= D; ++q) {
            const auto& target = red_cls[static_cast<std::size_t>(p + q)];
            const auto& bar_target = bar_cls[static_cast<std::size_t>(p + q)];
            for (std::size_t a = 0; a < bar_reps[static_cast<std::size_t>(p)].size(); ++a) {
                for (std::size_t b = 0; b < bar_reps[static_cast<std::size_t>(q)].size(); ++b) {
                    const auto g = cup_bar(bar_reps[static_cast<std::size_t>(p)][a],
                                           bar_reps[static_cast<std::size_t>(q)][b]);
                    const auto gcells = g.cells();
                    ++rs.checked_pairs;
                    if (!bar_target.is_cocycle(bar_target.vector_of(gcells))) {
                        rs.bar_agrees = false;
                        rs.failure = "bar cup of cocycles is not a cocycle";
                        return rs;
                    }
                    const auto via_bar = target.coordinates(target.vector_of(pushforward_cochain(gcells)));
                    const auto via_reduced = target.coordinates(target.vector_of(
                        cup_reduced(pushed[static_cast<std::size_t>(p)][a], pushed[static_cast<std::size_t>(q)][b])));
                    if (via_bar != via_reduced) {
                        rs.bar_agrees = false;
                        rs.failure = "class mismatch for bar classes (" + std::to_string(p) + "," + std::to_string(a)
                                     + ") x (" + std::to_string(q) + "," + std::to_string(b) + ")";
                        return rs;
                    }
                }
            }
        }
    }
    return rs;
}

// ---------------------------------------------------------------------------
// Generators

/// The generator cells: 1 (x) x_{ij} (i <= j), x_{ij} (x) 1 (i < j),
/// x_i (x) x_j and, when requested, x_[n] (x) 1. Duplicates collapse, so
/// dropping x_[n] (x) 1 for n = 2 also drops x_{12} (x) 1.
inline std::set<CochainCell> generator_cells(int n, bool include_top_class)
{
    std::set<CochainCell> g;
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            g.insert(CochainCell{Multiset{i, j}, Subset()});
            if (i < j) {
                g.insert(CochainCell{Multiset(), Subset{i, j}});
            }
        }
        for (int j = 1; j <= n; ++j) {
            g.insert(CochainCell{Multiset{j}, Subset{i}});
        }
    }
    const CochainCell top{Multiset(), Subset::full(n)};
    if (include_top_class) {
        g.insert(top);
    } else {
        g.erase(top);
    }
    return g;
}

struct SpanVerdict {
    bool spans = false;
    int failing_degree = -1;
    std::vector<std::size_t> target_dims;  ///< per degree: classes to reach
    std::vector<std::size_t> reached_dims; ///< per degree: rank of products modulo coboundaries
    std::size_t generator_count = 0;
};

/// Whether products of the generators span, modulo coboundaries, every
/// class x_s (x) x_tau with |s| = |tau| mod 2 and the class x_[n] (x) 1, in
/// degrees <= max_degree.
template <class T = Rational>
SpanVerdict generator_span_check(int n, int max_degree, bool include_top_class = true)
{
    static_assert(coeff_traits<T>::is_field && coeff_traits<T>::characteristic != 2);
    const auto gens = generator_cells(n, include_top_class);
    std::set<CochainCell> reached{CochainCell{Multiset(), Subset()}};
    std::vector<CochainCell> frontier(reached.begin(), reached.end());
    while (!frontier.empty()) {
        std::vector<CochainCell> next;
        for (const auto& c : frontier) {
            for (const auto& g : gens) {
                auto p = cup_reduced(c, g);
                if (p && static_cast<int>(p->cell.tau.size()) <= max_degree && reached.insert(p->cell).second) {
                    next.push_back(p->cell);
                }
            }
        }
        frontier = std::move(next);
    }
    const BasedComplex<T> red = complex_over<T>(build_reduced_cochain(n, max_degree));
    SpanVerdict v;
    v.generator_count = gens.size();
    v.spans = true;
    for (int k = 0; k <= max_degree; ++k) {
        const std::size_t size = red.size(k);
        auto unit_columns = [&](auto pred) {
            std::vector<typename SparseMatrix<T>::column_type> cols;
            for (std::size_t i = 0; i < size; ++i) {
                if (pred(std::get<CochainCell>(red.basis(k)[i]))) {
                    cols.push_back({{i, T(1)}});
                }
            }
            return SparseMatrix<T>::from_columns(size, std::move(cols));
        };
        const auto reach = unit_columns([&](const CochainCell& c) { return reached.count(c) > 0; });
        const auto target = unit_columns([&](const CochainCell& c) {
            const bool even = (c.sigma.size() % 2) == static_cast<int>(c.tau.size() % 2);
            return even || (c.tau.empty() && c.sigma == Subset::full(n));
        });
        const SparseMatrix<T> boundaries = k == 0 ? SparseMatrix<T>(size, 0) : red.differential(k - 1);
        const auto base = hconcat(reach, boundaries);
        const std::size_t base_rank = field_rank(base);
        const std::size_t all_rank = field_rank(hconcat(base, target));
        const std::size_t b_rank = field_rank(boundaries);
        v.target_dims.push_back(field_rank(hconcat(target, boundaries)) - b_rank);
        v.reached_dims.push_back(base_rank - b_rank);
        if (all_rank != base_rank && v.spans) {
            v.spans = false;
            v.failing_degree = k;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Shuffle product

/// (a (x) a1..ap) * (a' (x) b1..bq) = sum over shuffles pi of sgn(pi) a a' (x) (interleaving).
/// Defined when A is commutative as a ring over T: characteristic 2 or n = 1.
template <class T>
Combination<BarChainCell, T> shuffle_product(const Combination<BarChainCell, T>& u,
                                             const Combination<BarChainCell, T>& v, int n)
{
    if (coeff_traits<T>::characteristic != 2 && n >= 2) {
        throw Error(ErrorCode::non_commutative_base,
                    "shuffle product needs a commutative base: characteristic 2 or n = 1");
    }
    std::vector<std::pair<BarChainCell, T>> terms;
    for (const auto& [cu, xu] : u) {
        for (const auto& [cv, xv] : v) {
            auto prod = subset_mul_sign(cu.sigma, cv.sigma);
            if (!prod) {
                continue;
            }
            const std::size_t p = cu.tensor.size();
            const std::size_t q = cv.tensor.size();
            // choose which of the p+q slots hold the first tensor's factors
            std::vector<char> slots(p + q, 0);
            std::fill(slots.begin() + static_cast<std::ptrdiff_t>(q), slots.end(), 1);
            do {
                Tensor t;
                t.reserve(p + q);
                std::size_t ia = 0;
                std::size_t ib = 0;
                std::size_t inversions = 0;
                for (char s : slots) {
                    if (s) {
                        t.push_back(cu.tensor[ia++]);
                        inversions += ib;
                    } else {
                        t.push_back(cv.tensor[ib++]);
                    }
                }
                T c = xu * xv;
                if ((prod->sign < 0) != (inversions % 2 == 1)) {
                    c = -c;
                }
                terms.emplace_back(BarChainCell{prod->subset, std::move(t)}, std::move(c));
            } while (std::next_permutation(slots.begin(), slots.end()));
        }
    }
    return Combination<BarChainCell, T>::from_terms(std::move(terms));
}

} // namespace hh
