#pragma once

// Exact linear algebra over Z, Q and F_p: Smith normal form, ranks,
// homology of a composable pair, kernels and image membership.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hh/coeff.hpp"
#include "hh/error.hpp"
#include "hh/sparse_matrix.hpp"

namespace hh {

/// Z^free_rank + Z/t_1 + ... + Z/t_s with t_1 | t_2 | ... and every t_i > 1.
struct HomologyGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }

    std::size_t torsion_count(const Integer& d) const
    {
        return static_cast<std::size_t>(std::count(torsion.begin(), torsion.end(), d));
    }

    /// "Z^3 + (Z/2)^2"; the trivial group renders as "0".
    std::string to_string() const
    {
        std::string out;
        auto append = [&](const std::string& s) {
            if (!out.empty()) {
                out += " + ";
            }
            out += s;
        };
        if (free_rank == 1) {
            append("Z");
        } else if (free_rank > 1) {
            append("Z^" + std::to_string(free_rank));
        }
        std::size_t i = 0;
        while (i < torsion.size()) {
            std::size_t j = i;
            while (j < torsion.size() && torsion[j] == torsion[i]) {
                ++j;
            }
            std::string cyc = "Z/" + torsion[i].get_str();
            append(j - i == 1 ? cyc : "(" + cyc + ")^" + std::to_string(j - i));
            i = j;
        }
        return out.empty() ? "0" : out;
    }
};

struct SnfResult {
    std::vector<Integer> divisors; ///< d_1 | d_2 | ... | d_r, all positive
    std::size_t rank = 0;
};

namespace detail {

struct Component {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

/// Connected components of the bipartite row/column support graph. Zero
/// rows and columns belong to no component.
template <class T>
std::vector<Component> split_components(const SparseMatrix<T>& m)
{
    const std::size_t nodes = m.rows() + m.cols();
    std::vector<std::size_t> parent(nodes);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<char> touched(nodes, 0);
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (const auto& [r, v] : m.column(c)) {
            std::size_t a = find(r);
            std::size_t b = find(m.rows() + c);
            touched[r] = touched[m.rows() + c] = 1;
            if (a != b) {
                parent[a] = b;
            }
        }
    }
    std::map<std::size_t, std::size_t> slot;
    std::vector<Component> out;
    // iterate columns first so components are ordered by their first column
    for (std::size_t node = m.rows(); node < nodes; ++node) {
        if (!touched[node]) {
            continue;
        }
        std::size_t root = find(node);
        auto [it, inserted] = slot.emplace(root, out.size());
        if (inserted) {
            out.emplace_back();
        }
        out[it->second].cols.push_back(node - m.rows());
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (touched[r]) {
            out[slot.at(find(r))].rows.push_back(r);
        }
    }
    return out;
}

/// q with |a - q b| <= |b| / 2.
inline Integer nearest_quotient(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer r = a - q * b;
    Integer twice = 2 * abs(r);
    if (cmp(twice, abs(b)) > 0) {
        if (sgn(r) == sgn(b)) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    return q;
}

/// Sparse unimodular elimination of one connected block down to a diagonal
/// (not necessarily a divisor chain). Pivots prefer units, then the smallest
/// absolute value, then the smallest Markowitz fill estimate.
class IntegerEliminator {
public:
    IntegerEliminator(const SparseMatrix<Integer>& m, const Component& comp)
        : rows_(comp.rows.size()), col_rows_(comp.cols.size()), active_(comp.rows.size(), 1)
    {
        std::unordered_map<std::size_t, std::size_t> local_row;
        for (std::size_t i = 0; i < comp.rows.size(); ++i) {
            local_row.emplace(comp.rows[i], i);
        }
        for (std::size_t j = 0; j < comp.cols.size(); ++j) {
            for (const auto& [r, v] : m.column(comp.cols[j])) {
                std::size_t lr = local_row.at(r);
                rows_[lr].emplace_back(j, v);
                col_rows_[j].push_back(lr);
            }
        }
        for (auto& row : rows_) {
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
    }

    std::vector<Integer> run()
    {
        std::vector<Integer> diag;
        while (auto pivot = choose_pivot()) {
            auto [pr, pc] = *pivot;
            while (true) {
                if (auto next = clear_column(pr, pc)) {
                    pr = next->first;
                    pc = next->second;
                    continue;
                }
                if (auto next = clear_row(pr, pc)) {
                    pr = next->first;
                    pc = next->second;
                    continue;
                }
                break;
            }
            diag.push_back(abs(entry(pr, pc)));
            rows_[pr].clear();
            col_rows_[pc].clear();
            active_[pr] = 0;
        }
        return diag;
    }

private:
    using Row = std::vector<std::pair<std::size_t, Integer>>;

    const Integer* find_entry(std::size_t r, std::size_t c) const
    {
        const Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            return &it->second;
        }
        return nullptr;
    }

    Integer entry(std::size_t r, std::size_t c) const
    {
        const Integer* e = find_entry(r, c);
        return e ? *e : Integer(0);
    }

    void erase_from_column(std::size_t c, std::size_t r)
    {
        auto& lst = col_rows_[c];
        auto it = std::find(lst.begin(), lst.end(), r);
        if (it != lst.end()) {
            *it = lst.back();
            lst.pop_back();
        }
    }

    std::optional<std::pair<std::size_t, std::size_t>> choose_pivot() const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        bool best_unit = false;
        const Integer* best_val = nullptr;
        std::size_t best_cost = 0;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (!active_[r]) {
                continue;
            }
            const std::size_t rlen = rows_[r].size();
            for (const auto& [c, v] : rows_[r]) {
                const bool unit = (v == 1 || v == -1);
                const std::size_t cost = (rlen - 1) * (col_rows_[c].size() - 1);
                bool better = false;
                if (!best) {
                    better = true;
                } else if (unit != best_unit) {
                    better = unit;
                } else if (!unit && cmpabs(v, *best_val) != 0) {
                    better = cmpabs(v, *best_val) < 0;
                } else {
                    better = cost < best_cost;
                }
                if (better) {
                    best = std::make_pair(r, c);
                    best_unit = unit;
                    best_val = &v;
                    best_cost = cost;
                    if (unit && cost == 0) {
                        return best;
                    }
                }
            }
        }
        return best;
    }

    static int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

    /// row_t -= q * row_s
    void row_axpy(std::size_t t, const Integer& q, std::size_t s)
    {
        Row& a = rows_[t];
        const Row& b = rows_[s];
        Row out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(std::move(a[i++]));
            } else if (i == a.size() || b[j].first < a[i].first) {
                Integer v = -q * b[j].second;
                col_rows_[b[j].first].push_back(t);
                out.emplace_back(b[j].first, std::move(v));
                ++j;
            } else {
                Integer v = a[i].second - q * b[j].second;
                if (sgn(v) == 0) {
                    erase_from_column(a[i].first, t);
                } else {
                    out.emplace_back(a[i].first, std::move(v));
                }
                ++i;
                ++j;
            }
        }
        a = std::move(out);
    }

    std::optional<std::pair<std::size_t, std::size_t>> clear_column(std::size_t pr, std::size_t pc)
    {
        const Integer p = entry(pr, pc);
        std::vector<std::size_t> others = col_rows_[pc];
        std::optional<std::pair<std::size_t, std::size_t>> smaller;
        for (std::size_t r : others) {
            if (r == pr) {
                continue;
            }
            Integer v = entry(r, pc);
            Integer q = nearest_quotient(v, p);
            if (sgn(q) != 0) {
                row_axpy(r, q, pr);
            }
            if (find_entry(r, pc) != nullptr) {
                smaller = std::make_pair(r, pc);
                break;
            }
        }
        return smaller;
    }

    std::optional<std::pair<std::size_t, std::size_t>> clear_row(std::size_t pr, std::size_t pc)
    {
        // column pc holds only the pivot here, so the column operation
        // col_c -= q col_pc only touches row pr
        const Integer p = entry(pr, pc);
        Row& row = rows_[pr];
        Row out;
        std::optional<std::pair<std::size_t, std::size_t>> smaller;
        for (std::size_t i = 0; i < row.size(); ++i) {
            auto& [c, v] = row[i];
            if (c == pc || smaller) {
                out.push_back(std::move(row[i]));
                continue;
            }
            Integer q = nearest_quotient(v, p);
            Integer rem = v - q * p;
            if (sgn(rem) == 0) {
                erase_from_column(c, pr);
            } else {
                out.emplace_back(c, std::move(rem));
                smaller = std::make_pair(pr, c);
            }
        }
        row = std::move(out);
        return smaller;
    }

    std::vector<Row> rows_;
    std::vector<std::vector<std::size_t>> col_rows_;
    std::vector<char> active_;
};

/// Invariant factors of a diagonal matrix: pairwise (gcd, lcm) normalization.
inline std::vector<Integer> invariant_factors(std::vector<Integer> diag)
{
    std::size_t units = 0;
    std::vector<Integer> rest;
    for (auto& d : diag) {
        Integer a = abs(d);
        if (sgn(a) == 0) {
            continue;
        }
        if (a == 1) {
            ++units;
        } else {
            rest.push_back(std::move(a));
        }
    }
    for (std::size_t i = 0; i < rest.size(); ++i) {
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
            Integer g = gcd(rest[i], rest[j]);
            if (g == rest[i]) {
                continue;
            }
            Integer l = (rest[i] / g) * rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    std::vector<Integer> out(units, Integer(1));
    for (auto& d : rest) {
        if (d == 1) {
            out.insert(out.begin(), Integer(1));
        } else {
            out.push_back(std::move(d));
        }
    }
    return out;
}

} // namespace detail

/// Smith normal form divisors of an integer matrix (no transforms).
inline SnfResult smith_normal_form(const SparseMatrix<Integer>& m)
{
    std::vector<Integer> diag;
    for (const auto& comp : detail::split_components(m)) {
        detail::IntegerEliminator elim(m, comp);
        auto d = elim.run();
        diag.insert(diag.end(), std::make_move_iterator(d.begin()), std::make_move_iterator(d.end()));
    }
    SnfResult res;
    res.divisors = detail::invariant_factors(std::move(diag));
    res.rank = res.divisors.size();
    return res;
}

/// Ker alpha / Im beta for Z^l <-alpha- Z^m <-beta- Z^n with alpha beta = 0.
inline HomologyGroup homology_pair(const SparseMatrix<Integer>& alpha, const SparseMatrix<Integer>& beta)
{
    if (alpha.cols() != beta.rows()) {
        throw std::invalid_argument("homology_pair: alpha is " + std::to_string(alpha.rows()) + "x"
                                    + std::to_string(alpha.cols()) + " but beta is "
                                    + std::to_string(beta.rows()) + "x" + std::to_string(beta.cols()));
    }
    if (!compose(alpha, beta).is_zero()) {
        throw Error(ErrorCode::composition_nonzero, "alpha * beta != 0");
    }
    const SnfResult a = smith_normal_form(alpha);
    const SnfResult b = smith_normal_form(beta);
    HomologyGroup h;
    h.free_rank = alpha.cols() - a.rank - b.rank;
    for (const auto& d : b.divisors) {
        if (d != 1) {
            h.torsion.push_back(d);
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Field elimination

/// Field operations on a value type, backed by the type's own operators.
template <class T>
struct TypedFieldOps {
    using value_type = T;
    static T from(const Integer& z) { return coeff_traits<T>::from_integer(z); }
    static T convert(const T& v) { return v; }
    static bool zero(const T& a) { return coeff_traits<T>::is_zero(a); }
    static T mul(const T& a, const T& b) { return a * b; }
    static T sub(const T& a, const T& b) { return a - b; }
    static T div(const T& a, const T& b) { return a / b; }
};

/// F_p with a runtime prime.
struct ModpOps {
    using value_type = std::uint64_t;
    std::uint64_t p;

    value_type from(const Integer& z) const { return mpz_fdiv_ui(z.get_mpz_t(), p); }
    bool zero(value_type a) const { return a == 0; }
    value_type mul(value_type a, value_type b) const
    {
        return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p);
    }
    value_type sub(value_type a, value_type b) const { return (a + p - b) % p; }
    value_type inv(value_type a) const
    {
        value_type result = 1;
        value_type base = a;
        value_type e = p - 2;
        while (e > 0) {
            if (e & 1U) {
                result = mul(result, base);
            }
            base = mul(base, base);
            e >>= 1U;
        }
        return result;
    }
    value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
};

template <class V>
using SparseVec = std::vector<std::pair<std::size_t, V>>;

/// Incremental column echelon form: pivots keyed by their smallest row
/// index. Each stored pivot carries a tag recording it as a combination of
/// the inserted columns, which yields kernels and image witnesses.
template <class Ops>
class ColumnEchelon {
public:
    using V = typename Ops::value_type;
    using Vec = SparseVec<V>;

    explicit ColumnEchelon(Ops ops = Ops{}, bool track = true) : ops_(std::move(ops)), track_(track) {}

    /// Returns the reduced tag when v lies in the current span (v became
    /// zero), otherwise stores v as a new pivot and returns nullopt.
    std::optional<Vec> insert(Vec v, Vec tag)
    {
        reduce_in_place(v, tag);
        if (v.empty()) {
            return tag;
        }
        lead_.emplace(v.front().first, pivots_.size());
        pivots_.push_back(std::move(v));
        tags_.push_back(std::move(tag));
        return std::nullopt;
    }

    /// Witness w (sum of tags) with v = sum w_i * inserted_i, when v is in the span.
    std::optional<Vec> express(Vec v) const
    {
        Vec tag;
        reduce_in_place(v, tag);
        if (!v.empty()) {
            return std::nullopt;
        }
        for (auto& [i, c] : tag) {
            c = ops_.sub(V(ops_.from(Integer(0))), c);
        }
        return tag;
    }

    bool contains(Vec v) const
    {
        Vec tag;
        reduce_in_place(v, tag, false);
        return v.empty();
    }

    std::size_t rank() const { return pivots_.size(); }

private:
    void reduce_in_place(Vec& v, Vec& tag, bool with_tag = true) const
    {
        while (!v.empty()) {
            auto it = lead_.find(v.front().first);
            if (it == lead_.end()) {
                return;
            }
            const Vec& piv = pivots_[it->second];
            V f = ops_.div(v.front().second, piv.front().second);
            axpy(v, f, piv);
            if (track_ && with_tag) {
                axpy(tag, f, tags_[it->second]);
            }
        }
    }

    /// a -= f * b
    void axpy(Vec& a, const V& f, const Vec& b) const
    {
        Vec out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(std::move(a[i++]));
            } else if (i == a.size() || b[j].first < a[i].first) {
                V z = ops_.from(Integer(0));
                out.emplace_back(b[j].first, ops_.sub(z, ops_.mul(f, b[j].second)));
                ++j;
            } else {
                V val = ops_.sub(a[i].second, ops_.mul(f, b[j].second));
                if (!ops_.zero(val)) {
                    out.emplace_back(a[i].first, std::move(val));
                }
                ++i;
                ++j;
            }
        }
        a = std::move(out);
    }

    Ops ops_;
    bool track_;
    std::vector<Vec> pivots_;
    std::vector<Vec> tags_;
    std::unordered_map<std::size_t, std::size_t> lead_;
};

namespace detail {

/// Rank by column echelon, one connected block at a time.
template <class Ops, class T, class Conv>
std::size_t echelon_rank(const SparseMatrix<T>& m, Ops ops, Conv conv)
{
    std::size_t rank = 0;
    for (const auto& comp : split_components(m)) {
        ColumnEchelon<Ops> ech(ops, false);
        for (std::size_t c : comp.cols) {
            typename ColumnEchelon<Ops>::Vec v;
            for (const auto& [r, x] : m.column(c)) {
                auto y = conv(x);
                if (!ops.zero(y)) {
                    v.emplace_back(r, std::move(y));
                }
            }
            ech.insert(std::move(v), {});
        }
        rank += ech.rank();
    }
    return rank;
}

} // namespace detail

/// Rank of an integer matrix after reducing its entries into Q (characteristic 0) or F_p.
inline std::size_t rank_over_field(const SparseMatrix<Integer>& m, unsigned characteristic)
{
    if (characteristic == 0) {
        return detail::echelon_rank(m, TypedFieldOps<Rational>{},
                                    [](const Integer& z) { return Rational(z); });
    }
    if (!Ring::is_prime(characteristic)) {
        throw Error(ErrorCode::unsupported_ring,
                    "characteristic " + std::to_string(characteristic) + " is not prime");
    }
    ModpOps ops{characteristic};
    return detail::echelon_rank(m, ops, [&](const Integer& z) { return ops.from(z); });
}

/// Rank of a matrix whose entries already live in a field.
template <class T>
std::size_t field_rank(const SparseMatrix<T>& m)
{
    static_assert(coeff_traits<T>::is_field);
    return detail::echelon_rank(m, TypedFieldOps<T>{}, [](const T& x) { return x; });
}

/// Basis of the (right) kernel of a field matrix as sparse vectors.
template <class T>
std::vector<SparseVec<T>> kernel_basis(const SparseMatrix<T>& m)
{
    static_assert(coeff_traits<T>::is_field);
    ColumnEchelon<TypedFieldOps<T>> ech;
    std::vector<SparseVec<T>> out;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        SparseVec<T> v(m.column(c).begin(), m.column(c).end());
        if (auto k = ech.insert(std::move(v), SparseVec<T>{{c, T(1)}})) {
            out.push_back(std::move(*k));
        }
    }
    return out;
}

namespace detail {

/// Dense Smith form with transforms U A V = diag for one block.
struct DenseSnf {
    std::vector<std::vector<Integer>> u;
    std::vector<std::vector<Integer>> v;
    std::vector<Integer> diag;

    explicit DenseSnf(std::vector<std::vector<Integer>> a)
    {
        const std::size_t m = a.size();
        const std::size_t n = m == 0 ? 0 : a[0].size();
        u.assign(m, std::vector<Integer>(m, Integer(0)));
        v.assign(n, std::vector<Integer>(n, Integer(0)));
        for (std::size_t i = 0; i < m; ++i) {
            u[i][i] = 1;
        }
        for (std::size_t j = 0; j < n; ++j) {
            v[j][j] = 1;
        }
        auto swap_rows = [&](std::size_t i, std::size_t k) {
            if (i != k) {
                std::swap(a[i], a[k]);
                std::swap(u[i], u[k]);
            }
        };
        auto swap_cols = [&](std::size_t j, std::size_t k) {
            if (j == k) {
                return;
            }
            for (auto& row : a) {
                std::swap(row[j], row[k]);
            }
            for (auto& row : v) {
                std::swap(row[j], row[k]);
            }
        };
        for (std::size_t t = 0; t < std::min(m, n); ++t) {
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t i = t; i < m; ++i) {
                for (std::size_t j = t; j < n; ++j) {
                    if (sgn(a[i][j]) != 0
                        && (!best || cmpabs(a[i][j], a[best->first][best->second]) < 0)) {
                        best = std::make_pair(i, j);
                    }
                }
            }
            if (!best) {
                break;
            }
            swap_rows(t, best->first);
            swap_cols(t, best->second);
            while (true) {
                bool clean = true;
                for (std::size_t i = t + 1; i < m; ++i) {
                    if (sgn(a[i][t]) == 0) {
                        continue;
                    }
                    Integer q = nearest_quotient(a[i][t], a[t][t]);
                    for (std::size_t j = t; j < n; ++j) {
                        a[i][j] -= q * a[t][j];
                    }
                    for (std::size_t j = 0; j < m; ++j) {
                        u[i][j] -= q * u[t][j];
                    }
                    clean = clean && sgn(a[i][t]) == 0;
                }
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (sgn(a[t][j]) == 0) {
                        continue;
                    }
                    Integer q = nearest_quotient(a[t][j], a[t][t]);
                    for (std::size_t i = t; i < m; ++i) {
                        a[i][j] -= q * a[i][t];
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        v[i][j] -= q * v[i][t];
                    }
                    clean = clean && sgn(a[t][j]) == 0;
                }
                if (clean) {
                    break;
                }
                // move the smallest remainder into the pivot position
                std::pair<std::size_t, std::size_t> sm{t, t};
                for (std::size_t i = t + 1; i < m; ++i) {
                    if (sgn(a[i][t]) != 0 && cmpabs(a[i][t], a[sm.first][sm.second]) < 0) {
                        sm = {i, t};
                    }
                }
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (sgn(a[t][j]) != 0 && cmpabs(a[t][j], a[sm.first][sm.second]) < 0) {
                        sm = {t, j};
                    }
                }
                swap_rows(t, sm.first);
                swap_cols(t, sm.second);
            }
            diag.push_back(a[t][t]);
        }
    }

    static int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
};

} // namespace detail

/// Precomputed image-membership solver for M w = v. Over Z it uses Smith
/// forms with transforms per connected block; over a field, column echelon.
template <class T>
class ImageSolver {
public:
    explicit ImageSolver(const SparseMatrix<T>& m) : rows_(m.rows()), cols_(m.cols())
    {
        static_assert(coeff_traits<T>::is_field);
        for (std::size_t c = 0; c < m.cols(); ++c) {
            SparseVec<T> v(m.column(c).begin(), m.column(c).end());
            ech_.insert(std::move(v), SparseVec<T>{{c, T(1)}});
        }
    }

    std::optional<std::vector<T>> solve(const std::vector<T>& rhs) const
    {
        if (rhs.size() != rows_) {
            throw std::invalid_argument("solve_in_image: vector length differs from row count");
        }
        SparseVec<T> v;
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            if (!is_zero(rhs[i])) {
                v.emplace_back(i, rhs[i]);
            }
        }
        auto w = ech_.express(std::move(v));
        if (!w) {
            return std::nullopt;
        }
        std::vector<T> out(cols_, T(0));
        for (const auto& [i, c] : *w) {
            out[i] = c;
        }
        return out;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    ColumnEchelon<TypedFieldOps<T>> ech_;
};

template <>
class ImageSolver<Integer> {
public:
    explicit ImageSolver(const SparseMatrix<Integer>& m) : rows_(m.rows()), cols_(m.cols())
    {
        row_block_.assign(m.rows(), npos);
        for (auto& comp : detail::split_components(m)) {
            Block b;
            std::unordered_map<std::size_t, std::size_t> local;
            for (std::size_t i = 0; i < comp.rows.size(); ++i) {
                local.emplace(comp.rows[i], i);
                row_block_[comp.rows[i]] = blocks_.size();
            }
            std::vector<std::vector<Integer>> dense(comp.rows.size(),
                                                    std::vector<Integer>(comp.cols.size(), Integer(0)));
            for (std::size_t j = 0; j < comp.cols.size(); ++j) {
                for (const auto& [r, x] : m.column(comp.cols[j])) {
                    dense[local.at(r)][j] = x;
                }
            }
            b.snf = std::make_unique<detail::DenseSnf>(std::move(dense));
            b.comp = std::move(comp);
            blocks_.push_back(std::move(b));
        }
    }

    std::optional<std::vector<Integer>> solve(const std::vector<Integer>& rhs) const
    {
        if (rhs.size() != rows_) {
            throw std::invalid_argument("solve_in_image: vector length differs from row count");
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            if (row_block_[r] == npos && sgn(rhs[r]) != 0) {
                return std::nullopt;
            }
        }
        std::vector<Integer> w(cols_, Integer(0));
        for (const auto& b : blocks_) {
            const auto& snf = *b.snf;
            const std::size_t m = b.comp.rows.size();
            const std::size_t n = b.comp.cols.size();
            std::vector<Integer> y(m, Integer(0));
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t k = 0; k < m; ++k) {
                    if (sgn(snf.u[i][k]) != 0) {
                        y[i] += snf.u[i][k] * rhs[b.comp.rows[k]];
                    }
                }
            }
            std::vector<Integer> z(n, Integer(0));
            for (std::size_t i = 0; i < m; ++i) {
                if (i < snf.diag.size()) {
                    if (!mpz_divisible_p(y[i].get_mpz_t(), snf.diag[i].get_mpz_t())) {
                        return std::nullopt;
                    }
                    z[i] = y[i] / snf.diag[i];
                } else if (sgn(y[i]) != 0) {
                    return std::nullopt;
                }
            }
            for (std::size_t j = 0; j < n; ++j) {
                Integer acc = 0;
                for (std::size_t k = 0; k < snf.diag.size(); ++k) {
                    acc += snf.v[j][k] * z[k];
                }
                w[b.comp.cols[j]] = acc;
            }
        }
        return w;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    struct Block {
        detail::Component comp;
        std::unique_ptr<detail::DenseSnf> snf;
    };

    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::size_t> row_block_;
    std::vector<Block> blocks_;
};

/// Witness w with M w = v over the coefficient domain of T, if one exists.
template <class T>
std::optional<std::vector<T>> solve_in_image(const SparseMatrix<T>& m, const std::vector<T>& v)
{
    return ImageSolver<T>(m).solve(v);
}

} // namespace hh
