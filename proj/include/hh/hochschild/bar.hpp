#pragma once

// The normalized bar resolution of A = Λ[x1..xn] over A^e and the two
// brute-force oracle complexes A (x)_{A^e} B and Hom_{A^e}(B, A).

#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "hh/algebra.hpp"
#include "hh/combinat.hpp"
#include "hh/complex.hpp"
#include "hh/error.hpp"

namespace hh {

inline constexpr std::size_t default_size_limit = 2'000'000;

/// HH_SIZE_LIMIT from the environment, else the default.
inline std::size_t size_limit_from_env()
{
    if (const char* v = std::getenv("HH_SIZE_LIMIT")) {
        try {
            return static_cast<std::size_t>(std::stoull(v));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("HH_SIZE_LIMIT is not a number: ") + v);
        }
    }
    return default_size_limit;
}

inline void check_n(int n)
{
    if (n < 1 || n > 16) {
        throw std::invalid_argument("n must be in 1..16, got " + std::to_string(n));
    }
}

inline std::uint64_t saturating_power(std::uint64_t base, int k)
{
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) {
        if (base != 0 && r > UINT64_MAX / base) {
            return UINT64_MAX;
        }
        r *= base;
    }
    return r;
}

/// All k-tuples of nonempty subsets of [n], first factor most significant.
inline std::vector<Tensor> normalized_tensors(int n, int k, std::size_t limit = default_size_limit)
{
    const std::uint32_t top = (1U << n) - 1U;
    const std::uint64_t count = saturating_power(top, k);
    if (count > limit) {
        throw SizeLimitError(k, static_cast<std::size_t>(std::min<std::uint64_t>(count, SIZE_MAX)), limit);
    }
    std::vector<Tensor> out;
    out.reserve(static_cast<std::size_t>(count));
    Tensor cur(static_cast<std::size_t>(k), Subset(1U));
    while (true) {
        out.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)].mask() == top) {
            cur[static_cast<std::size_t>(pos)] = Subset(1U);
            --pos;
        }
        if (pos < 0) {
            break;
        }
        cur[static_cast<std::size_t>(pos)] = Subset(cur[static_cast<std::size_t>(pos)].mask() + 1U);
    }
    return out;
}

/// b(1 (x) x_{s1} (x) ... (x) x_{sk} (x) 1) as (tensor, A^e weight) terms:
/// (x_{s1} (x) 1) on the tail, (-1)^i sign(s_i, s_{i+1}) on each nonzero
/// merge, (-1)^k (1 (x) x_{sk}) on the head.
inline std::vector<std::pair<Tensor, EnvElement<Integer>>> bar_boundary(const Tensor& t)
{
    std::vector<std::pair<Tensor, EnvElement<Integer>>> out;
    const std::size_t k = t.size();
    if (k == 0) {
        return out;
    }
    out.emplace_back(Tensor(t.begin() + 1, t.end()), env_term<Integer>(t.front(), Subset(), 1));
    for (std::size_t i = 1; i < k; ++i) {
        auto p = subset_mul_sign(t[i - 1], t[i]);
        if (!p) {
            continue;
        }
        Tensor merged;
        merged.reserve(k - 1);
        merged.insert(merged.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i - 1));
        merged.push_back(p->subset);
        merged.insert(merged.end(), t.begin() + static_cast<std::ptrdiff_t>(i + 1), t.end());
        const int sign = (i % 2 == 0 ? 1 : -1) * p->sign;
        out.emplace_back(std::move(merged), env_term<Integer>(Subset(), Subset(), sign));
    }
    out.emplace_back(Tensor(t.begin(), t.end() - 1),
                     env_term<Integer>(Subset(), t.back(), k % 2 == 0 ? 1 : -1));
    return out;
}

namespace detail {

/// Index of a normalized tensor inside normalized_tensors(n, k).
inline std::size_t tensor_index(const Tensor& t, int n)
{
    const std::size_t base = (std::size_t{1} << n) - 1;
    std::size_t idx = 0;
    for (const auto& f : t) {
        idx = idx * base + (f.mask() - 1U);
    }
    return idx;
}

} // namespace detail

/// Normalized bar resolution B_0..B_max over A^e.
inline BasedComplex<EnvElement<Integer>> build_bar_resolution(int n, int max_degree,
                                                              std::size_t limit = default_size_limit)
{
    check_n(n);
    std::vector<std::vector<Tensor>> tensors;
    std::vector<std::vector<BasisLabel>> bases;
    for (int k = 0; k <= max_degree; ++k) {
        tensors.push_back(normalized_tensors(n, k, limit));
        std::vector<BasisLabel> b;
        b.reserve(tensors.back().size());
        for (const auto& t : tensors.back()) {
            b.emplace_back(BarTensor{t});
        }
        bases.push_back(std::move(b));
    }
    std::vector<SparseMatrix<EnvElement<Integer>>> diffs;
    for (int k = 0; k <= max_degree; ++k) {
        const std::size_t rows = k == 0 ? 0 : tensors[static_cast<std::size_t>(k - 1)].size();
        std::vector<Triplet<EnvElement<Integer>>> entries;
        const auto& ts = tensors[static_cast<std::size_t>(k)];
        for (std::size_t c = 0; c < ts.size(); ++c) {
            for (auto& [t, w] : bar_boundary(ts[c])) {
                entries.push_back({detail::tensor_index(t, n), c, std::move(w)});
            }
        }
        diffs.push_back(SparseMatrix<EnvElement<Integer>>::from_triplets(rows, ts.size(), std::move(entries)));
    }
    return BasedComplex<EnvElement<Integer>>(Orientation::chain, std::move(bases), std::move(diffs));
}

/// Bar chain complex of A with coefficients in A, built directly:
/// d(x_s (x) (s1..sk)) = sign(s,s1) x_{s s1} (x) (s2..sk)
///   + sum_i (-1)^i sign(s_i,s_{i+1}) x_s (x) (.., s_i s_{i+1}, ..)
///   + (-1)^k sign(sk,s) x_{sk s} (x) (s1..s_{k-1}).
/// Degree-k cells are ordered tensor-major, then by sigma.
inline BasedComplex<Integer> build_bar_hochschild_chain(int n, int max_degree,
                                                        std::size_t limit = default_size_limit)
{
    check_n(n);
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::vector<Tensor>> tensors;
    std::vector<std::vector<BasisLabel>> bases;
    for (int k = 0; k <= max_degree; ++k) {
        const std::uint64_t cells = saturating_power((1U << n) - 1U, k);
        if (cells > limit / subsets) {
            throw SizeLimitError(k, static_cast<std::size_t>(std::min<std::uint64_t>(cells * subsets, SIZE_MAX)),
                                 limit);
        }
        tensors.push_back(normalized_tensors(n, k, limit));
        std::vector<BasisLabel> b;
        b.reserve(tensors.back().size() * subsets);
        for (const auto& t : tensors.back()) {
            for (std::uint32_t m = 0; m < subsets; ++m) {
                b.emplace_back(BarChainCell{Subset(m), t});
            }
        }
        bases.push_back(std::move(b));
    }
    auto index = [&](const Tensor& t, Subset s) { return detail::tensor_index(t, n) * subsets + s.mask(); };
    std::vector<SparseMatrix<Integer>> diffs;
    for (int k = 0; k <= max_degree; ++k) {
        const auto& ts = tensors[static_cast<std::size_t>(k)];
        const std::size_t rows = k == 0 ? 0 : bases[static_cast<std::size_t>(k - 1)].size();
        std::vector<Triplet<Integer>> entries;
        if (k > 0) {
            for (const auto& t : ts) {
                for (std::uint32_t m = 0; m < subsets; ++m) {
                    const Subset s(m);
                    const std::size_t col = index(t, s);
                    if (auto p = subset_mul_sign(s, t.front())) {
                        entries.push_back({index(Tensor(t.begin() + 1, t.end()), p->subset), col, p->sign});
                    }
                    for (std::size_t i = 1; i < t.size(); ++i) {
                        auto p = subset_mul_sign(t[i - 1], t[i]);
                        if (!p) {
                            continue;
                        }
                        Tensor merged(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i - 1));
                        merged.push_back(p->subset);
                        merged.insert(merged.end(), t.begin() + static_cast<std::ptrdiff_t>(i + 1), t.end());
                        entries.push_back({index(merged, s), col, (i % 2 == 0 ? 1 : -1) * p->sign});
                    }
                    if (auto p = subset_mul_sign(t.back(), s)) {
                        entries.push_back({index(Tensor(t.begin(), t.end() - 1), p->subset), col,
                                           (k % 2 == 0 ? 1 : -1) * p->sign});
                    }
                }
            }
        }
        diffs.push_back(SparseMatrix<Integer>::from_triplets(rows, bases[static_cast<std::size_t>(k)].size(),
                                                             std::move(entries)));
    }
    return BasedComplex<Integer>(Orientation::chain, std::move(bases), std::move(diffs));
}

/// Bar cochain complex Hom(A^{(x)k}, A) in the dual basis phi_{v,s}, built
/// directly as phi -> phi o b:
/// d(phi_{v,s}) = sum_{t disjoint s} sign(t,s) phi_{(t,v), t s}
///   + sum_i sum_{v_i = a b} (-1)^i sign(a,b) phi_{(.., a, b, ..), s}
///   + (-1)^{k+1} sum_{t disjoint s} sign(s,t) phi_{(v,t), s t}.
inline BasedComplex<Integer> build_bar_hochschild_cochain(int n, int max_degree,
                                                          std::size_t limit = default_size_limit)
{
    check_n(n);
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::vector<Tensor>> tensors;
    std::vector<std::vector<BasisLabel>> bases;
    for (int k = 0; k <= max_degree; ++k) {
        const std::uint64_t cells = saturating_power((1U << n) - 1U, k);
        if (cells > limit / subsets) {
            throw SizeLimitError(k, static_cast<std::size_t>(std::min<std::uint64_t>(cells * subsets, SIZE_MAX)),
                                 limit);
        }
        tensors.push_back(normalized_tensors(n, k, limit));
        std::vector<BasisLabel> b;
        b.reserve(tensors.back().size() * subsets);
        for (const auto& t : tensors.back()) {
            for (std::uint32_t m = 0; m < subsets; ++m) {
                b.emplace_back(BarCochainCell{t, Subset(m)});
            }
        }
        bases.push_back(std::move(b));
    }
    auto index = [&](const Tensor& t, Subset s) { return detail::tensor_index(t, n) * subsets + s.mask(); };
    std::vector<SparseMatrix<Integer>> diffs;
    for (int k = 0; k < max_degree; ++k) {
        const auto& ts = tensors[static_cast<std::size_t>(k)];
        std::vector<Triplet<Integer>> entries;
        for (const auto& v : ts) {
            for (std::uint32_t m = 0; m < subsets; ++m) {
                const Subset s(m);
                const std::size_t col = index(v, s);
                for (std::uint32_t tm = 1; tm < subsets; ++tm) {
                    const Subset t(tm);
                    if (auto p = subset_mul_sign(t, s)) {
                        Tensor w{t};
                        w.insert(w.end(), v.begin(), v.end());
                        entries.push_back({index(w, p->subset), col, p->sign});
                    }
                    if (auto p = subset_mul_sign(s, t)) {
                        Tensor w = v;
                        w.push_back(t);
                        entries.push_back({index(w, p->subset), col, ((k + 1) % 2 == 0 ? 1 : -1) * p->sign});
                    }
                }
                for (std::size_t i = 1; i <= v.size(); ++i) {
                    const Subset vi = v[i - 1];
                    // ordered splits vi = a b with a, b nonempty
                    for (std::uint32_t am = (vi.mask() - 1U) & vi.mask(); am != 0; am = (am - 1U) & vi.mask()) {
                        const Subset a(am);
                        const Subset b = vi.minus(a);
                        auto p = subset_mul_sign(a, b);
                        Tensor w(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i - 1));
                        w.push_back(a);
                        w.push_back(b);
                        w.insert(w.end(), v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
                        entries.push_back({index(w, s), col, (i % 2 == 0 ? 1 : -1) * p->sign});
                    }
                }
            }
        }
        diffs.push_back(SparseMatrix<Integer>::from_triplets(bases[static_cast<std::size_t>(k + 1)].size(),
                                                             bases[static_cast<std::size_t>(k)].size(),
                                                             std::move(entries)));
    }
    return BasedComplex<Integer>(Orientation::cochain, std::move(bases), std::move(diffs));
}

namespace detail {

inline BasisLabel chain_label(Subset s, const BasisLabel& g)
{
    if (const auto* t = std::get_if<BarTensor>(&g)) {
        return BarChainCell{s, t->factors};
    }
    if (const auto* x = std::get_if<Generator>(&g)) {
        return ChainCell{s, x->tau};
    }
    throw Error(ErrorCode::mixed_labels, "resolution label " + to_string(g) + " is not a tensor or generator");
}

inline BasisLabel cochain_label(Subset s, const BasisLabel& g)
{
    if (const auto* t = std::get_if<BarTensor>(&g)) {
        return BarCochainCell{t->factors, s};
    }
    if (const auto* x = std::get_if<Generator>(&g)) {
        return CochainCell{x->tau, s};
    }
    throw Error(ErrorCode::mixed_labels, "resolution label " + to_string(g) + " is not a tensor or generator");
}

} // namespace detail

/// A (x)_{A^e} P for a free resolution P over A^e, using the right action
/// m . (a (x) b) = b m a. Cells are generator-major, then sigma.
inline BasedComplex<Integer> tensor_with_algebra(const BasedComplex<EnvElement<Integer>>& p, int n)
{
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::vector<BasisLabel>> bases;
    for (int k = 0; k <= p.max_degree(); ++k) {
        std::vector<BasisLabel> b;
        for (const auto& g : p.basis(k)) {
            for (std::uint32_t m = 0; m < subsets; ++m) {
                b.push_back(detail::chain_label(Subset(m), g));
            }
        }
        bases.push_back(std::move(b));
    }
    std::vector<SparseMatrix<Integer>> diffs;
    for (int k = 0; p.has_differential(k); ++k) {
        const auto& d = p.differential(k);
        std::vector<Triplet<Integer>> entries;
        for (std::size_t c = 0; c < d.cols(); ++c) {
            for (std::uint32_t m = 0; m < subsets; ++m) {
                const ExtElement<Integer> x = ext_monomial<Integer>(Subset(m));
                for (const auto& [r, u] : d.column(c)) {
                    for (const auto& [s, coef] : env_act_right(x, u)) {
                        entries.push_back({r * subsets + s.mask(), c * subsets + m, coef});
                    }
                }
            }
        }
        const int t = p.target_degree(k);
        diffs.push_back(SparseMatrix<Integer>::from_triplets(t < 0 ? 0 : bases[static_cast<std::size_t>(t)].size(),
                                                             bases[static_cast<std::size_t>(k)].size(),
                                                             std::move(entries)));
    }
    return BasedComplex<Integer>(Orientation::chain, std::move(bases), std::move(diffs));
}

/// Hom_{A^e}(P, A) in the basis phi_{g,s} (generator g -> x_s), with
/// coboundary phi -> phi o b.
inline BasedComplex<Integer> hom_into_algebra(const BasedComplex<EnvElement<Integer>>& p, int n)
{
    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::vector<BasisLabel>> bases;
    for (int k = 0; k <= p.max_degree(); ++k) {
        std::vector<BasisLabel> b;
        for (const auto& g : p.basis(k)) {
            for (std::uint32_t m = 0; m < subsets; ++m) {
                b.push_back(detail::cochain_label(Subset(m), g));
            }
        }
        bases.push_back(std::move(b));
    }
    std::vector<SparseMatrix<Integer>> diffs;
    for (int k = 0; k < p.max_degree(); ++k) {
        // b_{k+1}: column c (degree k+1 generator) has entries u at rows r (degree k)
        const auto& d = p.differential(k + 1);
        std::vector<Triplet<Integer>> entries;
        for (std::size_t c = 0; c < d.cols(); ++c) {
            for (const auto& [r, u] : d.column(c)) {
                for (std::uint32_t m = 0; m < subsets; ++m) {
                    for (const auto& [s, coef] : env_act(u, ext_monomial<Integer>(Subset(m)))) {
                        entries.push_back({c * subsets + s.mask(), r * subsets + m, coef});
                    }
                }
            }
        }
        diffs.push_back(SparseMatrix<Integer>::from_triplets(bases[static_cast<std::size_t>(k + 1)].size(),
                                                             bases[static_cast<std::size_t>(k)].size(),
                                                             std::move(entries)));
    }
    return BasedComplex<Integer>(Orientation::cochain, std::move(bases), std::move(diffs));
}

} // namespace hh
