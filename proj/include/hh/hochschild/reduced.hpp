#pragma once

// The minimal multiset resolution and the reduced (co)chain complexes it
// induces, with their parity splittings.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hh/algebra.hpp"
#include "hh/combinat.hpp"
#include "hh/complex.hpp"
#include "hh/error.hpp"
#include "hh/hochschild/bar.hpp"

namespace hh {

/// The increasing variable tensor 1 (x) x_{i1} (x) ... (x) x_{ik} (x) 1 of tau.
inline Tensor variable_tensor(const std::vector<int>& indices)
{
    Tensor t;
    t.reserve(indices.size());
    for (int i : indices) {
        t.push_back(Subset::singleton(i));
    }
    return t;
}

inline Tensor variable_tensor(const Multiset& tau) { return variable_tensor(tau.elements()); }

/// The indices of a tensor of single variables, if it is one.
inline std::optional<std::vector<int>> variable_indices(const Tensor& t)
{
    std::vector<int> out;
    out.reserve(t.size());
    for (const auto& f : t) {
        if (f.size() != 1) {
            return std::nullopt;
        }
        out.push_back(f.min());
    }
    return out;
}

/// b°_k(x_(tau)) = sum_{i in support} (x_i (x) 1 + (-1)^k 1 (x) x_i) x_(tau - i).
inline BasedComplex<EnvElement<Integer>> build_reduced_resolution(int n, int max_degree)
{
    check_n(n);
    std::vector<std::vector<Multiset>> cells;
    std::vector<std::vector<BasisLabel>> bases;
    for (int k = 0; k <= max_degree; ++k) {
        cells.push_back(enumerate_multisets(n, k));
        std::vector<BasisLabel> b;
        for (const auto& tau : cells.back()) {
            b.emplace_back(Generator{tau});
        }
        bases.push_back(std::move(b));
    }
    std::vector<SparseMatrix<EnvElement<Integer>>> diffs;
    for (int k = 0; k <= max_degree; ++k) {
        std::vector<Triplet<EnvElement<Integer>>> entries;
        if (k > 0) {
            std::map<Multiset, std::size_t> lower;
            for (std::size_t i = 0; i < cells[static_cast<std::size_t>(k - 1)].size(); ++i) {
                lower.emplace(cells[static_cast<std::size_t>(k - 1)][i], i);
            }
            const auto& cur = cells[static_cast<std::size_t>(k)];
            for (std::size_t c = 0; c < cur.size(); ++c) {
                for (int i : cur[c].support().elements()) {
                    EnvElement<Integer> w = env_term<Integer>(Subset::singleton(i), Subset(), 1)
                                            + env_term<Integer>(Subset(), Subset::singleton(i), k % 2 == 0 ? 1 : -1);
                    entries.push_back({lower.at(cur[c].without_one(i)), c, std::move(w)});
                }
            }
        }
        const std::size_t rows = k == 0 ? 0 : cells[static_cast<std::size_t>(k - 1)].size();
        diffs.push_back(SparseMatrix<EnvElement<Integer>>::from_triplets(
            rows, cells[static_cast<std::size_t>(k)].size(), std::move(entries)));
    }
    return BasedComplex<EnvElement<Integer>>(Orientation::chain, std::move(bases), std::move(diffs));
}

/// d°(x_s (x) x_(tau)) = sum_{i in support(tau)} ((-1)^|s| + (-1)^|tau|) x_i x_s (x) x_(tau - i).
/// Degree-k cells are tau-major, then sigma by mask.
inline BasedComplex<Integer> build_reduced_chain(int n, int max_degree)
{
    check_n(n);
    const std::uint32_t subsets = 1U << n;
    std::vector<std::vector<Multiset>> cells;
    std::vector<std::vector<BasisLabel>> bases;
    for (int k = 0; k <= max_degree; ++k) {
        cells.push_back(enumerate_multisets(n, k));
        std::vector<BasisLabel> b;
        for (const auto& tau : cells.back()) {
            for (std::uint32_t m = 0; m < subsets; ++m) {
                b.emplace_back(ChainCell{Subset(m), tau});
            }
        }
        bases.push_back(std::move(b));
    }
    std::vector<SparseMatrix<Integer>> diffs;
    for (int k = 0; k <= max_degree; ++k) {
        std::vector<Triplet<Integer>> entries;
        if (k > 0) {
            std::map<Multiset, std::size_t> lower;
            for (std::size_t i = 0; i < cells[static_cast<std::size_t>(k - 1)].size(); ++i) {
                lower.emplace(cells[static_cast<std::size_t>(k - 1)][i], i);
            }
            const auto& cur = cells[static_cast<std::size_t>(k)];
            for (std::size_t c = 0; c < cur.size(); ++c) {
                for (std::uint32_t m = 0; m < subsets; ++m) {
                    const Subset s(m);
                    const int coef = (s.size() % 2 == 0 ? 1 : -1) + (k % 2 == 0 ? 1 : -1);
                    if (coef == 0) {
                        continue;
                    }
                    for (int i : cur[c].support().elements()) {
                        if (auto p = left_mul_sign(i, s)) {
                            entries.push_back({lower.at(cur[c].without_one(i)) * subsets + p->subset.mask(),
                                               c * subsets + m, coef * p->sign});
                        }
                    }
                }
            }
        }
        const std::size_t rows = k == 0 ? 0 : bases[static_cast<std::size_t>(k - 1)].size();
        diffs.push_back(SparseMatrix<Integer>::from_triplets(rows, bases[static_cast<std::size_t>(k)].size(),
                                                             std::move(entries)));
    }
    return BasedComplex<Integer>(Orientation::chain, std::move(bases), std::move(diffs));
}

/// d°(phi_{tau,s}) = sum_{i not in s} ((-1)^|s| - (-1)^|tau|) sign(x_s x_i) phi_{tau + i, s + i}.
inline BasedComplex<Integer> build_reduced_cochain(int n, int max_degree)
{
    check_n(n);
    const std::uint32_t subsets = 1U << n;
    std::vector<std::vector<Multiset>> cells;
    std::vector<std::vector<BasisLabel>> bases;
    for (int k = 0; k <= max_degree; ++k) {
        cells.push_back(enumerate_multisets(n, k));
        std::vector<BasisLabel> b;
        for (const auto& tau : cells.back()) {
            for (std::uint32_t m = 0; m < subsets; ++m) {
                b.emplace_back(CochainCell{tau, Subset(m)});
            }
        }
        bases.push_back(std::move(b));
    }
    std::vector<SparseMatrix<Integer>> diffs;
    for (int k = 0; k < max_degree; ++k) {
        std::map<Multiset, std::size_t> upper;
        for (std::size_t i = 0; i < cells[static_cast<std::size_t>(k + 1)].size(); ++i) {
            upper.emplace(cells[static_cast<std::size_t>(k + 1)][i], i);
        }
        std::vector<Triplet<Integer>> entries;
        const auto& cur = cells[static_cast<std::size_t>(k)];
        for (std::size_t c = 0; c < cur.size(); ++c) {
            for (std::uint32_t m = 0; m < subsets; ++m) {
                const Subset s(m);
                const int coef = (s.size() % 2 == 0 ? 1 : -1) - (k % 2 == 0 ? 1 : -1);
                if (coef == 0) {
                    continue;
                }
                for (int i = 1; i <= n; ++i) {
                    if (auto p = right_mul_sign(s, i)) {
                        entries.push_back({upper.at(cur[c].with(i)) * subsets + p->subset.mask(),
                                           c * subsets + m, coef * p->sign});
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

/// The (sigma, tau) of a reduced cell label; MixedLabels otherwise.
inline std::pair<Subset, Multiset> reduced_cell_parts(const BasisLabel& label)
{
    if (const auto* c = std::get_if<ChainCell>(&label)) {
        return {c->sigma, c->tau};
    }
    if (const auto* c = std::get_if<CochainCell>(&label)) {
        return {c->sigma, c->tau};
    }
    throw Error(ErrorCode::mixed_labels, "label " + to_string(label) + " is not a (sigma, tau) cell");
}

/// Whether a reduced cell belongs to the summand C' that carries the
/// differential: equal parities of |sigma| and |tau| for chains, unequal for cochains.
inline bool in_primary_summand(const BasisLabel& label, Orientation o)
{
    const auto [s, tau] = reduced_cell_parts(label);
    const bool equal = (s.size() % 2) == static_cast<int>(tau.size() % 2);
    return o == Orientation::chain ? equal : !equal;
}

struct ParitySplit {
    BasedComplex<Integer> primary;   ///< C'
    BasedComplex<Integer> secondary; ///< C'', zero differential
};

namespace detail {

inline BasedComplex<Integer> restrict_complex(const BasedComplex<Integer>& c, const std::vector<std::vector<char>>& keep)
{
    std::vector<std::vector<BasisLabel>> bases;
    std::vector<std::vector<std::size_t>> new_index;
    for (int k = 0; k <= c.max_degree(); ++k) {
        std::vector<BasisLabel> b;
        std::vector<std::size_t> idx(c.size(k), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < c.size(k); ++i) {
            if (keep[static_cast<std::size_t>(k)][i]) {
                idx[i] = b.size();
                b.push_back(c.basis(k)[i]);
            }
        }
        bases.push_back(std::move(b));
        new_index.push_back(std::move(idx));
    }
    std::vector<SparseMatrix<Integer>> diffs;
    for (int k = 0; c.has_differential(k); ++k) {
        const int t = c.target_degree(k);
        std::vector<Triplet<Integer>> entries;
        const auto& d = c.differential(k);
        for (std::size_t col = 0; col < d.cols(); ++col) {
            for (const auto& [row, v] : d.column(col)) {
                const bool src = keep[static_cast<std::size_t>(k)][col];
                const bool dst = keep[static_cast<std::size_t>(t)][row];
                if (src != dst) {
                    throw std::logic_error("split_parity: differential crosses summands at "
                                           + to_string(c.basis(k)[col]) + " -> " + to_string(c.basis(t)[row]));
                }
                if (src) {
                    entries.push_back({new_index[static_cast<std::size_t>(t)][row],
                                       new_index[static_cast<std::size_t>(k)][col], v});
                }
            }
        }
        const std::size_t rows = t < 0 ? 0 : bases[static_cast<std::size_t>(t)].size();
        diffs.push_back(SparseMatrix<Integer>::from_triplets(rows, bases[static_cast<std::size_t>(k)].size(),
                                                             std::move(entries)));
    }
    return BasedComplex<Integer>(c.orientation(), std::move(bases), std::move(diffs));
}

} // namespace detail

/// C = C' (+) C''; throws if a differential entry crosses the summands.
inline ParitySplit split_parity(const BasedComplex<Integer>& c)
{
    std::vector<std::vector<char>> primary;
    std::vector<std::vector<char>> secondary;
    for (int k = 0; k <= c.max_degree(); ++k) {
        std::vector<char> p;
        for (const auto& l : c.basis(k)) {
            p.push_back(in_primary_summand(l, c.orientation()) ? 1 : 0);
        }
        std::vector<char> q(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i] = static_cast<char>(!p[i]);
        }
        primary.push_back(std::move(p));
        secondary.push_back(std::move(q));
    }
    ParitySplit out{detail::restrict_complex(c, primary), detail::restrict_complex(c, secondary)};
    for (int k = 0; out.secondary.has_differential(k); ++k) {
        if (!out.secondary.differential(k).is_zero()) {
            throw std::logic_error("split_parity: C'' has a nonzero differential out of degree " + std::to_string(k));
        }
    }
    return out;
}

/// Divides every differential entry by 2 (the complex (C', d'/2)).
inline BasedComplex<Integer> halve(const BasedComplex<Integer>& c)
{
    return map_complex(c, [](const Integer& v) {
        if (!mpz_divisible_ui_p(v.get_mpz_t(), 2)) {
            throw std::invalid_argument("halve: odd entry " + v.get_str());
        }
        return Integer(v / 2);
    });
}

} // namespace hh
