#pragma once

// The homotopy equivalence h between the reduced and the bar resolution on
// generators, and the induced pushforward of bar cochains.

#include <utility>
#include <vector>

#include "hh/algebra.hpp"
#include "hh/combinat.hpp"
#include "hh/complex.hpp"
#include "hh/hochschild/reduced.hpp"

namespace hh {

/// h(x_(tau)) = sum over distinct rearrangements pi of tau of x_(pi tau).
inline Combination<Tensor, Integer> htpy_h(const Multiset& tau)
{
    std::vector<std::pair<Tensor, Integer>> terms;
    for (const auto& perm : multiset_permutations(tau)) {
        terms.emplace_back(variable_tensor(perm), Integer(1));
    }
    return Combination<Tensor, Integer>::from_terms(std::move(terms));
}

/// Precomposition with h on the dual basis: phi_{v,s} goes to
/// phi_{sorted v, s} when v is a tensor of variables, and to 0 otherwise.
template <class T>
Combination<CochainCell, T> pushforward_cochain(const Combination<BarCochainCell, T>& f)
{
    std::vector<std::pair<CochainCell, T>> terms;
    for (const auto& [cell, c] : f) {
        if (auto idx = variable_indices(cell.tensor)) {
            terms.emplace_back(CochainCell{Multiset::from_unsorted(*idx), cell.sigma}, c);
        }
    }
    return Combination<CochainCell, T>::from_terms(std::move(terms));
}

} // namespace hh
