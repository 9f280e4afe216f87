#pragma once

// The Morse matching on the bar resolution, its lazy graph, and the Koszul
// matchings on the C' summands of the reduced (co)chain complexes.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hh/combinat.hpp"
#include "hh/complex.hpp"
#include "hh/hochschild/bar.hpp"
#include "hh/hochschild/reduced.hpp"
#include "hh/morse.hpp"

namespace hh {

// ---------------------------------------------------------------------------
// Bar matching

enum class CellRole {
    critical,
    source, ///< matched with a cell one degree lower
    target, ///< matched with a cell one degree higher
};

struct BarCellClass {
    CellRole role = CellRole::critical;
    Tensor partner;
};

/// Let r be the length of the longest prefix x_{i1} .. x_{ir} of single
/// variables with i1 <= .. <= ir. Cells with r = k are critical. Otherwise,
/// with s = s_{r+1}: if |s| >= 2 and (r = 0 or i_r <= max s) the cell is a
/// target whose partner splits off x_m, m = max s; else it is a source
/// whose partner merges x_{ir} into s.
inline BarCellClass classify_bar_cell(const Tensor& t)
{
    std::size_t r = 0;
    while (r < t.size() && t[r].size() == 1 && (r == 0 || t[r - 1].min() <= t[r].min())) {
        ++r;
    }
    BarCellClass out;
    if (r == t.size()) {
        return out;
    }
    const Subset s = t[r];
    if (s.size() >= 2 && (r == 0 || t[r - 1].min() <= s.max())) {
        const int m = s.max();
        out.role = CellRole::target;
        out.partner.reserve(t.size() + 1);
        out.partner.insert(out.partner.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(r));
        out.partner.push_back(Subset::singleton(m));
        out.partner.push_back(s.without(m));
        out.partner.insert(out.partner.end(), t.begin() + static_cast<std::ptrdiff_t>(r + 1), t.end());
        return out;
    }
    out.role = CellRole::source;
    out.partner.reserve(t.size() - 1);
    out.partner.insert(out.partner.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(r - 1));
    out.partner.push_back(s.unite(t[r - 1]));
    out.partner.insert(out.partner.end(), t.begin() + static_cast<std::ptrdiff_t>(r + 1), t.end());
    return out;
}

/// The matching on build_bar_resolution(n, max_degree): every source cell of
/// degree 1..max_degree with its merged partner.
inline Matching bar_matching(int n, int max_degree, std::size_t limit = default_size_limit)
{
    Matching m;
    for (int k = 1; k <= max_degree; ++k) {
        for (const auto& t : normalized_tensors(n, k, limit)) {
            auto c = classify_bar_cell(t);
            if (c.role == CellRole::source) {
                m.add(BarTensor{t}, BarTensor{c.partner});
            }
        }
    }
    return m;
}

/// Tensors of nonempty subsets packed into 64 bits: factor i occupies bits
/// [n i, n i + n), the length sits in the top byte.
class PackedTensorCodec {
public:
    explicit PackedTensorCodec(int n) : n_(n)
    {
        check_n(n);
    }

    int n() const { return n_; }
    int max_length() const { return 56 / n_; }

    std::uint64_t encode(const Tensor& t) const
    {
        if (static_cast<int>(t.size()) > max_length()) {
            throw std::invalid_argument("PackedTensorCodec: tensor too long to pack");
        }
        std::uint64_t v = static_cast<std::uint64_t>(t.size()) << 56U;
        for (std::size_t i = 0; i < t.size(); ++i) {
            v |= static_cast<std::uint64_t>(t[i].mask()) << (static_cast<unsigned>(n_) * i);
        }
        return v;
    }

    Tensor decode(std::uint64_t v) const
    {
        const std::size_t len = static_cast<std::size_t>(v >> 56U);
        const std::uint64_t mask = (std::uint64_t{1} << static_cast<unsigned>(n_)) - 1U;
        Tensor t(len);
        for (std::size_t i = 0; i < len; ++i) {
            t[i] = Subset(static_cast<std::uint32_t>((v >> (static_cast<unsigned>(n_) * i)) & mask));
        }
        return t;
    }

    static int degree(std::uint64_t v) { return static_cast<int>(v >> 56U); }

private:
    int n_;
};

/// The bar resolution with the matching above, generated on demand. Lets
/// path enumeration and matching checks run without materializing degrees.
class BarMorseGraph {
public:
    using label_type = std::uint64_t;
    using weight_type = EnvElement<Integer>;

    explicit BarMorseGraph(int n) : codec_(n) {}

    const PackedTensorCodec& codec() const { return codec_; }

    std::vector<std::pair<label_type, weight_type>> boundary(label_type l) const
    {
        std::vector<std::pair<label_type, weight_type>> out;
        for (auto& [t, w] : bar_boundary(codec_.decode(l))) {
            out.emplace_back(codec_.encode(t), std::move(w));
        }
        return out;
    }

    std::optional<label_type> matched_target(label_type l) const
    {
        auto c = classify_bar_cell(codec_.decode(l));
        if (c.role == CellRole::source) {
            return codec_.encode(c.partner);
        }
        return std::nullopt;
    }

    std::optional<label_type> matched_source(label_type l) const
    {
        auto c = classify_bar_cell(codec_.decode(l));
        if (c.role == CellRole::target) {
            return codec_.encode(c.partner);
        }
        return std::nullopt;
    }

    std::string describe(label_type l) const { return tensor_to_string(codec_.decode(l)); }

private:
    PackedTensorCodec codec_;
};

// ---------------------------------------------------------------------------
// Koszul matchings

struct KoszulPartner {
    BasisLabel partner;
    CellRole role; ///< role of the queried cell
};

/// Chain rule on any reduced chain cell: with i = min(sigma u support(tau)),
/// move i from tau into sigma when i is not in sigma (the cell is a source),
/// or from sigma into tau when it is (the cell is a target).
inline std::optional<KoszulPartner> koszul_chain_partner(const ChainCell& c)
{
    const Subset both = c.sigma.unite(c.tau.support());
    if (both.empty()) {
        return std::nullopt;
    }
    const int i = both.min();
    if (!c.sigma.contains(i)) {
        return KoszulPartner{ChainCell{c.sigma.with(i), c.tau.without_one(i)}, CellRole::source};
    }
    return KoszulPartner{ChainCell{c.sigma.without(i), c.tau.with(i)}, CellRole::target};
}

/// Cochain rule on any reduced cochain cell: with i = min([n] \ sigma), the
/// cell is a source paired with phi_{tau+i, sigma+i} when every entry of tau
/// is at least i; with j = min tau, it is a target paired with
/// phi_{tau-j, sigma-j} when {1..j} lies in sigma. phi_{(), [n]} is the only
/// cell with neither.
inline std::optional<KoszulPartner> koszul_cochain_partner(const CochainCell& c, int n)
{
    const Subset missing = c.sigma.complement_in(n);
    if (!missing.empty()) {
        const int i = missing.min();
        if (c.tau.empty() || c.tau.front() >= i) {
            return KoszulPartner{CochainCell{c.tau.with(i), c.sigma.with(i)}, CellRole::source};
        }
    }
    if (!c.tau.empty()) {
        const int j = c.tau.front();
        if (Subset::full(j).is_subset_of(c.sigma)) {
            return KoszulPartner{CochainCell{c.tau.without_one(j), c.sigma.without(j)}, CellRole::target};
        }
    }
    return std::nullopt;
}

/// The chain matching on C' (equal parities), edges with both ends in degrees <= max_degree.
inline Matching koszul_matching_chain(int n, int max_degree)
{
    check_n(n);
    Matching m;
    for (int k = 1; k <= max_degree; ++k) {
        for (const auto& tau : enumerate_multisets(n, k)) {
            for (const auto& s : enumerate_subsets(n)) {
                ChainCell c{s, tau};
                if (!in_primary_summand(c, Orientation::chain)) {
                    continue;
                }
                auto p = koszul_chain_partner(c);
                if (p && p->role == CellRole::source) {
                    m.add(c, p->partner);
                }
            }
        }
    }
    return m;
}

/// The cochain matching on C' (unequal parities), edges with both ends in degrees <= max_degree.
inline Matching koszul_matching_cochain(int n, int max_degree)
{
    check_n(n);
    Matching m;
    for (int k = 0; k < max_degree; ++k) {
        for (const auto& tau : enumerate_multisets(n, k)) {
            for (const auto& s : enumerate_subsets(n)) {
                CochainCell c{tau, s};
                if (!in_primary_summand(c, Orientation::cochain)) {
                    continue;
                }
                auto p = koszul_cochain_partner(c, n);
                if (p && p->role == CellRole::source) {
                    m.add(c, p->partner);
                }
            }
        }
    }
    return m;
}

} // namespace hh
