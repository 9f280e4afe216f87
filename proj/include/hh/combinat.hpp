#pragma once

// Index combinatorics over [n] = {1,...,n}: subsets (exterior monomials),
// multisets (polynomial monomials / reduced generators) and Koszul signs.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hh {

/// A subset of [n], stored as a membership mask (bit i-1 <-> element i).
/// Sign computations reduce to popcounts of masked words.
class Subset {
public:
    static constexpr int max_n = 31;

    constexpr Subset() = default;
    constexpr explicit Subset(std::uint32_t mask) : mask_(mask) {}
    Subset(std::initializer_list<int> elems)
    {
        int prev = 0;
        for (int e : elems) {
            if (e <= prev || e > max_n) {
                throw std::invalid_argument("Subset: elements must be strictly increasing in 1..31");
            }
            mask_ |= bit(e);
            prev = e;
        }
    }

    static Subset from_elements(const std::vector<int>& elems)
    {
        Subset s;
        int prev = 0;
        for (int e : elems) {
            if (e <= prev || e > max_n) {
                throw std::invalid_argument("Subset: elements must be strictly increasing in 1..31");
            }
            s.mask_ |= bit(e);
            prev = e;
        }
        return s;
    }

    /// [n]
    static constexpr Subset full(int n) { return Subset(n >= 32 ? ~0U : ((1U << n) - 1U)); }
    static constexpr Subset singleton(int i) { return Subset(bit(i)); }

    constexpr std::uint32_t mask() const { return mask_; }
    constexpr int size() const { return std::popcount(mask_); }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr bool contains(int i) const { return (mask_ & bit(i)) != 0; }
    constexpr bool intersects(Subset o) const { return (mask_ & o.mask_) != 0; }
    constexpr bool is_subset_of(Subset o) const { return (mask_ & ~o.mask_) == 0; }
    constexpr Subset with(int i) const { return Subset(mask_ | bit(i)); }
    constexpr Subset without(int i) const { return Subset(mask_ & ~bit(i)); }
    constexpr Subset unite(Subset o) const { return Subset(mask_ | o.mask_); }
    constexpr Subset minus(Subset o) const { return Subset(mask_ & ~o.mask_); }
    constexpr Subset complement_in(int n) const { return full(n).minus(*this); }

    /// Smallest / largest element; 0 for the empty set.
    constexpr int min() const { return mask_ == 0 ? 0 : std::countr_zero(mask_) + 1; }
    constexpr int max() const { return mask_ == 0 ? 0 : 32 - std::countl_zero(mask_); }

    /// Number of elements strictly below / above i.
    constexpr int count_below(int i) const { return std::popcount(mask_ & (bit(i) - 1U)); }
    constexpr int count_above(int i) const
    {
        return std::popcount(mask_ & ~((bit(i) << 1U) - 1U));
    }

    std::vector<int> elements() const
    {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint32_t m = mask_; m != 0; m &= m - 1U) {
            out.push_back(std::countr_zero(m) + 1);
        }
        return out;
    }

    /// "{1,3}" style.
    std::string to_string() const
    {
        std::string s = "{";
        bool first = true;
        for (int e : elements()) {
            if (!first) {
                s += ",";
            }
            s += std::to_string(e);
            first = false;
        }
        return s + "}";
    }

    friend constexpr auto operator<=>(Subset, Subset) = default;

private:
    static constexpr std::uint32_t bit(int i) { return 1U << static_cast<unsigned>(i - 1); }

    std::uint32_t mask_ = 0;
};

/// x_{s1} (x) ... (x) x_{sk}; used for the interior of bar tensors.
using Tensor = std::vector<Subset>;

struct SignedSubset {
    int sign;
    Subset subset;
    friend bool operator==(const SignedSubset&, const SignedSubset&) = default;
};

/// x_i * x_sigma. Absent when i is already in sigma.
inline std::optional<SignedSubset> left_mul_sign(int i, Subset sigma)
{
    if (sigma.contains(i)) {
        return std::nullopt;
    }
    return SignedSubset{(sigma.count_below(i) % 2 == 0) ? 1 : -1, sigma.with(i)};
}

/// x_sigma * x_i.
inline std::optional<SignedSubset> right_mul_sign(Subset sigma, int i)
{
    if (sigma.contains(i)) {
        return std::nullopt;
    }
    return SignedSubset{(sigma.count_above(i) % 2 == 0) ? 1 : -1, sigma.with(i)};
}

/// x_a * x_b: sign of the shuffle sorting the concatenation a b.
inline std::optional<SignedSubset> subset_mul_sign(Subset a, Subset b)
{
    if (a.intersects(b)) {
        return std::nullopt;
    }
    int inversions = 0;
    for (std::uint32_t m = b.mask(); m != 0; m &= m - 1U) {
        inversions += a.count_above(std::countr_zero(m) + 1);
    }
    return SignedSubset{(inversions % 2 == 0) ? 1 : -1, a.unite(b)};
}

/// A weakly increasing sequence over [n].
class Multiset {
public:
    Multiset() = default;
    Multiset(std::initializer_list<int> elems) : elems_(elems) { check(); }
    explicit Multiset(std::vector<int> elems) : elems_(std::move(elems)) { check(); }

    /// Sorts arbitrary input.
    static Multiset from_unsorted(std::vector<int> elems)
    {
        std::sort(elems.begin(), elems.end());
        return Multiset(std::move(elems));
    }

    const std::vector<int>& elements() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    int front() const { return elems_.front(); }

    int count(int i) const
    {
        return static_cast<int>(std::count(elems_.begin(), elems_.end(), i));
    }

    /// The underlying set (tau-bar).
    Subset support() const
    {
        std::uint32_t m = 0;
        for (int e : elems_) {
            m |= 1U << static_cast<unsigned>(e - 1);
        }
        return Subset(m);
    }

    Multiset with(int i) const
    {
        Multiset r = *this;
        r.elems_.insert(std::upper_bound(r.elems_.begin(), r.elems_.end(), i), i);
        return r;
    }

    /// Removes one copy of i; i must occur.
    Multiset without_one(int i) const
    {
        Multiset r = *this;
        auto it = std::find(r.elems_.begin(), r.elems_.end(), i);
        if (it == r.elems_.end()) {
            throw std::invalid_argument("Multiset::without_one: element not present");
        }
        r.elems_.erase(it);
        return r;
    }

    Multiset merged(const Multiset& o) const
    {
        std::vector<int> out;
        out.reserve(elems_.size() + o.elems_.size());
        std::merge(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end(),
                   std::back_inserter(out));
        return Multiset(std::move(out));
    }

    /// "(1,1,2)" style.
    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i > 0) {
                s += ",";
            }
            s += std::to_string(elems_[i]);
        }
        return s + ")";
    }

    friend auto operator<=>(const Multiset&, const Multiset&) = default;
    friend bool operator==(const Multiset&, const Multiset&) = default;

private:
    void check() const
    {
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (elems_[i] < 1 || elems_[i] > Subset::max_n
                || (i > 0 && elems_[i] < elems_[i - 1])) {
                throw std::invalid_argument("Multiset: elements must be weakly increasing in 1..31");
            }
        }
    }

    std::vector<int> elems_;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX) {
            throw std::overflow_error("binomial coefficient overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(r);
}

/// Number of k-element multisubsets of [n].
inline std::uint64_t multiset_coefficient(std::uint64_t n, std::uint64_t k)
{
    if (n == 0) {
        return k == 0 ? 1 : 0;
    }
    return binomial(n + k - 1, k);
}

/// All k-element multisets over [n], lexicographically ordered.
inline std::vector<Multiset> enumerate_multisets(int n, int k)
{
    std::vector<Multiset> out;
    if (n < 1 || k < 0) {
        return out;
    }
    std::vector<int> cur(static_cast<std::size_t>(k), 1);
    while (true) {
        out.emplace_back(cur);
        // rightmost position that can still grow
        int pos = k - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n) {
            --pos;
        }
        if (pos < 0) {
            break;
        }
        int v = cur[static_cast<std::size_t>(pos)] + 1;
        for (int j = pos; j < k; ++j) {
            cur[static_cast<std::size_t>(j)] = v;
        }
    }
    return out;
}

/// Distinct rearrangements of tau (the orbit of S_tau), lexicographic order.
inline std::vector<std::vector<int>> multiset_permutations(const Multiset& tau)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur = tau.elements();
    do {
        out.push_back(cur);
    } while (std::next_permutation(cur.begin(), cur.end()));
    return out;
}

/// All subsets of [n] ordered by mask value.
inline std::vector<Subset> enumerate_subsets(int n)
{
    std::vector<Subset> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < (1U << n); ++m) {
        out.emplace_back(m);
    }
    return out;
}

} // namespace hh
