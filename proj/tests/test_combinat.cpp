#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "hh/combinat.hpp"

using namespace hh;

namespace {

// inversions of the concatenation, counted pair by pair
int concat_inversions(const Subset& a, const Subset& b)
{
    std::vector<int> seq = a.elements();
    const auto be = b.elements();
    seq.insert(seq.end(), be.begin(), be.end());
    int inv = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] > seq[j]) {
                ++inv;
            }
        }
    }
    return inv;
}

// number of k-multisets of [n] by the recursion M(n,k) = M(n-1,k) + M(n,k-1)
std::uint64_t multiset_count(int n, int k)
{
    if (k == 0) {
        return 1;
    }
    if (n == 0) {
        return 0;
    }
    return multiset_count(n - 1, k) + multiset_count(n, k - 1);
}

std::uint64_t factorial(int k)
{
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) {
        f *= static_cast<std::uint64_t>(i);
    }
    return f;
}

} // namespace

TEST_CASE("Subset keeps mask and elements in step", "[combinat]")
{
    const Subset s{1, 3};
    CHECK(Subset::from_elements({1, 3}) == s);
    CHECK_THROWS_AS(Subset::from_elements({3, 1}), std::invalid_argument);
    CHECK(s.mask() == 0b101U);
    CHECK(s.elements() == std::vector<int>{1, 3});
    CHECK(s.size() == 2);
    CHECK(s.min() == 1);
    CHECK(s.max() == 3);
    CHECK(s.to_string() == "{1,3}");
    CHECK(Subset().to_string() == "{}");
    CHECK(Subset::full(3) == Subset{1, 2, 3});
    CHECK(s.complement_in(3) == Subset{2});
    CHECK(s.count_below(3) == 1);
    CHECK(s.count_above(1) == 1);
}

TEST_CASE("left_mul_sign examples", "[combinat]")
{
    auto p = left_mul_sign(2, Subset{1, 3});
    REQUIRE(p);
    CHECK(p->sign == -1);
    CHECK(p->subset == Subset{1, 2, 3});
    CHECK_FALSE(left_mul_sign(1, Subset{1}));
    auto q = left_mul_sign(5, Subset());
    REQUIRE(q);
    CHECK(q->sign == 1);
    CHECK(q->subset == Subset{5});
}

TEST_CASE("right_mul_sign counts the elements above", "[combinat]")
{
    auto p = right_mul_sign(Subset{1, 3}, 2);
    REQUIRE(p);
    CHECK(p->sign == -1);
    auto q = right_mul_sign(Subset{1, 2}, 3);
    REQUIRE(q);
    CHECK(q->sign == 1);
    CHECK_FALSE(right_mul_sign(Subset{2}, 2));
}

TEST_CASE("subset_mul_sign examples", "[combinat]")
{
    auto a = subset_mul_sign(Subset{2}, Subset{1});
    REQUIRE(a);
    CHECK(a->sign == -1);
    CHECK(a->subset == Subset{1, 2});
    auto b = subset_mul_sign(Subset{2, 3}, Subset{1});
    REQUIRE(b);
    CHECK(b->sign == 1);
    CHECK(b->subset == Subset{1, 2, 3});
    CHECK_FALSE(subset_mul_sign(Subset{1}, Subset{1}));
}

TEST_CASE("subset_mul_sign matches the inversion count of the concatenation", "[combinat][property]")
{
    for (const auto& a : enumerate_subsets(5)) {
        for (const auto& b : enumerate_subsets(5)) {
            auto p = subset_mul_sign(a, b);
            if (a.intersects(b)) {
                CHECK_FALSE(p);
                continue;
            }
            REQUIRE(p);
            CHECK(p->sign == (concat_inversions(a, b) % 2 == 0 ? 1 : -1));
            CHECK(p->subset == a.unite(b));
        }
    }
}

TEST_CASE("swapping factors costs (-1)^{|a||b|}", "[combinat][property]")
{
    for (const auto& a : enumerate_subsets(5)) {
        for (const auto& b : enumerate_subsets(5)) {
            auto ab = subset_mul_sign(a, b);
            auto ba = subset_mul_sign(b, a);
            REQUIRE(ab.has_value() == ba.has_value());
            if (ab) {
                const int expected = (a.size() * b.size()) % 2 == 0 ? 1 : -1;
                CHECK(ab->sign * ba->sign == expected);
            }
        }
    }
}

TEST_CASE("enumerate_multisets examples", "[combinat]")
{
    const auto m = enumerate_multisets(2, 3);
    REQUIRE(m.size() == 4);
    CHECK(m[0].elements() == std::vector<int>{1, 1, 1});
    CHECK(m[1].elements() == std::vector<int>{1, 1, 2});
    CHECK(m[2].elements() == std::vector<int>{1, 2, 2});
    CHECK(m[3].elements() == std::vector<int>{2, 2, 2});
    const auto empty = enumerate_multisets(4, 0);
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].empty());
    const auto ones = enumerate_multisets(1, 5);
    REQUIRE(ones.size() == 1);
    CHECK(ones[0].elements() == std::vector<int>(5, 1));
}

TEST_CASE("enumerate_multisets is sorted, distinct and counted by C(n+k-1,k)", "[combinat][property]")
{
    for (int n = 1; n <= 6; ++n) {
        for (int k = 0; k <= 6; ++k) {
            const auto m = enumerate_multisets(n, k);
            CHECK(m.size() == multiset_count(n, k));
            CHECK(m.size() == multiset_coefficient(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)));
            CHECK(std::is_sorted(m.begin(), m.end(), [](const Multiset& a, const Multiset& b) {
                return a.elements() < b.elements();
            }));
            CHECK(std::adjacent_find(m.begin(), m.end()) == m.end());
            for (const auto& t : m) {
                CHECK(static_cast<int>(t.size()) == k);
                CHECK(std::is_sorted(t.elements().begin(), t.elements().end()));
            }
        }
    }
}

TEST_CASE("multiset_permutations examples", "[combinat]")
{
    const auto p = multiset_permutations(Multiset{1, 1, 2});
    const std::set<std::vector<int>> got(p.begin(), p.end());
    CHECK(p.size() == 3);
    CHECK(got == std::set<std::vector<int>>{{1, 1, 2}, {1, 2, 1}, {2, 1, 1}});
    CHECK(multiset_permutations(Multiset{1, 1}).size() == 1);
    CHECK(multiset_permutations(Multiset{1, 2}).size() == 2);
    CHECK(multiset_permutations(Multiset()).size() == 1);
}

TEST_CASE("multiset_permutations has multinomial size", "[combinat][property]")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = std::uniform_int_distribution<int>(0, 7)(rng);
        std::vector<int> raw;
        for (int i = 0; i < k; ++i) {
            raw.push_back(std::uniform_int_distribution<int>(1, 4)(rng));
        }
        const Multiset tau = Multiset::from_unsorted(raw);
        std::uint64_t expected = factorial(k);
        for (int v = 1; v <= 4; ++v) {
            expected /= factorial(static_cast<int>(tau.count(v)));
        }
        const auto perms = multiset_permutations(tau);
        CHECK(perms.size() == expected);
        const std::set<std::vector<int>> distinct(perms.begin(), perms.end());
        CHECK(distinct.size() == perms.size());
        for (const auto& p : perms) {
            CHECK(Multiset::from_unsorted(p) == tau);
        }
    }
}

TEST_CASE("Multiset helpers", "[combinat]")
{
    const Multiset t = Multiset::from_unsorted({2, 1, 2});
    CHECK(t.elements() == std::vector<int>{1, 2, 2});
    CHECK(t.to_string() == "(1,2,2)");
    CHECK(t.support() == Subset{1, 2});
    CHECK(t.count(2) == 2);
    CHECK(t.with(1) == Multiset{1, 1, 2, 2});
    CHECK(t.without_one(2) == Multiset{1, 2});
    CHECK(t.merged(Multiset{3}) == Multiset{1, 2, 2, 3});
    CHECK(Multiset().to_string() == "()");
}

TEST_CASE("binomials", "[combinat]")
{
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(3, 5) == 0);
    CHECK(multiset_coefficient(2, 3) == 4);
    CHECK(multiset_coefficient(3, 0) == 1);
    CHECK(enumerate_subsets(3).size() == 8);
}
