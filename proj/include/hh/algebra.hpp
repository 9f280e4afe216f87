#pragma once

// Finitely supported linear combinations, the exterior algebra A and the
// enveloping algebra A^e = A (x) A^op.

#include <algorithm>
#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "hh/coeff.hpp"
#include "hh/combinat.hpp"

namespace hh {

/// Sparse linear combination sum c_k * key_k. Terms are kept sorted by key
/// with no stored zeros, so equality is structural.
template <class Key, class T>
class Combination {
public:
    using key_type = Key;
    using coeff_type = T;
    using term_type = std::pair<Key, T>;

    Combination() = default;

    static Combination term(Key k, T c)
    {
        Combination r;
        if (!is_zero(c)) {
            r.terms_.emplace_back(std::move(k), std::move(c));
        }
        return r;
    }

    /// Builds from unsorted terms, merging duplicate keys.
    static Combination from_terms(std::vector<term_type> terms)
    {
        std::sort(terms.begin(), terms.end(),
                  [](const term_type& a, const term_type& b) { return a.first < b.first; });
        Combination r;
        for (auto& t : terms) {
            if (!r.terms_.empty() && r.terms_.back().first == t.first) {
                r.terms_.back().second += t.second;
                if (is_zero(r.terms_.back().second)) {
                    r.terms_.pop_back();
                }
            } else if (!is_zero(t.second)) {
                r.terms_.push_back(std::move(t));
            }
        }
        return r;
    }

    const std::vector<term_type>& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    T coefficient(const Key& k) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const term_type& t, const Key& key) { return t.first < key; });
        if (it != terms_.end() && it->first == k) {
            return it->second;
        }
        return T{};
    }

    void add(const Key& k, const T& c)
    {
        if (is_zero(c)) {
            return;
        }
        auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                                   [](const term_type& t, const Key& key) { return t.first < key; });
        if (it != terms_.end() && it->first == k) {
            it->second += c;
            if (is_zero(it->second)) {
                terms_.erase(it);
            }
        } else {
            terms_.insert(it, term_type(k, c));
        }
    }

    Combination& operator+=(const Combination& o)
    {
        std::vector<term_type> out;
        out.reserve(terms_.size() + o.terms_.size());
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
                out.push_back(*a++);
            } else if (a == terms_.end() || b->first < a->first) {
                out.push_back(*b++);
            } else {
                T s = a->second + b->second;
                if (!is_zero(s)) {
                    out.emplace_back(a->first, std::move(s));
                }
                ++a;
                ++b;
            }
        }
        terms_ = std::move(out);
        return *this;
    }

    Combination& operator-=(const Combination& o) { return *this += -o; }

    Combination operator-() const
    {
        Combination r = *this;
        for (auto& t : r.terms_) {
            t.second = -t.second;
        }
        return r;
    }

    friend Combination operator+(Combination a, const Combination& b) { return a += b; }
    friend Combination operator-(Combination a, const Combination& b) { return a -= b; }

    friend Combination operator*(const T& c, const Combination& a)
    {
        Combination r;
        if (is_zero(c)) {
            return r;
        }
        r.terms_.reserve(a.terms_.size());
        for (const auto& t : a.terms_) {
            T v = c * t.second;
            if (!is_zero(v)) {
                r.terms_.emplace_back(t.first, std::move(v));
            }
        }
        return r;
    }

    template <class F>
    auto map_coefficients(F f) const
    {
        using U = decltype(f(std::declval<const T&>()));
        std::vector<std::pair<Key, U>> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            out.emplace_back(t.first, f(t.second));
        }
        return Combination<Key, U>::from_terms(std::move(out));
    }

    friend bool operator==(const Combination& a, const Combination& b) { return a.terms_ == b.terms_; }

private:
    std::vector<term_type> terms_;
};

template <class Key, class T>
struct coeff_traits<Combination<Key, T>> {
    static constexpr unsigned characteristic = coeff_traits<T>::characteristic;
    static bool is_zero(const Combination<Key, T>& a) { return a.empty(); }
};

template <class T>
using ExtElement = Combination<Subset, T>;

/// Basis element x_a (x) x_b of A^e.
struct EnvKey {
    Subset left;
    Subset right;
    friend constexpr auto operator<=>(const EnvKey&, const EnvKey&) = default;
};

template <class T>
using EnvElement = Combination<EnvKey, T>;

template <class T>
ExtElement<T> ext_monomial(Subset s, T c = T(1))
{
    return ExtElement<T>::term(s, std::move(c));
}

template <class T>
ExtElement<T> ext_mul(const ExtElement<T>& a, const ExtElement<T>& b)
{
    std::vector<std::pair<Subset, T>> out;
    for (const auto& [sa, ca] : a) {
        for (const auto& [sb, cb] : b) {
            if (auto p = subset_mul_sign(sa, sb)) {
                T c = ca * cb;
                if (p->sign < 0) {
                    c = -c;
                }
                out.emplace_back(p->subset, std::move(c));
            }
        }
    }
    return ExtElement<T>::from_terms(std::move(out));
}

template <class T>
EnvElement<T> env_term(Subset left, Subset right, T c = T(1))
{
    return EnvElement<T>::term(EnvKey{left, right}, std::move(c));
}

template <class T>
EnvElement<T> env_one()
{
    return env_term<T>(Subset(), Subset());
}

/// (a (x) b)(a' (x) b') = a a' (x) b' b.
template <class T>
EnvElement<T> env_mul(const EnvElement<T>& u, const EnvElement<T>& v)
{
    std::vector<std::pair<EnvKey, T>> out;
    for (const auto& [ku, cu] : u) {
        for (const auto& [kv, cv] : v) {
            auto l = subset_mul_sign(ku.left, kv.left);
            if (!l) {
                continue;
            }
            auto r = subset_mul_sign(kv.right, ku.right);
            if (!r) {
                continue;
            }
            T c = cu * cv;
            if (l->sign * r->sign < 0) {
                c = -c;
            }
            out.emplace_back(EnvKey{l->subset, r->subset}, std::move(c));
        }
    }
    return EnvElement<T>::from_terms(std::move(out));
}

template <class T>
EnvElement<T> operator*(const EnvElement<T>& u, const EnvElement<T>& v)
{
    return env_mul(u, v);
}

/// Left bimodule action: (alpha (x) beta) . a = alpha a beta.
template <class T>
ExtElement<T> env_act(const EnvElement<T>& u, const ExtElement<T>& a)
{
    std::vector<std::pair<Subset, T>> out;
    for (const auto& [k, cu] : u) {
        for (const auto& [s, ca] : a) {
            auto l = subset_mul_sign(k.left, s);
            if (!l) {
                continue;
            }
            auto r = subset_mul_sign(l->subset, k.right);
            if (!r) {
                continue;
            }
            T c = cu * ca;
            if (l->sign * r->sign < 0) {
                c = -c;
            }
            out.emplace_back(r->subset, std::move(c));
        }
    }
    return ExtElement<T>::from_terms(std::move(out));
}

/// Right A^e-action on A used for A (x)_{A^e} M: m . (alpha (x) beta) = beta m alpha.
template <class T>
ExtElement<T> env_act_right(const ExtElement<T>& m, const EnvElement<T>& u)
{
    std::vector<std::pair<Subset, T>> out;
    for (const auto& [k, cu] : u) {
        for (const auto& [s, cm] : m) {
            auto l = subset_mul_sign(k.right, s);
            if (!l) {
                continue;
            }
            auto r = subset_mul_sign(l->subset, k.left);
            if (!r) {
                continue;
            }
            T c = cu * cm;
            if (l->sign * r->sign < 0) {
                c = -c;
            }
            out.emplace_back(r->subset, std::move(c));
        }
    }
    return ExtElement<T>::from_terms(std::move(out));
}

/// Scalar part (coefficient of 1 (x) 1).
template <class T>
T augmentation(const EnvElement<T>& u)
{
    return u.coefficient(EnvKey{});
}

template <class T>
bool in_augmentation_ideal(const EnvElement<T>& u)
{
    return is_zero(augmentation(u));
}

namespace detail {

inline std::string monomial_string(Subset s)
{
    if (s.empty()) {
        return "1";
    }
    std::string out;
    for (int e : s.elements()) {
        if (!out.empty()) {
            out += "^";
        }
        out += "x" + std::to_string(e);
    }
    return out;
}

inline std::string key_string(Subset s) { return monomial_string(s); }
inline std::string key_string(const Tensor& t)
{
    std::string s = "1";
    for (const auto& f : t) {
        s += "⊗" + monomial_string(f);
    }
    return s + "⊗1";
}
inline std::string key_string(const EnvKey& k)
{
    return monomial_string(k.left) + "⊗" + monomial_string(k.right);
}

template <class T>
bool is_negative(const T& c)
{
    if constexpr (std::is_same_v<T, Integer> || std::is_same_v<T, Rational>) {
        return sgn(c) < 0;
    } else {
        return false;
    }
}

} // namespace detail

/// Renders e.g. "x1^x3 - 2·x2"; the zero element renders as "0".
template <class Key, class T>
std::string to_string(const Combination<Key, T>& a)
{
    using detail::key_string;
    if (a.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [k, c] : a) {
        bool neg = detail::is_negative(c);
        T mag = neg ? T(-c) : c;
        if (first) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string ks = key_string(k);
        if (mag == T(1)) {
            out += ks;
        } else if (ks == "1") {
            out += coeff_to_string(mag);
        } else {
            out += coeff_to_string(mag) + "·" + ks;
        }
        first = false;
    }
    return out;
}

} // namespace hh
