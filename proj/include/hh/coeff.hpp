#pragma once

// Coefficient domains: arbitrary-precision integers, rationals and prime
// fields, plus the runtime ring descriptor used by the drivers.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace hh {

using Integer = mpz_class;
using Rational = mpq_class;

/// Residues modulo a compile-time prime P.
template <std::uint32_t P>
class Zmod {
    static_assert(P >= 2, "modulus must be at least 2");

public:
    static constexpr std::uint32_t modulus = P;

    constexpr Zmod() = default;
    constexpr Zmod(long long x) : value_(reduce(x)) {}
    explicit Zmod(const Integer& z)
        : value_(static_cast<std::uint32_t>(mpz_fdiv_ui(z.get_mpz_t(), P))) {}

    constexpr std::uint32_t value() const { return value_; }

    friend constexpr Zmod operator+(Zmod a, Zmod b) { return Zmod::raw((a.value_ + b.value_) % P); }
    friend constexpr Zmod operator-(Zmod a, Zmod b) { return Zmod::raw((a.value_ + P - b.value_) % P); }
    friend constexpr Zmod operator*(Zmod a, Zmod b)
    {
        return Zmod::raw(static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a.value_) * b.value_) % P));
    }
    friend Zmod operator/(Zmod a, Zmod b) { return a * b.inverse(); }
    constexpr Zmod operator-() const { return Zmod::raw((P - value_) % P); }
    Zmod& operator+=(Zmod b) { return *this = *this + b; }
    Zmod& operator-=(Zmod b) { return *this = *this - b; }
    Zmod& operator*=(Zmod b) { return *this = *this * b; }
    Zmod& operator/=(Zmod b) { return *this = *this / b; }
    friend constexpr bool operator==(Zmod a, Zmod b) = default;

    Zmod inverse() const
    {
        if (value_ == 0) {
            throw std::domain_error("Zmod: inverse of zero");
        }
        // Fermat; P is prime for every instance we use.
        std::uint64_t result = 1;
        std::uint64_t base = value_;
        std::uint64_t e = P - 2;
        while (e > 0) {
            if (e & 1U) {
                result = (result * base) % P;
            }
            base = (base * base) % P;
            e >>= 1U;
        }
        return Zmod::raw(static_cast<std::uint32_t>(result));
    }

private:
    static constexpr Zmod raw(std::uint32_t v)
    {
        Zmod z;
        z.value_ = v;
        return z;
    }
    static constexpr std::uint32_t reduce(long long x)
    {
        long long r = x % static_cast<long long>(P);
        if (r < 0) {
            r += P;
        }
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t value_ = 0;
};

using F2 = Zmod<2>;
using F3 = Zmod<3>;

template <class T>
struct coeff_traits;

template <>
struct coeff_traits<Integer> {
    static constexpr unsigned characteristic = 0;
    static constexpr bool is_field = false;
    static Integer from_integer(const Integer& z) { return z; }
    static bool is_zero(const Integer& a) { return sgn(a) == 0; }
    static bool is_unit(const Integer& a) { return a == 1 || a == -1; }
    static Integer inverse(const Integer& a)
    {
        if (!is_unit(a)) {
            throw std::domain_error("integer " + a.get_str() + " is not a unit");
        }
        return a;
    }
    static std::string to_string(const Integer& a) { return a.get_str(); }
    static std::string name() { return "Z"; }
};

template <>
struct coeff_traits<Rational> {
    static constexpr unsigned characteristic = 0;
    static constexpr bool is_field = true;
    static Rational from_integer(const Integer& z) { return Rational(z); }
    static bool is_zero(const Rational& a) { return sgn(a) == 0; }
    static bool is_unit(const Rational& a) { return !is_zero(a); }
    static Rational inverse(const Rational& a)
    {
        if (is_zero(a)) {
            throw std::domain_error("rational inverse of zero");
        }
        Rational r = 1 / a;
        return r;
    }
    static std::string to_string(const Rational& a) { return a.get_str(); }
    static std::string name() { return "Q"; }
};

template <std::uint32_t P>
struct coeff_traits<Zmod<P>> {
    static constexpr unsigned characteristic = P;
    static constexpr bool is_field = true;
    static Zmod<P> from_integer(const Integer& z) { return Zmod<P>(z); }
    static bool is_zero(Zmod<P> a) { return a.value() == 0; }
    static bool is_unit(Zmod<P> a) { return a.value() != 0; }
    static Zmod<P> inverse(Zmod<P> a) { return a.inverse(); }
    static std::string to_string(Zmod<P> a) { return std::to_string(a.value()); }
    static std::string name() { return "F" + std::to_string(P); }
};

template <class T>
bool is_zero(const T& a)
{
    return coeff_traits<T>::is_zero(a);
}

template <class T>
std::string coeff_to_string(const T& a)
{
    return coeff_traits<T>::to_string(a);
}

/// Runtime coefficient ring descriptor: Z, Q or F_p.
class Ring {
public:
    enum class Kind { integers, rationals, prime_field };

    static Ring integers() { return Ring(Kind::integers, 0); }
    static Ring rationals() { return Ring(Kind::rationals, 0); }
    static Ring prime_field(unsigned p)
    {
        if (!is_prime(p)) {
            throw std::invalid_argument("F_p needs a prime p, got " + std::to_string(p));
        }
        return Ring(Kind::prime_field, p);
    }

    /// Accepts "Z", "Q", "F<p>" and "Fp<p>" (case-insensitive prefix).
    static Ring parse(const std::string& text)
    {
        if (text == "Z" || text == "z" || text == "ZZ") {
            return integers();
        }
        if (text == "Q" || text == "q" || text == "QQ") {
            return rationals();
        }
        std::string digits;
        if (text.size() >= 2 && (text[0] == 'F' || text[0] == 'f')) {
            digits = text.substr(1);
            if (!digits.empty() && (digits[0] == 'p' || digits[0] == 'P')) {
                digits = digits.substr(1);
            }
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos
            || digits.size() > 9) {
            throw std::invalid_argument("unknown ring '" + text + "' (expected Z, Q or F<p>)");
        }
        return prime_field(static_cast<unsigned>(std::stoul(digits)));
    }

    Kind kind() const { return kind_; }
    bool is_field() const { return kind_ != Kind::integers; }
    unsigned characteristic() const { return p_; }

    std::string to_string() const
    {
        switch (kind_) {
        case Kind::integers:
            return "Z";
        case Kind::rationals:
            return "Q";
        case Kind::prime_field:
            return "F" + std::to_string(p_);
        }
        return "?";
    }

    friend bool operator==(const Ring&, const Ring&) = default;

    static bool is_prime(unsigned p)
    {
        if (p < 2) {
            return false;
        }
        for (unsigned d = 2; static_cast<unsigned long long>(d) * d <= p; ++d) {
            if (p % d == 0) {
                return false;
            }
        }
        return true;
    }

private:
    Ring(Kind k, unsigned p) : kind_(k), p_(p) {}

    Kind kind_;
    unsigned p_;
};

} // namespace hh
