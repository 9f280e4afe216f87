#pragma once

// Closed-form Hochschild (co)homology of Λ[x1..xn], with every binomial
// read as the multiset coefficient C(n+k-1, k).

#include <string>

#include "hh/coeff.hpp"
#include "hh/combinat.hpp"
#include "hh/error.hpp"
#include "hh/linalg.hpp"

namespace hh {

struct ClosedForm {
    int n = 0;
    int k = 0;
    Ring ring = Ring::integers();
    HomologyGroup group;      ///< over a field: free_rank is the dimension
    bool flagged = false;     ///< the raw torsion formula disagreed and was overridden
    Integer raw_torsion = 0;  ///< torsion count as the formula evaluates before any override
};

namespace detail {

inline Integer mset(int n, int k)
{
    return Integer(static_cast<unsigned long>(
        multiset_coefficient(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k))));
}

inline Integer pow2(int e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return r;
}

inline HomologyGroup make_group(const Integer& free, const Integer& twos)
{
    if (sgn(free) < 0 || sgn(twos) < 0) {
        throw std::logic_error("closed form produced a negative rank");
    }
    HomologyGroup g;
    g.free_rank = free.get_ui();
    g.torsion.assign(twos.get_ui(), Integer(2));
    return g;
}

inline void check_args(int n, int k)
{
    if (n < 1 || k < 0) {
        throw std::invalid_argument("closed form needs n >= 1 and k >= 0");
    }
}

} // namespace detail

/// HH_k(A; A): over Z, F = 2^{n-1} C(n+k-1,k) + [k=0] and
/// T = (-1)^{k+1} + 2^{n-1} sum_{i<=k} (-1)^{k-i} C(n+i-1,i) copies of Z/2.
/// Over a field of characteristic 2 the dimension is 2^n C(n+k-1,k), otherwise F.
inline ClosedForm closed_form_homology(int n, int k, const Ring& ring)
{
    detail::check_args(n, k);
    ClosedForm out;
    out.n = n;
    out.k = k;
    out.ring = ring;
    const Integer half = detail::pow2(n - 1);
    const Integer free = half * detail::mset(n, k) + (k == 0 ? 1 : 0);
    Integer alt = 0;
    for (int i = 0; i <= k; ++i) {
        alt += ((k - i) % 2 == 0 ? 1 : -1) * detail::mset(n, i);
    }
    const Integer twos = ((k + 1) % 2 == 0 ? 1 : -1) + half * alt;
    out.raw_torsion = twos;
    if (ring.kind() == Ring::Kind::integers) {
        out.group = detail::make_group(free, twos);
    } else if (ring.characteristic() == 2) {
        out.group = detail::make_group(2 * half * detail::mset(n, k), 0);
    } else {
        out.group = detail::make_group(free, 0);
    }
    return out;
}

/// HH^k(A; A): over Z, F = 2^{n-1} C(n+k-1,k) + [k=0, n odd] and for k >= 1
/// T = 2^{n-1} sum_{i<k} (-1)^{k-1-i} C(n+i-1,i) + (-1)^k [n odd]. At k = 0
/// the formula gives [n odd] while H^0 is torsion-free; T is set to 0 and
/// the disagreement flagged.
inline ClosedForm closed_form_cohomology(int n, int k, const Ring& ring)
{
    detail::check_args(n, k);
    ClosedForm out;
    out.n = n;
    out.k = k;
    out.ring = ring;
    const bool odd = n % 2 == 1;
    const Integer half = detail::pow2(n - 1);
    const Integer free = half * detail::mset(n, k) + ((k == 0 && odd) ? 1 : 0);
    Integer alt = 0;
    for (int i = 0; i < k; ++i) {
        alt += ((k - 1 - i) % 2 == 0 ? 1 : -1) * detail::mset(n, i);
    }
    Integer twos = half * alt + (odd ? (k % 2 == 0 ? 1 : -1) : 0);
    out.raw_torsion = twos;
    if (k == 0) {
        out.flagged = sgn(twos) != 0;
        twos = 0;
    }
    if (ring.kind() == Ring::Kind::integers) {
        out.group = detail::make_group(free, twos);
    } else if (ring.characteristic() == 2) {
        out.group = detail::make_group(2 * half * detail::mset(n, k), 0);
    } else {
        out.group = detail::make_group(free, 0);
    }
    return out;
}

} // namespace hh
