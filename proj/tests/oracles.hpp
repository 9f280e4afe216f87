#pragma once

// Independent reference computations for the tests: dense integer
// determinants and minors, brute-force quotient group counts, random
// unimodular constructions and random toy complexes with matchings.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hh/hh.hpp"

namespace oracle {

using hh::Integer;
using Dense = std::vector<std::vector<Integer>>;

inline Dense zeros(std::size_t rows, std::size_t cols) { return Dense(rows, std::vector<Integer>(cols, Integer(0))); }

inline Dense identity(std::size_t n)
{
    Dense m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = 1;
    }
    return m;
}

inline Dense multiply(const Dense& a, const Dense& b, std::size_t inner)
{
    const std::size_t rows = a.size();
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    Dense c = zeros(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

inline hh::SparseMatrix<Integer> to_sparse(const Dense& d, std::size_t cols)
{
    std::vector<hh::Triplet<Integer>> t;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (d[i][j] != 0) {
                t.push_back({i, j, d[i][j]});
            }
        }
    }
    return hh::SparseMatrix<Integer>::from_triplets(d.size(), cols, std::move(t));
}

/// Determinant by cofactor expansion along the first row (small sizes only).
inline Integer determinant(const Dense& m)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return 1;
    }
    if (n == 1) {
        return m[0][0];
    }
    Integer det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) {
            continue;
        }
        Dense minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Integer> row;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != c) {
                    row.push_back(m[r][j]);
                }
            }
            minor.push_back(std::move(row));
        }
        const Integer term = m[0][c] * determinant(minor);
        det += (c % 2 == 0) ? term : Integer(-term);
    }
    return det;
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        choose(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    choose(n, k, 0, cur, out);
    return out;
}

/// gcd of all j x j minors (0 when they all vanish).
inline Integer minors_gcd(const Dense& m, std::size_t cols, std::size_t j)
{
    Integer g = 0;
    for (const auto& rs : combinations(m.size(), j)) {
        for (const auto& cs : combinations(cols, j)) {
            Dense sub;
            for (auto r : rs) {
                std::vector<Integer> row;
                for (auto c : cs) {
                    row.push_back(m[r][c]);
                }
                sub.push_back(std::move(row));
            }
            Integer d = determinant(sub);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        }
    }
    return g;
}

/// |(Z/q)^rows / column span of m mod q|, by enumerating the span.
inline std::uint64_t coset_count(const Dense& m, std::size_t cols, unsigned q)
{
    const std::size_t rows = m.size();
    auto encode = [&](const std::vector<unsigned>& v) {
        std::uint64_t code = 0;
        for (auto x : v) {
            code = code * q + x;
        }
        return code;
    };
    std::vector<std::vector<unsigned>> gens;
    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<unsigned> g(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            g[r] = static_cast<unsigned>(mpz_fdiv_ui(m[r][c].get_mpz_t(), q));
        }
        gens.push_back(std::move(g));
    }
    std::set<std::uint64_t> seen{encode(std::vector<unsigned>(rows, 0))};
    std::vector<std::vector<unsigned>> frontier{std::vector<unsigned>(rows, 0)};
    while (!frontier.empty()) {
        std::vector<std::vector<unsigned>> next;
        for (const auto& v : frontier) {
            for (const auto& g : gens) {
                std::vector<unsigned> w(rows);
                for (std::size_t r = 0; r < rows; ++r) {
                    w[r] = (v[r] + g[r]) % q;
                }
                if (seen.insert(encode(w)).second) {
                    next.push_back(std::move(w));
                }
            }
        }
        frontier = std::move(next);
    }
    std::uint64_t total = 1;
    for (std::size_t r = 0; r < rows; ++r) {
        total *= q;
    }
    return total / seen.size();
}

/// |H tensor Z/q| for H = Z^f + sum Z/d_i.
inline std::uint64_t group_mod_count(const hh::HomologyGroup& h, unsigned q)
{
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < h.free_rank; ++i) {
        total *= q;
    }
    for (const auto& d : h.torsion) {
        Integer g;
        const Integer qq = q;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), qq.get_mpz_t());
        total *= g.get_ui();
    }
    return total;
}

inline Dense random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound, double density = 0.6)
{
    std::uniform_int_distribution<int> value(-bound, bound);
    std::bernoulli_distribution keep(density);
    Dense m = zeros(rows, cols);
    for (auto& row : m) {
        for (auto& x : row) {
            if (keep(rng)) {
                x = value(rng);
            }
        }
    }
    return m;
}

/// A random unimodular matrix and its inverse, from elementary operations.
struct Unimodular {
    Dense u;
    Dense inverse;
};

inline Unimodular random_unimodular(std::mt19937& rng, std::size_t n, int steps = 8)
{
    Unimodular out{identity(n), identity(n)};
    if (n < 2) {
        if (n == 1 && std::bernoulli_distribution(0.5)(rng)) {
            out.u[0][0] = -1;
            out.inverse[0][0] = -1;
        }
        return out;
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> factor(-2, 2);
    for (int s = 0; s < steps; ++s) {
        const std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        while (j == i) {
            j = pick(rng);
        }
        const int f = factor(rng);
        // u <- E u with E = I + f e_ij ; inverse <- inverse E^-1
        for (std::size_t c = 0; c < n; ++c) {
            out.u[i][c] += f * out.u[j][c];
        }
        for (std::size_t r = 0; r < n; ++r) {
            out.inverse[r][j] -= f * out.inverse[r][i];
        }
    }
    return out;
}

/// alpha (l x m) and beta (m x c) with alpha beta = 0, built as
/// beta = U B0, alpha = A0 U^-1 with B0 supported on the first r rows and
/// A0 on the last m - r columns.
struct ZeroPair {
    Dense alpha;
    Dense beta;
    std::size_t l = 0;
    std::size_t m = 0;
    std::size_t c = 0;
};

inline ZeroPair random_zero_pair(std::mt19937& rng, std::size_t max_size = 6, int bound = 3)
{
    std::uniform_int_distribution<std::size_t> size(1, max_size);
    ZeroPair p;
    p.l = size(rng);
    p.m = size(rng);
    p.c = size(rng);
    const std::size_t r = std::uniform_int_distribution<std::size_t>(0, p.m)(rng);
    Dense b0 = random_matrix(rng, p.m, p.c, bound);
    for (std::size_t i = r; i < p.m; ++i) {
        std::fill(b0[i].begin(), b0[i].end(), Integer(0));
    }
    Dense a0 = random_matrix(rng, p.l, p.m, bound);
    for (auto& row : a0) {
        std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(r), Integer(0));
    }
    const auto u = random_unimodular(rng, p.m);
    p.beta = multiply(u.u, b0, p.m);
    p.alpha = multiply(a0, u.inverse, p.m);
    return p;
}

/// A random chain complex over Z on named cells "c<k>.<i>", made from
/// elementary pieces (cancelling pairs, torsion pairs, free cells) in a
/// standard basis and then conjugated by random unimodular changes of basis.
inline hh::BasedComplex<Integer> random_complex(std::mt19937& rng, int top, std::size_t max_cells = 20)
{
    std::vector<std::size_t> sizes(static_cast<std::size_t>(top + 1), 0);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pieces(static_cast<std::size_t>(top + 1));
    std::vector<std::vector<Integer>> weights(static_cast<std::size_t>(top + 1));
    std::uniform_int_distribution<int> kind(0, 3);
    std::size_t total = 0;
    for (int k = 0; k <= top; ++k) {
        const int count = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int p = 0; p < count && total + 2 <= max_cells; ++p) {
            const int t = kind(rng);
            if (t == 0 || k == top) {
                ++sizes[static_cast<std::size_t>(k)];
                ++total;
            } else {
                // a pair: cell in k+1 mapping onto a cell in k with weight +-1 or +-2
                const std::size_t upper = sizes[static_cast<std::size_t>(k + 1)]++;
                const std::size_t lower = sizes[static_cast<std::size_t>(k)]++;
                pieces[static_cast<std::size_t>(k + 1)].push_back({upper, lower});
                const int w = (t == 1 ? 2 : 1) * (std::bernoulli_distribution(0.5)(rng) ? 1 : -1);
                weights[static_cast<std::size_t>(k + 1)].push_back(w);
                total += 2;
            }
        }
    }
    std::vector<Unimodular> change;
    for (int k = 0; k <= top; ++k) {
        change.push_back(random_unimodular(rng, sizes[static_cast<std::size_t>(k)], 6));
    }
    std::vector<std::vector<hh::BasisLabel>> bases;
    for (int k = 0; k <= top; ++k) {
        std::vector<hh::BasisLabel> b;
        for (std::size_t i = 0; i < sizes[static_cast<std::size_t>(k)]; ++i) {
            b.push_back(hh::NamedCell{"c" + std::to_string(k) + "." + std::to_string(i)});
        }
        bases.push_back(std::move(b));
    }
    std::vector<hh::SparseMatrix<Integer>> diffs;
    diffs.emplace_back(0, sizes[0]);
    for (int k = 1; k <= top; ++k) {
        const std::size_t rows = sizes[static_cast<std::size_t>(k - 1)];
        const std::size_t cols = sizes[static_cast<std::size_t>(k)];
        Dense d0 = zeros(rows, cols);
        const auto& pk = pieces[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < pk.size(); ++i) {
            d0[pk[i].second][pk[i].first] = weights[static_cast<std::size_t>(k)][i];
        }
        // d = U_{k-1} d0 U_k^-1
        Dense d = multiply(multiply(change[static_cast<std::size_t>(k - 1)].u, d0, rows),
                           change[static_cast<std::size_t>(k)].inverse, cols);
        diffs.push_back(to_sparse(d, cols));
    }
    return hh::BasedComplex<Integer>(hh::Orientation::chain, std::move(bases), std::move(diffs));
}

/// A random matching made of +-1 entries, each cell used at most once; it
/// may contain cycles and is meant to be filtered through check_matching.
inline hh::Matching random_matching(std::mt19937& rng, const hh::BasedComplex<Integer>& c)
{
    std::vector<std::pair<hh::BasisLabel, hh::BasisLabel>> candidates;
    for (int k = 1; k <= c.max_degree(); ++k) {
        const auto& d = c.differential(k);
        for (std::size_t col = 0; col < d.cols(); ++col) {
            for (const auto& [row, v] : d.column(col)) {
                if (v == 1 || v == -1) {
                    candidates.emplace_back(c.basis(k)[col], c.basis(k - 1)[row]);
                }
            }
        }
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::set<hh::BasisLabel> used;
    hh::Matching m;
    for (const auto& [s, t] : candidates) {
        if (used.count(s) || used.count(t) || std::bernoulli_distribution(0.3)(rng)) {
            continue;
        }
        used.insert(s);
        used.insert(t);
        m.add(s, t);
    }
    return m;
}

} // namespace oracle
