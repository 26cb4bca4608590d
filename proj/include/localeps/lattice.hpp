// Integer-lattice oracle: kernels of integer matrices, Hermite normal form,
// lattice equality, and the brute-force verification of the generator
// description of the kernel module X(2).
//
// HNF convention, fixed once: row-style echelon form with positive pivots
// and entries above each pivot reduced into [0, pivot).  Exact arbitrary
// precision arithmetic throughout; no modular shortcuts.

#pragma once

#include <localeps/groupring.hpp>

#include <gmpxx.h>

#include <vector>

namespace localeps {

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// A sublattice of Z^ambient_rank given by basis rows.
struct IntLattice {
    long ambient_rank = 0;
    IntMatrix basis;

    long rank() const { return static_cast<long>(basis.size()); }
};

namespace detail {

// In-place row HNF restricted to the first `cols` columns; returns the
// number of pivot rows.  Rows beyond the pivot count end with zeros in
// the first `cols` columns.
inline long hnf_rows(IntMatrix& m, long cols) {
    const long nrows = static_cast<long>(m.size());
    long r = 0;
    for (long c = 0; c < cols && r < nrows; ++c) {
        // Euclidean elimination below row r in column c.
        for (;;) {
            long pivot = -1;
            for (long i = r; i < nrows; ++i) {
                if (m[i][c] == 0) continue;
                if (pivot < 0 || mpz_cmpabs(m[i][c].get_mpz_t(), m[pivot][c].get_mpz_t()) < 0) pivot = i;
            }
            if (pivot < 0) break;
            std::swap(m[r], m[pivot]);
            bool done = true;
            for (long i = r + 1; i < nrows; ++i) {
                if (m[i][c] == 0) continue;
                mpz_class qq;
                mpz_fdiv_q(qq.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
                if (qq != 0)
                    for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= qq * m[r][j];
                if (m[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (m[r][c] == 0) continue; // no pivot in this column
        if (m[r][c] < 0)
            for (auto& x : m[r]) x = -x;
        for (long i = 0; i < r; ++i) {
            mpz_class qq;
            mpz_fdiv_q(qq.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
            if (qq != 0)
                for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= qq * m[r][j];
        }
        ++r;
    }
    return r;
}

} // namespace detail

/// Canonical Hermite normal form of the lattice spanned by the given rows.
inline IntLattice hnf(const IntLattice& lat) {
    IntMatrix m = lat.basis;
    long r = detail::hnf_rows(m, lat.ambient_rank);
    m.resize(r);
    return IntLattice{lat.ambient_rank, std::move(m)};
}

inline bool lattice_equal(const IntLattice& a, const IntLattice& b) {
    if (a.ambient_rank != b.ambient_rank)
        throw std::invalid_argument("lattice_equal: ambient rank mismatch");
    return hnf(a).basis == hnf(b).basis;
}

/// Basis of {v in Z^n : v * mat = 0} for an n x k integer matrix.
inline IntLattice int_kernel(const IntMatrix& mat) {
    const long n = static_cast<long>(mat.size());
    const long k = n == 0 ? 0 : static_cast<long>(mat[0].size());
    // Row-reduce [mat | I]; rows with zero left part carry a kernel basis.
    IntMatrix aug(n, std::vector<mpz_class>(k + n));
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < k; ++j) aug[i][j] = mat[i][j];
        aug[i][k + i] = 1;
    }
    long r = detail::hnf_rows(aug, k);
    IntMatrix basis;
    for (long i = r; i < n; ++i)
        basis.emplace_back(aug[i].begin() + k, aug[i].end());
    return hnf(IntLattice{n, std::move(basis)});
}

/// Models F' = Z[G]z1 + Z[G]z2 as Z^{2pd} with delta2(z1) = (b-1)z0,
/// delta2(z2) = (a-1)z0, and checks that ker(delta2) equals the lattice
/// spanned by all G-translates of (a-1)z1 - (b-1)z2, T_b z1 and T_a z2.
inline bool x2_generators_check(long p, long d, long pd_limit = 35) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("x2_generators_check: p must be an odd prime");
    if (d < 1) throw std::invalid_argument("x2_generators_check: d must be positive");
    const long pd = p * d;
    if (pd > pd_limit)
        throw std::invalid_argument("x2_generators_check: p*d exceeds configured limit");

    auto idx = [d](long i, long j) { return i * d + j; };
    auto red = [p, d](long i, long j) { return std::pair<long, long>{((i % p) + p) % p, ((j % d) + d) % d}; };

    // delta2 as a 2pd x pd matrix acting on row vectors.
    IntMatrix delta(2 * pd, std::vector<mpz_class>(pd));
    for (long i = 0; i < p; ++i) {
        for (long j = 0; j < d; ++j) {
            long row1 = idx(i, j);          // a^i b^j z1 -> (b-1) a^i b^j z0
            auto [bi, bj] = red(i, j + 1);
            delta[row1][idx(bi, bj)] += 1;
            delta[row1][idx(i, j)] -= 1;
            long row2 = pd + idx(i, j);     // a^i b^j z2 -> (a-1) a^i b^j z0
            auto [ai, aj] = red(i + 1, j);
            delta[row2][idx(ai, aj)] += 1;
            delta[row2][idx(i, j)] -= 1;
        }
    }

    IntLattice kernel = int_kernel(delta);
    if (kernel.rank() != pd + 1) return false;

    // G-translates of the three generators as vectors in Z^{2pd}.
    IntMatrix gens;
    for (long i = 0; i < p; ++i) {
        for (long j = 0; j < d; ++j) {
            std::vector<mpz_class> g1(2 * pd);
            auto [ai, aj] = red(i + 1, j);
            auto [bi, bj] = red(i, j + 1);
            g1[idx(ai, aj)] += 1;           // (a-1) z1 part
            g1[idx(i, j)] -= 1;
            g1[pd + idx(bi, bj)] -= 1;      // -(b-1) z2 part
            g1[pd + idx(i, j)] += 1;
            gens.push_back(std::move(g1));

            std::vector<mpz_class> g2(2 * pd);
            for (long t = 0; t < d; ++t) g2[idx(i, t)] += 1; // T_b z1
            gens.push_back(std::move(g2));

            std::vector<mpz_class> g3(2 * pd);
            for (long t = 0; t < p; ++t) g3[pd + idx(t, j)] += 1; // T_a z2
            gens.push_back(std::move(g3));
        }
    }

    // Containment direction first: each generator must map to zero.
    for (const auto& v : gens) {
        for (long c = 0; c < pd; ++c) {
            mpz_class s = 0;
            for (long rr = 0; rr < 2 * pd; ++rr)
                if (v[rr] != 0) s += v[rr] * delta[rr][c];
            if (s != 0) return false;
        }
    }

    IntLattice spanned{2 * pd, std::move(gens)};
    return lattice_equal(kernel, spanned);
}

} // namespace localeps
