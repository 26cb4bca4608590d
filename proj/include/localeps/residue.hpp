// Finite-field shadow of the ramification-tower computations: deterministic
// fields F_{p^n}, trace-one normal basis generators, the Artin-Schreier
// divisibility and root computations, and the residue form of the integral
// basis.
//
// Every choice is deterministic: moduli are the first monic irreducible in
// the ascending coefficient scan (constant term fastest), elements scan in
// the same order, and embeddings pick the first root in scan order.

#pragma once

#include <localeps/groupring.hpp> // is_prime

#include <gmpxx.h>

#include <algorithm>
#include <vector>

namespace localeps {

namespace ffdetail {

// Dense polynomials over F_p, constant coefficient first.
using Poly = std::vector<long>;

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b, long p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

// Remainder modulo a monic polynomial.
inline Poly poly_mod(Poly a, const Poly& mod, long p) {
    const long dm = static_cast<long>(mod.size()) - 1;
    for (long i = static_cast<long>(a.size()) - 1; i >= dm; --i) {
        long c = a[i] % p;
        if (c == 0) continue;
        for (long j = 0; j < dm; ++j) a[i - dm + j] = ((a[i - dm + j] - c * mod[j]) % p + p) % p;
        a[i] = 0;
    }
    trim(a);
    return a;
}

inline Poly poly_powmod_x(const mpz_class& e, const Poly& mod, long p) {
    Poly result{1};
    Poly base = poly_mod(Poly{0, 1}, mod, p);
    mpz_class n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) result = poly_mod(poly_mul(result, base, p), mod, p);
        base = poly_mod(poly_mul(base, base, p), mod, p);
        n >>= 1;
    }
    return result;
}

inline Poly poly_gcd(Poly a, Poly b, long p) {
    auto inv_mod = [p](long x) {
        long r = 1, e = p - 2, base = ((x % p) + p) % p;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // a mod b with b made monic on the fly
        long lc_inv = inv_mod(b.back());
        Poly bm = b;
        for (auto& c : bm) c = c * lc_inv % p;
        a = poly_mod(std::move(a), bm, p);
        std::swap(a, b);
    }
    return a;
}

inline bool is_irreducible(const Poly& f, long p) {
    const long n = static_cast<long>(f.size()) - 1;
    if (n < 1) return false;
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    Poly xpn = poly_powmod_x(pn, f, p);
    // x^{p^n} = x (mod f)
    Poly x = poly_mod(Poly{0, 1}, f, p);
    if (xpn != x) return false;
    long nn = n;
    std::vector<long> prime_divs;
    for (long q2 = 2; q2 * q2 <= nn; ++q2)
        if (nn % q2 == 0) {
            prime_divs.push_back(q2);
            while (nn % q2 == 0) nn /= q2;
        }
    if (nn > 1) prime_divs.push_back(nn);
    for (long ell : prime_divs) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(n / ell));
        Poly g = poly_powmod_x(e, f, p);
        // gcd(x^{p^{n/ell}} - x, f) must be 1
        Poly diff = g;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        trim(diff);
        Poly gg = poly_gcd(f, diff, p);
        if (gg.size() != 1) return false;
    }
    return true;
}

// Solve M x = rhs over F_p; M is row-major rows x cols.  Returns true and a
// particular solution when consistent.
inline bool solve_mod_p(std::vector<std::vector<long>> M, std::vector<long> rhs, long p,
                        std::vector<long>& out) {
    const long rows = static_cast<long>(M.size());
    const long cols = rows == 0 ? 0 : static_cast<long>(M[0].size());
    auto inv_mod = [p](long x) {
        long r = 1, e = p - 2, base = ((x % p) + p) % p;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    std::vector<long> pivot_col_of_row(rows, -1);
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long pr = -1;
        for (long i = r; i < rows; ++i)
            if (M[i][c] % p != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(M[r], M[pr]);
        std::swap(rhs[r], rhs[pr]);
        long inv = inv_mod(M[r][c]);
        for (long j = 0; j < cols; ++j) M[r][j] = M[r][j] * inv % p;
        rhs[r] = rhs[r] * inv % p;
        for (long i = 0; i < rows; ++i) {
            if (i == r || M[i][c] % p == 0) continue;
            long f = M[i][c] % p;
            for (long j = 0; j < cols; ++j) M[i][j] = ((M[i][j] - f * M[r][j]) % p + p) % p;
            rhs[i] = ((rhs[i] - f * rhs[r]) % p + p) % p;
        }
        pivot_col_of_row[r] = c;
        ++r;
    }
    for (long i = r; i < rows; ++i)
        if (rhs[i] % p != 0) return false;
    out.assign(cols, 0);
    for (long i = 0; i < r; ++i) out[pivot_col_of_row[i]] = ((rhs[i] % p) + p) % p;
    return true;
}

// Basis of the kernel of M over F_p (row-major rows x cols).
inline std::vector<std::vector<long>> kernel_mod_p(std::vector<std::vector<long>> M, long p) {
    const long rows = static_cast<long>(M.size());
    const long cols = rows == 0 ? 0 : static_cast<long>(M[0].size());
    auto inv_mod = [p](long x) {
        long r = 1, e = p - 2, base = ((x % p) + p) % p;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    std::vector<long> pivot_of_col(cols, -1);
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long pr = -1;
        for (long i = r; i < rows; ++i)
            if (M[i][c] % p != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(M[r], M[pr]);
        long inv = inv_mod(M[r][c]);
        for (long j = 0; j < cols; ++j) M[r][j] = M[r][j] * inv % p;
        for (long i = 0; i < rows; ++i) {
            if (i == r || M[i][c] % p == 0) continue;
            long f = M[i][c] % p;
            for (long j = 0; j < cols; ++j) M[i][j] = ((M[i][j] - f * M[r][j]) % p + p) % p;
        }
        pivot_of_col[c] = r;
        ++r;
    }
    std::vector<std::vector<long>> basis;
    for (long c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<long> v(cols, 0);
        v[c] = 1;
        for (long c2 = 0; c2 < cols; ++c2)
            if (pivot_of_col[c2] >= 0) v[c2] = ((-M[pivot_of_col[c2]][c]) % p + p) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace ffdetail

/// The deterministic finite field F_{p^n}.
struct FField {
    long p = 0;
    long n = 0;
    std::vector<long> modulus; // monic of degree n, constant coefficient first

    friend bool operator==(const FField& a, const FField& b) {
        return a.p == b.p && a.n == b.n && a.modulus == b.modulus;
    }
    friend bool operator!=(const FField& a, const FField& b) { return !(a == b); }
};

/// Modulus is the first monic irreducible of degree n in the ascending
/// coefficient scan (constant term varying fastest).
inline FField ff_field(long p, long n) {
    if (!is_prime(p)) throw std::invalid_argument("ff_field: p must be prime");
    if (n < 1) throw std::invalid_argument("ff_field: degree must be positive");
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    for (mpz_class t = 0; t < total; ++t) {
        ffdetail::Poly f(n + 1, 0);
        mpz_class rem = t;
        for (long i = 0; i < n; ++i) {
            f[i] = mpz_class(rem % p).get_si();
            rem /= p;
        }
        f[n] = 1;
        if (ffdetail::is_irreducible(f, p)) return FField{p, n, f};
    }
    throw std::logic_error("ff_field: no irreducible polynomial found"); // unreachable
}

/// Element of F_{p^n} in the power basis of the field modulus.
class FFElem {
public:
    FFElem() = default;
    FFElem(FField f, std::vector<long> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
        if (static_cast<long>(c_.size()) != field_.n)
            throw std::invalid_argument("FFElem: coefficient count must equal the degree");
        for (auto& x : c_) x = ((x % field_.p) + field_.p) % field_.p;
    }

    static FFElem zero(const FField& f) { return FFElem(f, std::vector<long>(f.n, 0)); }

    static FFElem constant(const FField& f, long c) {
        std::vector<long> v(f.n, 0);
        v[0] = c;
        return FFElem(f, std::move(v));
    }

    /// Class of x modulo the field modulus.
    static FFElem generator(const FField& f) {
        if (f.n == 1) return constant(f, -f.modulus[0]);
        std::vector<long> v(f.n, 0);
        v[1] = 1;
        return FFElem(f, std::move(v));
    }

    /// The t-th element in the deterministic scan (base-p digits of t).
    static FFElem element_at(const FField& f, const mpz_class& t) {
        std::vector<long> v(f.n, 0);
        mpz_class rem = t;
        for (long i = 0; i < f.n; ++i) {
            v[i] = mpz_class(rem % f.p).get_si();
            rem /= f.p;
        }
        return FFElem(f, std::move(v));
    }

    const FField& field() const { return field_; }
    const std::vector<long>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](long x) { return x == 0; });
    }

    long to_constant() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) throw std::domain_error("FFElem: not a prime-field constant");
        return c_[0];
    }

    friend FFElem operator+(const FFElem& a, const FFElem& b) {
        a.check(b);
        FFElem r = a;
        for (long i = 0; i < a.field_.n; ++i) r.c_[i] = (r.c_[i] + b.c_[i]) % a.field_.p;
        return r;
    }

    friend FFElem operator-(const FFElem& a, const FFElem& b) {
        a.check(b);
        FFElem r = a;
        for (long i = 0; i < a.field_.n; ++i)
            r.c_[i] = ((r.c_[i] - b.c_[i]) % a.field_.p + a.field_.p) % a.field_.p;
        return r;
    }

    FFElem operator-() const { return zero(field_) - *this; }

    friend FFElem operator*(const FFElem& a, const FFElem& b) {
        a.check(b);
        ffdetail::Poly prod = ffdetail::poly_mul(a.c_trimmed(), b.c_trimmed(), a.field_.p);
        prod = ffdetail::poly_mod(std::move(prod), a.field_.modulus, a.field_.p);
        prod.resize(a.field_.n, 0);
        return FFElem(a.field_, std::move(prod));
    }

    friend bool operator==(const FFElem& a, const FFElem& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }
    friend bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }

    FFElem pow(const mpz_class& e) const {
        FFElem result = constant(field_, 1);
        FFElem base = *this;
        mpz_class n = e;
        while (n > 0) {
            if (mpz_odd_p(n.get_mpz_t())) result = result * base;
            base = base * base;
            n >>= 1;
        }
        return result;
    }

    FFElem frobenius() const { return pow(field_.p); }

    /// Absolute trace to F_p as a prime-field value.
    long abs_trace() const {
        FFElem acc = zero(field_);
        FFElem cur = *this;
        for (long i = 0; i < field_.n; ++i) {
            acc = acc + cur;
            cur = cur.frobenius();
        }
        return acc.to_constant();
    }

    /// Relative trace to the degree-r subfield: sum of x^{p^{r i}}.
    FFElem relative_trace(long r) const {
        if (field_.n % r != 0) throw std::invalid_argument("FFElem::relative_trace: bad subfield degree");
        FFElem acc = zero(field_);
        FFElem cur = *this;
        mpz_class pr;
        mpz_ui_pow_ui(pr.get_mpz_t(), static_cast<unsigned long>(field_.p),
                      static_cast<unsigned long>(r));
        for (long i = 0; i < field_.n / r; ++i) {
            acc = acc + cur;
            cur = cur.pow(pr);
        }
        return acc;
    }

    // Scan-order comparison: most significant coefficient first.
    friend bool scan_less(const FFElem& a, const FFElem& b) {
        for (long i = a.field_.n - 1; i >= 0; --i) {
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        }
        return false;
    }

private:
    FField field_;
    std::vector<long> c_;

    ffdetail::Poly c_trimmed() const {
        ffdetail::Poly f = c_;
        ffdetail::trim(f);
        return f;
    }

    void check(const FFElem& o) const {
        if (field_ != o.field_) throw std::invalid_argument("FFElem: field mismatch");
    }
};

namespace ffpoly {

// Monic polynomial arithmetic over a finite field, for root extraction of
// the subfield modulus in the big field.  Coefficients constant-first.
using EPoly = std::vector<FFElem>;

inline void trim(EPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

inline EPoly mul(const EPoly& a, const EPoly& b, const FField& field) {
    if (a.empty() || b.empty()) return {};
    EPoly r(a.size() + b.size() - 1, FFElem::zero(field));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    trim(r);
    return r;
}

// Remainder modulo a monic polynomial.
inline EPoly rem(EPoly a, const EPoly& mod, const FField& field) {
    const long dm = static_cast<long>(mod.size()) - 1;
    for (long i = static_cast<long>(a.size()) - 1; i >= dm; --i) {
        if (a[i].is_zero()) continue;
        FFElem c = a[i];
        for (long j = 0; j < dm; ++j) a[i - dm + j] = a[i - dm + j] - c * mod[j];
        a[i] = FFElem::zero(field);
    }
    trim(a);
    return a;
}

inline EPoly monic(EPoly f, const FField& field) {
    if (f.empty()) return f;
    mpz_class order;
    mpz_ui_pow_ui(order.get_mpz_t(), static_cast<unsigned long>(field.p),
                  static_cast<unsigned long>(field.n));
    FFElem inv = f.back().pow(order - 2);
    for (auto& c : f) c = c * inv;
    return f;
}

inline EPoly gcd(EPoly a, EPoly b, const FField& field) {
    while (!b.empty()) {
        a = rem(std::move(a), monic(b, field), field);
        std::swap(a, b);
    }
    return a.empty() ? a : monic(a, field);
}

inline EPoly powmod(EPoly base, mpz_class e, const EPoly& mod, const FField& field) {
    EPoly result{FFElem::constant(field, 1)};
    base = rem(std::move(base), mod, field);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = rem(mul(result, base, field), mod, field);
        base = rem(mul(base, base, field), mod, field);
        e >>= 1;
    }
    return result;
}

// One root of a monic squarefree polynomial that splits completely over the
// field, by gcd splitting with the quadratic-residue indicator of Y + s for
// s = 0, 1, 2, ... in scan order.
inline FFElem any_root(EPoly f, const FField& field) {
    mpz_class order;
    mpz_ui_pow_ui(order.get_mpz_t(), static_cast<unsigned long>(field.p),
                  static_cast<unsigned long>(field.n));
    mpz_class half = (order - 1) / 2;
    mpz_class shift = 0;
    while (f.size() > 2) {
        EPoly y_plus_s{FFElem::element_at(field, shift), FFElem::constant(field, 1)};
        shift += 1;
        EPoly w = powmod(std::move(y_plus_s), half, f, field);
        if (w.empty())
            w = EPoly{-FFElem::constant(field, 1)};
        else
            w[0] = w[0] - FFElem::constant(field, 1);
        trim(w);
        EPoly g = gcd(f, w, field);
        if (g.size() <= 1 || g.size() >= f.size()) continue;
        f = std::move(g);
    }
    if (f.size() != 2) throw std::logic_error("ffpoly::any_root: polynomial did not split");
    return -monic(f, field)[0];
}

} // namespace ffpoly

/// Ring embedding F_{p^r} -> F_{p^N} determined by the first root of the
/// small modulus in scan order (all roots form one Frobenius orbit, so the
/// scan minimum over the orbit is canonical).
class FFEmbedding {
public:
    FFEmbedding(const FField& from, const FField& to) : from_(from), to_(to) {
        if (from.p != to.p || to.n % from.n != 0)
            throw std::invalid_argument("FFEmbedding: no such subfield");
        if (from.n == to.n) {
            gen_image_ = FFElem::generator(to);
            return;
        }
        const long r = from.n;
        ffpoly::EPoly g;
        g.reserve(from.modulus.size());
        for (long c : from.modulus) g.push_back(FFElem::constant(to, c));
        FFElem root = ffpoly::any_root(g, to);
        FFElem best = root;
        FFElem cur = root;
        for (long i = 1; i < r; ++i) {
            cur = cur.frobenius();
            if (scan_less(cur, best)) best = cur;
        }
        gen_image_ = best;
    }

    const FField& from() const { return from_; }
    const FField& to() const { return to_; }

    FFElem operator()(const FFElem& e) const {
        if (e.field() != from_) throw std::invalid_argument("FFEmbedding: element not in source field");
        FFElem acc = FFElem::zero(to_);
        for (long i = from_.n - 1; i >= 0; --i)
            acc = acc * gen_image_ + FFElem::constant(to_, e.coeffs()[i]);
        return acc;
    }

private:
    FField from_;
    FField to_;
    FFElem gen_image_;
};

/// First element in scan order whose Frobenius orbit is an F_p-basis and
/// whose absolute trace is one.
inline FFElem trace_one_normal_basis(long p, long n) {
    FField f = ff_field(p, n);
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    for (mpz_class t = 0; t < total; ++t) {
        FFElem theta = FFElem::element_at(f, t);
        std::vector<std::vector<long>> orbit(n, std::vector<long>(n));
        FFElem cur = theta;
        for (long i = 0; i < n; ++i) {
            orbit[i] = cur.coeffs();
            cur = cur.frobenius();
        }
        if (!ffdetail::kernel_mod_p(orbit, p).empty()) continue; // orbit not a basis
        if (theta.abs_trace() != 1) continue;
        return theta;
    }
    throw std::logic_error("trace_one_normal_basis: exhausted field"); // unreachable
}

/// Exact divisibility of X^{q^d} - X + 1 by X^p - X + A theta_2 over the
/// residue field of degree m d.
inline bool lemma_3_1_3_check(long p, long m, long d) {
    if (std::gcd(m, d) != 1) throw std::invalid_argument("lemma_3_1_3_check: gcd(m, d) must be 1");
    FField fqd = ff_field(p, m * d);
    FFEmbedding em(ff_field(p, m), fqd);
    FFEmbedding ed(ff_field(p, d), fqd);
    FFElem c = em(trace_one_normal_basis(p, m)) * ed(trace_one_normal_basis(p, d));

    // X^{q^d} mod (X^p - X + c), by repeated squaring; the big polynomial is
    // never materialized densely.
    std::vector<FFElem> mod(p + 1, FFElem::zero(fqd));
    mod[0] = c;
    mod[1] = -FFElem::constant(fqd, 1);
    mod[p] = FFElem::constant(fqd, 1);
    auto polymulmod = [&](const std::vector<FFElem>& a, const std::vector<FFElem>& b) {
        std::vector<FFElem> r(a.size() + b.size() - 1, FFElem::zero(fqd));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
        }
        for (long i = static_cast<long>(r.size()) - 1; i >= p; --i) {
            if (r[i].is_zero()) continue;
            FFElem f = r[i];
            // X^p = X - c (mod modulus)
            r[i - p + 1] = r[i - p + 1] + f;
            r[i - p] = r[i - p] - f * c;
            r[i] = FFElem::zero(fqd);
        }
        r.resize(p);
        return r;
    };
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m * d));
    std::vector<FFElem> acc(p, FFElem::zero(fqd));
    acc[0] = FFElem::constant(fqd, 1);
    std::vector<FFElem> base(p, FFElem::zero(fqd));
    if (p > 1) base[1] = FFElem::constant(fqd, 1);
    mpz_class nn = e;
    while (nn > 0) {
        if (mpz_odd_p(nn.get_mpz_t())) acc = polymulmod(acc, base);
        base = polymulmod(base, base);
        nn >>= 1;
    }
    // remainder of X^{q^d} - X + 1
    acc[1] = acc[1] - FFElem::constant(fqd, 1);
    acc[0] = acc[0] + FFElem::constant(fqd, 1);
    for (const auto& coeff : acc)
        if (!coeff.is_zero()) return false;
    return true;
}

/// First root of X^p - X + c in scan order, in the field of c when the
/// equation is solvable there and in the degree-p extension otherwise.
inline FFElem artin_schreier_root(const FFElem& c) {
    if (c.is_zero()) throw std::invalid_argument("artin_schreier_root: c must be nonzero");
    const long p = c.field().p;

    auto try_solve = [p](const FField& f, const FFElem& cc, FFElem& root) {
        // x^p - x is F_p-linear; solve the linear system L x = -cc.
        const long N = f.n;
        std::vector<std::vector<long>> M(N, std::vector<long>(N));
        FFElem xi = FFElem::constant(f, 1);
        FFElem x = FFElem::generator(f);
        for (long i = 0; i < N; ++i) {
            FFElem img = xi.pow(p) - xi;
            for (long row = 0; row < N; ++row) M[row][i] = img.coeffs()[row];
            xi = xi * x;
        }
        std::vector<long> rhs = (-cc).coeffs();
        std::vector<long> sol;
        if (!ffdetail::solve_mod_p(M, rhs, p, sol)) return false;
        FFElem r0(f, sol);
        // All roots are r0 + j; take the scan-least.
        FFElem best = r0;
        for (long j = 1; j < p; ++j) {
            FFElem cand = r0 + FFElem::constant(f, j);
            if (scan_less(cand, best)) best = cand;
        }
        root = best;
        return true;
    };

    FFElem root = FFElem::zero(c.field());
    if (try_solve(c.field(), c, root)) return root;

    FField big = ff_field(p, c.field().n * p);
    FFEmbedding up(c.field(), big);
    FFElem cbig = up(c);
    if (!try_solve(big, cbig, root))
        throw std::logic_error("artin_schreier_root: no root in the degree-p extension");
    return root;
}

/// x_2 = alpha_1 * root(X^p - X + A theta_2) satisfies
/// x_2^{q^d} - x_2 = -alpha_1 in F_{q^{dp}}.
inline bool eq_3_check(long p, long m, long d, long alpha1_index) {
    if (std::gcd(m, d) != 1) throw std::invalid_argument("eq_3_check: gcd(m, d) must be 1");
    FField fq = ff_field(p, m);
    FField fqd = ff_field(p, m * d);
    FFEmbedding em(fq, fqd);
    FFEmbedding ed(ff_field(p, d), fqd);
    FFElem c = em(trace_one_normal_basis(p, m)) * ed(trace_one_normal_basis(p, d));

    FFElem root = artin_schreier_root(c);
    const FField& big = root.field();
    FFEmbedding up(fqd, big);

    mpz_class qm1;
    mpz_ui_pow_ui(qm1.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
    qm1 -= 1;
    mpz_class idx = mpz_class(alpha1_index) % qm1;
    if (idx < 0) idx += qm1;
    FFElem alpha1 = up(em(FFElem::element_at(fq, idx + 1)));

    FFElem x2 = alpha1 * root;
    mpz_class qd;
    mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m * d));
    return x2.pow(qd) - x2 == -alpha1;
}

/// Residue form of the integral basis: alpha_1, alpha_1 A, ..., alpha_1 A^{f^{m-2}}
/// are F_p-independent and A^{f^{m-1}} = 1 - sum of the smaller Frobenius powers.
inline bool basis_2_check(long p, long m) {
    FField fq = ff_field(p, m);
    FFElem A = trace_one_normal_basis(p, m);
    FFElem alpha1 = FFElem::element_at(fq, 1); // first nonzero element in scan order

    std::vector<FFElem> frob_powers; // A, A^f, ..., A^{f^{m-1}}
    FFElem cur = A;
    for (long i = 0; i < m; ++i) {
        frob_powers.push_back(cur);
        cur = cur.frobenius();
    }

    std::vector<std::vector<long>> rows;
    rows.push_back(alpha1.coeffs());
    for (long i = 0; i + 2 <= m; ++i) rows.push_back((alpha1 * frob_powers[i]).coeffs());
    if (!ffdetail::kernel_mod_p(rows, p).empty()) return false; // not independent

    FFElem sum = FFElem::zero(fq);
    for (long i = 0; i + 2 <= m; ++i) sum = sum + frob_powers[i];
    return frob_powers[m - 1] == FFElem::constant(fq, 1) - sum;
}

} // namespace localeps
