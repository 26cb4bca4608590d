// Exact arithmetic in cyclotomic fields Q(zeta_n).
//
// Elements are stored in the power basis 1, zeta, ..., zeta^{phi(n)-1}
// reduced modulo the n-th cyclotomic polynomial, with exact rational
// coefficients.  This representation is canonical, so equality is
// coefficient-wise.  All operations are pure; values are immutable
// after construction.

#pragma once

#include <gmpxx.h>

#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace localeps {

/// Thrown when a requested cyclotomic level exceeds the configured bound.
struct level_limit_error : std::runtime_error {
    explicit level_limit_error(long level, long limit)
        : std::runtime_error("cyclotomic level " + std::to_string(level) +
                             " exceeds configured limit " + std::to_string(limit)) {}
};

namespace detail {

inline std::atomic<long>& level_limit_ref() {
    static std::atomic<long> limit{1200};
    return limit;
}

} // namespace detail

inline long level_limit() { return detail::level_limit_ref().load(); }
inline void set_level_limit(long limit) { detail::level_limit_ref().store(limit); }

inline long euler_phi(long n) {
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline long gcd_long(long a, long b) { return std::gcd(a, b); }

namespace detail {

// Exact division of integer polynomials, quotient only.  num is consumed.
inline std::vector<mpz_class> poly_divexact(std::vector<mpz_class> num,
                                            const std::vector<mpz_class>& den) {
    const long dn = static_cast<long>(num.size()) - 1;
    const long dd = static_cast<long>(den.size()) - 1;
    std::vector<mpz_class> q(dn - dd + 1);
    for (long i = dn; i >= dd; --i) {
        mpz_class c = num[i] / den[dd]; // den is monic here (leading 1) or +-1
        q[i - dd] = c;
        if (c != 0)
            for (long j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    return q;
}

// Cyclotomic polynomial Phi_n as integer coefficient vector, constant first.
inline const std::vector<mpz_class>& cyclotomic_poly(long n) {
    static std::map<long, std::vector<mpz_class>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // x^n - 1 divided by the product of Phi_d over proper divisors d.
    std::vector<mpz_class> num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        std::vector<mpz_class> phd;
        {
            auto jt = cache.find(d);
            if (jt != cache.end()) {
                phd = jt->second;
            } else {
                // fill cache recursively without re-locking
                std::vector<mpz_class> nd(d + 1);
                nd[0] = -1;
                nd[d] = 1;
                for (long e = 1; e < d; ++e)
                    if (d % e == 0) nd = poly_divexact(std::move(nd), cache.at(e));
                cache.emplace(d, nd);
                phd = std::move(nd);
            }
        }
        num = poly_divexact(std::move(num), phd);
    }
    auto res = cache.emplace(n, std::move(num));
    return res.first->second;
}

} // namespace detail

/// Exact element of the cyclotomic field Q(zeta_n).
class CycloElem {
public:
    CycloElem() : level_(1), c_(1) {}

    /*implicit*/ CycloElem(const mpq_class& r) : level_(1), c_{r} {}
    /*implicit*/ CycloElem(const mpz_class& z) : level_(1), c_{mpq_class(z)} {}
    /*implicit*/ CycloElem(long v) : level_(1), c_{mpq_class(v)} {}

    CycloElem(long level, std::vector<mpq_class> coeffs) : level_(level), c_(std::move(coeffs)) {
        check_level(level_);
        if (static_cast<long>(c_.size()) != euler_phi(level_))
            throw std::invalid_argument("CycloElem: coefficient count must equal phi(level)");
    }

    /// zeta_n^e, reduced.
    static CycloElem root_of_unity(long n, long e) {
        check_level(n);
        e %= n;
        if (e < 0) e += n;
        std::vector<mpq_class> dense(n);
        dense[e] = 1;
        return reduced(n, std::move(dense));
    }

    static CycloElem zeta(long n) { return root_of_unity(n, 1); }

    long level() const { return level_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& q : c_)
            if (q != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    /// The rational value; element must be rational.
    mpq_class to_rational() const {
        if (!is_rational()) throw std::domain_error("CycloElem: not a rational value");
        return c_[0];
    }

    /// Image in Q(zeta_m), requires level | m.
    CycloElem embed_to(long m) const {
        if (m == level_) return *this;
        if (m % level_ != 0) throw std::invalid_argument("CycloElem::embed_to: level must divide target");
        check_level(m);
        const long step = m / level_;
        std::vector<mpq_class> dense(m);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) dense[i * step] += c_[i];
        return reduced(m, std::move(dense));
    }

    friend CycloElem operator+(const CycloElem& x, const CycloElem& y) {
        auto [a, b] = to_common_level(x, y);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
        return a;
    }

    friend CycloElem operator-(const CycloElem& x, const CycloElem& y) {
        auto [a, b] = to_common_level(x, y);
        for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }

    CycloElem operator-() const {
        CycloElem r(*this);
        for (auto& q : r.c_) q = -q;
        return r;
    }

    friend CycloElem operator*(const CycloElem& x, const CycloElem& y) {
        auto [a, b] = to_common_level(x, y);
        if (a.is_rational() || b.is_rational()) {
            const CycloElem& s = a.is_rational() ? b : a;
            const mpq_class f = a.is_rational() ? a.c_[0] : b.c_[0];
            CycloElem r(s);
            for (auto& q : r.c_) q *= f;
            return r;
        }
        std::vector<mpq_class> prod(2 * a.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
        }
        return reduced(a.level_, std::move(prod));
    }

    friend CycloElem operator/(const CycloElem& x, const CycloElem& y) { return x * y.inverse(); }

    CycloElem& operator+=(const CycloElem& o) { return *this = *this + o; }
    CycloElem& operator-=(const CycloElem& o) { return *this = *this - o; }
    CycloElem& operator*=(const CycloElem& o) { return *this = *this * o; }
    CycloElem& operator/=(const CycloElem& o) { return *this = *this / o; }

    friend bool operator==(const CycloElem& x, const CycloElem& y) {
        auto [a, b] = to_common_level(x, y);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const CycloElem& x, const CycloElem& y) { return !(x == y); }

    /// Field automorphism zeta_n -> zeta_n^k; requires gcd(k, n) = 1.
    CycloElem galois(long k) const {
        long n = level_;
        long kk = k % n;
        if (kk < 0) kk += n;
        if (n == 1) return *this;
        if (gcd_long(kk, n) != 1)
            throw std::invalid_argument("CycloElem::galois: exponent not coprime to level");
        if (kk == 1) return *this;
        std::vector<mpq_class> dense(n);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) dense[(i * kk) % n] += c_[i];
        return reduced(n, std::move(dense));
    }

    /// Product over the full Galois orbit; always rational.
    mpq_class norm() const {
        if (level_ == 1) return c_[0];
        CycloElem acc(*this);
        for (long k = 2; k < level_; ++k)
            if (gcd_long(k, level_) == 1) acc *= galois(k);
        if (!acc.is_rational())
            throw std::logic_error("CycloElem::norm: orbit product is not rational");
        return acc.c_[0];
    }

    CycloElem inverse() const {
        if (is_zero()) throw std::domain_error("CycloElem: division by zero");
        if (is_rational()) return CycloElem(mpq_class(1 / c_[0])).embed_to(level_);
        CycloElem conj_prod(mpq_class(1));
        conj_prod = conj_prod.embed_to(level_);
        for (long k = 2; k < level_; ++k)
            if (gcd_long(k, level_) == 1) conj_prod *= galois(k);
        mpq_class n = (*this * conj_prod).to_rational();
        for (auto& q : conj_prod.c_) q /= n;
        return conj_prod;
    }

    CycloElem pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycloElem base(*this), acc(mpq_class(1));
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Common denominator (positive) of the canonical representation.
    mpz_class denominator() const {
        mpz_class den = 1;
        for (const auto& q : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
        return den;
    }

    /// True iff the canonical common denominator is coprime to p.
    bool p_integral(const mpz_class& p) const {
        mpz_class g;
        mpz_class den = denominator();
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        return g == 1;
    }

    /// p-integral with norm of p-adic valuation zero, hence a unit above p.
    bool is_p_unit(const mpz_class& p) const {
        if (is_zero()) throw std::domain_error("CycloElem::is_p_unit: zero element");
        if (!p_integral(p)) return false;
        mpq_class n = norm();
        return n.get_num() % p != 0;
    }

    /// "level:n;num:[a0,...];den:c" with a common positive denominator.
    std::string to_string() const {
        mpz_class den = denominator();
        std::ostringstream os;
        os << "level:" << level_ << ";num:[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ",";
            os << mpz_class(c_[i].get_num() * (den / c_[i].get_den()));
        }
        os << "];den:" << den;
        return os.str();
    }

private:
    long level_;
    std::vector<mpq_class> c_;

    static void check_level(long n) {
        if (n < 1) throw std::invalid_argument("CycloElem: level must be positive");
        if (n > level_limit()) throw level_limit_error(n, level_limit());
    }

    // Reduce a dense coefficient vector (degree < size) modulo Phi_n.
    static CycloElem reduced(long n, std::vector<mpq_class> dense) {
        const auto& phi = detail::cyclotomic_poly(n);
        const long deg = static_cast<long>(phi.size()) - 1; // = euler_phi(n)
        for (long i = static_cast<long>(dense.size()) - 1; i >= deg; --i) {
            if (dense[i] == 0) continue;
            mpq_class c = dense[i];
            for (long j = 0; j < deg; ++j)
                if (phi[j] != 0) dense[i - deg + j] -= c * phi[j];
            dense[i] = 0;
        }
        dense.resize(deg);
        CycloElem r;
        r.level_ = n;
        r.c_ = std::move(dense);
        return r;
    }

    static std::pair<CycloElem, CycloElem> to_common_level(const CycloElem& x, const CycloElem& y) {
        if (x.level_ == y.level_) return {x, y};
        long l = std::lcm(x.level_, y.level_);
        return {x.embed_to(l), y.embed_to(l)};
    }
};

/// p-adic valuation of a nonzero rational.
inline long padic_valuation(const mpq_class& q, const mpz_class& p) {
    if (q == 0) throw std::domain_error("padic_valuation: zero value");
    long v = 0;
    mpz_class n = q.get_num();
    while (n % p == 0) { n /= p; ++v; }
    mpz_class d = q.get_den();
    while (d % p == 0) { d /= p; --v; }
    return v;
}

} // namespace localeps
