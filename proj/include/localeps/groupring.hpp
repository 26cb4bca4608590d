// The abelian group ring for G = <a> x <b> with ord(a) = p, ord(b) = d:
// exact arithmetic, character evaluation, idempotents, the star operation,
// partial inverses and Fourier inversion over G.

#pragma once

#include <localeps/cyclo.hpp>

#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace localeps {

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

/// Instance parameters: p = ord(a), d = ord(b), m = [K : Q_p], q = p^m.
struct GroupParams {
    long p = 3;
    long m = 1;
    long d = 1;
    long mtilde = 1; // m * mtilde = 1 (mod d), smallest positive

    GroupParams() = default;
    GroupParams(long p_, long m_, long d_) : p(p_), m(m_), d(d_) {
        if (!is_prime(p) || p == 2) throw std::invalid_argument("GroupParams: p must be an odd prime");
        if (m < 1 || d < 1) throw std::invalid_argument("GroupParams: m and d must be positive");
        if (std::gcd(m, d) != 1) throw std::invalid_argument("GroupParams: m and d must be relatively prime");
        mtilde = 1;
        while ((m * mtilde) % d != 1 % d) ++mtilde;
    }

    mpz_class q() const {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
        return r;
    }

    long group_order() const { return p * d; }
    long char_level() const { return std::lcm(p, d); }

    friend bool operator==(const GroupParams& x, const GroupParams& y) {
        return x.p == y.p && x.m == y.m && x.d == y.d;
    }
    friend bool operator!=(const GroupParams& x, const GroupParams& y) { return !(x == y); }
};

/// Group element a^i b^j with residues stored reduced.
struct GroupElem {
    long i = 0;
    long j = 0;
    friend auto operator<=>(const GroupElem&, const GroupElem&) = default;
};

/// Irreducible character chi_u phi_v with chi phi(a^i b^j) = zeta_p^{ui} zeta_d^{vj}.
struct Character {
    long u = 0;
    long v = 0;
    bool trivial() const { return u == 0 && v == 0; }
    bool chi_trivial() const { return u == 0; }
    bool phi_trivial() const { return v == 0; }
    friend auto operator<=>(const Character&, const Character&) = default;
};

inline std::vector<Character> all_characters(const GroupParams& gp) {
    std::vector<Character> cs;
    cs.reserve(gp.group_order());
    for (long u = 0; u < gp.p; ++u)
        for (long v = 0; v < gp.d; ++v) cs.push_back({u, v});
    return cs;
}

enum class Subgroup { A, B, Full };

/// Element of the group ring with CycloElem coefficients (rationals are
/// level-1 CycloElems).  Absent keys mean coefficient zero; no explicit
/// zero entries are stored.
class GroupRingElem {
public:
    explicit GroupRingElem(GroupParams gp) : params_(gp) {}

    static GroupRingElem zero(const GroupParams& gp) { return GroupRingElem(gp); }

    static GroupRingElem monomial(const GroupParams& gp, long i, long j,
                                  const CycloElem& c = CycloElem(1L)) {
        GroupRingElem e(gp);
        e.add_term(i, j, c);
        return e;
    }

    static GroupRingElem scalar(const GroupParams& gp, const CycloElem& c) {
        return monomial(gp, 0, 0, c);
    }

    static GroupRingElem gen_a(const GroupParams& gp) { return monomial(gp, 1, 0); }
    static GroupRingElem gen_b(const GroupParams& gp) { return monomial(gp, 0, 1); }

    const GroupParams& params() const { return params_; }
    const std::map<GroupElem, CycloElem>& terms() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    CycloElem coeff(long i, long j) const {
        auto it = coeffs_.find(reduce(i, j));
        return it == coeffs_.end() ? CycloElem(0L) : it->second;
    }

    void add_term(long i, long j, const CycloElem& c) {
        if (c.is_zero()) return;
        GroupElem g = reduce(i, j);
        auto it = coeffs_.find(g);
        if (it == coeffs_.end()) {
            coeffs_.emplace(g, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    friend GroupRingElem operator+(const GroupRingElem& x, const GroupRingElem& y) {
        x.check_params(y);
        GroupRingElem r(x);
        for (const auto& [g, c] : y.coeffs_) r.add_term(g.i, g.j, c);
        return r;
    }

    friend GroupRingElem operator-(const GroupRingElem& x, const GroupRingElem& y) {
        x.check_params(y);
        GroupRingElem r(x);
        for (const auto& [g, c] : y.coeffs_) r.add_term(g.i, g.j, -c);
        return r;
    }

    GroupRingElem operator-() const {
        GroupRingElem r(params_);
        for (const auto& [g, c] : coeffs_) r.coeffs_.emplace(g, -c);
        return r;
    }

    // Convolution product; exponents reduce mod p and mod d.
    friend GroupRingElem operator*(const GroupRingElem& x, const GroupRingElem& y) {
        x.check_params(y);
        GroupRingElem r(x.params_);
        for (const auto& [g, c] : x.coeffs_)
            for (const auto& [h, e] : y.coeffs_) r.add_term(g.i + h.i, g.j + h.j, c * e);
        return r;
    }

    friend GroupRingElem operator*(const CycloElem& c, const GroupRingElem& x) {
        GroupRingElem r(x.params_);
        for (const auto& [g, e] : x.coeffs_) r.add_term(g.i, g.j, c * e);
        return r;
    }

    GroupRingElem& operator+=(const GroupRingElem& o) { return *this = *this + o; }
    GroupRingElem& operator-=(const GroupRingElem& o) { return *this = *this - o; }
    GroupRingElem& operator*=(const GroupRingElem& o) { return *this = *this * o; }

    friend bool operator==(const GroupRingElem& x, const GroupRingElem& y) {
        return x.params_ == y.params_ && x.coeffs_ == y.coeffs_;
    }
    friend bool operator!=(const GroupRingElem& x, const GroupRingElem& y) { return !(x == y); }

    GroupRingElem pow(long e) const {
        GroupRingElem acc = scalar(params_, CycloElem(1L));
        GroupRingElem base(*this);
        if (e < 0) throw std::invalid_argument("GroupRingElem::pow: negative exponent");
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Ring homomorphism value sum c_{ij} zeta_p^{ui} zeta_d^{vj} in Q(zeta_{lcm(p,d)}).
    CycloElem char_eval(const Character& ch) const {
        const long L = params_.char_level();
        CycloElem acc = CycloElem(0L).embed_to(L);
        for (const auto& [g, c] : coeffs_) {
            long e = ((L / params_.p) * ((ch.u * g.i) % params_.p) +
                      (L / params_.d) * ((ch.v * g.j) % params_.d)) % L;
            acc += c * CycloElem::root_of_unity(L, e);
        }
        return acc;
    }

    std::map<Character, CycloElem> char_values() const {
        std::map<Character, CycloElem> vals;
        for (const auto& ch : all_characters(params_)) vals.emplace(ch, char_eval(ch));
        return vals;
    }

    /// Equals char_eval at the trivial character.
    CycloElem augmentation() const { return char_eval(Character{0, 0}); }

    /// Triples (i, j, serialized coefficient) for reports.
    std::vector<std::tuple<long, long, std::string>> to_triples() const {
        std::vector<std::tuple<long, long, std::string>> t;
        t.reserve(coeffs_.size());
        for (const auto& [g, c] : coeffs_) t.emplace_back(g.i, g.j, c.to_string());
        return t;
    }

private:
    GroupParams params_;
    std::map<GroupElem, CycloElem> coeffs_;

    GroupElem reduce(long i, long j) const {
        i %= params_.p;
        if (i < 0) i += params_.p;
        j %= params_.d;
        if (j < 0) j += params_.d;
        return {i, j};
    }

    void check_params(const GroupRingElem& o) const {
        if (params_ != o.params_) throw std::invalid_argument("GroupRingElem: params mismatch");
    }
};

/// T_H = |H| e_H, the sum over the subgroup.
inline GroupRingElem trace_elem(const GroupParams& gp, Subgroup h) {
    GroupRingElem r(gp);
    switch (h) {
    case Subgroup::A:
        for (long i = 0; i < gp.p; ++i) r.add_term(i, 0, CycloElem(1L));
        break;
    case Subgroup::B:
        for (long j = 0; j < gp.d; ++j) r.add_term(0, j, CycloElem(1L));
        break;
    case Subgroup::Full:
        for (long i = 0; i < gp.p; ++i)
            for (long j = 0; j < gp.d; ++j) r.add_term(i, j, CycloElem(1L));
        break;
    }
    return r;
}

/// e_H = (1/|H|) sum over H.
inline GroupRingElem idempotent(const GroupParams& gp, Subgroup h) {
    long order = h == Subgroup::A ? gp.p : h == Subgroup::B ? gp.d : gp.p * gp.d;
    return CycloElem(mpq_class(1, order)) * trace_elem(gp, h);
}

/// Component-wise: keep nonzero values, replace zeros by 1.
inline std::map<Character, CycloElem> star(const std::map<Character, CycloElem>& values) {
    std::map<Character, CycloElem> r;
    for (const auto& [ch, v] : values) r.emplace(ch, v.is_zero() ? CycloElem(1L) : v);
    return r;
}

/// Reconstruct the unique group-ring element with the given character values.
inline GroupRingElem fourier_inversion(const GroupParams& gp,
                                       const std::map<Character, CycloElem>& values) {
    const long L = gp.char_level();
    const long n = gp.group_order();
    GroupRingElem r(gp);
    for (long i = 0; i < gp.p; ++i) {
        for (long j = 0; j < gp.d; ++j) {
            CycloElem acc = CycloElem(0L).embed_to(L);
            for (const auto& [ch, v] : values) {
                long e = ((L / gp.p) * (((ch.u * i) % gp.p)) + (L / gp.d) * (((ch.v * j) % gp.d))) % L;
                acc += v * CycloElem::root_of_unity(L, (L - e) % L);
            }
            r.add_term(i, j, CycloElem(mpq_class(1, n)) * acc);
        }
    }
    return r;
}

/// The inverse of x on the (1 - e)-component: char values 1/x where e = 0,
/// and 0 where e = 1.  e must be an idempotent.
inline GroupRingElem partial_inverse(const GroupRingElem& x, const GroupRingElem& e) {
    if (x.params() != e.params()) throw std::invalid_argument("partial_inverse: params mismatch");
    std::map<Character, CycloElem> vals;
    for (const auto& ch : all_characters(x.params())) {
        CycloElem ev = e.char_eval(ch);
        if (ev == CycloElem(1L)) {
            vals.emplace(ch, CycloElem(0L));
        } else if (ev.is_zero()) {
            CycloElem xv = x.char_eval(ch);
            if (xv.is_zero())
                throw std::domain_error("partial_inverse: x vanishes outside the e-component");
            vals.emplace(ch, xv.inverse());
        } else {
            throw std::invalid_argument("partial_inverse: e is not an idempotent");
        }
    }
    return fourier_inversion(x.params(), vals);
}

/// p - T_a = (a-1)^{p-1} u with u the product of the (a^i - 1)/(a - 1);
/// checks the identity, the augmentation (p-1)! and unit-ness of u.
inline std::pair<GroupRingElem, bool> lemma_3_2_3_check(long p) {
    GroupParams gp(p, 1, 1);
    GroupRingElem u = GroupRingElem::scalar(gp, CycloElem(1L));
    for (long i = 1; i <= p - 1; ++i) {
        // (a^i - 1)/(a - 1) = 1 + a + ... + a^{i-1}
        GroupRingElem f(gp);
        for (long t = 0; t < i; ++t) f.add_term(t, 0, CycloElem(1L));
        u *= f;
    }
    GroupRingElem a = GroupRingElem::gen_a(gp);
    GroupRingElem one = GroupRingElem::scalar(gp, CycloElem(1L));
    GroupRingElem lhs = GroupRingElem::scalar(gp, CycloElem(p)) - trace_elem(gp, Subgroup::A);
    GroupRingElem rhs = (a - one).pow(p - 1) * u;

    bool ok = (lhs == rhs);

    mpz_class fact = 1;
    for (long i = 2; i <= p - 1; ++i) fact *= i;
    ok = ok && (u.augmentation() == CycloElem(fact));

    for (const auto& ch : all_characters(gp))
        ok = ok && u.char_eval(ch).is_p_unit(p);

    return {u, ok};
}

/// (a-1)^{p-1} - T_a has all coefficients divisible by p.
inline bool lemma_3_2_4_check(long p) {
    GroupParams gp(p, 1, 1);
    GroupRingElem a = GroupRingElem::gen_a(gp);
    GroupRingElem one = GroupRingElem::scalar(gp, CycloElem(1L));
    GroupRingElem diff = (a - one).pow(p - 1) - trace_elem(gp, Subgroup::A);
    for (const auto& [g, c] : diff.terms()) {
        mpq_class q = c.to_rational();
        if (q.get_den() != 1 || q.get_num() % p != 0) return false;
    }
    return true;
}

} // namespace localeps
