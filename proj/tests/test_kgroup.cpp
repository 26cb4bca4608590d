#include <catch2/catch_amalgamated.hpp>

#include <localeps/kgroup.hpp>

#include "test_util.hpp"

using namespace localeps;

namespace {

KRep random_krep(std::mt19937_64& rng, const GroupParams& gp) {
    KRep r(gp);
    for (const auto& ch : all_characters(gp))
        r.set(ch, testutil::random_nonzero_cyclo(rng, gp.char_level()),
              static_cast<long>(rng() % 5) - 2);
    return r;
}

CycloElem zd(const GroupParams& gp, long e) { return detail::zeta_d_pow(gp, e); }
CycloElem zp(const GroupParams& gp, long e) { return detail::zeta_p_pow(gp, e); }

} // namespace

TEST_CASE("krep arithmetic") {
    GroupParams gp(3, 1, 2);
    std::mt19937_64 rng(61);
    auto x = random_krep(rng, gp);
    auto y = random_krep(rng, gp);
    auto z = random_krep(rng, gp);

    auto q = x / x;
    for (const auto& ch : all_characters(gp)) {
        CHECK(q.scalar(ch) == CycloElem(1L));
        CHECK(q.w_exp(ch) == 0);
    }
    for (const auto& ch : all_characters(gp))
        CHECK((x * y).w_exp(ch) == x.w_exp(ch) + y.w_exp(ch));
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK((x * y) / y == x);
    CHECK(x * x.inverse() == KRep::one(gp));

    GroupParams other(5, 1, 2);
    CHECK_THROWS_AS(x * random_krep(rng, other), std::invalid_argument);
}

TEST_CASE("correction term") {
    GroupParams gp(3, 1, 2);
    auto corr = correction_term(gp);
    CHECK(corr.scalar({0, 0}) == CycloElem(mpq_class(4, 3))); // 2 (1 - 1/3)
    CHECK(corr.scalar({0, 1}) == CycloElem(mpq_class(2, 3))); // (1 + 1/3)/2
    for (long u = 1; u < gp.p; ++u)
        for (long v = 0; v < gp.d; ++v) CHECK(corr.scalar({u, v}) == CycloElem(1L));
    for (const auto& ch : all_characters(gp)) CHECK(corr.w_exp(ch) == 0);

    // The star-formula cross-check runs on every construction; a mismatch throws.
    for (GroupParams g : {GroupParams(3, 1, 1), GroupParams(3, 2, 3), GroupParams(5, 1, 4),
                          GroupParams(3, 1, 3), GroupParams(5, 3, 2)})
        CHECK_NOTHROW(correction_term(g));
}

TEST_CASE("closed form of the cohomological representative") {
    GroupParams gp(3, 2, 3);
    auto eps = epsilon_closed(gp);
    CHECK(eps.scalar({0, 0}) == CycloElem(3L * 9L)); // d p^m
    // (chi_0, phi(b) = zeta_3): zeta_3^2 * 9 / (1 - zeta_3) with mtilde = 2.
    CHECK(eps.scalar({0, 1}) == zd(gp, 2) * CycloElem(9L) / (CycloElem(1L) - zd(gp, 1)));

    GroupParams g1(5, 1, 2);
    auto eps1 = epsilon_closed(g1);
    CHECK(eps1.scalar({1, 0}) ==
          zd(g1, 0) * (zp(g1, 1) - CycloElem(1L)).pow(4)); // phi(b)^{mtilde-1} (chi(a)-1)^{p-1}
}

TEST_CASE("resolvent-term representative") {
    GroupParams gp(3, 2, 3);
    ArtinParam a0(0, gp.p);
    auto eta = eta_rep(gp, a0);
    for (long v = 0; v < gp.d; ++v) {
        CHECK(eta.scalar({0, v}) == CycloElem(mpq_class(1, 81))); // p^{-2m}
        CHECK(eta.w_exp({0, v}) == -1);
    }
    for (long u = 1; u < gp.p; ++u)
        for (long v = 0; v < gp.d; ++v)
            CHECK(eta.scalar({u, v}) == CycloElem(mpq_class(1, 9)) * zd(gp, 2 * v));

    SECTION("only chi(4) varies with the character index") {
        ArtinParam a2(2, gp.p);
        auto e2 = eta_rep(gp, a2);
        for (long v = 0; v < gp.d; ++v)
            CHECK(e2.scalar({1, v}) / e2.scalar({2, v}) == zp(gp, -(1 - 2) * 2));
    }
}

TEST_CASE("consistency of the resolvent ratio cases") {
    for (GroupParams gp : {GroupParams(3, 1, 1), GroupParams(3, 1, 2), GroupParams(5, 2, 3),
                           GroupParams(3, 3, 2), GroupParams(7, 1, 4)})
        for (long k4 = 0; k4 < gp.p; ++k4) CHECK(prop_5_1_5_check(gp, ArtinParam(k4, gp.p)));
}

TEST_CASE("omega assembly equals the closed form") {
    for (GroupParams gp : {GroupParams(3, 1, 1), GroupParams(3, 1, 2), GroupParams(3, 2, 1),
                           GroupParams(5, 1, 2), GroupParams(3, 3, 2), GroupParams(5, 2, 3)}) {
        for (long k4 = 0; k4 < gp.p; ++k4) {
            ArtinParam ap(k4, gp.p);
            auto assembled =
                omega_assemble(epsilon_closed(gp), eta_rep(gp, ap), correction_term(gp));
            CHECK(assembled == omega_closed(gp, ap));
        }
    }

    GroupParams gp(3, 1, 2);
    ArtinParam a0(0, gp.p);
    auto omega = omega_closed(gp, a0);
    CHECK(omega.scalar({0, 0}) == CycloElem(mpq_class(1, 2))); // 1/(p^m - 1)
    CHECK(omega.w_exp({0, 0}) == -1);
    // (chi_0, phi_1), phi(b) = -1, mtilde = 1: (-1)^{mtilde+1} / (-3 - 1) = -1/4.
    CHECK(omega.scalar({0, 1}) == CycloElem(mpq_class(-1, 4)));
}

TEST_CASE("normalized element omega tilde") {
    SECTION("(3,1,1, k4 = 0) equals 1 - a + a^2") {
        GroupParams gp(3, 1, 1);
        auto wt = omega_tilde(gp, ArtinParam(0, gp.p));
        GroupRingElem expected(gp);
        expected.add_term(0, 0, CycloElem(1L));
        expected.add_term(1, 0, CycloElem(-1L));
        expected.add_term(2, 0, CycloElem(1L));
        CHECK(wt == expected);
    }

    SECTION("b-support and the displayed coefficients") {
        GroupParams gp(3, 2, 3);
        ArtinParam ap(1, gp.p);
        auto wt = omega_tilde(gp, ap);
        std::set<long> support;
        for (const auto& [g, c] : wt.terms()) support.insert(g.j);
        CHECK(support == std::set<long>{(gp.mtilde + 1) % gp.d, (gp.mtilde + 2) % gp.d});

        // The b^{mtilde+2} slice is -sigma_4^{-1} (-(a-1)^{p-1}/p)^m q (1 - e_a).
        auto one = GroupRingElem::scalar(gp, CycloElem(1L));
        auto a = GroupRingElem::gen_a(gp);
        auto h = GroupRingElem::monomial(gp, -ap.k4, 0) *
                 (CycloElem(mpq_class(-1, gp.p)) * (a - one).pow(gp.p - 1)).pow(gp.m);
        auto expected = CycloElem(mpq_class(-gp.q())) * h * (one - idempotent(gp, Subgroup::A));
        long j2 = (gp.mtilde + 2) % gp.d;
        for (long i = 0; i < gp.p; ++i) CHECK(wt.coeff(i, j2) == expected.coeff(i, 0));
    }

    SECTION("definitional consistency with omega") {
        GroupParams gp(5, 1, 2);
        for (long k4 : {0L, 3L}) {
            ArtinParam ap(k4, gp.p);
            auto wt = omega_tilde(gp, ap);
            auto omega = omega_closed(gp, ap);
            for (const auto& ch : all_characters(gp)) {
                CycloElem factor = zd(gp, ch.v) * CycloElem(mpq_class(gp.q())) - CycloElem(1L);
                CHECK(wt.char_eval(ch) == factor * omega.scalar(ch));
            }
        }
    }
}

TEST_CASE("root-of-unity congruence") {
    // p = 3: (zeta-1)^2/3 + 1 = 1 - zeta with norm 3.
    CycloElem x = (CycloElem::zeta(3) - CycloElem(1L)).pow(2) / CycloElem(3L) + CycloElem(1L);
    CHECK(x == CycloElem(1L) - CycloElem::zeta(3));
    CHECK(x.norm() == 3);
    for (long p : {3L, 5L, 13L}) CHECK(congruence_check(p));
}

TEST_CASE("theorem pipeline") {
    std::vector<long> seeds{41, 42};

    for (long k4 = 0; k4 < 3; ++k4) {
        auto rep = theorem_verify(GroupParams(3, 1, 1), ArtinParam(k4, 3), seeds);
        CHECK(rep.all_pass());
    }

    for (GroupParams gp : {GroupParams(3, 1, 2), GroupParams(3, 2, 1), GroupParams(5, 1, 2)}) {
        auto rep = theorem_verify(gp, ArtinParam(1, gp.p), seeds);
        INFO(gp.p << "," << gp.m << "," << gp.d);
        CHECK(rep.all_pass());
        REQUIRE(rep.steps.size() == 6);
    }

    SECTION("corrupted epsilon is detected") {
        for (GroupParams gp : {GroupParams(3, 1, 2), GroupParams(5, 2, 1)})
            CHECK(mutation_epsilon_detected(gp, ArtinParam(0, gp.p)));
    }
}
