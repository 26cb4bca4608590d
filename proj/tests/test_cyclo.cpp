#include <catch2/catch_amalgamated.hpp>

#include <localeps/cyclo.hpp>

#include "test_util.hpp"

using localeps::CycloElem;
using localeps::euler_phi;

namespace {
const CycloElem z3 = CycloElem::zeta(3);
const CycloElem one(1L);
}

TEST_CASE("arithmetic on hand-expanded values") {
    // (1 - z)(1 - z^2) with z^2 = -1 - z:  1 - z - z^2 + z^3 = 2 - (z + z^2) = 3.
    CycloElem lhs = (one - z3) * (one - CycloElem::root_of_unity(3, 2));
    CHECK(lhs == CycloElem(3L));

    // (1 - z)^2 = 1 - 2z + z^2 = -3z, so (1 - z)^2 / 3 = -z.
    CycloElem sq = (one - z3) * (one - z3);
    CHECK(sq / CycloElem(3L) == -z3);

    SECTION("multiplicative identity") {
        std::mt19937_64 rng(42);
        for (long level : {1L, 2L, 3L, 6L, 9L, 12L}) {
            auto x = testutil::random_cyclo(rng, level);
            CHECK(x * one == x);
        }
    }
}

TEST_CASE("division") {
    std::mt19937_64 rng(7);
    for (long level : {3L, 4L, 9L, 15L}) {
        auto x = testutil::random_nonzero_cyclo(rng, level);
        auto y = testutil::random_nonzero_cyclo(rng, level);
        CHECK((x / y) * y == x);
        CHECK(x / x == one);
    }
    CHECK_THROWS_AS(one / CycloElem(0L), std::domain_error);
}

TEST_CASE("galois action") {
    CHECK(CycloElem::zeta(9).galois(1) == CycloElem::zeta(9));
    // zeta_3^2 reduced mod Phi_3 is -1 - zeta_3.
    CHECK(z3.galois(2) == -one - z3);
    CHECK_THROWS_AS(z3.galois(3), std::invalid_argument);

    SECTION("conjugation is an involution") {
        std::mt19937_64 rng(11);
        for (long level : {3L, 5L, 8L, 9L, 12L}) {
            auto x = testutil::random_cyclo(rng, level);
            CHECK(x.galois(-1).galois(-1) == x);
        }
    }

    SECTION("ring homomorphism") {
        std::mt19937_64 rng(12);
        for (long level : {5L, 9L, 12L, 63L}) {
            auto x = testutil::random_cyclo(rng, level);
            auto y = testutil::random_cyclo(rng, level);
            for (long k = 2; k < level; ++k) {
                if (std::gcd(k, level) != 1) continue;
                CHECK(x.galois(k) + y.galois(k) == (x + y).galois(k));
                CHECK(x.galois(k) * y.galois(k) == (x * y).galois(k));
            }
        }
    }
}

TEST_CASE("norms") {
    for (long p : {3L, 5L, 7L, 13L}) {
        // Phi_p(1) = p.
        CHECK(mpq_class(CycloElem(1L).embed_to(p).norm()) == 1);
        CHECK((one - CycloElem::zeta(p)).norm() == mpq_class(p));
    }
    CHECK(CycloElem(1L).norm() == 1);
    // Roots of unity have unit norm; signs fixed by the orbit product.
    CHECK(CycloElem::zeta(2).norm() == -1);
    CHECK(CycloElem::zeta(9).norm() == 1);
    CHECK(CycloElem::zeta(12).norm() == 1);

    SECTION("multiplicativity") {
        std::mt19937_64 rng(13);
        for (long level : {5L, 9L, 12L}) {
            auto x = testutil::random_cyclo(rng, level);
            auto y = testutil::random_cyclo(rng, level);
            CHECK((x * y).norm() == x.norm() * y.norm());
        }
    }
}

TEST_CASE("field laws on random inputs") {
    std::mt19937_64 rng(99);
    for (long level : {1L, 4L, 6L, 9L, 21L, 63L}) {
        auto x = testutil::random_cyclo(rng, level);
        auto y = testutil::random_cyclo(rng, level);
        auto z = testutil::random_cyclo(rng, level);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * y == y * x);
        auto w = testutil::random_nonzero_cyclo(rng, level);
        CHECK(w * w.inverse() == one);
    }
}

TEST_CASE("embedding compatibility") {
    std::mt19937_64 rng(5);
    auto x = testutil::random_cyclo(rng, 9);
    auto y = testutil::random_cyclo(rng, 9);
    CHECK(x.embed_to(45) * y.embed_to(45) == (x * y).embed_to(45));
    CHECK(x.embed_to(45) + y.embed_to(45) == (x + y).embed_to(45));
    // Galois action commutes with embedding for exponents coprime to the big level.
    for (long k : {2L, 4L, 7L}) {
        REQUIRE(std::gcd(k, 45L) == 1);
        CHECK(x.embed_to(45).galois(k) == x.galois(k % 9).embed_to(45));
    }
    // Mixed-level arithmetic embeds into the lcm.
    CHECK((CycloElem::zeta(2) * CycloElem::zeta(3)).level() == 6);
}

TEST_CASE("p-integrality and p-units") {
    mpz_class three(3);
    CycloElem u = (one - z3) * (one - z3) / CycloElem(3L); // equals -zeta_3
    CHECK(u.is_p_unit(three));
    CHECK_FALSE(CycloElem(3L).is_p_unit(three));
    CHECK_FALSE(CycloElem(mpq_class(1, 3)).p_integral(three));
    CHECK_FALSE(CycloElem(mpq_class(1, 3)).is_p_unit(three));
    CHECK_THROWS_AS(CycloElem(0L).is_p_unit(three), std::domain_error);

    SECTION("unit group closure") {
        std::mt19937_64 rng(21);
        int found = 0;
        while (found < 5) {
            auto x = testutil::random_nonzero_cyclo(rng, 9);
            auto y = testutil::random_nonzero_cyclo(rng, 9);
            if (!x.is_p_unit(three) || !y.is_p_unit(three)) continue;
            ++found;
            CHECK((x * y).is_p_unit(three));
            CHECK(x.inverse().p_integral(three));
        }
    }
}

TEST_CASE("serialization") {
    CycloElem x = (one - z3) / CycloElem(6L);
    CHECK(x.to_string() == "level:3;num:[1,-1];den:6");
    CHECK(CycloElem(0L).to_string() == "level:1;num:[0];den:1");
}

TEST_CASE("level limit is enforced") {
    long old = localeps::level_limit();
    localeps::set_level_limit(10);
    CHECK_THROWS_AS(CycloElem::zeta(12), localeps::level_limit_error);
    localeps::set_level_limit(old);
    CHECK_NOTHROW(CycloElem::zeta(12));
}
