#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cuspforge/field.hpp"

using namespace cuspforge;

namespace {

// Independent oracle for the fundamental unit: brute-force Pell search over
// the second coordinate, returning the smallest unit > 1.
FieldElement pell_oracle(const RealQuadraticField& F) {
    long D = F.D();
    // Units are (a + b*sqrt(D))/2 with a = b = 0 mod 2 when D != 1 mod 4.
    for (Int b = 1;; ++b) {
        for (int s : {-1, +1}) {
            // a^2 - D b^2 = 4 s: check if a^2 = D b^2 + 4s is a square.
            Int a2 = Int(D) * b * b + 4 * s;
            Int a;
            if (a2 < 0 || !is_square(a2, &a)) continue;
            if (F.t() == 0 && (fmod(a, 2) != 0 || fmod(b, 2) != 0)) continue;
            // (a + b sqrt(D))/2 = x + y w: y = b (t=1) or b/2 (t=0).
            Rat x, y;
            if (F.t() == 1) {
                x = make_rat(a - b, 2);
                y = Rat(b);
            } else {
                x = make_rat(a, 2);
                y = make_rat(b, 2);
            }
            FieldElement u = F.element(x, y);
            CHECK(u.is_integral());
            return u;  // first hit (smallest b) is the fundamental unit
        }
    }
}

}  // namespace

TEST_CASE("frozen fundamental units") {
    {
        RealQuadraticField F(2);
        CHECK(F.fundamental_unit() == F.element(1, 1));  // 1 + sqrt(2)
        CHECK(F.fundamental_unit().norm() == -1);
    }
    {
        RealQuadraticField F(3);
        CHECK(F.fundamental_unit() == F.element(2, 1));  // 2 + sqrt(3)
        CHECK(F.fundamental_unit().norm() == 1);
    }
    {
        RealQuadraticField F(5);
        CHECK(F.fundamental_unit() == F.omega());  // (1 + sqrt(5))/2
        CHECK(F.fundamental_unit().norm() == -1);
    }
    {
        RealQuadraticField F(13);
        CHECK(F.fundamental_unit() == F.element(1, 1));  // (3 + sqrt(13))/2
        CHECK(F.fundamental_unit().norm() == -1);
    }
}

TEST_CASE("fundamental unit matches brute-force Pell oracle") {
    for (long D : {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 29, 33}) {
        RealQuadraticField F(D);
        const FieldElement& u = F.fundamental_unit();
        CAPTURE(D);
        CHECK(u == pell_oracle(F));
        CHECK(u.is_integral());
        CHECK(abs(u.norm()) == 1);
        CHECK(u.sign_at(0) > 0);
        CHECK((u - F.one()).sign_at(0) > 0);  // u > 1 at the first embedding
    }
}

TEST_CASE("field constructor rejects bad parameters") {
    CHECK_THROWS_AS(RealQuadraticField(1), invalid_input);
    CHECK_THROWS_AS(RealQuadraticField(4), invalid_input);
    CHECK_THROWS_AS(RealQuadraticField(12), invalid_input);
    CHECK_THROWS_AS(RealQuadraticField(-5), invalid_input);
}

TEST_CASE("integral basis bookkeeping") {
    RealQuadraticField F5(5);
    CHECK(F5.t() == 1);
    CHECK(F5.c() == 1);
    CHECK(F5.disc() == 5);
    RealQuadraticField F2(2);
    CHECK(F2.t() == 0);
    CHECK(F2.c() == 2);
    CHECK(F2.disc() == 8);
    CHECK((F5.omega() * F5.omega()) == F5.omega() + F5.one());
    CHECK((F2.omega() * F2.omega()) == F2.element(2, 0));
}

TEST_CASE("arithmetic properties on random elements") {
    std::mt19937_64 rng(20260823);
    std::uniform_int_distribution<long> coef(-30, 30);
    std::uniform_int_distribution<long> den(1, 7);
    for (long D : {2, 3, 5, 13}) {
        RealQuadraticField F(D);
        for (int it = 0; it < 300; ++it) {
            FieldElement a =
                F.element(make_rat(coef(rng), den(rng)), make_rat(coef(rng), den(rng)));
            FieldElement b =
                F.element(make_rat(coef(rng), den(rng)), make_rat(coef(rng), den(rng)));
            // Norm and trace are multiplicative / additive.
            CHECK((a * b).norm() == a.norm() * b.norm());
            CHECK((a + b).trace() == a.trace() + b.trace());
            // Conjugation is a ring homomorphism of order two.
            CHECK(a.conj().conj() == a);
            CHECK((a * b).conj() == a.conj() * b.conj());
            CHECK((a + b).conj() == a.conj() + b.conj());
            // N(a) = a * conj(a), Tr(a) = a + conj(a).
            CHECK(a * a.conj() == F.element(a.norm(), Rat(0)));
            CHECK(a + a.conj() == F.element(a.trace(), Rat(0)));
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == F.one());
                CHECK(a.pow(3) * a.pow(-2) == a);
            }
            // Sign vector is multiplicative and matches the norm's sign.
            if (!a.is_zero() && !b.is_zero()) {
                auto sa = a.sign_vector(), sb = b.sign_vector(),
                     sp = (a * b).sign_vector();
                CHECK(sp[0] == sa[0] * sb[0]);
                CHECK(sp[1] == sa[1] * sb[1]);
                CHECK(sgn(a.norm()) == sa[0] * sa[1]);
            }
        }
    }
}

TEST_CASE("exact sign of a + b*sqrt(D)") {
    // sqrt(2) is between 1.414 and 1.4143.
    CHECK(sign_of_quadratic(make_rat(-14142, 10000), Rat(1), 2) > 0);
    CHECK(sign_of_quadratic(make_rat(-14143, 10000), Rat(1), 2) < 0);
    CHECK(sign_of_quadratic(Rat(3), Rat(-2), 2) > 0);
    CHECK(sign_of_quadratic(Rat(0), Rat(-1), 5) < 0);
    CHECK(sign_of_quadratic(Rat(-7), Rat(0), 5) < 0);
    RealQuadraticField F(5);
    // omega = (1+sqrt 5)/2 is positive at sigma_1, negative at sigma_2.
    CHECK(F.omega().sign_vector() == std::array<int, 2>{1, -1});
    CHECK(F.omega().is_totally_positive() == false);
    CHECK((F.omega() * F.omega().conj()).sign_at(0) < 0);  // norm -1
    CHECK(F.element(2, 0).is_totally_positive());
}

TEST_CASE("printing is deterministic") {
    RealQuadraticField F(5);
    CHECK(F.element(make_rat(3, 2), Rat(5)).to_string() == "3/2+5*w");
    CHECK(F.element(0, -1).to_string() == "-w");
    CHECK(F.element(Rat(0), Rat(1)).to_string() == "w");
    CHECK(F.element(-2, 3).to_string() == "-2+3*w");
    CHECK(F.zero().to_string() == "0");
}
