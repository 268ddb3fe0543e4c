#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspforge/units.hpp"

using namespace cuspforge;

namespace {

FractionalIdeal ZI(const RealQuadraticField& F, long n) {
    return FractionalIdeal::principal(F.element(n, 0));
}

}  // namespace

TEST_CASE("congruences") {
    RealQuadraticField F(5);
    FractionalIdeal n = ZI(F, 3);
    CHECK(congruent_one(F.element(4, 3), n));
    CHECK(!congruent_one(F.element(4, 1), n));
    CHECK(congruent_one(F.element(-2, 0), n));
    // Multiplicative congruence agrees with the additive one on integral
    // coprime elements.
    auto nf = factor_ideal(n);
    CHECK(mult_congruent_one(F.element(4, 3), nf));
    CHECK(!mult_congruent_one(F.element(2, 0), nf));
    // ...and handles non-integral arguments: 4/7 = 1 mod 3 since 7 = 1.
    CHECK(mult_congruent_one(F.element(make_rat(4, 7), Rat(0)), nf));
    CHECK(!mult_congruent_one(F.element(make_rat(5, 7), Rat(0)), nf));
}

TEST_CASE("residue ring sizes and unit counts") {
    RealQuadraticField F(5);
    {
        ResidueRing R(F, ZI(F, 2));  // 2 inert: residue field F_4
        CHECK(R.ring_size() == 4);
        CHECK(R.unit_count() == 3);
        CHECK(R.unit_group().order() == 3);
        CHECK(R.unit_group().invariants() == std::vector<Int>{3});
    }
    {
        ResidueRing R(F, ZI(F, 11));  // 11 splits: (O/11)^* = (Z/11)^* x (Z/11)^*
        CHECK(R.ring_size() == 121);
        CHECK(R.unit_count() == 100);
        CHECK(R.unit_group().order() == 100);
    }
    {
        auto p5 = primes_above(F, 5);  // ramified
        ResidueRing R(F, p5[0].ideal);
        CHECK(R.ring_size() == 5);
        CHECK(R.unit_count() == 4);
        CHECK(R.unit_group().invariants() == std::vector<Int>{4});
    }
    {
        RealQuadraticField F2(2);
        ResidueRing R(F2, ZI(F2, 3));  // 3 inert in Q(sqrt 2): F_9
        CHECK(R.unit_count() == 8);
        CHECK(R.unit_group().invariants() == std::vector<Int>{8});
    }
}

TEST_CASE("residue ring arithmetic is well defined") {
    RealQuadraticField F(13);
    FractionalIdeal n = ZI(F, 6);
    ResidueRing R(F, n);
    FieldElement a = F.element(5, 7), b = F.element(-2, 11);
    // reduce is constant on residue classes.
    CHECK(R.reduce(a) == R.reduce(a + F.element(6, 12)));
    CHECK(R.mul(R.reduce(a), R.reduce(b)) == R.reduce(a * b));
    // The canonical representative lies in the fundamental box.
    auto r = R.reduce(a);
    CHECK(r.first >= 0);
    CHECK(r.second >= 0);
}

TEST_CASE("unit group data") {
    for (long D : {2, 3, 5, 13}) {
        RealQuadraticField F(D);
        for (long m : {1, 2, 3, 5}) {
            FractionalIdeal n = ZI(F, m);
            UnitGroupData u = unit_group_data(F, n);
            CHECK(u.totally_positive_generator.is_totally_positive());
            // U_{1,n} generators are congruent to 1 and are units.
            CHECK(congruent_one(u.u1_generator, n));
            CHECK(abs(u.u1_generator.norm()) == 1);
            CHECK(congruent_one(u.u1pos_generator, n));
            CHECK(u.u1pos_generator.is_totally_positive());
            // U^+_{1,n} is contained in U_{1,n}: the positive generator is
            // a power of the U_{1,n} generator up to allowed torsion.
            CHECK(u.u1pos_exponent % u.u1_exponent == 0);
            // eps really has the claimed order mod n.
            CHECK(congruent_one(u.fund_unit.pow(u.eps_order_mod_n), n));
            for (long j = 1; j < u.eps_order_mod_n; ++j)
                CHECK(!congruent_one(u.fund_unit.pow(j), n));
            // The sign set contains the signs of both generators.
            auto has = [&](std::array<int, 2> s) {
                for (auto t : u.u1_signs)
                    if (t == s) return true;
                return false;
            };
            CHECK(has(u.u1_generator.sign_vector()));
            CHECK(has({1, 1}));
        }
    }
    // Known case: modulus (1) makes U_{1,n} the full unit group.
    RealQuadraticField F(3);
    UnitGroupData u = unit_group_data(F, ZI(F, 1));
    CHECK(u.u1_exponent == 1);
    CHECK(u.u1_contains_minus_one);
    CHECK(u.eps_order_mod_n == 1);
    // 2+sqrt(3) is totally positive.
    CHECK(u.totally_positive_exponent == 1);
    CHECK(u.u1_signs.size() == 2);  // (+,+) and (-,-) only
}
