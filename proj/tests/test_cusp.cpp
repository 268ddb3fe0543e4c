#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspforge/cusp.hpp"

using namespace cuspforge;

namespace {

FractionalIdeal ZI(const RealQuadraticField& F, long n) {
    return FractionalIdeal::principal(F.element(n, 0));
}

FractionalIdeal OF(const RealQuadraticField& F) {
    return FractionalIdeal::ring_of_integers(F);
}

}  // namespace

TEST_CASE("standard cusp data at level one") {
    for (long D : {2L, 3L, 5L, 13L}) {
        CAPTURE(D);
        RealQuadraticField F(D);
        CuspLabel C = standard_cusp(F, ZI(F, 1), OF(F));
        CHECK(label_is_valid(C));
        CuspData d = cusp_data(C);
        CHECK(d.a == OF(F));
        CHECK(d.b == different(F));
        CHECK(d.beta.is_zero());
        CHECK(d.Mstar == different(F).inverse());
        CHECK(d.M == OF(F));
        // At level one every unit pair with totally positive product acts,
        // so the totally positive units are fully realized...
        CHECK(d.Uc_exponent == 1);
        // ... and the norm character is nontrivial exactly when the
        // fundamental unit has norm -1.
        int expect = F.fundamental_unit().norm() == -1 ? 2 : 1;
        CHECK(d.eps_order == expect);
        CHECK(is_admissible(C, 2));
        CHECK(is_admissible(C, 3) == (expect == 1));
        CHECK(is_unramified(C));
    }
}

TEST_CASE("standard cusp with a nontrivial class multiplier") {
    RealQuadraticField F(3);
    FractionalIdeal t = FractionalIdeal::principal(F.omega());  // (sqrt 3)
    CuspLabel C = standard_cusp(F, ZI(F, 1), t);
    CHECK(label_is_valid(C));
    CuspData d = cusp_data(C);
    CHECK(d.a == OF(F));
    CHECK(d.b == t * different(F));
    CHECK(d.Mstar == (t * different(F)).inverse());
    CHECK(d.M == t);
}

TEST_CASE("equivalence is reflexive, symmetric and respects classes") {
    RealQuadraticField F(3);
    FractionalIdeal one = ZI(F, 1);
    CuspLabel C0 = standard_cusp(F, one, OF(F));
    CuspLabel C1 = standard_cusp(F, one, FractionalIdeal::principal(F.omega()));
    CHECK(cusp_equiv(C0, C0).has_value());
    CHECK(cusp_equiv(C1, C1).has_value());
    // The two narrow ideal classes give inequivalent components.
    CHECK(!cusp_equiv(C0, C1).has_value());
    CHECK(!cusp_equiv(C1, C0).has_value());
    // A totally positive principal multiplier stays in the class.
    CuspLabel C2 = standard_cusp(F, one, ZI(F, 2));
    CHECK(cusp_equiv(C0, C2).has_value());
    CHECK(cusp_equiv(C2, C0).has_value());
}

TEST_CASE("the two standard lines give the same level-one cusp") {
    for (long D : {2L, 3L, 5L, 13L}) {
        CAPTURE(D);
        RealQuadraticField F(D);
        CuspLabel Cinf = standard_cusp(F, ZI(F, 1), OF(F));
        CuspLabel Czero{Cinf.n, Cinf.alpha, Line::zero_line(F)};
        CHECK(label_is_valid(Czero));
        auto w = cusp_equiv(Cinf, Czero);
        REQUIRE(w.has_value());
        // The witness swaps the intersection and projection ideals.
        CHECK((FractionalIdeal::principal(w->u) * OF(F)) ==
              FractionalIdeal::principal(w->u));
        CHECK((w->u * w->v).is_totally_positive());
        CHECK(cusp_equiv(Czero, Cinf).has_value());
    }
}

TEST_CASE("level structure separates cusps over a ramified-free modulus") {
    // D = 3, n = (5): the units of O/5 modulo the image of the global
    // units and 1 + n fall into 4 classes, so the standard component
    // carries 4 inequivalent unramified cusps.
    RealQuadraticField F(3);
    FractionalIdeal n = ZI(F, 5);
    std::vector<CuspLabel> reps;
    for (long a = 0; a < 5 && reps.size() < 6; ++a) {
        for (long b = 0; b < 5; ++b) {
            FieldElement g = F.element(a, b);
            CuspLabel C{n,
                        {Lattice2::direct_sum(different(F), OF(F)),
                         {F.zero(), g},
                         {1, 1}},
                        Line::infinity(F)};
            if (!label_is_valid(C)) continue;
            CHECK(is_unramified(C));
            bool fresh = true;
            for (const CuspLabel& R : reps)
                if (cusp_equiv(R, C)) {
                    fresh = false;
                    break;
                }
            if (fresh) reps.push_back(C);
        }
    }
    CHECK(reps.size() == 4);
}

TEST_CASE("ramification predicates") {
    RealQuadraticField F(5);
    FractionalIdeal n = ZI(F, 2);
    Lattice2 H = Lattice2::direct_sum(different(F), OF(F));
    // gamma on the line: unramified.
    CuspLabel C{n, {H, {F.zero(), F.one()}, {1, 1}}, Line::infinity(F)};
    CHECK(label_is_valid(C));
    CHECK(is_unramified(C));
    CHECK(is_p_unramified(C, 2));
    // Same component but viewed along the other line: gamma projects onto
    // a unit, which is not in n * b.
    CuspLabel R{n, {H, {F.zero(), F.one()}, {1, 1}}, Line::zero_line(F)};
    CHECK(label_is_valid(R));
    CHECK(!is_unramified(R));
    CHECK(!is_p_unramified(R, 2));
    CHECK(is_p_unramified(R, 3));  // the 3-part of n is trivial
}

TEST_CASE("p-parts of an ideal") {
    RealQuadraticField F(5);
    FractionalIdeal n = ZI(F, 6);
    CHECK(p_part(n, 2) == ZI(F, 2));
    CHECK(p_part(n, 3) == ZI(F, 3));
    CHECK(p_part(n, 5) == OF(F));
    CHECK(p_part(ZI(F, 12), 2) == ZI(F, 4));
}

TEST_CASE("diamond action laws") {
    for (long D : {3L, 5L}) {
        CAPTURE(D);
        RealQuadraticField F(D);
        FractionalIdeal n = ZI(F, D == 3 ? 5 : 2);
        CuspLabel C = standard_cusp(F, n, OF(F));
        // Identity.
        CHECK(cusp_equiv(diamond_act(OF(F), C), C).has_value());
        // Compatibility with ideal products.
        std::vector<FractionalIdeal> Ns;
        for (Int p : {Int(7), Int(11), Int(13)})
            for (const PrimeIdeal& P : primes_above(F, p)) Ns.push_back(P.ideal);
        for (std::size_t i = 0; i < Ns.size() && i < 3; ++i)
            for (std::size_t j = 0; j < Ns.size() && j < 3; ++j) {
                CuspLabel lhs = diamond_act(Ns[j], diamond_act(Ns[i], C));
                CuspLabel rhs = diamond_act(Ns[i] * Ns[j], C);
                CHECK(label_is_valid(lhs));
                CHECK(cusp_equiv(lhs, rhs).has_value());
            }
        // A totally positive principal ideal with generator 1 mod n acts
        // trivially.
        FieldElement g = F.one() + F.element(D == 3 ? 5 : 2, 0) * F.omega();
        if (!g.is_totally_positive()) g = -g;
        if (g.is_totally_positive() &&
            (FractionalIdeal::principal(g) + n) == OF(F)) {
            CuspLabel T = diamond_act(FractionalIdeal::principal(g), C);
            CHECK(cusp_equiv(T, C).has_value());
        }
        // Non-coprime ideals are rejected.
        CHECK_THROWS_AS(diamond_act(n, C), invalid_input);
    }
}

TEST_CASE("diamond action scales the split ideals") {
    RealQuadraticField F(5);
    CuspLabel C = standard_cusp(F, ZI(F, 2), OF(F));
    FractionalIdeal N = primes_above(F, 11)[0].ideal;
    CuspLabel CN = diamond_act(N, C);
    CuspData d0 = cusp_data(C), d1 = cusp_data(CN);
    CHECK(d1.a == d0.a * N);
    CHECK(d1.b == d0.b * N);
}

TEST_CASE("rescaling produces an equivalent primitive label") {
    RealQuadraticField F(13);
    CuspLabel C = standard_cusp(F, ZI(F, 3), OF(F));
    CuspLabel S = rescale_label(diamond_act(primes_above(F, 17)[0].ideal, C));
    CHECK(S.alpha.H.den() == 1);
    CHECK(label_is_valid(S));
    CHECK(cusp_equiv(S, diamond_act(primes_above(F, 17)[0].ideal, C)).has_value());
}
