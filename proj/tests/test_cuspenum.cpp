#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspforge/cuspenum.hpp"

using namespace cuspforge;

namespace {

FractionalIdeal ZI(const RealQuadraticField& F, long n) {
    return FractionalIdeal::principal(F.element(n, 0));
}

}  // namespace

TEST_CASE("narrow class multipliers") {
    {
        RealQuadraticField F(5);
        RayClassGroup Clp(F, ZI(F, 1), true);
        auto m = narrow_class_multipliers(Clp, ZI(F, 1));
        REQUIRE(m.size() == 1);
        CHECK(m[0].is_ring_of_integers());
    }
    {
        RealQuadraticField F(3);
        RayClassGroup Clp(F, ZI(F, 1), true);
        auto m = narrow_class_multipliers(Clp, ZI(F, 1));
        REQUIRE(m.size() == 2);
        CHECK(m[0].is_ring_of_integers());
        CHECK(m[1].norm() == 2);  // the ramified prime above 2 is narrow-nontrivial
        CHECK(Clp.class_index(m[1]) == 1);
        // Demanding coprimality to 2 forces a larger representative.
        auto m2 = narrow_class_multipliers(Clp, ZI(F, 2));
        CHECK(m2[1].norm() > 2);
        CHECK(Clp.class_index(m2[1]) == 1);
    }
}

TEST_CASE("unit image index in the residue ring") {
    RealQuadraticField F5(5), F3(3), F2(2);
    CHECK(unit_image_index(F5, ZI(F5, 2)) == 1);
    CHECK(unit_image_index(F3, ZI(F3, 5)) == 4);
    CHECK(unit_image_index(F2, ZI(F2, 3)) == 1);
}

TEST_CASE("level-one cusp counts by both strategies") {
    struct Case {
        long D;
        std::size_t count;
    };
    for (Case c : {Case{2, 1}, Case{3, 2}, Case{5, 1}, Case{13, 1}}) {
        CAPTURE(c.D);
        RealQuadraticField F(c.D);
        FractionalIdeal one = ZI(F, 1);
        auto orbit = enumerate_unramified_cusps(F, one);
        CHECK(orbit.size() == c.count);
        auto lines = enumerate_all_cusps(F, one);
        CHECK(lines.size() == c.count);
        for (const Cusp& x : lines) CHECK(x.unramified);
        // Components are distinct narrow classes.
        if (c.count == 2) CHECK(lines[0].component != lines[1].component);
    }
}

TEST_CASE("unramified cusps at higher level follow the fiber count") {
    {
        RealQuadraticField F(5);
        auto cusps = enumerate_unramified_cusps(F, ZI(F, 2));
        CHECK(cusps.size() == 1);  // unit image index is 1
    }
    {
        RealQuadraticField F(3);
        auto cusps = enumerate_unramified_cusps(F, ZI(F, 5));
        CHECK(cusps.size() == 8);  // 2 level-one cusps x index 4
        for (const Cusp& c : cusps) CHECK(is_unramified(c.label));
    }
}

TEST_CASE("full enumeration separates ramified cusps") {
    RealQuadraticField F(5);
    FractionalIdeal n = ZI(F, 2);
    auto all = enumerate_all_cusps(F, n);
    std::size_t unram = 0;
    for (const Cusp& c : all) unram += c.unramified ? 1 : 0;
    CHECK(unram == 1);
    CHECK(all.size() > unram);  // the ramified direction exists
    // p-unramified filtering: P = n collapses to the unramified set, P = 1
    // keeps everything.
    CHECK(enumerate_p_unramified_cusps(F, n, 2).size() == unram);
    CHECK(enumerate_p_unramified_cusps(F, n, 3).size() == all.size());
}

TEST_CASE("p-unramified cusps for a split level") {
    RealQuadraticField F(5);
    FractionalIdeal n = ZI(F, 6);
    auto all = enumerate_all_cusps(F, n);
    auto unram = enumerate_unramified_cusps(F, n);
    auto p2 = enumerate_p_unramified_cusps(F, n, 2);
    CHECK(unram.size() <= p2.size());
    CHECK(p2.size() <= all.size());
    CHECK(p2.size() < all.size());
    for (const Cusp& c : p2) {
        CHECK(is_p_unramified(c.label, 2));
        CHECK(label_is_valid(c.label));
    }
    std::size_t direct = 0;
    for (const Cusp& c : all) direct += is_p_unramified(c.label, 2) ? 1 : 0;
    CHECK(direct == p2.size());
    // The diamond action preserves p-unramifiedness.
    RayClassGroup G(F, n, true);
    const CuspLabel& C = p2[0].label;
    for (std::size_t i = 0; i < G.size(); ++i) {
        CuspLabel D = diamond_act(G.representative(i), C);
        CHECK(is_p_unramified(D, 2));
    }
}

TEST_CASE("stabilizers and their characters") {
    {
        // Trivial group: trivial stabilizer.
        RealQuadraticField F(5);
        RayClassGroup G(F, ZI(F, 1), true);
        REQUIRE(G.order() == 1);
        CuspLabel C = standard_cusp(F, ZI(F, 1),
                                    FractionalIdeal::ring_of_integers(F));
        auto S = stabilizer(C, G);
        REQUIRE(S.elements.size() == 1);
        CHECK(S.elements[0].sgn == 1);
        REQUIRE(S.elements[0].psi.has_value());
        CHECK(*S.elements[0].psi == 0);
    }
    {
        // Q(sqrt 3), level one: the narrow group has order 2 and the wide
        // group is trivial, so the full group stabilizes the standard cusp
        // and the sign character is faithful.
        RealQuadraticField F(3);
        RayClassGroup G(F, ZI(F, 1), true);
        REQUIRE(G.order() == 2);
        CuspLabel C = standard_cusp(F, ZI(F, 1),
                                    FractionalIdeal::ring_of_integers(F));
        auto S = stabilizer(C, G);
        REQUIRE(S.elements.size() == 2);
        int prod = S.elements[0].sgn * S.elements[1].sgn;
        CHECK(prod == -1);
        for (const auto& e : S.elements) {
            auto beta = principal_generator(G.representative(e.index));
            REQUIRE(beta.has_value());
            // sgn = -1 exactly when the witness generator has mixed signs
            // that no unit can repair.
            bool mixed = true;
            const FieldElement& eps = F.fundamental_unit();
            for (int s : {1, -1})
                for (int j : {0, 1}) {
                    FieldElement u = (s == 1 ? F.one() : -F.one()) * eps.pow(j);
                    if ((u * *beta).is_totally_positive()) mixed = false;
                }
            CHECK(e.sgn == (mixed ? -1 : 1));
        }
    }
    {
        // Orbit-stabilizer consistency at a nontrivial level.
        RealQuadraticField F(3);
        FractionalIdeal n = ZI(F, 5);
        RayClassGroup G(F, n, true);
        CuspLabel C = standard_cusp(F, n, FractionalIdeal::ring_of_integers(F));
        auto S = stabilizer(C, G);
        // Orbit size via dedup of the translates.
        std::vector<CuspLabel> orbit;
        for (std::size_t i = 0; i < G.size(); ++i) {
            CuspLabel D = rescale_label(diamond_act(G.representative(i), C));
            bool fresh = true;
            for (const CuspLabel& R : orbit)
                if (cusp_equiv(R, D)) {
                    fresh = false;
                    break;
                }
            if (fresh) orbit.push_back(D);
        }
        CHECK(orbit.size() * S.elements.size() == G.size());
        // psi is defined on unramified cusps.
        for (const auto& e : S.elements) CHECK(e.psi.has_value());
    }
}
