#include "cuspforge/rigidity.hpp"

#include <algorithm>

namespace cuspforge {
namespace {

FractionalIdeal ring(const RealQuadraticField& F) {
    return FractionalIdeal::ring_of_integers(F);
}

// Quadratic CM extensions F(sqrt(delta)) of F that contain roots of unity
// beyond {+-1}: adjoining i and adjoining a cube root of unity always
// qualify, and over Q(sqrt 5) adjoining a fifth root of unity does too
// (delta = discriminant of the minimal polynomial of zeta_5 over F).
std::vector<FieldElement> cm_discriminants(const RealQuadraticField& F) {
    std::vector<FieldElement> out = {F.element(-1, 0), F.element(-3, 0)};
    if (F.D() == 5) out.push_back(F.element(-2, -1));  // (-5 - sqrt 5)/2
    return out;
}

// The unit-injectivity condition shared by both rigidity predicates:
// existence of an odd prime l with U^+ ⊗ Z/l -> (O/n)^* ⊗ Z/l injective.
bool unit_injective_somewhere(const RealQuadraticField& F,
                              const FractionalIdeal& n) {
    ResidueRing R(F, n);
    const auto& A = R.unit_group();
    if (A.invariants().empty()) return false;
    Int expo = A.invariants().back();  // the exponent of the group
    for (const auto& [l, e] : factor_int(expo)) {
        (void)e;
        if (l == 2) continue;
        if (unit_injective_mod(F, n, l)) return true;
    }
    return false;
}

}  // namespace

Int rational_content(const FractionalIdeal& n) {
    CUSPFORGE_CHECK(n.is_integral());
    const ZMatrix& b = n.basis();
    CUSPFORGE_CHECK(b.rows() == 2 && n.den() == 1);
    // HNF rows (a, b), (0, c): the rational elements are (a c / gcd(b, c)) Z.
    Int a = b(0, 0), off = b(0, 1), c = b(1, 1);
    CUSPFORGE_CHECK(a > 0 && c > 0 && b(1, 0) == 0);
    return divexact(a * c, gcd(off, c));
}

bool unit_injective_mod(const RealQuadraticField& F, const FractionalIdeal& n,
                        const Int& l) {
    ResidueRing R(F, n);
    const auto& A = R.unit_group();
    FieldElement tp = unit_group_data(F, n).totally_positive_generator;
    std::vector<Int> coords = A.dlog(R.reduce(tp));
    const std::vector<Int>& inv = A.invariants();
    for (std::size_t i = 0; i < inv.size(); ++i)
        if (divides(l, inv[i]) && fmod(coords[i], l) != 0) return true;
    return false;
}

bool is_rigid_full_level(const RealQuadraticField& F,
                         const FractionalIdeal& n) {
    CUSPFORGE_CHECK(n.is_integral() && n.norm() != 0);
    bool big_prime = false;
    for (const auto& [q, e] : factor_int(rational_content(n))) {
        (void)e;
        if (q > 4) big_prime = true;  // > 2 [F : Q] with [F : Q] = 2
    }
    return big_prime && unit_injective_somewhere(F, n);
}

bool is_rigid_gamma1(const RealQuadraticField& F, const FractionalIdeal& n) {
    CUSPFORGE_CHECK(n.is_integral() && n.norm() != 0);
    std::vector<FieldElement> deltas = cm_discriminants(F);
    bool inert_prime = false;
    for (const auto& [P, e] : factor_ideal(n)) {
        (void)e;
        Int q = P.norm();
        if (fmod(q, 2) == 0) continue;
        ResidueRing Rp(F, P.ideal);
        ResidueRing::Elt minus_one = Rp.reduce(F.element(-1, 0));
        long half = to_long(divexact(q - 1, 2));
        bool all_inert = true;
        for (const FieldElement& d : deltas) {
            ResidueRing::Elt dm = Rp.reduce(d);
            // Inert means delta is a unit and a non-square in the residue
            // field; Euler's criterion decides the latter exactly.
            if (!Rp.is_unit(dm) || Rp.pow(dm, half) != minus_one) {
                all_inert = false;
                break;
            }
        }
        if (all_inert) inert_prime = true;
    }
    return inert_prime && unit_injective_somewhere(F, n);
}

Int gl2_order(const RealQuadraticField& F, const FractionalIdeal& n) {
    CUSPFORGE_CHECK(n.is_integral() && n.norm() != 0);
    if (n.is_ring_of_integers()) return Int(1);
    (void)F;
    Int total(1);
    for (const auto& [P, e] : factor_ideal(n)) {
        Int q = P.norm();
        Int local = (q * q - 1) * (q * q - q);
        local *= pow_int(q, static_cast<unsigned long>(4 * (e - 1)));
        total *= local;
    }
    return total;
}

Int unit_image_order(const RealQuadraticField& F, const FractionalIdeal& n) {
    ResidueRing R(F, n);
    UnitGroupData U = unit_group_data(F, n);
    long e = U.eps_order_mod_n;
    ResidueRing::Elt minus_one = R.reduce(F.element(-1, 0));
    if (minus_one == R.one()) return Int(e);
    ResidueRing::Elt eps = R.reduce(F.fundamental_unit());
    bool contains_minus = (e % 2 == 0) && R.pow(eps, e / 2) == minus_one;
    return contains_minus ? Int(e) : Int(2 * e);
}

Int inertia_bound(const RealQuadraticField& F, const FractionalIdeal& n,
                  const Int& p) {
    CUSPFORGE_CHECK(n.is_integral() && n.norm() != 0);
    if (n.contains(F.element(2, 0)))
        throw invalid_input("auxiliary level must not divide (2)");
    if (p > 0) {
        FractionalIdeal pr =
            FractionalIdeal::principal(F.element(Rat(p), Rat(0)));
        if ((n + pr) != ring(F))
            throw invalid_input("auxiliary level must be coprime to p");
    }
    UnitGroupData U = unit_group_data(F, n);
    CUSPFORGE_CHECK(!U.u1_contains_minus_one);  // excluded with n | (2)
    bool u1_positive = U.u1_generator.is_totally_positive();
    // Consistency: the totally positive part is generated by u1 itself or
    // by its square.
    CUSPFORGE_CHECK(U.u1pos_exponent ==
                    (u1_positive ? U.u1_exponent : 2 * U.u1_exponent));
    Int factor1 = u1_positive ? 2 : 1;
    Int factor2 = divexact(gl2_order(F, n), unit_image_order(F, n));
    return factor1 * factor2;
}

bool is_good_prime(const RealQuadraticField& F, const FractionalIdeal& n,
                   const Int& p, bool* conservative, long sweep_bound) {
    if (conservative) *conservative = false;
    if (p < 2) return false;
    Int Nn(n.norm().get_num());
    if (divides(p, 2 * Nn)) return false;
    for (long q = 3; q <= sweep_bound; ++q) {
        if (!is_prime(Int(q))) continue;
        for (const PrimeIdeal& P : primes_above(F, Int(q))) {
            if (P.norm() > sweep_bound || P.p == p) continue;
            if (!divides(p, inertia_bound(F, P.ideal, p))) return true;
        }
    }
    if (conservative) *conservative = true;
    return false;
}

LevelReport level_report(const RealQuadraticField& F,
                         const FractionalIdeal& n) {
    LevelReport r;
    r.n = n;
    r.rigid_full_level = is_rigid_full_level(F, n);
    r.rigid_gamma1 = is_rigid_gamma1(F, n);
    r.inertia_bound = inertia_bound(F, n, Int(0));
    r.conservative = true;  // excluded primes certified from this n only
    Int bad = 2 * Int(n.norm().get_num()) * r.inertia_bound;
    for (const auto& [q, e] : factor_int(bad)) {
        (void)e;
        r.good_primes_excluded.push_back(q);
    }
    std::sort(r.good_primes_excluded.begin(), r.good_primes_excluded.end());
    return r;
}

}  // namespace cuspforge
