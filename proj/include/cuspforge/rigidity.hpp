#pragma once

// Computable predicates for elliptic-point control on the moduli space:
// rigid-level criteria (when the level structure kills all extra
// automorphisms), exact bounds on inertia-group orders, and the
// invertibility condition a coefficient ring must satisfy ("good" primes).

#include "cuspforge/units.hpp"

namespace cuspforge {

// The positive generator of n ∩ Z for an integral ideal n.
Int rational_content(const FractionalIdeal& n);

// Whether the totally positive fundamental unit stays nonzero in
// (O/n)^* ⊗ Z/l, i.e. whether U^+ ⊗ Z/l -> (O/n)^* ⊗ Z/l is injective.
bool unit_injective_mod(const RealQuadraticField& F, const FractionalIdeal& n,
                        const Int& l);

// Full-level rigidity: n ∩ Z is divisible by a prime larger than twice the
// field degree (> 4 here), and some odd prime l makes the totally positive
// units inject into (O/n)^* ⊗ Z/l.
bool is_rigid_full_level(const RealQuadraticField& F, const FractionalIdeal& n);

// Gamma_1-level rigidity (sufficient conditions): some prime dividing n is
// inert in every CM quadratic extension of F containing extra roots of
// unity, and the same unit-injectivity condition holds.
bool is_rigid_gamma1(const RealQuadraticField& F, const FractionalIdeal& n);

// #GL_2(O/n), multiplicative over the prime-power factorization: a prime
// power P^e of residue norm q contributes q^{4(e-1)}(q^2-1)(q^2-q).
Int gl2_order(const RealQuadraticField& F, const FractionalIdeal& n);

// #image(O_F^* -> (O/n)^*), the subgroup generated by -1 and the
// fundamental unit.
Int unit_image_order(const RealQuadraticField& F, const FractionalIdeal& n);

// |U^+_{1,n}/(U_{1,n})^2| * |GL_2(O/n)| / |image of O_F^*|: every inertia
// group of the level-one moduli space over Z_(p) has order dividing this,
// for any auxiliary n coprime to p with n not dividing (2). Errors: n
// divides (2), or gcd(n, p) != 1 (p = 0 skips the coprimality condition).
Int inertia_bound(const RealQuadraticField& F, const FractionalIdeal& n,
                  const Int& p);

// Whether p is invertible wherever the lifting theory needs it: p does not
// divide 2 N(n), and some auxiliary prime ideal of norm <= sweep_bound
// certifies an inertia bound coprime to p. The verdict is conservative:
// "false" from an exhausted sweep does not prove p is bad. When
// `conservative` is non-null it is set to true exactly in that case.
bool is_good_prime(const RealQuadraticField& F, const FractionalIdeal& n,
                   const Int& p, bool* conservative = nullptr,
                   long sweep_bound = 100);

struct LevelReport {
    FractionalIdeal n;
    bool rigid_full_level = false;
    bool rigid_gamma1 = false;
    Int inertia_bound;                    // computed at this n (p = 0)
    std::vector<Int> good_primes_excluded;  // primes dividing 2 N(n) or the bound
    bool conservative = false;              // bound from this n only
};

LevelReport level_report(const RealQuadraticField& F, const FractionalIdeal& n);

}  // namespace cuspforge
