#pragma once

// The residue ring O_F/n for an integral ideal n, its unit group, and the
// unit subgroups of O_F^* cut out by congruence and positivity conditions:
// U^+ (totally positive units), U_{1,n} (units congruent to 1 mod n) and
// U^+_{1,n} (both).

#include <memory>

#include "cuspforge/abelian.hpp"
#include "cuspforge/ideal.hpp"

namespace cuspforge {

// u = 1 (mod n) for an integral modulus and integral u.
bool congruent_one(const FieldElement& u, const FractionalIdeal& n);

// Multiplicative congruence x = 1 (mod n) for x coprime to n but not
// necessarily integral: v_q(x - 1) >= v_q(n) at every prime q | n.
bool mult_congruent_one(const FieldElement& x,
                        const std::vector<std::pair<PrimeIdeal, long>>& n_factors);

class ResidueRing {
  public:
    using Elt = std::pair<Int, Int>;  // canonical coordinates w.r.t. {1, w}

    ResidueRing(const RealQuadraticField& F, const FractionalIdeal& n);

    const RealQuadraticField& field() const { return *F_; }
    const FractionalIdeal& modulus() const { return n_; }

    Elt reduce(const FieldElement& x) const;  // x must be integral
    Elt one() const { return reduce(F_->one()); }
    Elt mul(const Elt& a, const Elt& b) const;
    Elt pow(const Elt& a, long e) const;  // e >= 0
    bool is_unit(const Elt& a) const;

    Int ring_size() const;  // = norm of n
    Int unit_count() const; // Euler-type product over the primes dividing n

    // The unit group (O/n)^*, enumerated; lazily built and cached.
    const AbelianGroupBuilder<Elt>& unit_group() const;

  private:
    const RealQuadraticField* F_;
    FractionalIdeal n_;
    mutable std::shared_ptr<AbelianGroupBuilder<Elt>> units_;
};

struct UnitGroupData {
    FieldElement fund_unit;                  // epsilon, > 1 at sigma_1
    std::array<int, 2> sign_eps;
    FieldElement totally_positive_generator;  // eps or eps^2
    long totally_positive_exponent;           // 1 or 2

    // U_{1,n} modulo torsion: generated by u1 = u1_sign * eps^u1_exponent
    // (u1_exponent > 0 minimal), plus -1 when -1 = 1 (mod n).
    FieldElement u1_generator;
    long u1_exponent;
    int u1_sign;
    bool u1_contains_minus_one;

    // U^+_{1,n} = <u1pos>, u1pos = (+-) eps^u1pos_exponent.
    FieldElement u1pos_generator;
    long u1pos_exponent;

    long eps_order_mod_n;  // order of eps in (O/n)^*

    // Sign vectors realized by elements of U_{1,n}.
    std::vector<std::array<int, 2>> u1_signs;
};

UnitGroupData unit_group_data(const RealQuadraticField& F,
                              const FractionalIdeal& n);

}  // namespace cuspforge
