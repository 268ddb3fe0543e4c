#pragma once

// Ray class groups of a real quadratic field: the wide and narrow class
// groups of an integral modulus n, with discrete logarithms and exact
// ray-equivalence testing.
//
// Construction is black-box: classes of small prime ideals coprime to n
// are fed to the abelian-group builder, with equivalence decided by an
// exact principal-generator search plus a unit sweep; generators are added
// in norm order until the group order matches the index-formula count
// h * #(O/n)^* * (narrow ? 4 : 1) / #image(O^*), which is computed
// independently from the residue ring and the unit signs.

#include "cuspforge/units.hpp"

namespace cuspforge {

// A generator of the (wide-)principal ideal a, if one exists; the search
// is a bounded box scan over coordinates, complete by the classical bound
// |sigma_i(alpha)| <= sqrt(N(a) * eps).
std::optional<FieldElement> principal_generator(const FractionalIdeal& a);

class RayClassGroup {
  public:
    RayClassGroup(const RealQuadraticField& F, const FractionalIdeal& n,
                  bool narrow);

    const RealQuadraticField& field() const { return *F_; }
    const FractionalIdeal& modulus() const { return n_; }
    bool narrow() const { return narrow_; }

    const std::vector<Int>& invariants() const { return builder().invariants(); }
    Int order() const { return builder().order(); }
    std::size_t size() const { return builder().size(); }

    // Representative ideal of the i-th class (i = 0 is the trivial class).
    const FractionalIdeal& representative(std::size_t i) const {
        return builder().element(i);
    }
    std::vector<Int> coords(std::size_t i) const { return builder().coords(i); }
    std::size_t index_by_coords(const std::vector<Int>& c) const {
        return builder().element_index_by_coords(c);
    }

    // Class of an ideal coprime to n, in SNF coordinates.
    std::vector<Int> dlog(const FractionalIdeal& a) const;
    // Index of the class of a in the representative table.
    std::size_t class_index(const FractionalIdeal& a) const;

    // Ray equivalence: a = (alpha) b with alpha = 1 (mod n) multiplicative
    // and (narrow) totally positive. Both must be coprime to n.
    bool equivalent(const FractionalIdeal& a, const FractionalIdeal& b) const;
    bool is_coprime(const FractionalIdeal& a) const;

    // The prime ideals used as generators.
    const std::vector<FractionalIdeal>& generators() const { return gens_; }

    std::vector<GroupCharacter> characters() const {
        return all_characters(invariants());
    }

    const UnitGroupData& units() const { return units_; }

  private:
    const RealQuadraticField* F_;
    FractionalIdeal n_;
    bool narrow_;
    std::vector<std::pair<PrimeIdeal, long>> n_factors_;
    UnitGroupData units_;
    std::vector<FractionalIdeal> gens_;
    std::shared_ptr<AbelianGroupBuilder<FractionalIdeal>> builder_;

    const AbelianGroupBuilder<FractionalIdeal>& builder() const { return *builder_; }
    Int target_order() const;
    void build();
};

// The wide class number, via Minkowski-bound prime generation.
Int class_number(const RealQuadraticField& F);

}  // namespace cuspforge
