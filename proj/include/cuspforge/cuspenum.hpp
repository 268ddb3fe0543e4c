#pragma once

// Enumeration of cusps: the unramified cusps as the diamond orbit of the
// standard infinity-cusps (with an independent counting cross-check), the
// full cusp set by bounded-height line search per component, p-unramified
// filtering, and cusp stabilizers with their sign and unit characters.

#include "cuspforge/cusp.hpp"

namespace cuspforge {

struct Cusp {
    CuspLabel label;
    std::size_t component;  // index of the narrow class of det(H)*d^{-1}
    bool unramified;
};

// Integral representatives of the narrow ideal classes, coprime to n: the
// ring of integers for the trivial class, otherwise the smallest-norm
// prime (ties broken by the representation order of primes_above).
std::vector<FractionalIdeal> narrow_class_multipliers(const RayClassGroup& Clplus,
                                                      const FractionalIdeal& n);

// #(O/n)^* / #image(O_F^*), the generic fiber size of the map from cusps
// with level structure to bare cusps.
Int unit_image_index(const RealQuadraticField& F, const FractionalIdeal& n);

// The orbit of the standard infinity-cusps under the narrow ray class
// group mod n, deduplicated; the size is checked against
// #Cusp(1) * unit_image_index(F, n).
std::vector<Cusp> enumerate_unramified_cusps(const RealQuadraticField& F,
                                             const FractionalIdeal& n);

// All cusps, by bounded-height line enumeration on each standard
// component. The height bound grows until two consecutive shells add no
// class; completeness of the unramified part is verified against the
// counting formula.
std::vector<Cusp> enumerate_all_cusps(const RealQuadraticField& F,
                                      const FractionalIdeal& n);

// The cusps whose reduction to the p-part of n is unramified.
std::vector<Cusp> enumerate_p_unramified_cusps(const RealQuadraticField& F,
                                               const FractionalIdeal& n,
                                               const Int& p);

struct StabilizerEntry {
    std::size_t index;        // index into the group's class table
    int sgn;                  // sign character value
    std::optional<long> psi;  // unit character as an exponent mod Uc_exponent
    CuspWitness witness;
};

struct StabilizerData {
    std::vector<StabilizerEntry> elements;
    long Uc_exponent;
};

// Stab_{[C]} inside the narrow ray class group G mod n, by full sweep.
// sgn is the sign class of the (wide-principal) representative ideal; psi
// is the class of v*u^{-1} from the composed witness isomorphism, defined
// here when M* is preserved by the ambient identification (in particular
// for unramified cusps).
StabilizerData stabilizer(const CuspLabel& C, const RayClassGroup& G);

}  // namespace cuspforge
