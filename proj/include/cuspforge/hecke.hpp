#pragma once

// Admissible weights and the finite-part characters compatible with a
// given parallel weight k: the characters chi of the narrow ray class
// group with chi((alpha)) = sgn(N(alpha))^k for every alpha = 1 (mod n).
// The condition only constrains chi on the kernel of the narrow-to-wide
// projection, where it is checked with explicit principal witnesses.

#include "cuspforge/rayclass.hpp"

namespace cuspforge {

// True iff N(u)^k = 1 for every unit u = 1 (mod n).
bool is_admissible_weight(const RealQuadraticField& F, const FractionalIdeal& n,
                          long k);

// A narrow class that becomes trivial in the wide ray class group,
// together with a principal witness: the class is (alpha) with
// alpha = 1 (mod n) multiplicatively.
struct KernelWitness {
    std::size_t class_index;  // index into the narrow group's table
    FieldElement alpha;
    int norm_sign;  // sgn(N(alpha))
};

struct CompatibleCharacters {
    bool admissible = false;
    std::vector<GroupCharacter> chars;     // empty iff k is inadmissible
    std::vector<KernelWitness> witnesses;  // one per kernel element
};

// The characters of the narrow ray class group G compatible with weight k.
CompatibleCharacters compatible_characters(const RayClassGroup& G, long k);

}  // namespace cuspforge
