#pragma once

// Cusp combinatorics at level Gamma_1(n): component labels (H, gamma, pos),
// cusp labels (alpha, L), the exact equivalence test with explicit
// witnesses, the derived module data of a cusp, and the diamond action
// C -> C (x) N by ideals coprime to the level.
//
// Equivalence is decided structurally: an isomorphism of labels that
// respects the line is determined by a triple (u, v, m) -- u scales the
// line component, v the transverse component, m is a shear -- and the
// lattice/gamma conditions are affine in m, so for each (u, v) in a
// provably complete finite sweep the shear is found by an affine-lattice
// intersection.

#include "cuspforge/lattice.hpp"
#include "cuspforge/rayclass.hpp"

namespace cuspforge {

struct ComponentLabel {
    Lattice2 H;
    Vec2 gamma1;             // a lift of gamma(1); its class mod n*H matters
    std::array<int, 2> pos;  // positivity component of det(H) (x) R
};

struct CuspLabel {
    FractionalIdeal n;  // the level
    ComponentLabel alpha;
    Line L;

    const RealQuadraticField& field() const { return alpha.H.field(); }
};

// The derived module data of a cusp label.
struct CuspData {
    FractionalIdeal a;      // H ∩ L
    FractionalIdeal b;      // H / (H ∩ L)
    FieldElement beta;      // image of gamma1 in b (may be 0)
    FractionalIdeal Mstar;  // unipotent part of the label stabilizer, in b^{-1}a
    FractionalIdeal M;      // Hom(Mstar, Z) = (Mstar)^{-1} d^{-1}
    long Uc_exponent;       // U_C = <eps_+^Uc_exponent> inside U^+
    int eps_order;          // order of the norm character on the stabilizer
};

CuspData cusp_data(const CuspLabel& C);

// An explicit isomorphism C1 -> C2: line component scaled by u, transverse
// component by v, with shear m along the line.
struct CuspWitness {
    FieldElement u, v, m;
};

std::optional<CuspWitness> cusp_equiv(const CuspLabel& C1, const CuspLabel& C2);

// The standard label (t*different ⊕ O, gamma = second inclusion, +) with
// the line through (0, 1).
CuspLabel standard_cusp(const RealQuadraticField& F, const FractionalIdeal& n,
                        const FractionalIdeal& t_lambda);

// C (x) N: module and line scaled by N, gamma twisted by a generator of
// N mod n*N. Requires gcd(N, n) = 1.
CuspLabel diamond_act(const FractionalIdeal& N, const CuspLabel& C);

// gamma1 lies in H and generates an injective map O/n -> H/nH.
bool label_is_valid(const CuspLabel& C);

// gamma's image coincides with (H∩L)/n(H∩L), i.e. the cusp is "at
// infinity" for its component.
bool is_unramified(const CuspLabel& C);
// Unramified after reducing the level to the p-part of n.
bool is_p_unramified(const CuspLabel& C, const Int& p);
// eps_C^k = 1.
bool is_admissible(const CuspLabel& C, long k);

// All label automorphisms C -> C realized in the complete sweep, reported
// as (exponent of u v^{-1} in eps_+, sign of N(v)).
struct CuspAutomorphisms {
    std::vector<std::pair<long, int>> realized;  // from the sweep window
    long u_period, v_period;                     // sweep periods used
};
CuspAutomorphisms cusp_automorphisms(const CuspLabel& C);

// The p-part of an integral ideal.
FractionalIdeal p_part(const FractionalIdeal& n, const Int& p);

// Writes a unit as sign * eps^d and returns (sign, d).
std::pair<int, long> unit_log(const RealQuadraticField& F, FieldElement x);

// Small totally-positive-scaling canonicalization: an equivalent label
// with integral primitive H.
CuspLabel rescale_label(const CuspLabel& C);

}  // namespace cuspforge
