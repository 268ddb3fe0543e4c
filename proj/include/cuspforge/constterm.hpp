#pragma once

// Constant-term vectors at the admissible p-unramified cusps of a level n,
// with exact cyclotomic coefficients:
//
//  - the coefficient ring R = image of O[G] -> prod_chi O, where G is the
//    narrow ray class group mod n and chi runs over the characters whose
//    parity matches the weight, represented by its character components
//    with an exact membership solver;
//  - the twisted diamond action on constant-term vectors, entries stored
//    as ring scalars against the canonical positive generator of the
//    norm module of each cusp;
//  - isotypic projection, the character-valued vector of normalized
//    constant terms supported on the unramified cusps, the all-ones
//    vector, and the group-ring lifting target built from per-character
//    vectors with divisible entries;
//  - truncated q-expansion index sets: representatives of the orbits of
//    the totally positive dual-module elements under the cusp's unit
//    group, up to a trace bound.

#include <map>
#include <memory>

#include "cuspforge/cuspenum.hpp"
#include "cuspforge/hecke.hpp"

namespace cuspforge {

// An element of the product ring prod_chi O over the parity-matching
// characters chi; scalars embed diagonally. Multiplication is
// componentwise.
struct RElem {
    std::vector<CycQ> comp;

    static RElem scalar(const CycQ& c, std::size_t width) {
        return RElem{std::vector<CycQ>(width, c)};
    }
    static RElem zero(std::size_t width) {
        return scalar(CycQ(Rat(0)), width);
    }

    RElem operator+(const RElem& o) const;
    RElem operator-(const RElem& o) const;
    RElem operator*(const RElem& o) const;  // componentwise
    RElem operator*(const CycQ& c) const;
    RElem operator*(const Rat& r) const;
    bool operator==(const RElem& o) const { return comp == o.comp; }
    bool operator!=(const RElem& o) const { return !(*this == o); }

    bool is_zero() const;
    // All components equal (the diagonal / scalar-valued case).
    bool is_scalar() const;
    const CycQ& value() const;  // requires is_scalar()

    std::string to_string() const;
};

// The permutation induced on a cusp list by tensoring with an ideal class,
// together with the sign picked up by each entry transport.
struct DiamondStep {
    std::vector<std::size_t> perm;  // perm[i] = j with [C_j] = [C_i (x) N^{-1}]
    std::vector<int> sign;          // transport sign (already raised to k)
};

// The indexing data shared by the constant-term vectors of a fixed
// (level, prime, weight): the list of admissible p-unramified cusp
// representatives, the narrow ray class group, and the parity-matching
// characters.
struct CuspBasis {
    const RealQuadraticField* F = nullptr;
    FractionalIdeal n;
    Int p;      // 0 = no residue-characteristic restriction on the cusps
    long k = 0;
    bool mod2 = false;  // coefficients taken modulo 2 (all signs vanish)
    std::shared_ptr<RayClassGroup> G;   // narrow, modulus n
    std::vector<GroupCharacter> chars;  // characters of parity (-1)^k
    std::vector<Cusp> cusps;            // admissible p-unramified reps

    std::size_t width() const {
        return chars.empty() ? 1 : chars.size();
    }
    const RealQuadraticField& field() const { return *F; }

    // The tensoring permutation of the class with the given index,
    // computed once and cached.
    const DiamondStep& step(std::size_t class_index) const;

  private:
    mutable std::map<std::size_t, DiamondStep> step_cache_;
};

using CuspBasisPtr = std::shared_ptr<const CuspBasis>;

CuspBasisPtr make_cusp_basis(const RealQuadraticField& F,
                             const FractionalIdeal& n, const Int& p, long k,
                             bool mod2 = false);

// A vector of constant terms indexed by the basis cusps. Each entry is the
// coefficient of the canonical positive generator of the (-k)-th power of
// the norm module of the cusp's intersection ideal.
struct ConstantTermVector {
    CuspBasisPtr basis;
    std::vector<RElem> entries;

    bool operator==(const ConstantTermVector& o) const {
        return basis == o.basis && entries == o.entries;
    }
    bool operator!=(const ConstantTermVector& o) const { return !(*this == o); }

    ConstantTermVector operator+(const ConstantTermVector& o) const;
    ConstantTermVector operator-(const ConstantTermVector& o) const;
};

ConstantTermVector zero_vector(CuspBasisPtr basis);

// The image R of the integral group ring of G inside the product of one
// integer-ring copy per parity-matching character, with membership decided
// p-locally by an exact linear solve over the cyclotomic power basis.
class GroupRingImage {
  public:
    explicit GroupRingImage(CuspBasisPtr basis);

    const std::vector<GroupCharacter>& chars() const { return basis_->chars; }
    const RayClassGroup& group() const { return *basis_->G; }

    // The canonical character: the vector of character values of a class.
    RElem canonical_value(std::size_t class_index) const;
    RElem canonical_value(const FractionalIdeal& N) const;

    // The image of the sum of chi(g)^{-1} [g]: component #G at chi, 0
    // elsewhere.
    RElem scaled_idempotent(std::size_t chi_index) const;

    // The image of an integral group-ring element with the given
    // coefficients (indexed by the group's element table).
    RElem image_of(const std::vector<CycQ>& coeffs) const;

    // Membership: x is the image of some group-ring element with
    // coefficients whose denominators avoid p (p = 0 demands integrality).
    bool contains(const RElem& x) const;

  private:
    CuspBasisPtr basis_;
    mutable ZMatrix image_hnf_;  // row lattice of the group-ring image
    mutable bool hnf_ready_ = false;

    void ensure_hnf() const;
};

// The diamond action: entry at [C] comes from [C (x) N^{-1}], transported
// to the stored representative with its sign twist. N must be integral and
// coprime to p*n.
ConstantTermVector diamond_act_const(const FractionalIdeal& N,
                                     const ConstantTermVector& v);

ConstantTermVector scale_vector(const ConstantTermVector& v, const RElem& c);

// The chi-isotypic projector: the class-group average of chi^{-1}-twisted
// translates, divided by the group order when that division is p-integral
// (reported through *exact), else left at the group-order scale. Throws
// parity_mismatch if chi is not one of the basis characters.
ConstantTermVector isotypic_project(const ConstantTermVector& v,
                                    const GroupCharacter& chi,
                                    bool* exact = nullptr);

// The diagonal vector of the chi-components of an R-valued vector.
ConstantTermVector specialize(const ConstantTermVector& v,
                              std::size_t chi_index);

// The expected rank of the chi-isotypic subspace: one per class-group
// orbit of basis cusps on which chi agrees with the k-th power of the
// stabilizer sign character.
std::size_t isotypic_rank(CuspBasisPtr basis, const GroupCharacter& chi);

// The character-valued vector with entry the canonical-character value of
// the inverse class of the cusp's intersection ideal on the unramified
// cusps, and zero on the ramified ones. Both defining consistency checks
// (independence of the presentation, and exact isotypy for the canonical
// character) are re-run as assertions.
ConstantTermVector build_B(CuspBasisPtr basis);

// The entry of v at the cusp presented by a matrix A in GL_2^+(F) applied
// to the standard cusp of the component t_lambda, in that cusp's own
// canonical normalization.
RElem normalized_entry(const ConstantTermVector& v, const Mat2& A,
                       const FractionalIdeal& t_lambda);

// The intersection ideal of the cusp presented by (A, t_lambda):
// det(A) * (a*O + c*(t_lambda*d)^{-1})^{-1} for A = [[a,b],[c,d]].
FractionalIdeal presented_intersection_ideal(const Mat2& A,
                                             const FractionalIdeal& t_lambda);

// The all-ones vector over the full cusp list: defined over the integers
// for even k, and with mod-2 coefficients for odd k.
ConstantTermVector ones_vector(const RealQuadraticField& F,
                               const FractionalIdeal& n, long k);

// The group-ring-valued lifting target assembled from one vector per
// character, each with entries divisible by p^m: its chi-component is the
// exact quotient (#G / p^m) times the chi-input. The quotient and its
// p-valuation are reported alongside.
struct LiftTarget {
    ConstantTermVector target;
    Rat quotient;              // #G / p^m
    long quotient_valuation;   // ord_p(#G) - m  (<= 0)
};

LiftTarget lift_target(const std::vector<ConstantTermVector>& per_char,
                       long m);

// ---- truncated q-expansion index sets -----------------------------------

// A generator of the totally positive units modulo torsion.
FieldElement totally_positive_unit(const RealQuadraticField& F);

// Canonical representative of the orbit of x under powers of the unit mu:
// the orbit member of minimal trace (ties broken by the rational part).
FieldElement qindex_orbit_rep(const FieldElement& mu, const FieldElement& x);

// Representatives of the unit orbits of the totally positive dual-module
// elements of C with trace at most T, preceded by 0.
std::vector<FieldElement> qindex_representatives(const CuspLabel& C,
                                                 const Rat& T);

// The unit by which a class stabilizing [C] acts on the q-expansion
// indices of C (the dual module), extracted from an equivalence witness.
FieldElement stabilizer_qindex_unit(const CuspLabel& C,
                                    const FractionalIdeal& N);

// A truncated q-expansion: coefficients indexed by the orbit
// representatives (constant on orbits by construction).
struct TruncatedQExpansion {
    CuspLabel C;
    Rat trace_bound;
    std::vector<FieldElement> indices;  // canonical orbit reps; [0] = 0
    std::vector<CycQ> coefficients;     // parallel to indices
};

TruncatedQExpansion truncated_qexpansion(const CuspLabel& C, const Rat& T);

// p-adic valuation of a nonzero integer.
long int_valuation(const Int& n, const Int& p);

}  // namespace cuspforge
