#pragma once

// Fractional ideals of the maximal order O_F of a real quadratic field.
//
// An ideal is stored as a canonical pair (basis, den): `basis` is the 2x2
// row-style Hermite normal form of a Z-basis in coordinates with respect to
// {1, w}, and `den` is a positive integer denominator chosen minimal. The
// pair is unique, so equality of ideals is equality of representations.

#include <string>
#include <vector>

#include "cuspforge/field.hpp"
#include "cuspforge/zmatrix.hpp"

namespace cuspforge {

class FractionalIdeal {
  public:
    FractionalIdeal() : F_(nullptr), den_(1) {}

    // The span of the given elements as an O_F-module (each generator g is
    // closed up to {g, w*g}). Throws internal_error if the span has rank < 2.
    static FractionalIdeal from_generators(const RealQuadraticField& F,
                                           const std::vector<FieldElement>& gens);
    static FractionalIdeal principal(const FieldElement& g);
    static FractionalIdeal ring_of_integers(const RealQuadraticField& F);
    // Direct construction from a Z-basis already known to be O_F-stable
    // (rows = coordinates, common denominator den). Stability is checked.
    static FractionalIdeal from_z_basis(const RealQuadraticField& F,
                                        const ZMatrix& rows, const Int& den);

    const RealQuadraticField& field() const { return *F_; }
    const ZMatrix& basis() const { return basis_; }
    const Int& den() const { return den_; }
    bool is_valid() const { return F_ != nullptr; }

    // The two Z-basis elements (basis rows divided by den).
    FieldElement basis_element(int i) const;

    FractionalIdeal operator*(const FractionalIdeal& o) const;
    FractionalIdeal operator*(const FieldElement& s) const;  // scaling
    FractionalIdeal operator+(const FractionalIdeal& o) const;  // ideal sum
    FractionalIdeal inverse() const;
    FractionalIdeal intersect(const FractionalIdeal& o) const;
    FractionalIdeal conj() const;  // Galois conjugate ideal
    FractionalIdeal pow(long e) const;

    bool operator==(const FractionalIdeal& o) const {
        return basis_ == o.basis_ && den_ == o.den_;
    }
    bool operator!=(const FractionalIdeal& o) const { return !(*this == o); }

    Rat norm() const;  // index-based norm, multiplicative
    bool contains(const FieldElement& x) const;
    bool contains(const FractionalIdeal& o) const;  // o subset of this
    bool is_integral() const;
    bool is_ring_of_integers() const;

    // Two-generator form: n is a positive rational generator of the
    // Z-module this ∩ Q... paired with a second basis element mu so that
    // (n, mu) generate the ideal over O_F.
    std::pair<Rat, FieldElement> two_generators() const;
    std::string to_string() const;  // "(n, mu)" deterministic

  private:
    const RealQuadraticField* F_;
    ZMatrix basis_;  // 2x2 HNF
    Int den_;        // > 0, minimal

    static FractionalIdeal make(const RealQuadraticField& F, ZMatrix rows,
                                Int den, bool check_stable);
    void check_compatible(const FractionalIdeal& o) const;
};

std::ostream& operator<<(std::ostream& os, const FractionalIdeal& a);

// The different ideal of F, generated by f'(w) = 2w - t.
FractionalIdeal different(const RealQuadraticField& F);

// A prime of O_F above a rational prime.
struct PrimeIdeal {
    FractionalIdeal ideal;
    Int p;   // rational prime below
    int e;   // ramification index
    int f;   // residue degree
    Int norm() const { return pow_int(p, static_cast<unsigned long>(f)); }
};

// The primes of O_F above the rational prime p (1 or 2 entries).
std::vector<PrimeIdeal> primes_above(const RealQuadraticField& F, const Int& p);

// Valuation of a nonzero fractional ideal at a prime.
long ideal_valuation(const FractionalIdeal& a, const PrimeIdeal& P);
long element_valuation(const FieldElement& x, const PrimeIdeal& P);

// Factorization of a nonzero integral ideal into prime powers.
std::vector<std::pair<PrimeIdeal, long>> factor_ideal(const FractionalIdeal& a);

}  // namespace cuspforge
