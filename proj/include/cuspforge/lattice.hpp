#pragma once

// Rank-2 O_F-lattices H in F^2 and projective lines, together with the
// ideal invariants attached to a (lattice, line) pair: the intersection
// ideal a = H ∩ L and the projection ideal b with a*b = det_{O_F}(H).
//
// A lattice is stored as the 4x4 Hermite normal form of a Z-basis in the
// coordinates (x1, y1, x2, y2) of (x1 + y1*w, x2 + y2*w) in F^2, plus a
// minimal positive denominator; the representation is unique.

#include <array>

#include "cuspforge/ideal.hpp"

namespace cuspforge {

// A vector in F^2.
struct Vec2 {
    FieldElement a, b;
};

// A 2x2 matrix over F, row-major.
struct Mat2 {
    FieldElement a, b, c, d;
    FieldElement det() const { return a * d - b * c; }
    Mat2 transpose() const { return {a, c, b, d}; }
    Vec2 apply(const Vec2& v) const { return {a * v.a + b * v.b, c * v.a + d * v.b}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

// A line in P^1(F), canonicalized so equality of lines is equality of
// representations: (x : y) with y a positive rational integer and
// x = p + q*w, gcd(p, q, y) = 1, when y != 0; otherwise (1 : 0).
class Line {
  public:
    Line(const FieldElement& x, const FieldElement& y);

    const FieldElement& x() const { return x_; }
    const FieldElement& y() const { return y_; }

    bool operator==(const Line& o) const { return x_ == o.x_ && y_ == o.y_; }
    bool operator!=(const Line& o) const { return !(*this == o); }

    // The line spanned by (0, 1): for a direct sum it meets the lattice
    // in the second summand and projects onto the first.
    static Line infinity(const RealQuadraticField& F);  // (0 : 1)
    static Line zero_line(const RealQuadraticField& F);  // (1 : 0)

    std::string to_string() const;

  private:
    FieldElement x_, y_;
};

class Lattice2 {
  public:
    Lattice2() : F_(nullptr), den_(1) {}

    // O_F-span of the given vectors (each closed under multiplication
    // by w componentwise). Must have full rank 4 over Z.
    static Lattice2 from_generators(const RealQuadraticField& F,
                                    const std::vector<Vec2>& gens);
    // The direct sum a ⊕ b sitting inside F^2.
    static Lattice2 direct_sum(const FractionalIdeal& a, const FractionalIdeal& b);
    static Lattice2 standard(const RealQuadraticField& F);  // O_F^2

    const RealQuadraticField& field() const { return *F_; }
    const ZMatrix& basis() const { return basis_; }
    const Int& den() const { return den_; }
    bool is_valid() const { return F_ != nullptr; }

    Vec2 basis_vector(int i) const;  // i in [0, 4)

    bool contains(const Vec2& v) const;
    bool contains(const Lattice2& o) const;
    bool operator==(const Lattice2& o) const {
        return basis_ == o.basis_ && den_ == o.den_;
    }
    bool operator!=(const Lattice2& o) const { return !(*this == o); }

    // Image under a matrix g in GL_2(F) acting on column vectors.
    Lattice2 apply(const Mat2& g) const;
    // Scaling: {n*v : n in N, v in H}.
    Lattice2 operator*(const FractionalIdeal& N) const;
    Lattice2 operator*(const FieldElement& s) const;
    Lattice2 intersect(const Lattice2& o) const;

    // The ideal generated by all 2x2 F-determinants of pairs of lattice
    // vectors; equals a*b for any line.
    FractionalIdeal det_ideal() const;

    // {t in F : t*v in H} for a nonzero vector v.
    FractionalIdeal coefficient_ideal(const Vec2& v) const;

  private:
    const RealQuadraticField* F_;
    ZMatrix basis_;  // 4x4 HNF, full rank
    Int den_;        // > 0, minimal

    static Lattice2 make(const RealQuadraticField& F, ZMatrix rows, Int den,
                         bool check_stable);
};

// The pair (a, b): a = H ∩ L as the ideal {t : t*(x,y) in H}, and
// b = image of H under (u, v) -> y*u - x*v, which kills L. They satisfy
// a * b = det_ideal(H).
struct LineSplit {
    FractionalIdeal a;  // intersection ideal
    FractionalIdeal b;  // projection ideal
};
LineSplit lattice_intersect_line(const Lattice2& H, const Line& L);

// The normalizing ideals of a component (a, b) under g = [[a, b], [c, d]]:
// J = det(g)^{-1} * (g_a*O + g_c*b^{-1}a) and I = det(g)*b*a*(g_a*b + g_c*a)^{-1}.
// Requires det(g) totally positive.
struct NormalizingIdeals {
    FractionalIdeal J;
    FractionalIdeal I;
};
NormalizingIdeals normalizing_ideal(const FractionalIdeal& a,
                                    const FractionalIdeal& b, const Mat2& g);

}  // namespace cuspforge
