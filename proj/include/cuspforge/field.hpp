#pragma once

// Exact arithmetic in a real quadratic field F = Q(sqrt(D)).
//
// Elements are stored as x + y*w where {1, w} is the standard integral
// basis: w = (1 + sqrt(D))/2 when D = 1 mod 4, w = sqrt(D) otherwise.
// The generator satisfies w^2 = t*w + c with t in {0,1}.
//
// Embedding conventions: sigma_1 sends sqrt(D) to +sqrt(D), sigma_2 to
// -sqrt(D). All sign tests are exact integer comparisons.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>

#include "cuspforge/numeric.hpp"

namespace cuspforge {

class FieldElement;

class RealQuadraticField {
  public:
    // D must be squarefree and > 1.
    explicit RealQuadraticField(long D);

    long D() const { return D_; }
    const Int& disc() const { return disc_; }
    int t() const { return t_; }        // trace of w
    const Int& c() const { return c_; }  // w^2 = t*w + c

    // The fundamental unit: generator of O_F^* / {+-1}, normalized to be
    // > 1 under sigma_1. Computed from the continued fraction of w and
    // cached.
    const FieldElement& fundamental_unit() const;

    FieldElement omega() const;
    FieldElement element(const Rat& x, const Rat& y) const;
    FieldElement element(long x, long y) const;
    FieldElement zero() const;
    FieldElement one() const;

    bool operator==(const RealQuadraticField& o) const { return D_ == o.D_; }

  private:
    long D_;
    int t_;
    Int c_;
    Int disc_;
    mutable std::optional<FieldElement>* fu_cache_;  // owned, lazily filled
    friend class FieldElement;

  public:
    ~RealQuadraticField();
    RealQuadraticField(const RealQuadraticField&) = delete;
    RealQuadraticField& operator=(const RealQuadraticField&) = delete;
};

class FieldElement {
  public:
    FieldElement() : F_(nullptr) {}
    FieldElement(const RealQuadraticField* F, Rat x, Rat y)
        : F_(F), x_(std::move(x)), y_(std::move(y)) {}

    const RealQuadraticField* field() const { return F_; }
    const Rat& x() const { return x_; }
    const Rat& y() const { return y_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_rational() const { return y_ == 0; }
    bool is_integral() const;  // lies in O_F = Z + Z*w

    FieldElement conj() const;  // Galois conjugate
    Rat norm() const;
    Rat trace() const;
    FieldElement inverse() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator*(const Rat& r) const;
    FieldElement operator/(const Rat& r) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement pow(long e) const;

    // Exact sign at the i-th real embedding (i = 0 or 1): -1, 0 or +1.
    int sign_at(int i) const;
    std::array<int, 2> sign_vector() const;
    bool is_totally_positive() const;

    std::string to_string() const;  // e.g. "3/2+5*w", deterministic

  private:
    const RealQuadraticField* F_;
    Rat x_, y_;
    void check_same(const FieldElement& o) const;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

// Exact sign of a + b*sqrt(D) for rational a, b.
int sign_of_quadratic(const Rat& a, const Rat& b, long D);

}  // namespace cuspforge
