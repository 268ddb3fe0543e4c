#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m), represented on the
// power basis 1, zeta, ..., zeta^{phi(m)-1} with coefficients reduced
// modulo the m-th cyclotomic polynomial. Equality is coefficient equality.
//
// The power basis is an integral basis of Z[zeta_m], so an element is an
// algebraic integer iff all coefficients are integers, and divisibility by
// a rational integer is coefficient-wise.

#include <vector>

#include "cuspforge/numeric.hpp"

namespace cuspforge {

// Dense coefficient vector of the m-th cyclotomic polynomial (monic,
// constant term first). Results are cached.
const std::vector<Int>& cyclotomic_polynomial(long m);

// A root of unity as (order m, exponent e), e reduced mod m.
struct RootOfUnity {
    long m = 1;
    long e = 0;
    RootOfUnity() = default;
    RootOfUnity(long order, long exponent);
    RootOfUnity operator*(const RootOfUnity& o) const;
    RootOfUnity inverse() const;
    RootOfUnity pow(long k) const;
    bool is_one() const { return e == 0; }
    bool operator==(const RootOfUnity& o) const;
};

class CycQ {
  public:
    CycQ() : m_(1), c_(1, Rat(0)) {}
    explicit CycQ(const Rat& r) : m_(1), c_(1, r) {}

    static CycQ root(long m, long e);  // zeta_m^e
    static CycQ from_root(const RootOfUnity& z) { return root(z.m, z.e); }

    long modulus() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    // The same element viewed in Q(zeta_M), m | M.
    CycQ promote(long M) const;

    CycQ operator+(const CycQ& o) const;
    CycQ operator-(const CycQ& o) const;
    CycQ operator-() const;
    CycQ operator*(const CycQ& o) const;
    CycQ operator*(const Rat& r) const;
    bool operator==(const CycQ& o) const;
    bool operator!=(const CycQ& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_rational() const;   // lies in Q
    Rat rational_value() const; // requires is_rational()

    bool is_integral() const;   // lies in Z[zeta_m]
    // All coefficients divisible by the integer d (requires is_integral()).
    bool divisible_by(const Int& d) const;
    CycQ divide_by(const Int& d) const;

    std::string to_string() const;

  private:
    long m_;
    std::vector<Rat> c_;  // size deg(Phi_m), reduced
    static CycQ make(long m, std::vector<Rat> raw);  // reduces mod Phi_m
};

}  // namespace cuspforge
