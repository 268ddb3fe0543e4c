#pragma once

// Exact big-integer / rational helpers shared across the library.
// All arithmetic in this project is exact; no floating point appears in
// any predicate.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cuspforge {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when an internal consistency check fails (maps to exit code 4 in
// the CLI).
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Thrown on invalid user-supplied ideals / elements (exit code 2).
struct invalid_input : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown on weight/character parity mismatches (exit code 3).
struct parity_mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define CUSPFORGE_CHECK(cond)                                                  \
    do {                                                                       \
        if (!(cond))                                                           \
            throw ::cuspforge::internal_error(std::string(__FILE__) + ":" +    \
                                              std::to_string(__LINE__) +      \
                                              ": check failed: " #cond);      \
    } while (0)

inline Int isqrt(const Int& n) {
    if (n < 0) throw internal_error("isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Floor division and the matching non-negative remainder.
inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int fmod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Int& a, const Int& b) {
    // a | b, with the convention 0 | 0.
    if (a == 0) return b == 0;
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

inline Int divexact(const Int& a, const Int& b) {
    if (!divides(b, a)) throw internal_error("divexact: not divisible");
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline long to_long(const Int& n) {
    if (!n.fits_slong_p()) throw internal_error("integer too large for long");
    return n.get_si();
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw internal_error("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Trial-division factorization (fine for the desk-scale norms used here).
inline std::vector<std::pair<Int, unsigned>> factor_int(Int n) {
    std::vector<std::pair<Int, unsigned>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (divides(p, n)) {
            unsigned e = 0;
            while (divides(p, n)) {
                n = divexact(n, p);
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace cuspforge
