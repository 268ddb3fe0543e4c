#pragma once

// Incremental construction of a finite abelian group presented by a
// black box: an identity element, a multiplication, and an equality test.
// Generators are fed one at a time; the builder maintains a full element
// table with discrete logarithms and the Smith normal form of the
// accumulated relation matrix, so the group is available as ⊕ Z/d_i at
// every stage. Intended for small groups (every element is tabulated).

#include <functional>
#include <vector>

#include "cuspforge/cyclotomic.hpp"
#include "cuspforge/zmatrix.hpp"

namespace cuspforge {

template <class Elem>
class AbelianGroupBuilder {
  public:
    using MulFn = std::function<Elem(const Elem&, const Elem&)>;
    using EqFn = std::function<bool(const Elem&, const Elem&)>;

    AbelianGroupBuilder(Elem identity, MulFn mul, EqFn eq)
        : mul_(std::move(mul)), eq_(std::move(eq)) {
        elems_.push_back(std::move(identity));
        raw_.push_back({});
        refresh_snf();
    }

    // Closes the table under the new generator. Returns true if the group
    // grew. order_cap guards against runaway (non-finite) inputs.
    bool add_generator(const Elem& g, long order_cap = 200000) {
        std::size_t k = relations_.rows();
        // Minimal t >= 1 with g^t already in the table.
        Elem p = g;
        long t = 1;
        long idx;
        while ((idx = find(p)) < 0) {
            p = mul_(p, g);
            ++t;
            CUSPFORGE_CHECK(t <= order_cap);
        }
        // New relation row: t*e_k - raw(g^t) = 0.
        ZMatrix R(k + 1, k + 1);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) R(i, j) = relations_(i, j);
        for (std::size_t j = 0; j < k; ++j)
            R(k, j) = -raw_[static_cast<std::size_t>(idx)][j];
        R(k, k) = t;
        relations_ = R;
        // Extend every raw vector by a zero coordinate, then multiply the
        // table through by g^0..g^{t-1}.
        for (auto& v : raw_) v.push_back(Int(0));
        std::size_t base = elems_.size();
        Elem pw = g;
        for (long j = 1; j < t; ++j) {
            for (std::size_t i = 0; i < base; ++i) {
                elems_.push_back(mul_(elems_[i], pw));
                std::vector<Int> v = raw_[i];
                v[k] = j;
                raw_.push_back(std::move(v));
            }
            if (j + 1 < t) pw = mul_(pw, g);
        }
        refresh_snf();
        CUSPFORGE_CHECK(Int(static_cast<long>(elems_.size())) == order());
        return t > 1;
    }

    Int order() const {
        Int o(1);
        for (const Int& d : invariants_) o *= d;
        return o;
    }

    // Invariant factors d_1 | d_2 | ..., all > 1 (empty for the trivial
    // group).
    const std::vector<Int>& invariants() const { return invariants_; }

    std::size_t size() const { return elems_.size(); }
    const Elem& element(std::size_t i) const { return elems_[i]; }

    // SNF coordinates of the i-th table element.
    std::vector<Int> coords(std::size_t i) const { return to_snf(raw_[i]); }

    // Discrete logarithm by table scan; -1-free: throws if absent.
    std::vector<Int> dlog(const Elem& e) const {
        long i = find(e);
        CUSPFORGE_CHECK(i >= 0);
        return coords(static_cast<std::size_t>(i));
    }

    long find(const Elem& e) const {
        for (std::size_t i = 0; i < elems_.size(); ++i)
            if (eq_(elems_[i], e)) return static_cast<long>(i);
        return -1;
    }

    // Index of the table element with the given SNF coordinates.
    std::size_t element_index_by_coords(const std::vector<Int>& c) const {
        for (std::size_t i = 0; i < elems_.size(); ++i)
            if (coords(i) == c) return i;
        throw internal_error("no element with the requested coordinates");
    }

  private:
    MulFn mul_;
    EqFn eq_;
    std::vector<Elem> elems_;
    std::vector<std::vector<Int>> raw_;  // exponents in the raw generators
    ZMatrix relations_;                  // square, full rank
    ZMatrix V_;                          // SNF column transform
    std::vector<Int> diag_;              // full SNF diagonal (incl. 1s)
    std::vector<Int> invariants_;        // diag entries > 1

    void refresh_snf() {
        ZMatrix U;
        ZMatrix D = relations_.smith(&U, &V_);
        diag_.clear();
        invariants_.clear();
        for (std::size_t i = 0; i < D.rows(); ++i) {
            CUSPFORGE_CHECK(D(i, i) > 0);
            diag_.push_back(D(i, i));
            if (D(i, i) > 1) invariants_.push_back(D(i, i));
        }
    }

    std::vector<Int> to_snf(const std::vector<Int>& raw) const {
        std::vector<Int> w = mul_row(raw, V_);
        std::vector<Int> out;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (diag_[i] > 1) out.push_back(fmod(w[i], diag_[i]));
        return out;
    }
};

// A character of ⊕ Z/d_i, given by exponents j_i; its value on SNF
// coordinates v is zeta_m^(sum j_i v_i m/d_i) with m = lcm(d_i).
struct GroupCharacter {
    std::vector<Int> invariants;
    std::vector<long> exps;
    long m = 1;  // lcm of the invariant factors

    RootOfUnity value(const std::vector<Int>& coords) const {
        CUSPFORGE_CHECK(coords.size() == invariants.size());
        long acc = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            long di = to_long(invariants[i]);
            long vi = to_long(fmod(coords[i], invariants[i]));
            acc = (acc + exps[i] % di * vi % m * (m / di)) % m;
        }
        return RootOfUnity(m, acc);
    }

    long order() const {
        Int o(1);
        for (std::size_t i = 0; i < exps.size(); ++i)
            o = lcm(o, divexact(invariants[i], gcd(invariants[i], Int(exps[i]))));
        return to_long(o);
    }

    bool is_trivial() const {
        for (long e : exps)
            if (e != 0) return false;
        return true;
    }

    bool operator==(const GroupCharacter& o) const {
        return invariants == o.invariants && exps == o.exps;
    }
};

// All characters of ⊕ Z/d_i, in lexicographic exponent order.
inline std::vector<GroupCharacter> all_characters(
    const std::vector<Int>& invariants) {
    Int m(1);
    for (const Int& d : invariants) m = lcm(m, d);
    std::vector<GroupCharacter> out;
    std::vector<long> exps(invariants.size(), 0);
    for (;;) {
        out.push_back({invariants, exps, to_long(m)});
        std::size_t i = invariants.size();
        while (i > 0) {
            --i;
            if (++exps[i] < to_long(invariants[i])) break;
            exps[i] = 0;
            if (i == 0) return out;
        }
        if (invariants.empty()) return out;
    }
}

}  // namespace cuspforge
