#include "cuspforge/units.hpp"

#include <algorithm>
#include <set>

namespace cuspforge {

bool congruent_one(const FieldElement& u, const FractionalIdeal& n) {
    return n.contains(u - u.field()->one());
}

bool mult_congruent_one(
    const FieldElement& x,
    const std::vector<std::pair<PrimeIdeal, long>>& n_factors) {
    const FieldElement one = x.field()->one();
    if (x == one) return true;
    for (const auto& [q, e] : n_factors) {
        CUSPFORGE_CHECK(element_valuation(x, q) == 0);
        if (element_valuation(x - one, q) < e) return false;
    }
    return true;
}

ResidueRing::ResidueRing(const RealQuadraticField& F, const FractionalIdeal& n)
    : F_(&F), n_(n) {
    CUSPFORGE_CHECK(n.is_integral());
}

ResidueRing::Elt ResidueRing::reduce(const FieldElement& x) const {
    CUSPFORGE_CHECK(x.is_integral());
    Int cx(x.x().get_num()), cy(x.y().get_num());
    const ZMatrix& b = n_.basis();  // [[a, b], [0, d]]
    Int a = b(0, 0), bb = b(0, 1), d = b(1, 1);
    Int q = fdiv(cx, a);
    cx -= q * a;
    cy -= q * bb;
    cy = fmod(cy, d);
    return {cx, cy};
}

ResidueRing::Elt ResidueRing::mul(const Elt& a, const Elt& b) const {
    FieldElement ea = F_->element(Rat(a.first), Rat(a.second));
    FieldElement eb = F_->element(Rat(b.first), Rat(b.second));
    return reduce(ea * eb);
}

ResidueRing::Elt ResidueRing::pow(const Elt& a, long e) const {
    CUSPFORGE_CHECK(e >= 0);
    Elt r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

bool ResidueRing::is_unit(const Elt& a) const {
    FieldElement e = F_->element(Rat(a.first), Rat(a.second));
    if (e.is_zero()) return n_.is_ring_of_integers();
    return (FractionalIdeal::principal(e) + n_).is_ring_of_integers();
}

Int ResidueRing::ring_size() const {
    Rat n = n_.norm();
    CUSPFORGE_CHECK(n.get_den() == 1);
    return n.get_num();
}

Int ResidueRing::unit_count() const {
    Int count = ring_size();
    for (const auto& [P, v] : factor_ideal(n_)) {
        (void)v;
        Int q = P.norm();
        count = divexact(count * (q - 1), q);
    }
    return count;
}

const AbelianGroupBuilder<ResidueRing::Elt>& ResidueRing::unit_group() const {
    if (units_) return *units_;
    units_ = std::make_shared<AbelianGroupBuilder<Elt>>(
        one(), [this](const Elt& a, const Elt& b) { return mul(a, b); },
        [](const Elt& a, const Elt& b) { return a == b; });
    Int target = unit_count();
    const ZMatrix& b = n_.basis();
    Int a = b(0, 0), d = b(1, 1);
    for (Int y = 0; y < d && units_->order() < target; ++y)
        for (Int x = 0; x < a && units_->order() < target; ++x) {
            Elt e{x, y};
            if (is_unit(e)) units_->add_generator(e);
        }
    CUSPFORGE_CHECK(units_->order() == target);
    return *units_;
}

UnitGroupData unit_group_data(const RealQuadraticField& F,
                              const FractionalIdeal& n) {
    CUSPFORGE_CHECK(n.is_integral());
    UnitGroupData out;
    out.fund_unit = F.fundamental_unit();
    out.sign_eps = out.fund_unit.sign_vector();
    if (out.fund_unit.is_totally_positive()) {
        out.totally_positive_generator = out.fund_unit;
        out.totally_positive_exponent = 1;
    } else {
        out.totally_positive_generator = out.fund_unit * out.fund_unit;
        out.totally_positive_exponent = 2;
    }

    // Order of eps in (O/n)^*.
    const FieldElement& eps = out.fund_unit;
    long r = 1;
    FieldElement p = eps;
    while (!congruent_one(p, n)) {
        p = p * eps;
        ++r;
        CUSPFORGE_CHECK(r <= 200000);
    }
    out.eps_order_mod_n = r;

    out.u1_contains_minus_one = congruent_one(-F.one(), n);

    // Minimal j > 0 with s*eps^j = 1 (mod n) for some sign s.
    long j0 = -1;
    int s0 = 1;
    p = eps;
    for (long j = 1; j <= r; ++j) {
        if (congruent_one(p, n)) {
            j0 = j;
            s0 = 1;
            break;
        }
        if (congruent_one(-p, n)) {
            j0 = j;
            s0 = -1;
            break;
        }
        p = p * eps;
    }
    CUSPFORGE_CHECK(j0 > 0);
    out.u1_exponent = j0;
    out.u1_sign = s0;
    out.u1_generator = eps.pow(j0) * Rat(s0);

    // Sign vectors of U_{1,n}: subgroup of {+-1}^2 generated by the signs
    // of the generators.
    std::set<std::array<int, 2>> signs = {{1, 1}};
    std::vector<std::array<int, 2>> gens = {out.u1_generator.sign_vector()};
    if (out.u1_contains_minus_one) gens.push_back({-1, -1});
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto s : std::set<std::array<int, 2>>(signs))
            for (auto g : gens) {
                std::array<int, 2> t = {s[0] * g[0], s[1] * g[1]};
                if (signs.insert(t).second) grew = true;
            }
    }
    out.u1_signs.assign(signs.begin(), signs.end());

    // Generator of U^+_{1,n}.
    FieldElement w = out.u1_generator;
    if (w.is_totally_positive()) {
        out.u1pos_generator = w;
        out.u1pos_exponent = j0;
    } else if (out.u1_contains_minus_one && (-w).is_totally_positive()) {
        out.u1pos_generator = -w;
        out.u1pos_exponent = j0;
    } else {
        out.u1pos_generator = w * w;
        out.u1pos_exponent = 2 * j0;
        CUSPFORGE_CHECK(out.u1pos_generator.is_totally_positive());
    }
    return out;
}

}  // namespace cuspforge
