#include "cuspforge/ideal.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace cuspforge {

FractionalIdeal FractionalIdeal::make(const RealQuadraticField& F, ZMatrix rows,
                                      Int den, bool check_stable) {
    CUSPFORGE_CHECK(den > 0);
    ZMatrix h = rows.hnf();
    CUSPFORGE_CHECK(h.rows() == 2);
    // Minimize the denominator.
    Int g = den;
    for (std::size_t i = 0; i < 2 && g != 1; ++i)
        for (std::size_t j = 0; j < 2; ++j) g = gcd(g, h(i, j));
    if (g > 1) {
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) h(i, j) = divexact(h(i, j), g);
        den = divexact(den, g);
    }
    FractionalIdeal out;
    out.F_ = &F;
    out.basis_ = h;
    out.den_ = den;
    if (check_stable) {
        // w * (a + b*w) = c*b + (a + t*b)*w must stay in the span.
        for (std::size_t i = 0; i < 2; ++i) {
            std::vector<Int> v = {F.c() * h(i, 1), h(i, 0) + Int(F.t()) * h(i, 1)};
            CUSPFORGE_CHECK(h.row_span_contains(v));
        }
    }
    return out;
}

FractionalIdeal FractionalIdeal::from_generators(
    const RealQuadraticField& F, const std::vector<FieldElement>& gens) {
    // Common denominator for all coordinates of {g, w*g}.
    std::vector<FieldElement> closed;
    for (const FieldElement& g : gens) {
        closed.push_back(g);
        closed.push_back(g * F.omega());
    }
    Int L(1);
    for (const FieldElement& g : closed) {
        L = lcm(L, Int(g.x().get_den()));
        L = lcm(L, Int(g.y().get_den()));
    }
    ZMatrix rows(closed.size(), 2);
    for (std::size_t i = 0; i < closed.size(); ++i) {
        Rat x = closed[i].x() * Rat(L), y = closed[i].y() * Rat(L);
        CUSPFORGE_CHECK(x.get_den() == 1 && y.get_den() == 1);
        rows(i, 0) = x.get_num();
        rows(i, 1) = y.get_num();
    }
    return make(F, rows, L, /*check_stable=*/false);
}

FractionalIdeal FractionalIdeal::principal(const FieldElement& g) {
    CUSPFORGE_CHECK(!g.is_zero());
    return from_generators(*g.field(), {g});
}

FractionalIdeal FractionalIdeal::ring_of_integers(const RealQuadraticField& F) {
    return from_z_basis(F, ZMatrix::identity(2), Int(1));
}

FractionalIdeal FractionalIdeal::from_z_basis(const RealQuadraticField& F,
                                              const ZMatrix& rows,
                                              const Int& den) {
    return make(F, rows, den, /*check_stable=*/true);
}

FieldElement FractionalIdeal::basis_element(int i) const {
    return F_->element(make_rat(basis_(i, 0), den_), make_rat(basis_(i, 1), den_));
}

void FractionalIdeal::check_compatible(const FractionalIdeal& o) const {
    CUSPFORGE_CHECK(F_ != nullptr && o.F_ != nullptr && F_->D() == o.F_->D());
}

FractionalIdeal FractionalIdeal::operator*(const FractionalIdeal& o) const {
    check_compatible(o);
    std::vector<FieldElement> prods;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            prods.push_back(basis_element(i) * o.basis_element(j));
    return from_generators(*F_, prods);
}

FractionalIdeal FractionalIdeal::operator*(const FieldElement& s) const {
    CUSPFORGE_CHECK(!s.is_zero());
    return from_generators(*F_, {basis_element(0) * s, basis_element(1) * s});
}

FractionalIdeal FractionalIdeal::operator+(const FractionalIdeal& o) const {
    check_compatible(o);
    return from_generators(
        *F_, {basis_element(0), basis_element(1), o.basis_element(0),
              o.basis_element(1)});
}

FractionalIdeal FractionalIdeal::conj() const {
    return from_generators(*F_, {basis_element(0).conj(), basis_element(1).conj()});
}

FractionalIdeal FractionalIdeal::inverse() const {
    // For the maximal order, a * conj(a) = (N(a)), so a^{-1} = conj(a)/N(a).
    Rat n = norm();
    FieldElement scale = F_->element(Rat(1) / n, Rat(0));
    return conj() * scale;
}

FractionalIdeal FractionalIdeal::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FractionalIdeal r = ring_of_integers(*F_);
    FractionalIdeal b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FractionalIdeal FractionalIdeal::intersect(const FractionalIdeal& o) const {
    check_compatible(o);
    Int d = lcm(den_, o.den_);
    ZMatrix A = basis_, B = o.basis_;
    Int fa = divexact(d, den_), fb = divexact(d, o.den_);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            A(i, j) *= fa;
            B(i, j) *= -fb;
        }
    // Rows (x, y) of the left kernel of [A; -B] satisfy x*A = y*B; the
    // vectors x*A form the intersection lattice.
    ZMatrix K = A.stacked(B).left_kernel();
    CUSPFORGE_CHECK(K.rows() == 2);
    ZMatrix rows(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            rows(i, j) = K(i, 0) * A(0, j) + K(i, 1) * A(1, j);
    return make(*F_, rows, d, /*check_stable=*/true);
}

Rat FractionalIdeal::norm() const {
    CUSPFORGE_CHECK(F_ != nullptr);
    return make_rat(basis_.det(), den_ * den_);
}

bool FractionalIdeal::contains(const FieldElement& x) const {
    if (x.is_zero()) return true;
    Rat cx = x.x() * Rat(den_), cy = x.y() * Rat(den_);
    if (cx.get_den() != 1 || cy.get_den() != 1) return false;
    return basis_.row_span_contains({Int(cx.get_num()), Int(cy.get_num())});
}

bool FractionalIdeal::contains(const FractionalIdeal& o) const {
    return contains(o.basis_element(0)) && contains(o.basis_element(1));
}

bool FractionalIdeal::is_integral() const { return den_ == 1; }

bool FractionalIdeal::is_ring_of_integers() const {
    return den_ == 1 && basis_ == ZMatrix::identity(2);
}

std::pair<Rat, FieldElement> FractionalIdeal::two_generators() const {
    // HNF with the coordinate order reversed (w-coordinate first) makes the
    // second row rational; a Z-basis of an O_F-stable lattice generates it
    // as an O_F-module, so the pair below generates the ideal.
    ZMatrix sw(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        sw(i, 0) = basis_(i, 1);
        sw(i, 1) = basis_(i, 0);
    }
    ZMatrix h = sw.hnf();
    CUSPFORGE_CHECK(h.rows() == 2 && h(1, 0) == 0);
    Rat n = make_rat(h(1, 1), den_);
    FieldElement mu = F_->element(make_rat(h(0, 1), den_), make_rat(h(0, 0), den_));
    return {n, mu};
}

std::string FractionalIdeal::to_string() const {
    auto [n, mu] = two_generators();
    std::ostringstream os;
    os << "(" << n << ", " << mu.to_string() << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const FractionalIdeal& a) {
    return os << a.to_string();
}

FractionalIdeal different(const RealQuadraticField& F) {
    // f(x) = x^2 - t x - c, so f'(w) = 2w - t.
    return FractionalIdeal::principal(F.element(-Rat(F.t()), Rat(2)));
}

std::vector<PrimeIdeal> primes_above(const RealQuadraticField& F, const Int& p) {
    CUSPFORGE_CHECK(p >= 2 && is_prime(p));
    CUSPFORGE_CHECK(p < 2000000);  // root search below is a linear scan
    long pl = to_long(p);
    // Roots of x^2 - t x - c modulo p.
    std::vector<Int> roots;
    Int t(F.t()), c = F.c();
    for (long r = 0; r < pl; ++r) {
        Int rr(r);
        if (fmod(rr * rr - t * rr - c, p) == 0) roots.push_back(rr);
    }
    std::vector<PrimeIdeal> out;
    FieldElement w = F.omega();
    if (roots.empty()) {
        // Inert: (p) is prime with residue degree 2.
        out.push_back({FractionalIdeal::principal(F.element(Rat(p), Rat(0))),
                       p, 1, 2});
        return out;
    }
    bool ramified = divides(p, F.disc());
    CUSPFORGE_CHECK(ramified ? roots.size() == 1 : roots.size() == 2);
    for (const Int& r : roots) {
        FractionalIdeal P = FractionalIdeal::from_generators(
            F, {F.element(Rat(p), Rat(0)), w - F.element(Rat(r), Rat(0))});
        out.push_back({P, p, ramified ? 2 : 1, 1});
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                if (a.ideal.basis()(i, j) != b.ideal.basis()(i, j))
                    return a.ideal.basis()(i, j) < b.ideal.basis()(i, j);
        return false;
    });
    return out;
}

long ideal_valuation(const FractionalIdeal& a, const PrimeIdeal& P) {
    CUSPFORGE_CHECK(a.is_valid());
    const RealQuadraticField& F = a.field();
    // Split off the denominator: a = I / d with I integral.
    FractionalIdeal I = FractionalIdeal::from_z_basis(F, a.basis(), Int(1));
    long v = 0;
    FractionalIdeal Pinv = P.ideal.inverse();
    while (P.ideal.contains(I)) {
        I = I * Pinv;
        ++v;
        CUSPFORGE_CHECK(v < 4096);
    }
    Int d = a.den();
    long vp = 0;
    while (divides(P.p, d)) {
        d = divexact(d, P.p);
        ++vp;
    }
    return v - static_cast<long>(P.e) * vp;
}

long element_valuation(const FieldElement& x, const PrimeIdeal& P) {
    CUSPFORGE_CHECK(!x.is_zero());
    return ideal_valuation(FractionalIdeal::principal(x), P);
}

std::vector<std::pair<PrimeIdeal, long>> factor_ideal(const FractionalIdeal& a) {
    CUSPFORGE_CHECK(a.is_valid() && a.is_integral());
    Rat n = a.norm();
    CUSPFORGE_CHECK(n.get_den() == 1);
    std::vector<std::pair<PrimeIdeal, long>> out;
    for (const auto& [p, e] : factor_int(Int(n.get_num()))) {
        for (const PrimeIdeal& P : primes_above(a.field(), p)) {
            long v = ideal_valuation(a, P);
            if (v > 0) out.emplace_back(P, v);
        }
    }
    return out;
}

}  // namespace cuspforge
