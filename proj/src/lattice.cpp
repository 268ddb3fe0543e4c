#include "cuspforge/lattice.hpp"

#include <sstream>

namespace cuspforge {

Line::Line(const FieldElement& x, const FieldElement& y) {
    CUSPFORGE_CHECK(x.field() != nullptr && y.field() != nullptr);
    const RealQuadraticField& F = *x.field();
    CUSPFORGE_CHECK(!(x.is_zero() && y.is_zero()));
    if (y.is_zero()) {
        x_ = F.one();
        y_ = F.zero();
        return;
    }
    FieldElement t = x / y;
    Int r = lcm(Int(t.x().get_den()), Int(t.y().get_den()));
    Int p = Int(Rat(t.x() * Rat(r)).get_num());
    Int q = Int(Rat(t.y() * Rat(r)).get_num());
    Int g = gcd(gcd(p, q), r);
    x_ = F.element(make_rat(divexact(p, g), 1), make_rat(divexact(q, g), 1));
    y_ = F.element(Rat(divexact(r, g)), Rat(0));
}

Line Line::infinity(const RealQuadraticField& F) { return Line(F.zero(), F.one()); }
Line Line::zero_line(const RealQuadraticField& F) { return Line(F.one(), F.zero()); }

std::string Line::to_string() const {
    std::ostringstream os;
    os << "(" << x_.to_string() << " : " << y_.to_string() << ")";
    return os.str();
}

Lattice2 Lattice2::make(const RealQuadraticField& F, ZMatrix rows, Int den,
                        bool check_stable) {
    CUSPFORGE_CHECK(den > 0);
    ZMatrix h = rows.hnf();
    CUSPFORGE_CHECK(h.rows() == 4);
    Int g = den;
    for (std::size_t i = 0; i < 4 && g != 1; ++i)
        for (std::size_t j = 0; j < 4; ++j) g = gcd(g, h(i, j));
    if (g > 1) {
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) h(i, j) = divexact(h(i, j), g);
        den = divexact(den, g);
    }
    Lattice2 out;
    out.F_ = &F;
    out.basis_ = h;
    out.den_ = den;
    if (check_stable) {
        // w * (x + y*w, z + u*w) = (c*y + (x+t*y)w, c*u + (z+t*u)w).
        Int t(F.t()), c = F.c();
        for (std::size_t i = 0; i < 4; ++i) {
            std::vector<Int> v = {c * h(i, 1), h(i, 0) + t * h(i, 1),
                                  c * h(i, 3), h(i, 2) + t * h(i, 3)};
            CUSPFORGE_CHECK(h.row_span_contains(v));
        }
    }
    return out;
}

Lattice2 Lattice2::from_generators(const RealQuadraticField& F,
                                   const std::vector<Vec2>& gens) {
    FieldElement w = F.omega();
    std::vector<Vec2> closed;
    for (const Vec2& v : gens) {
        closed.push_back(v);
        closed.push_back({v.a * w, v.b * w});
    }
    Int L(1);
    for (const Vec2& v : closed)
        for (const FieldElement* e : {&v.a, &v.b}) {
            L = lcm(L, Int(e->x().get_den()));
            L = lcm(L, Int(e->y().get_den()));
        }
    ZMatrix rows(closed.size(), 4);
    for (std::size_t i = 0; i < closed.size(); ++i) {
        Rat c[4] = {closed[i].a.x() * Rat(L), closed[i].a.y() * Rat(L),
                    closed[i].b.x() * Rat(L), closed[i].b.y() * Rat(L)};
        for (int j = 0; j < 4; ++j) {
            CUSPFORGE_CHECK(c[j].get_den() == 1);
            rows(i, j) = c[j].get_num();
        }
    }
    return make(F, rows, L, /*check_stable=*/false);
}

Lattice2 Lattice2::direct_sum(const FractionalIdeal& a, const FractionalIdeal& b) {
    const RealQuadraticField& F = a.field();
    Int d = lcm(a.den(), b.den());
    Int fa = divexact(d, a.den()), fb = divexact(d, b.den());
    ZMatrix rows(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            rows(i, j) = a.basis()(i, j) * fa;
            rows(2 + i, 2 + j) = b.basis()(i, j) * fb;
        }
    return make(F, rows, d, /*check_stable=*/true);
}

Lattice2 Lattice2::standard(const RealQuadraticField& F) {
    FractionalIdeal O = FractionalIdeal::ring_of_integers(F);
    return direct_sum(O, O);
}

Vec2 Lattice2::basis_vector(int i) const {
    return {F_->element(make_rat(basis_(i, 0), den_), make_rat(basis_(i, 1), den_)),
            F_->element(make_rat(basis_(i, 2), den_), make_rat(basis_(i, 3), den_))};
}

bool Lattice2::contains(const Vec2& v) const {
    Rat c[4] = {v.a.x() * Rat(den_), v.a.y() * Rat(den_), v.b.x() * Rat(den_),
                v.b.y() * Rat(den_)};
    std::vector<Int> row(4);
    for (int j = 0; j < 4; ++j) {
        if (c[j].get_den() != 1) return false;
        row[j] = c[j].get_num();
    }
    return basis_.row_span_contains(row);
}

bool Lattice2::contains(const Lattice2& o) const {
    for (int i = 0; i < 4; ++i)
        if (!contains(o.basis_vector(i))) return false;
    return true;
}

Lattice2 Lattice2::apply(const Mat2& g) const {
    std::vector<Vec2> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(g.apply(basis_vector(i)));
    return from_generators(*F_, gens);
}

Lattice2 Lattice2::operator*(const FractionalIdeal& N) const {
    std::vector<Vec2> gens;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) {
            FieldElement s = N.basis_element(j);
            Vec2 v = basis_vector(i);
            gens.push_back({v.a * s, v.b * s});
        }
    return from_generators(*F_, gens);
}

Lattice2 Lattice2::operator*(const FieldElement& s) const {
    CUSPFORGE_CHECK(!s.is_zero());
    std::vector<Vec2> gens;
    for (int i = 0; i < 4; ++i) {
        Vec2 v = basis_vector(i);
        gens.push_back({v.a * s, v.b * s});
    }
    return from_generators(*F_, gens);
}

Lattice2 Lattice2::intersect(const Lattice2& o) const {
    CUSPFORGE_CHECK(F_->D() == o.F_->D());
    Int d = lcm(den_, o.den_);
    ZMatrix A = basis_, B = o.basis_;
    Int fa = divexact(d, den_), fb = divexact(d, o.den_);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            A(i, j) *= fa;
            B(i, j) *= -fb;
        }
    ZMatrix K = A.stacked(B).left_kernel();
    CUSPFORGE_CHECK(K.rows() == 4);
    ZMatrix rows(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Int s(0);
            for (std::size_t k = 0; k < 4; ++k) s += K(i, k) * A(k, j);
            rows(i, j) = s;
        }
    return make(*F_, rows, d, /*check_stable=*/true);
}

FractionalIdeal Lattice2::det_ideal() const {
    std::vector<FieldElement> dets;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            Vec2 u = basis_vector(i), v = basis_vector(j);
            FieldElement d = u.a * v.b - u.b * v.a;
            if (!d.is_zero()) dets.push_back(d);
        }
    CUSPFORGE_CHECK(!dets.empty());
    return FractionalIdeal::from_generators(*F_, dets);
}

namespace {

// Adjugate of a 4x4 integer matrix via 3x3 cofactors.
ZMatrix adjugate4(const ZMatrix& T) {
    CUSPFORGE_CHECK(T.rows() == 4 && T.cols() == 4);
    ZMatrix adj(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            ZMatrix m(3, 3);
            std::size_t r = 0;
            for (std::size_t a = 0; a < 4; ++a) {
                if (a == i) continue;
                std::size_t c = 0;
                for (std::size_t b = 0; b < 4; ++b) {
                    if (b == j) continue;
                    m(r, c++) = T(a, b);
                }
                ++r;
            }
            Int cof = m.det();
            if ((i + j) % 2 == 1) cof = -cof;
            adj(j, i) = cof;  // adjugate is the transposed cofactor matrix
        }
    return adj;
}

}  // namespace

FractionalIdeal Lattice2::coefficient_ideal(const Vec2& v) const {
    CUSPFORGE_CHECK(!(v.a.is_zero() && v.b.is_zero()));
    const RealQuadraticField& F = *F_;
    // The map t = u + z*w  ->  t*v has coordinate matrix M with rows the
    // coordinates of v and w*v; we need { (u, z) : (u, z) M in H }.
    FieldElement w = F.omega();
    Vec2 wv = {v.a * w, v.b * w};
    Rat Mq[2][4] = {{v.a.x(), v.a.y(), v.b.x(), v.b.y()},
                    {wv.a.x(), wv.a.y(), wv.b.x(), wv.b.y()}};
    Int L(1);
    for (auto& row : Mq)
        for (auto& q : row) L = lcm(L, Int(q.get_den()));
    // Condition scaled to integers: z * C in span(T), C = den * L * M / L,
    // T = L * basis.
    ZMatrix C(2, 4), T(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            C(i, j) = Int(Rat(Mq[i][j] * Rat(L)).get_num()) * den_;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) T(i, j) = basis_(i, j) * L;
    Int e = T.det();
    CUSPFORGE_CHECK(e != 0);
    ZMatrix E = C * adjugate4(T);  // z*C in span(T)  <=>  z*E in e*Z^4
    ZMatrix U, V;
    ZMatrix S = E.smith(&U, &V);
    CUSPFORGE_CHECK(S(0, 0) > 0 && S(1, 1) > 0);
    // Solution rows: (e / s_i) * U_i.
    std::vector<FieldElement> gens;
    for (std::size_t i = 0; i < 2; ++i) {
        Rat scale = make_rat(e, S(i, i));
        gens.push_back(F.element(Rat(U(i, 0)) * scale, Rat(U(i, 1)) * scale));
    }
    FractionalIdeal out = FractionalIdeal::from_generators(F, gens);
    // Sanity: the generators really multiply v into the lattice.
    for (const FieldElement& t : gens)
        CUSPFORGE_CHECK(contains({t * v.a, t * v.b}));
    return out;
}

LineSplit lattice_intersect_line(const Lattice2& H, const Line& L) {
    const RealQuadraticField& F = H.field();
    FractionalIdeal a = H.coefficient_ideal({L.x(), L.y()});
    // The projection (u, v) -> y*u - x*v kills the line; its image is b.
    std::vector<FieldElement> imgs;
    for (int i = 0; i < 4; ++i) {
        Vec2 v = H.basis_vector(i);
        FieldElement m = L.y() * v.a - L.x() * v.b;
        if (!m.is_zero()) imgs.push_back(m);
    }
    CUSPFORGE_CHECK(!imgs.empty());
    FractionalIdeal b = FractionalIdeal::from_generators(F, imgs);
    return {a, b};
}

NormalizingIdeals normalizing_ideal(const FractionalIdeal& a,
                                    const FractionalIdeal& b, const Mat2& g) {
    const RealQuadraticField& F = a.field();
    FieldElement det = g.det();
    if (det.is_zero() || !det.is_totally_positive())
        throw invalid_input("matrix determinant must be totally positive");
    CUSPFORGE_CHECK(!(g.a.is_zero() && g.c.is_zero()));
    // J = det^{-1} (g_a O + g_c b^{-1} a);  I = det * b * a * (g_a b + g_c a)^{-1}.
    FractionalIdeal Jsum, Isum;
    if (!g.a.is_zero()) {
        Jsum = FractionalIdeal::principal(g.a);
        Isum = b * g.a;
    }
    if (!g.c.is_zero()) {
        FractionalIdeal t = b.inverse() * a * g.c;
        Jsum = Jsum.is_valid() ? Jsum + t : t;
        FractionalIdeal s = a * g.c;
        Isum = Isum.is_valid() ? Isum + s : s;
    }
    NormalizingIdeals out;
    out.J = Jsum * det.inverse();
    out.I = b * a * Isum.inverse() * det;
    return out;
}

}  // namespace cuspforge
