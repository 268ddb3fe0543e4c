#include "cuspforge/field.hpp"

#include <ostream>
#include <sstream>

namespace cuspforge {

namespace {

bool squarefree(long D) {
    for (long p = 2; p * p <= D; ++p)
        if (D % (p * p) == 0) return false;
    return true;
}

}  // namespace

RealQuadraticField::RealQuadraticField(long D) : D_(D), fu_cache_(nullptr) {
    if (D <= 1 || !squarefree(D))
        throw invalid_input("field discriminant parameter must be a squarefree integer > 1");
    if ((D - 1) % 4 == 0) {
        t_ = 1;
        c_ = Int((D - 1) / 4);
        disc_ = D;
    } else {
        t_ = 0;
        c_ = Int(D);
        disc_ = 4 * Int(D);
    }
    fu_cache_ = new std::optional<FieldElement>();
}

RealQuadraticField::~RealQuadraticField() { delete fu_cache_; }

FieldElement RealQuadraticField::omega() const {
    return FieldElement(this, Rat(0), Rat(1));
}

FieldElement RealQuadraticField::element(const Rat& x, const Rat& y) const {
    return FieldElement(this, x, y);
}

FieldElement RealQuadraticField::element(long x, long y) const {
    return FieldElement(this, Rat(x), Rat(y));
}

FieldElement RealQuadraticField::zero() const {
    return FieldElement(this, Rat(0), Rat(0));
}

FieldElement RealQuadraticField::one() const {
    return FieldElement(this, Rat(1), Rat(0));
}

const FieldElement& RealQuadraticField::fundamental_unit() const {
    if (fu_cache_->has_value()) return **fu_cache_;
    // Continued-fraction expansion of w = (P0 + sqrt(D)) / Q0. Scanning the
    // convergents h_i/k_i, the elements h_i - k_i * conj(w) hit every unit
    // of O_F up to sign; the first with |norm| = 1 is the fundamental unit.
    Int D(D_);
    Int s = isqrt(D);
    Int P = (t_ == 1) ? Int(1) : Int(0);
    Int Q = (t_ == 1) ? Int(2) : Int(1);
    Int hm1(1), hm2(0), km1(0), km2(1);
    std::optional<FieldElement> found;
    for (int iter = 0; iter < 100000; ++iter) {
        Int a = fdiv(P + s, Q);
        Int h = a * hm1 + hm2;
        Int k = a * km1 + km2;
        hm2 = hm1;
        hm1 = h;
        km2 = km1;
        km1 = k;
        // Candidate u = h - k * conj(w) = (h - k*t) + k*w.
        FieldElement u(this, Rat(h - k * Int(t_)), Rat(k));
        Rat n = u.norm();
        if (n == 1 || n == -1) {
            found = u;
            break;
        }
        P = a * Q - P;
        Q = divexact(D - P * P, Q);
    }
    CUSPFORGE_CHECK(found.has_value());
    // Normalize to the representative > 1 at sigma_1.
    FieldElement u = *found;
    FieldElement cands[4] = {u, -u, u.inverse(), -u.inverse()};
    for (const FieldElement& v : cands) {
        FieldElement vm1 = v - one();
        if (vm1.sign_at(0) > 0) {
            *fu_cache_ = v;
            return **fu_cache_;
        }
    }
    throw internal_error("no fundamental-unit representative > 1");
}

void FieldElement::check_same(const FieldElement& o) const {
    CUSPFORGE_CHECK(F_ != nullptr && o.F_ != nullptr && F_->D() == o.F_->D());
}

bool FieldElement::is_integral() const {
    return x_.get_den() == 1 && y_.get_den() == 1;
}

FieldElement FieldElement::conj() const {
    // conj(w) = t - w.
    return FieldElement(F_, x_ + y_ * F_->t(), -y_);
}

Rat FieldElement::norm() const {
    // N(x + y*w) = x^2 + t*x*y - c*y^2.
    return x_ * x_ + Rat(F_->t()) * x_ * y_ - Rat(F_->c()) * y_ * y_;
}

Rat FieldElement::trace() const { return 2 * x_ + Rat(F_->t()) * y_; }

FieldElement FieldElement::inverse() const {
    Rat n = norm();
    if (n == 0) throw internal_error("inverse of zero field element");
    FieldElement cb = conj();
    return FieldElement(F_, cb.x_ / n, cb.y_ / n);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    return FieldElement(F_, x_ + o.x_, y_ + o.y_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    return FieldElement(F_, x_ - o.x_, y_ - o.y_);
}

FieldElement FieldElement::operator-() const {
    return FieldElement(F_, -x_, -y_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    // (x1 + y1 w)(x2 + y2 w) with w^2 = t*w + c.
    Rat yy = y_ * o.y_;
    Rat x = x_ * o.x_ + Rat(F_->c()) * yy;
    Rat y = x_ * o.y_ + y_ * o.x_ + Rat(F_->t()) * yy;
    return FieldElement(F_, x, y);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    return *this * o.inverse();
}

FieldElement FieldElement::operator*(const Rat& r) const {
    return FieldElement(F_, x_ * r, y_ * r);
}

FieldElement FieldElement::operator/(const Rat& r) const {
    if (r == 0) throw internal_error("division by zero rational");
    return FieldElement(F_, x_ / r, y_ / r);
}

bool FieldElement::operator==(const FieldElement& o) const {
    check_same(o);
    return x_ == o.x_ && y_ == o.y_;
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement r = F_->one();
    FieldElement b = *this;
    unsigned long u = static_cast<unsigned long>(e);
    while (u) {
        if (u & 1) r = r * b;
        b = b * b;
        u >>= 1;
    }
    return r;
}

int sign_of_quadratic(const Rat& a, const Rat& b, long D) {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with b^2 * D exactly.
    Rat lhs = a * a, rhs = b * b * Rat(D);
    int cmpr = cmp(lhs, rhs);
    if (cmpr == 0) return 0;  // cannot occur for D nonsquare, but be exact
    // |a| > |b|sqrt(D) ? sign(a) : sign(b sqrt(D)).
    return cmpr > 0 ? sa : sb;
}

int FieldElement::sign_at(int i) const {
    // x + y*w = a + b*sqrt(D) with a = x + y*t/2, b = +-y/2 (t = 1) or
    // a = x, b = +-y (t = 0).
    Rat a, b;
    if (F_->t() == 1) {
        a = x_ + y_ / 2;
        b = y_ / 2;
    } else {
        a = x_;
        b = y_;
    }
    if (i == 1) b = -b;
    return sign_of_quadratic(a, b, F_->D());
}

std::array<int, 2> FieldElement::sign_vector() const {
    return {sign_at(0), sign_at(1)};
}

bool FieldElement::is_totally_positive() const {
    return sign_at(0) > 0 && sign_at(1) > 0;
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    if (y_ == 0) {
        os << x_;
    } else {
        bool printed = false;
        if (x_ != 0) {
            os << x_;
            printed = true;
        }
        if (y_ > 0 && printed) os << "+";
        if (y_ == -1)
            os << "-";
        else if (y_ != 1)
            os << y_ << "*";
        os << "w";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
    return os << e.to_string();
}

}  // namespace cuspforge
