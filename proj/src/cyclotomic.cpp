#include "cuspforge/cyclotomic.hpp"

#include <map>
#include <sstream>

namespace cuspforge {

namespace {

// Exact division of integer polynomials (constant term first); remainder
// must vanish.
std::vector<Int> poly_divexact(const std::vector<Int>& num,
                               const std::vector<Int>& den) {
    std::vector<Int> r = num;
    CUSPFORGE_CHECK(!den.empty() && den.back() == 1);  // monic divisors only
    long dn = static_cast<long>(r.size()) - 1;
    long dd = static_cast<long>(den.size()) - 1;
    CUSPFORGE_CHECK(dn >= dd);
    std::vector<Int> q(dn - dd + 1, Int(0));
    for (long k = dn - dd; k >= 0; --k) {
        Int coef = r[k + dd];
        q[k] = coef;
        if (coef == 0) continue;
        for (long j = 0; j <= dd; ++j) r[k + j] -= coef * den[j];
    }
    for (const Int& v : r) CUSPFORGE_CHECK(v == 0);
    return q;
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(long m) {
    static std::map<long, std::vector<Int>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    CUSPFORGE_CHECK(m >= 1);
    // x^m - 1 divided by the cyclotomic polynomials of the proper divisors.
    std::vector<Int> num(m + 1, Int(0));
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d)
        if (m % d == 0) num = poly_divexact(num, cyclotomic_polynomial(d));
    return cache.emplace(m, std::move(num)).first->second;
}

RootOfUnity::RootOfUnity(long order, long exponent) : m(order) {
    CUSPFORGE_CHECK(order >= 1);
    e = ((exponent % order) + order) % order;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
    long M = to_long(lcm(Int(m), Int(o.m)));
    return RootOfUnity(M, e * (M / m) + o.e * (M / o.m));
}

RootOfUnity RootOfUnity::inverse() const { return RootOfUnity(m, -e); }

RootOfUnity RootOfUnity::pow(long k) const {
    // Reduce k mod m first so the multiplication below cannot overflow.
    long kr = ((k % m) + m) % m;
    return RootOfUnity(m, (e % m) * kr % m);
}

bool RootOfUnity::operator==(const RootOfUnity& o) const {
    // Equal as complex numbers: compare in the common order.
    long M = to_long(lcm(Int(m), Int(o.m)));
    return e * (M / m) % M == o.e * (M / o.m) % M;
}

CycQ CycQ::make(long m, std::vector<Rat> raw) {
    const std::vector<Int>& phi = cyclotomic_polynomial(m);
    std::size_t deg = phi.size() - 1;
    if (raw.size() < deg) raw.resize(deg, Rat(0));
    // Reduce modulo the monic polynomial phi.
    for (long k = static_cast<long>(raw.size()) - 1;
         k >= static_cast<long>(deg); --k) {
        Rat coef = raw[k];
        if (coef == 0) continue;
        raw[k] = 0;
        for (std::size_t j = 0; j < deg; ++j)
            raw[k - deg + j] -= coef * Rat(phi[j]);
    }
    raw.resize(deg);
    CycQ out;
    out.m_ = m;
    out.c_ = std::move(raw);
    return out;
}

CycQ CycQ::root(long m, long e) {
    e = ((e % m) + m) % m;
    std::vector<Rat> raw(m, Rat(0));
    raw[e] = 1;
    return make(m, std::move(raw));
}

CycQ CycQ::promote(long M) const {
    CUSPFORGE_CHECK(M % m_ == 0);
    if (M == m_) return *this;
    long f = M / m_;
    std::vector<Rat> raw(static_cast<std::size_t>(c_.size() - 1) * f + 1, Rat(0));
    for (std::size_t k = 0; k < c_.size(); ++k) raw[k * f] = c_[k];
    return make(M, std::move(raw));
}

CycQ CycQ::operator+(const CycQ& o) const {
    long M = to_long(lcm(Int(m_), Int(o.m_)));
    CycQ a = promote(M), b = o.promote(M);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

CycQ CycQ::operator-(const CycQ& o) const { return *this + (-o); }

CycQ CycQ::operator-() const {
    CycQ a = *this;
    for (Rat& r : a.c_) r = -r;
    return a;
}

CycQ CycQ::operator*(const CycQ& o) const {
    long M = to_long(lcm(Int(m_), Int(o.m_)));
    CycQ a = promote(M), b = o.promote(M);
    std::vector<Rat> raw(a.c_.size() + b.c_.size(), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            raw[i + j] += a.c_[i] * b.c_[j];
    }
    return make(M, std::move(raw));
}

CycQ CycQ::operator*(const Rat& r) const {
    CycQ a = *this;
    for (Rat& c : a.c_) c *= r;
    return a;
}

bool CycQ::operator==(const CycQ& o) const {
    long M = to_long(lcm(Int(m_), Int(o.m_)));
    return promote(M).c_ == o.promote(M).c_;
}

bool CycQ::is_zero() const {
    for (const Rat& r : c_)
        if (r != 0) return false;
    return true;
}

bool CycQ::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat CycQ::rational_value() const {
    CUSPFORGE_CHECK(is_rational());
    return c_[0];
}

bool CycQ::is_integral() const {
    for (const Rat& r : c_)
        if (r.get_den() != 1) return false;
    return true;
}

bool CycQ::divisible_by(const Int& d) const {
    CUSPFORGE_CHECK(is_integral());
    for (const Rat& r : c_)
        if (!divides(d, Int(r.get_num()))) return false;
    return true;
}

CycQ CycQ::divide_by(const Int& d) const {
    CUSPFORGE_CHECK(d != 0);
    return *this * make_rat(Int(1), d);
}

std::string CycQ::to_string() const {
    std::ostringstream os;
    os << "[z" << m_ << ":";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

}  // namespace cuspforge
