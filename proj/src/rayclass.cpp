#include "cuspforge/rayclass.hpp"

#include <set>
#include <tuple>

namespace cuspforge {

namespace {

// Smallest integer strictly greater than sigma_1(x), for positive x.
Int ceil_bound(const FieldElement& x) {
    const RealQuadraticField& F = *x.field();
    Int M(1);
    while ((x - F.element(Rat(M), Rat(0))).sign_at(0) >= 0) {
        ++M;
        CUSPFORGE_CHECK(M < 100000000);
    }
    return M;
}

std::optional<FieldElement> integral_generator(const FractionalIdeal& J) {
    const RealQuadraticField& F = J.field();
    Rat nq = J.norm();
    CUSPFORGE_CHECK(nq.get_den() == 1);
    Int N = nq.get_num();
    Int M = ceil_bound(F.fundamental_unit());
    // A generator, if any, can be unit-adjusted so both embeddings have
    // absolute value at most sqrt(N * eps); then |y| <= 2 sqrt(N M) and
    // |x| <= 2 sqrt(N M) in the {1, w} coordinates.
    Int B = 2 * (isqrt(N * M) + 1) + 2;
    // For each y, |N(x + y w)| = N is a quadratic in x; solve it exactly
    // instead of scanning x.
    Int t(F.t());
    Int disc_f = t * t + 4 * F.c();
    for (Int y = 0; y <= B; ++y) {
        for (int s : {1, -1}) {
            Int dq = disc_f * y * y + 4 * s * N;
            if (dq < 0) continue;
            Int r;
            if (!is_square(dq, &r)) continue;
            for (int pm : {1, -1}) {
                Int num = -t * y + pm * r;
                if (fmod(num, 2) != 0) continue;
                Int x = divexact(num, 2);
                if (x == 0 && y == 0) continue;
                FieldElement a = F.element(Rat(x), Rat(y));
                CUSPFORGE_CHECK(abs(a.norm()) == Rat(N));
                if (J.contains(a)) return a;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<FieldElement> principal_generator(const FractionalIdeal& a) {
    CUSPFORGE_CHECK(a.is_valid());
    const RealQuadraticField& F = a.field();
    FractionalIdeal J = FractionalIdeal::from_z_basis(F, a.basis(), Int(1));
    auto g = integral_generator(J);
    if (!g) return std::nullopt;
    return *g / Rat(a.den());
}

Int class_number(const RealQuadraticField& F) {
    FractionalIdeal O = FractionalIdeal::ring_of_integers(F);
    RayClassGroup cl(F, O, /*narrow=*/false);
    return cl.order();
}

RayClassGroup::RayClassGroup(const RealQuadraticField& F,
                             const FractionalIdeal& n, bool narrow)
    : F_(&F), n_(n), narrow_(narrow), units_(unit_group_data(F, n)) {
    CUSPFORGE_CHECK(n.is_integral());
    n_factors_ = factor_ideal(n_);
    build();
}

bool RayClassGroup::is_coprime(const FractionalIdeal& a) const {
    for (const auto& [q, e] : n_factors_) {
        (void)e;
        if (ideal_valuation(a, q) != 0) return false;
    }
    return true;
}

bool RayClassGroup::equivalent(const FractionalIdeal& a,
                               const FractionalIdeal& b) const {
    CUSPFORGE_CHECK(is_coprime(a) && is_coprime(b));
    FractionalIdeal c = a * b.inverse();
    auto g = principal_generator(c);
    if (!g) return false;
    const FieldElement& eps = units_.fund_unit;
    FieldElement x = *g;
    for (long j = 0; j < units_.eps_order_mod_n; ++j) {
        for (int s : {1, -1}) {
            FieldElement y = s == 1 ? x : -x;
            if (mult_congruent_one(y, n_factors_)) {
                if (!narrow_) return true;
                auto sv = y.sign_vector();
                for (const auto& t : units_.u1_signs)
                    if (t == sv) return true;
            }
        }
        x = x * eps;
    }
    return false;
}

namespace {

// Babai-style rounding of x against the Z-basis of the ideal L, leaving a
// small representative of x + L.
FieldElement reduce_mod_ideal(const FieldElement& x, const FractionalIdeal& L) {
    FieldElement b0 = L.basis_element(0), b1 = L.basis_element(1);
    // Solve x = k0*b0 + k1*b1 over Q (coordinates are a 2x2 system).
    Rat det = b0.x() * b1.y() - b0.y() * b1.x();
    CUSPFORGE_CHECK(det != 0);
    Rat k0 = (x.x() * b1.y() - x.y() * b1.x()) / det;
    Rat k1 = (b0.x() * x.y() - b0.y() * x.x()) / det;
    auto round_rat = [](const Rat& q) {
        return fdiv(2 * Int(q.get_num()) + Int(q.get_den()),
                    2 * Int(q.get_den()));
    };
    return x - b0 * Rat(round_rat(k0)) - b1 * Rat(round_rat(k1));
}

}  // namespace

// Shrinks a representative: returns an integral ideal of small norm in the
// same ray class (same modulus and positivity convention), or c itself if
// no multiplier is found in the search box.
static FractionalIdeal reduce_in_ray_class(const FractionalIdeal& c,
                                           const FractionalIdeal& n,
                                           bool narrow) {
    const RealQuadraticField& F = c.field();
    FractionalIdeal cinv = c.inverse();
    // Particular alpha0 in cinv ∩ (1 + n): solve 1 = x + y, x in cinv, y in n.
    Int L = lcm(cinv.den(), n.den());
    ZMatrix S(4, 2);
    Int fa = divexact(L, cinv.den()), fb = divexact(L, n.den());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            S(i, j) = cinv.basis()(i, j) * fa;
            S(2 + i, j) = n.basis()(i, j) * fb;
        }
    auto sol = S.solve_left({L, Int(0)});
    CUSPFORGE_CHECK(sol.has_value());
    FieldElement alpha0 =
        cinv.basis_element(0) * Rat((*sol)[0]) + cinv.basis_element(1) * Rat((*sol)[1]);
    FractionalIdeal Lam = cinv.intersect(n);
    // alpha0 is defined up to Lam; recentre it near 1 so the search box
    // below stays small.
    FieldElement one = F.one();
    FieldElement base = reduce_mod_ideal(alpha0 - one, Lam) + one;
    FieldElement b0 = Lam.basis_element(0), b1 = Lam.basis_element(1);
    for (long K : {2L, 4L, 8L}) {
        FieldElement best;
        Rat best_norm;
        bool found = false;
        for (long i = -K; i <= K; ++i)
            for (long j = -K; j <= K; ++j) {
                FieldElement a = base + b0 * Rat(i) + b1 * Rat(j);
                if (a.is_zero()) continue;
                if (narrow && !a.is_totally_positive()) continue;
                Rat an = abs(a.norm());
                if (!found || an < best_norm) {
                    best = a;
                    best_norm = an;
                    found = true;
                }
            }
        if (found) {
            FractionalIdeal out = c * best;
            CUSPFORGE_CHECK(out.is_integral());
            return out;
        }
    }
    return c;
}

Int RayClassGroup::target_order() const {
    // Index formula: h * #(O/n)^* * (narrow ? 4 : 1) / #image of O^* in
    // (O/n)^* x {signs}.
    Int h = class_number(*F_);
    ResidueRing R(*F_, n_);
    Int phi = R.unit_count();
    Int total = h * phi;
    if (narrow_) total *= 4;
    // Image of the unit group, generated by -1 and eps.
    using Key = std::tuple<Int, Int, int, int>;
    auto key = [&](const FieldElement& u) {
        auto r = R.reduce(u);
        auto s = u.sign_vector();
        return narrow_ ? Key{r.first, r.second, s[0], s[1]}
                       : Key{r.first, r.second, 1, 1};
    };
    std::set<Key> image;
    std::vector<FieldElement> gens = {-F_->one(), units_.fund_unit};
    std::vector<FieldElement> frontier = {F_->one()};
    image.insert(key(F_->one()));
    std::vector<FieldElement> elems = frontier;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<FieldElement> next;
        for (const FieldElement& e : elems)
            for (const FieldElement& g : gens) {
                FieldElement p = e * g;
                // Reduce the stored element so coordinates stay bounded:
                // only the residue and signs matter.
                if (image.insert(key(p)).second) {
                    next.push_back(p);
                    grew = true;
                }
            }
        elems.insert(elems.end(), next.begin(), next.end());
        CUSPFORGE_CHECK(elems.size() < 100000);
    }
    return divexact(total, Int(static_cast<long>(image.size())));
}

void RayClassGroup::build() {
    const RealQuadraticField& F = *F_;
    FractionalIdeal O = FractionalIdeal::ring_of_integers(F);
    auto mul = [this](const FractionalIdeal& a, const FractionalIdeal& b) {
        return reduce_in_ray_class(a * b, n_, narrow_);
    };
    auto eq = [this](const FractionalIdeal& a, const FractionalIdeal& b) {
        return equivalent(a, b);
    };
    builder_ = std::make_shared<AbelianGroupBuilder<FractionalIdeal>>(O, mul, eq);

    bool complete_set = n_.is_ring_of_integers() && !narrow_;
    std::optional<Int> target;
    if (!complete_set) target = target_order();

    // Candidate primes in increasing norm order.
    std::vector<PrimeIdeal> cands;
    for (Int p = 2; p < 300; ++p) {
        if (!is_prime(p)) continue;
        for (const PrimeIdeal& P : primes_above(F, p)) cands.push_back(P);
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const PrimeIdeal& a, const PrimeIdeal& b) {
                         return a.norm() < b.norm();
                     });
    for (const PrimeIdeal& P : cands) {
        if (complete_set) {
            // Minkowski: primes of norm <= sqrt(disc)/2 generate.
            if (4 * P.norm() * P.norm() > F.disc()) break;
        } else {
            if (builder_->order() == *target) break;
            if (!is_coprime(P.ideal)) continue;
        }
        gens_.push_back(P.ideal);
        builder_->add_generator(P.ideal);
    }
    if (target) CUSPFORGE_CHECK(builder_->order() == *target);
}

std::vector<Int> RayClassGroup::dlog(const FractionalIdeal& a) const {
    if (!is_coprime(a)) throw invalid_input("ideal is not coprime to the modulus");
    return coords(class_index(a));
}

std::size_t RayClassGroup::class_index(const FractionalIdeal& a) const {
    if (!is_coprime(a)) throw invalid_input("ideal is not coprime to the modulus");
    for (std::size_t i = 0; i < builder().size(); ++i)
        if (equivalent(a, builder().element(i))) return i;
    throw internal_error("class not found in the representative table");
}

}  // namespace cuspforge
