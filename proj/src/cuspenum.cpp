#include "cuspforge/cuspenum.hpp"

#include <map>
#include <set>

namespace cuspforge {
namespace {

FractionalIdeal ring(const RealQuadraticField& F) {
    return FractionalIdeal::ring_of_integers(F);
}

// The transverse image of gamma: beta = pi_L(gamma1).
FieldElement gamma_projection(const CuspLabel& C) {
    return C.L.y() * C.alpha.gamma1.a - C.L.x() * C.alpha.gamma1.b;
}

// The ramification divisor ((beta) + n*b) * b^{-1}, an integral divisor of
// n which is invariant under label isomorphism.
FractionalIdeal ram_divisor(const CuspLabel& C, const LineSplit& sp) {
    FieldElement beta = gamma_projection(C);
    if (beta.is_zero()) return C.n;
    return (FractionalIdeal::principal(beta) + sp.b * C.n) * sp.b.inverse();
}

// Groups candidate labels by cheap isomorphism invariants so the exact
// equivalence test only runs within a bucket.
class Deduper {
  public:
    Deduper(const RayClassGroup& Clplus, const RayClassGroup& Cl)
        : Clplus_(&Clplus), Cl_(&Cl) {}

    // Returns the index of the equivalence class of C among the cusps
    // accepted so far, inserting C as a new class if needed; `fresh` is set
    // accordingly.
    std::size_t insert(std::vector<Cusp>& out, const CuspLabel& C, bool& fresh) {
        LineSplit sp = lattice_intersect_line(C.alpha.H, C.L);
        const RealQuadraticField& F = C.field();
        std::size_t comp = Clplus_->class_index(C.alpha.H.det_ideal() *
                                               different(F).inverse());
        std::string key = std::to_string(comp) + "|" +
                          std::to_string(Cl_->class_index(sp.a)) + "|" +
                          ram_divisor(C, sp).to_string();
        for (std::size_t i : buckets_[key]) {
            if (cusp_equiv(out[i].label, C)) {
                fresh = false;
                return i;
            }
        }
        fresh = true;
        out.push_back(Cusp{C, comp, is_unramified(C)});
        buckets_[key].push_back(out.size() - 1);
        return out.size() - 1;
    }

  private:
    const RayClassGroup* Clplus_;
    const RayClassGroup* Cl_;
    std::map<std::string, std::vector<std::size_t>> buckets_;
};

}  // namespace

std::vector<FractionalIdeal> narrow_class_multipliers(const RayClassGroup& Clplus,
                                                      const FractionalIdeal& n) {
    const RealQuadraticField& F = Clplus.field();
    std::vector<FractionalIdeal> reps(Clplus.size());
    reps[0] = ring(F);
    std::size_t remaining = Clplus.size() - 1;
    for (Int m = 2; remaining > 0; ++m) {
        CUSPFORGE_CHECK(m < 100000);
        std::vector<PrimeIdeal> primes;
        if (is_prime(m))
            for (const PrimeIdeal& P : primes_above(F, m))
                if (P.norm() == m) primes.push_back(P);
        Int s = isqrt(m);
        if (s * s == m && is_prime(s))
            for (const PrimeIdeal& P : primes_above(F, s))
                if (P.norm() == m) primes.push_back(P);
        for (const PrimeIdeal& P : primes) {
            if ((P.ideal + n) != ring(F)) continue;
            std::size_t idx = Clplus.class_index(P.ideal);
            if (idx != 0 && !reps[idx].is_valid()) {
                reps[idx] = P.ideal;
                --remaining;
            }
        }
    }
    return reps;
}

Int unit_image_index(const RealQuadraticField& F, const FractionalIdeal& n) {
    ResidueRing R(F, n);
    std::set<ResidueRing::Elt> image;
    std::vector<ResidueRing::Elt> frontier = {R.one()};
    ResidueRing::Elt m1 = R.reduce(F.element(-1, 0));
    ResidueRing::Elt eps = R.reduce(F.fundamental_unit());
    while (!frontier.empty()) {
        ResidueRing::Elt x = frontier.back();
        frontier.pop_back();
        if (!image.insert(x).second) continue;
        frontier.push_back(R.mul(x, m1));
        frontier.push_back(R.mul(x, eps));
    }
    Int count = R.unit_count();
    Int sz(static_cast<unsigned long>(image.size()));
    CUSPFORGE_CHECK(count % sz == 0);
    return count / sz;
}

std::vector<Cusp> enumerate_unramified_cusps(const RealQuadraticField& F,
                                             const FractionalIdeal& n) {
    FractionalIdeal one = ring(F);
    RayClassGroup Clplus(F, one, true), Cl(F, one, false);
    RayClassGroup G(F, n, true);
    std::vector<FractionalIdeal> mult = narrow_class_multipliers(Clplus, n);
    std::vector<Cusp> out;
    Deduper dedup(Clplus, Cl);
    for (const FractionalIdeal& t : mult) {
        CuspLabel C = standard_cusp(F, n, t);
        for (std::size_t i = 0; i < G.size(); ++i) {
            CuspLabel D = rescale_label(diamond_act(G.representative(i), C));
            CUSPFORGE_CHECK(is_unramified(D));
            bool fresh;
            dedup.insert(out, D, fresh);
        }
    }
    if (n != one) {
        Int expected = Int(static_cast<unsigned long>(
                           enumerate_unramified_cusps(F, one).size())) *
                       unit_image_index(F, n);
        CUSPFORGE_CHECK(Int(static_cast<unsigned long>(out.size())) == expected);
    }
    return out;
}

std::vector<Cusp> enumerate_all_cusps(const RealQuadraticField& F,
                                      const FractionalIdeal& n) {
    FractionalIdeal one = ring(F);
    RayClassGroup Clplus(F, one, true), Cl(F, one, false);
    std::vector<FractionalIdeal> mult = narrow_class_multipliers(Clplus, n);
    std::vector<Cusp> out;
    Deduper dedup(Clplus, Cl);
    for (const FractionalIdeal& t : mult) {
        CuspLabel base = standard_cusp(F, n, t);
        std::set<std::string> seen_lines;
        int quiet = 0;
        for (long B = 1; quiet < 2 || B <= 3; ++B) {
            CUSPFORGE_CHECK(B <= 12);  // runaway guard
            bool found_new = false;
            std::vector<Line> shell;
            if (B == 1) shell.push_back(Line(F.one(), F.zero()));
            for (long p = -B; p <= B; ++p)
                for (long q = -B; q <= B; ++q)
                    for (long r = 1; r <= B; ++r) {
                        if (std::max({std::abs(p), std::abs(q), r}) != B) continue;
                        shell.push_back(Line(F.element(p, q), F.element(r, 0)));
                    }
            for (const Line& L : shell) {
                if (!seen_lines.insert(L.to_string()).second) continue;
                CuspLabel C{n, base.alpha, L};
                bool fresh;
                dedup.insert(out, C, fresh);
                found_new = found_new || fresh;
            }
            quiet = found_new ? 0 : quiet + 1;
        }
    }
    // The unramified part is complete iff it matches the counting formula.
    std::size_t unram = 0;
    for (const Cusp& c : out) unram += c.unramified ? 1 : 0;
    Int expected = n == one ? Int(static_cast<unsigned long>(unram))
                            : Int(static_cast<unsigned long>(
                                  enumerate_unramified_cusps(F, one).size())) *
                                  unit_image_index(F, n);
    CUSPFORGE_CHECK(Int(static_cast<unsigned long>(unram)) == expected);
    return out;
}

std::vector<Cusp> enumerate_p_unramified_cusps(const RealQuadraticField& F,
                                               const FractionalIdeal& n,
                                               const Int& p) {
    FractionalIdeal P = p_part(n, p);
    if (P == n) return enumerate_unramified_cusps(F, n);
    std::vector<Cusp> all = enumerate_all_cusps(F, n);
    if (P == ring(F)) return all;
    std::vector<Cusp> out;
    for (const Cusp& c : all)
        if (is_p_unramified(c.label, p)) out.push_back(c);
    return out;
}

StabilizerData stabilizer(const CuspLabel& C, const RayClassGroup& G) {
    const RealQuadraticField& F = C.field();
    CUSPFORGE_CHECK(G.narrow());
    CuspData dC = cusp_data(C);
    StabilizerData out;
    out.Uc_exponent = dC.Uc_exponent;
    const FieldElement& eps = F.fundamental_unit();
    long tp = eps.is_totally_positive() ? 1 : 2;
    // Sign vectors realized by units.
    std::set<std::array<int, 2>> unit_signs;
    for (int s : {1, -1})
        for (int j : {0, 1}) {
            FieldElement u = (s == 1 ? F.one() : -F.one()) * eps.pow(j);
            unit_signs.insert(u.sign_vector());
        }
    for (std::size_t i = 0; i < G.size(); ++i) {
        const FractionalIdeal& N = G.representative(i);
        CuspLabel CN = rescale_label(diamond_act(N, C));
        auto w = cusp_equiv(CN, C);
        if (!w) continue;
        // N is wide-principal because a tensor N is isomorphic to a.
        auto beta = principal_generator(N);
        CUSPFORGE_CHECK(beta.has_value());
        int sgn_val = unit_signs.count(beta->sign_vector()) ? 1 : -1;
        std::optional<long> psi;
        CuspData dN = cusp_data(CN);
        if (dN.Mstar == dC.Mstar) {
            FieldElement xi = w->v * w->u.inverse();
            auto [sg, d] = unit_log(F, xi);
            CUSPFORGE_CHECK(sg == 1 && d % tp == 0);
            long e = d / tp;
            long m = out.Uc_exponent;
            psi = ((e % m) + m) % m;
        }
        out.elements.push_back({i, sgn_val, psi, *w});
    }
    CUSPFORGE_CHECK(!out.elements.empty());  // the identity stabilizes
    return out;
}

}  // namespace cuspforge
