// Acceptance suite: one pass/fail line per criterion, exercising the
// library end to end on a fixed catalog of fields, levels, residue
// characteristics, and weights. Exits with the number of failed criteria.

#include <chrono>
#include <iostream>
#include <random>
#include <vector>

#include "cuspforge/constterm.hpp"
#include "cuspforge/rigidity.hpp"

using namespace cuspforge;

namespace {

int g_failures = 0;

void report(int num, const std::string& name, bool ok) {
    std::cout << "criterion " << num << " (" << name << "): "
              << (ok ? "PASS" : "FAIL") << std::endl;
    if (!ok) ++g_failures;
}

void note(const std::string& msg) {
    std::cout << "  note: " << msg << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

FractionalIdeal ZI(const RealQuadraticField& F, long n) {
    return FractionalIdeal::principal(F.element(n, 0));
}

FieldElement random_element(const RealQuadraticField& F, std::mt19937_64& rng,
                            long bound, long maxden, bool allow_zero) {
    std::uniform_int_distribution<long> c(-bound, bound);
    std::uniform_int_distribution<long> d(1, maxden);
    for (;;) {
        FieldElement e =
            F.element(make_rat(c(rng), d(rng)), make_rat(c(rng), d(rng)));
        if (allow_zero || !e.is_zero()) return e;
    }
}

Mat2 random_glpos(const RealQuadraticField& F, std::mt19937_64& rng, long bound,
                  long maxden) {
    for (;;) {
        Mat2 g = {random_element(F, rng, bound, maxden, true),
                  random_element(F, rng, bound, maxden, true),
                  random_element(F, rng, bound, maxden, true),
                  random_element(F, rng, bound, maxden, true)};
        FieldElement det = g.det();
        if (!det.is_zero() && det.is_totally_positive()) return g;
    }
}

FractionalIdeal random_ideal(const RealQuadraticField& F, std::mt19937_64& rng) {
    return FractionalIdeal::from_generators(
        F,
        {random_element(F, rng, 9, 3, false), random_element(F, rng, 9, 3, false)});
}

// A totally positive element that is 1 (mod n) and coprime to p, found by
// a small scan; its principal class must act trivially everywhere.
FieldElement principal_one_mod_n(const RealQuadraticField& F,
                                 const FractionalIdeal& n, const Int& p) {
    for (long a = -4; a <= 4; ++a)
        for (long b = -4; b <= 4; ++b) {
            if (a == 0 && b == 0) continue;
            FieldElement x = F.element(1, 0) + F.element(a, b) *
                                                   F.element(Rat(rational_content(n)), Rat(0));
            if (!x.is_totally_positive()) continue;
            Rat nm = x.norm();
            if (p > 0 && fmod(Int(nm.get_num()), p) == 0) continue;
            return x;
        }
    throw internal_error("no principal representative found");
}

// The catalog shared by the constant-term criteria.
struct Entry {
    long D, n, p, k;
};
const std::vector<Entry> kCatalog = {
    {3, 1, 5, 2}, {3, 1, 2, 3}, {5, 2, 3, 2}, {2, 3, 3, 2}, {13, 1, 3, 2}};

// ---- criteria ------------------------------------------------------------

bool criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20260824);
    for (long D : {2L, 3L, 5L, 13L}) {
        RealQuadraticField F(D);
        for (int trial = 0; trial < 50; ++trial) {
            Lattice2 H = Lattice2::direct_sum(random_ideal(F, rng),
                                              random_ideal(F, rng));
            LineSplit sp = lattice_intersect_line(H, Line::infinity(F));
            Mat2 g = random_glpos(F, rng, 10, 2);
            NormalizingIdeals nrm = normalizing_ideal(sp.a, sp.b, g);
            Lattice2 gH = H.apply(g.transpose());
            LineSplit s = lattice_intersect_line(gH, Line::infinity(F));
            if (nrm.I != s.a) return false;
        }
    }
    double dt = seconds_since(t0);
    if (dt >= 60.0) {
        note("normalizing-ideal sweep took " + std::to_string(dt) + "s");
        return false;
    }
    return true;
}

bool criterion2() {
    RealQuadraticField F5(5), F3(3);
    for (long k = 1; k <= 8; ++k) {
        if (is_admissible_weight(F5, ZI(F5, 1), k) != (k % 2 == 0)) return false;
        if (!is_admissible_weight(F3, ZI(F3, 1), k)) return false;
    }
    return true;
}

bool criterion3() {
    RealQuadraticField F(3);
    RayClassGroup G(F, ZI(F, 1), /*narrow=*/true);
    if (G.order() != 2) return false;
    for (long k = 1; k <= 6; ++k) {
        CompatibleCharacters cc = compatible_characters(G, k);
        if (!cc.admissible || cc.chars.size() != 1) return false;
        if (cc.chars[0].is_trivial() != (k % 2 == 0)) return false;
    }
    return true;
}

bool criterion4() {
    const long counts[4][2] = {{2, 1}, {3, 2}, {5, 1}, {13, 1}};
    for (auto [D, expect] : counts) {
        RealQuadraticField F(D);
        if (static_cast<long>(enumerate_all_cusps(F, ZI(F, 1)).size()) != expect)
            return false;
        if (static_cast<long>(enumerate_unramified_cusps(F, ZI(F, 1)).size()) !=
            expect)
            return false;
    }
    // Unramified counts at composite levels: one fiber of size
    // #(O/n)^*/#im(O^*) over each level-one cusp.
    struct Lv {
        long D, n;
    };
    for (Lv lv : {Lv{3, 5}, Lv{5, 6}, Lv{2, 3}}) {
        RealQuadraticField F(lv.D);
        FractionalIdeal n = ZI(F, lv.n);
        std::size_t unram = 0;
        for (const Cusp& c : enumerate_all_cusps(F, n))
            if (c.unramified) ++unram;
        Int expect = Int(enumerate_all_cusps(F, ZI(F, 1)).size()) *
                     unit_image_index(F, n);
        if (Int(unram) != expect) return false;
    }
    return true;
}

bool criterion5() {
    struct Lv {
        long D, n, p, k;
    };
    std::mt19937_64 rng(5150);
    for (Lv lv : {Lv{3, 1, 5, 2}, Lv{3, 1, 2, 3}, Lv{5, 2, 3, 2}, Lv{2, 3, 3, 2},
                  Lv{3, 5, 0, 2}}) {
        RealQuadraticField F(lv.D);
        FractionalIdeal n = ZI(F, lv.n);
        RayClassGroup G(F, n, /*narrow=*/true);
        std::vector<Cusp> cusps = enumerate_all_cusps(F, n);
        FieldElement alpha = principal_one_mod_n(F, n, Int(lv.p));
        std::uniform_int_distribution<std::size_t> pick(0, G.size() - 1);
        std::uniform_int_distribution<std::size_t> pickc(0, cusps.size() - 1);

        CuspBasisPtr basis = make_cusp_basis(F, n, Int(lv.p), lv.k);
        ConstantTermVector B = build_B(basis);
        FractionalIdeal avoid = lv.p > 0 ? n * ZI(F, lv.p) : n;
        std::vector<FractionalIdeal> reps = narrow_class_multipliers(G, avoid);
        FractionalIdeal O = FractionalIdeal::ring_of_integers(F);

        for (int trial = 0; trial < 100; ++trial) {
            const FractionalIdeal& N1 = reps[pick(rng)];
            const FractionalIdeal& N2 = reps[pick(rng)];
            const CuspLabel& C = cusps[pickc(rng)].label;
            // Identity, composition, and triviality of totally positive
            // principal classes congruent to 1, on cusp labels...
            if (!cusp_equiv(diamond_act(O, C), C)) return false;
            if (!cusp_equiv(diamond_act(N1 * N2, C),
                            diamond_act(N1, diamond_act(N2, C))))
                return false;
            if (!cusp_equiv(diamond_act(FractionalIdeal::principal(alpha), C), C))
                return false;
            // ...and on constant-term vectors.
            ConstantTermVector v = diamond_act_const(N2, B);
            if (diamond_act_const(N1 * N2, B) != diamond_act_const(N1, v))
                return false;
            if (diamond_act_const(O, B) != B) return false;
            if (diamond_act_const(FractionalIdeal::principal(alpha), B) != B)
                return false;
        }
    }
    return true;
}

bool criterion6() {
    std::mt19937_64 rng(66);
    std::uniform_int_distribution<long> d(-4, 4);
    for (const Entry& e : kCatalog) {
        RealQuadraticField F(e.D);
        FractionalIdeal n = ZI(F, e.n);
        // Construction re-runs the representative-independence and exact
        // isotypy assertions internally; reaching here means both hold.
        CuspBasisPtr basis = make_cusp_basis(F, n, Int(e.p), e.k);
        ConstantTermVector B = build_B(basis);
        GroupRingImage R(basis);
        RayClassGroup Clp(F, ZI(F, 1), /*narrow=*/true);
        std::vector<FractionalIdeal> comps = narrow_class_multipliers(Clp, n);
        FractionalIdeal O = FractionalIdeal::ring_of_integers(F);
        int valid = 0;
        for (int trial = 0; trial < 5000 && valid < 50; ++trial) {
            Mat2 A = random_glpos(F, rng, 2, 1);
            const FractionalIdeal& t = comps[trial % comps.size()];
            // Reconstruct the presented cusp to know whether it lies in
            // the unramified support of the vector.
            Mat2 At = A.transpose();
            Lattice2 H = Lattice2::direct_sum(t * different(F), O);
            CuspLabel C{n,
                        ComponentLabel{H.apply(At),
                                       At.apply(Vec2{F.zero(), F.one()}),
                                       {1, 1}},
                        Line::infinity(F)};
            if (!label_is_valid(C)) continue;
            C = rescale_label(C);
            RElem x;
            try {
                x = normalized_entry(B, A, t);
            } catch (const invalid_input&) {
                continue;  // cusp outside the indexed (admissible) set
            }
            if (is_unramified(C)) {
                FractionalIdeal a = presented_intersection_ideal(A, t);
                if (!basis->G->is_coprime(a)) continue;
                ++valid;
                if (x != R.canonical_value(a.inverse())) return false;
            } else {
                ++valid;
                if (!x.is_zero()) return false;
            }
        }
        if (valid < 50) return false;
    }
    return true;
}

bool criterion7() {
    bool twist_ok = true;
    bool free_ok = true;
    for (const Entry& e : kCatalog) {
        RealQuadraticField F(e.D);
        FractionalIdeal n = ZI(F, e.n);
        CuspBasisPtr basis = make_cusp_basis(F, n, Int(e.p), e.k);
        const RayClassGroup& G = *basis->G;
        for (std::size_t i = 0; i < basis->cusps.size(); ++i) {
            const CuspLabel& C = basis->cusps[i].label;
            StabilizerData S = stabilizer(C, G);
            CuspData dC = cusp_data(C);
            FieldElement mu = totally_positive_unit(F).pow(dC.Uc_exponent);
            auto reps = qindex_representatives(C, Rat(10));
            for (const StabilizerEntry& s : S.elements) {
                // The constant-term action of a stabilizing class fixes the
                // cusp and multiplies the entry by sgn^k.
                const DiamondStep& st = basis->step(s.index);
                int expect = (e.k % 2 == 0) ? 1 : s.sgn;
                if (st.perm[i] != i || st.sign[i] != expect) twist_ok = false;
                if (s.index == 0) continue;
                // Freeness of the nontrivial stabilizer on the nonzero
                // truncated q-indices.
                FieldElement xi =
                    stabilizer_qindex_unit(C, G.representative(s.index));
                if (!xi.is_totally_positive()) xi = -xi;
                for (std::size_t r = 1; r < reps.size(); ++r)
                    if (qindex_orbit_rep(mu, reps[r] * xi) == reps[r])
                        free_ok = false;
            }
        }
    }
    if (!free_ok) {
        note("sign-twist half holds; the freeness half fails structurally:");
        note("at the enumerated cusps the unit group U_C is all of U^+, so a");
        note("stabilizing class acts on q-index orbits through the trivial");
        note("quotient U^+/U_C and fixes every orbit; a nontrivial stabilizer");
        note("(e.g. the order-2 narrow class at level (1) over Q(sqrt 3))");
        note("therefore does not act freely on the nonzero indices.");
    }
    return twist_ok && free_ok;
}

bool criterion8() {
    struct Lv {
        long D, n;
    };
    for (Lv lv : {Lv{3, 5}, Lv{5, 2}, Lv{3, 1}}) {
        RealQuadraticField F(lv.D);
        FractionalIdeal n = ZI(F, lv.n);
        ConstantTermVector f2 = ones_vector(F, n, 2);
        ConstantTermVector f1 = ones_vector(F, n, 1);
        const RayClassGroup& G = *f2.basis->G;
        for (const FractionalIdeal& N : narrow_class_multipliers(G, n)) {
            if (diamond_act_const(N, f2) != f2) return false;
            if (diamond_act_const(N, f1) != f1) return false;
        }
        // Entrywise square of the weight-1 vector = weight-2 vector mod 2.
        if (f1.entries.size() != f2.entries.size()) return false;
        for (std::size_t i = 0; i < f1.entries.size(); ++i) {
            CycQ sq = f1.entries[i].comp[0] * f1.entries[i].comp[0];
            if (!(sq - f2.entries[i].comp[0]).divisible_by(2)) return false;
        }
    }
    return true;
}

bool criterion9() {
    std::mt19937_64 rng(909);
    std::uniform_int_distribution<long> d(-3, 3);
    for (const Entry& e : kCatalog) {
        RealQuadraticField F(e.D);
        CuspBasisPtr basis = make_cusp_basis(F, ZI(F, e.n), Int(e.p), e.k);
        GroupRingImage R(basis);
        const RayClassGroup& G = *basis->G;
        if (G.order() > 50) return false;
        // (#G) e_psi lies in the group-ring image for every character.
        for (std::size_t t = 0; t < basis->chars.size(); ++t)
            if (!R.contains(R.scaled_idempotent(t))) return false;
        // Lifting-target specialization on random divisible inputs.
        ConstantTermVector B = build_B(basis);
        long vp = int_valuation(G.order(), Int(e.p));
        for (int trial = 0; trial < 5; ++trial) {
            long m = vp + 1 + (trial % 2);
            Int pm = pow_int(Int(e.p), static_cast<unsigned long>(m));
            std::vector<ConstantTermVector> inputs;
            for (std::size_t t = 0; t < basis->chars.size(); ++t) {
                long c = d(rng);
                inputs.push_back(scale_vector(
                    B, RElem::scalar(CycQ(Rat(pm) * Rat(c)), basis->width())));
            }
            LiftTarget L = lift_target(inputs, m);
            if (L.quotient != make_rat(G.order(), pm)) return false;
            if (L.quotient_valuation != vp - m) return false;
            for (std::size_t t = 0; t < basis->chars.size(); ++t) {
                ConstantTermVector want = specialize(
                    scale_vector(inputs[t],
                                 RElem::scalar(CycQ(L.quotient), basis->width())),
                    t);
                if (specialize(L.target, t) != want) return false;
            }
        }
    }
    return true;
}

bool criterion10() {
    auto t0 = std::chrono::steady_clock::now();
    struct Rg {
        long D, n;
        bool rigid;
        const char* bound;  // "" = unpinned
    };
    const std::vector<Rg> catalog = {
        {5, 3, false, "720"},     {5, 7, false, "352800"},
        {5, 9, false, ""},        {5, 11, true, ""},
        {5, 21, false, ""},       {3, 5, true, "124800"},
        {3, 7, false, ""},        {3, 11, true, ""},
        {2, 5, true, "31200"},    {13, 5, true, "31200"}};
    for (const Rg& r : catalog) {
        RealQuadraticField F(r.D);
        FractionalIdeal n = ZI(F, r.n);
        if (is_rigid_full_level(F, n) != r.rigid) return false;
        Int b = inertia_bound(F, n, Int(0));
        if (r.bound[0] != '\0' && b != Int(r.bound)) return false;
        if (!divides(unit_image_order(F, n) * b, 2 * gl2_order(F, n)))
            return false;
    }
    // CRT multiplicativity of the GL_2 order over coprime factors.
    RealQuadraticField F5(5), F3(3);
    if (gl2_order(F5, ZI(F5, 21)) !=
        gl2_order(F5, ZI(F5, 3)) * gl2_order(F5, ZI(F5, 7)))
        return false;
    if (gl2_order(F3, ZI(F3, 35)) !=
        gl2_order(F3, ZI(F3, 5)) * gl2_order(F3, ZI(F3, 7)))
        return false;
    double dt = seconds_since(t0);
    if (dt >= 10.0) {
        note("rigidity catalog took " + std::to_string(dt) + "s");
        return false;
    }
    return true;
}

template <typename Fn>
void run(int num, const std::string& name, Fn fn) {
    bool ok = false;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        note(std::string("exception: ") + e.what());
        ok = false;
    }
    report(num, name, ok);
}

}  // namespace

int main() {
    run(1, "normalizing-ideal formula vs direct lattice intersection",
        criterion1);
    run(2, "admissible weights from unit norms", criterion2);
    run(3, "compatible finite-part characters", criterion3);
    run(4, "cusp counts and the unramified fiber formula", criterion4);
    run(5, "diamond action laws on cusps and constant-term vectors",
        criterion5);
    run(6, "auxiliary-vector assertions and the normalized-entry formula",
        criterion6);
    run(7, "stabilizer sign twist and q-index freeness", criterion7);
    run(8, "all-ones vector invariance and the mod-2 square", criterion8);
    run(9, "group-ring idempotent membership and lifting-target "
           "specialization",
        criterion9);
    run(10, "rigidity predicates and inertia bounds", criterion10);
    std::cout << (g_failures == 0 ? "all criteria passed"
                                  : std::to_string(g_failures) +
                                        " criterion(s) failed")
              << std::endl;
    return g_failures;
}
