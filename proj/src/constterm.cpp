#include "cuspforge/constterm.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cuspforge {
namespace {

FractionalIdeal ring(const RealQuadraticField& F) {
    return FractionalIdeal::ring_of_integers(F);
}

long cyclotomic_degree(long m) {
    return static_cast<long>(cyclotomic_polynomial(m).size()) - 1;
}

// The transport sign picked up by a constant-term entry along a label
// isomorphism with line-component scale u: the sign of N(u), raised to k.
int transport_sign(const CuspBasis& basis, const FieldElement& u) {
    if (basis.mod2 || basis.k % 2 == 0) return 1;
    Rat nu = u.norm();
    CUSPFORGE_CHECK(nu != 0);
    return nu > 0 ? 1 : -1;
}

CycQ char_value(const GroupCharacter& chi, const std::vector<Int>& coords) {
    return CycQ::from_root(chi.value(coords));
}

CycQ char_value_inv(const GroupCharacter& chi, const std::vector<Int>& coords) {
    return CycQ::from_root(chi.value(coords).inverse());
}

// Integral class representatives coprime to `avoid`, indexed by class.
std::vector<FractionalIdeal> coprime_reps(const RayClassGroup& G,
                                          const FractionalIdeal& avoid) {
    return narrow_class_multipliers(G, avoid);
}

FractionalIdeal coprimality_modulus(const CuspBasis& basis) {
    FractionalIdeal avoid = basis.n;
    if (basis.p > 0)
        avoid = avoid * FractionalIdeal::principal(
                            basis.field().element(Rat(basis.p), Rat(0)));
    return avoid;
}

}  // namespace

// ---- RElem ---------------------------------------------------------------

RElem RElem::operator+(const RElem& o) const {
    CUSPFORGE_CHECK(comp.size() == o.comp.size());
    RElem r = *this;
    for (std::size_t i = 0; i < comp.size(); ++i) r.comp[i] = r.comp[i] + o.comp[i];
    return r;
}

RElem RElem::operator-(const RElem& o) const {
    CUSPFORGE_CHECK(comp.size() == o.comp.size());
    RElem r = *this;
    for (std::size_t i = 0; i < comp.size(); ++i) r.comp[i] = r.comp[i] - o.comp[i];
    return r;
}

RElem RElem::operator*(const RElem& o) const {
    CUSPFORGE_CHECK(comp.size() == o.comp.size());
    RElem r = *this;
    for (std::size_t i = 0; i < comp.size(); ++i) r.comp[i] = r.comp[i] * o.comp[i];
    return r;
}

RElem RElem::operator*(const CycQ& c) const {
    RElem r = *this;
    for (CycQ& x : r.comp) x = x * c;
    return r;
}

RElem RElem::operator*(const Rat& q) const {
    RElem r = *this;
    for (CycQ& x : r.comp) x = x * q;
    return r;
}

bool RElem::is_zero() const {
    for (const CycQ& x : comp)
        if (!x.is_zero()) return false;
    return true;
}

bool RElem::is_scalar() const {
    for (std::size_t i = 1; i < comp.size(); ++i)
        if (comp[i] != comp[0]) return false;
    return !comp.empty();
}

const CycQ& RElem::value() const {
    CUSPFORGE_CHECK(is_scalar());
    return comp[0];
}

std::string RElem::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < comp.size(); ++i) {
        if (i) os << ", ";
        os << comp[i].to_string();
    }
    os << ")";
    return os.str();
}

// ---- CuspBasis -----------------------------------------------------------

const DiamondStep& CuspBasis::step(std::size_t class_index) const {
    auto it = step_cache_.find(class_index);
    if (it != step_cache_.end()) return it->second;
    std::size_t nc = cusps.size();
    DiamondStep st;
    st.perm.assign(nc, nc);
    st.sign.assign(nc, 1);
    if (class_index == 0) {
        for (std::size_t i = 0; i < nc; ++i) st.perm[i] = i;
    } else {
        const FractionalIdeal& N = G->representative(class_index);
        for (std::size_t j = 0; j < nc; ++j) {
            CuspLabel D = rescale_label(diamond_act(N, cusps[j].label));
            bool matched = false;
            for (std::size_t i = 0; i < nc; ++i) {
                auto w = cusp_equiv(D, cusps[i].label);
                if (!w) continue;
                CUSPFORGE_CHECK(st.perm[i] == nc);  // the action is a bijection
                st.perm[i] = j;
                st.sign[i] = transport_sign(*this, w->u);
                matched = true;
                break;
            }
            CUSPFORGE_CHECK(matched);
        }
        for (std::size_t i = 0; i < nc; ++i) CUSPFORGE_CHECK(st.perm[i] < nc);
    }
    return step_cache_.emplace(class_index, std::move(st)).first->second;
}

CuspBasisPtr make_cusp_basis(const RealQuadraticField& F,
                             const FractionalIdeal& n, const Int& p, long k,
                             bool mod2) {
    auto b = std::make_shared<CuspBasis>();
    b->F = &F;
    b->n = n;
    b->p = p;
    b->k = k;
    b->mod2 = mod2;
    b->G = std::make_shared<RayClassGroup>(F, n, true);
    if (!mod2) b->chars = compatible_characters(*b->G, k).chars;
    std::vector<Cusp> all =
        p > 0 ? enumerate_p_unramified_cusps(F, n, p) : enumerate_all_cusps(F, n);
    for (const Cusp& c : all)
        if (mod2 || is_admissible(c.label, k)) b->cusps.push_back(c);
    return b;
}

ConstantTermVector zero_vector(CuspBasisPtr basis) {
    ConstantTermVector v;
    v.basis = basis;
    v.entries.assign(basis->cusps.size(), RElem::zero(basis->width()));
    return v;
}

ConstantTermVector ConstantTermVector::operator+(
    const ConstantTermVector& o) const {
    CUSPFORGE_CHECK(basis == o.basis);
    ConstantTermVector r = *this;
    for (std::size_t i = 0; i < entries.size(); ++i)
        r.entries[i] = r.entries[i] + o.entries[i];
    return r;
}

ConstantTermVector ConstantTermVector::operator-(
    const ConstantTermVector& o) const {
    CUSPFORGE_CHECK(basis == o.basis);
    ConstantTermVector r = *this;
    for (std::size_t i = 0; i < entries.size(); ++i)
        r.entries[i] = r.entries[i] - o.entries[i];
    return r;
}

// ---- GroupRingImage ------------------------------------------------------

GroupRingImage::GroupRingImage(CuspBasisPtr basis) : basis_(std::move(basis)) {
    CUSPFORGE_CHECK(!basis_->mod2);
    CUSPFORGE_CHECK(!basis_->chars.empty());
    for (const GroupCharacter& c : basis_->chars)
        CUSPFORGE_CHECK(c.m == basis_->chars[0].m);
}

RElem GroupRingImage::canonical_value(std::size_t class_index) const {
    const RayClassGroup& G = *basis_->G;
    std::vector<Int> coords = G.coords(class_index);
    RElem r;
    for (const GroupCharacter& chi : basis_->chars)
        r.comp.push_back(char_value(chi, coords));
    return r;
}

RElem GroupRingImage::canonical_value(const FractionalIdeal& N) const {
    return canonical_value(basis_->G->class_index(N));
}

RElem GroupRingImage::scaled_idempotent(std::size_t chi_index) const {
    CUSPFORGE_CHECK(chi_index < basis_->chars.size());
    RElem r = RElem::zero(basis_->chars.size());
    r.comp[chi_index] = CycQ(Rat(basis_->G->order()));
    return r;
}

RElem GroupRingImage::image_of(const std::vector<CycQ>& coeffs) const {
    const RayClassGroup& G = *basis_->G;
    CUSPFORGE_CHECK(coeffs.size() == G.size());
    RElem r = RElem::zero(basis_->chars.size());
    for (std::size_t g = 0; g < G.size(); ++g) {
        std::vector<Int> coords = G.coords(g);
        for (std::size_t t = 0; t < basis_->chars.size(); ++t)
            r.comp[t] = r.comp[t] + coeffs[g] * char_value(basis_->chars[t], coords);
    }
    return r;
}

void GroupRingImage::ensure_hnf() const {
    if (hnf_ready_) return;
    const RayClassGroup& G = *basis_->G;
    long m = basis_->chars[0].m;
    long phi = cyclotomic_degree(m);
    std::size_t s = basis_->chars.size();
    ZMatrix M(G.size() * static_cast<std::size_t>(phi),
              s * static_cast<std::size_t>(phi));
    for (std::size_t g = 0; g < G.size(); ++g) {
        std::vector<Int> coords = G.coords(g);
        for (long i = 0; i < phi; ++i) {
            std::size_t row = g * phi + static_cast<std::size_t>(i);
            for (std::size_t t = 0; t < s; ++t) {
                CycQ val =
                    (CycQ::root(m, i) * char_value(basis_->chars[t], coords))
                        .promote(m);
                const std::vector<Rat>& co = val.coeffs();
                for (long l = 0; l < phi; ++l) {
                    Rat c = l < static_cast<long>(co.size()) ? co[l] : Rat(0);
                    CUSPFORGE_CHECK(c.get_den() == 1);
                    M(row, t * phi + static_cast<std::size_t>(l)) = c.get_num();
                }
            }
        }
    }
    image_hnf_ = M.hnf();
    hnf_ready_ = true;
}

bool GroupRingImage::contains(const RElem& x) const {
    CUSPFORGE_CHECK(x.comp.size() == basis_->chars.size());
    ensure_hnf();
    long m = basis_->chars[0].m;
    long phi = cyclotomic_degree(m);
    std::size_t s = basis_->chars.size();
    std::vector<Rat> cur(s * static_cast<std::size_t>(phi), Rat(0));
    for (std::size_t t = 0; t < s; ++t) {
        CycQ xt = x.comp[t].promote(m);
        const std::vector<Rat>& co = xt.coeffs();
        for (std::size_t l = 0; l < co.size(); ++l)
            cur[t * phi + l] = co[l];
    }
    const ZMatrix& H = image_hnf_;
    for (std::size_t r = 0; r < H.rows(); ++r) {
        std::size_t pc = 0;
        while (pc < H.cols() && H(r, pc) == 0) ++pc;
        if (pc == H.cols()) continue;
        Rat y = cur[pc] / Rat(H(r, pc));
        if (y == 0) continue;
        Int den(y.get_den());
        if (basis_->p > 0) {
            if (divides(basis_->p, den)) return false;
        } else if (den != 1) {
            return false;
        }
        for (std::size_t c = pc; c < H.cols(); ++c) cur[c] -= y * Rat(H(r, c));
    }
    for (const Rat& c : cur)
        if (c != 0) return false;
    return true;
}

// ---- diamond action and projections --------------------------------------

ConstantTermVector diamond_act_const(const FractionalIdeal& N,
                                     const ConstantTermVector& v) {
    const CuspBasis& basis = *v.basis;
    if (!N.is_integral())
        throw invalid_input("diamond operator requires an integral ideal");
    if ((N + coprimality_modulus(basis)) != ring(basis.field()))
        throw invalid_input("diamond operator requires coprimality to p*n");
    const DiamondStep& st = basis.step(basis.G->class_index(N));
    ConstantTermVector out;
    out.basis = v.basis;
    out.entries.reserve(v.entries.size());
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
        RElem e = v.entries[st.perm[i]];
        if (st.sign[i] < 0) e = e * Rat(-1);
        out.entries.push_back(std::move(e));
    }
    return out;
}

ConstantTermVector scale_vector(const ConstantTermVector& v, const RElem& c) {
    ConstantTermVector out = v;
    for (RElem& e : out.entries) e = e * c;
    return out;
}

ConstantTermVector isotypic_project(const ConstantTermVector& v,
                                    const GroupCharacter& chi, bool* exact) {
    const CuspBasis& basis = *v.basis;
    bool known = false;
    for (const GroupCharacter& c : basis.chars) known = known || c == chi;
    if (!known)
        throw parity_mismatch("character parity does not match the weight");
    const RayClassGroup& G = *basis.G;
    ConstantTermVector acc = zero_vector(v.basis);
    for (std::size_t c = 0; c < G.size(); ++c) {
        CycQ z = char_value_inv(chi, G.coords(c));
        const DiamondStep& st = basis.step(c);
        for (std::size_t i = 0; i < acc.entries.size(); ++i) {
            RElem e = v.entries[st.perm[i]] * z;
            if (st.sign[i] < 0) e = e * Rat(-1);
            acc.entries[i] = acc.entries[i] + e;
        }
    }
    Int ord = G.order();
    bool divide = basis.p <= 0 || !divides(basis.p, ord);
    if (divide)
        for (RElem& e : acc.entries) e = e * make_rat(Int(1), ord);
    if (exact) *exact = divide;
    return acc;
}

ConstantTermVector specialize(const ConstantTermVector& v,
                              std::size_t chi_index) {
    const CuspBasis& basis = *v.basis;
    CUSPFORGE_CHECK(chi_index < basis.chars.size());
    ConstantTermVector out;
    out.basis = v.basis;
    for (const RElem& e : v.entries)
        out.entries.push_back(RElem::scalar(e.comp[chi_index], basis.width()));
    return out;
}

std::size_t isotypic_rank(CuspBasisPtr basis, const GroupCharacter& chi) {
    const RayClassGroup& G = *basis->G;
    std::size_t nc = basis->cusps.size();
    std::vector<char> seen(nc, 0);
    std::size_t rank = 0;
    for (std::size_t i = 0; i < nc; ++i) {
        if (seen[i]) continue;
        // The orbit of cusp i under the class group.
        std::vector<std::size_t> orbit;
        for (std::size_t c = 0; c < G.size(); ++c) {
            std::size_t j = basis->step(c).perm[i];
            if (!seen[j]) {
                seen[j] = 1;
                orbit.push_back(j);
            }
        }
        // The character contributes one dimension iff it matches the k-th
        // power of the sign character on the stabilizer of the orbit.
        StabilizerData S = stabilizer(basis->cusps[i].label, G);
        bool ok = true;
        for (const StabilizerEntry& e : S.elements) {
            int s = basis->k % 2 == 0 ? 1 : e.sgn;
            if (char_value(chi, G.coords(e.index)) != CycQ(Rat(s))) ok = false;
        }
        if (ok) ++rank;
    }
    return rank;
}

// ---- the explicit character-valued vector --------------------------------

ConstantTermVector build_B(CuspBasisPtr basis) {
    const RealQuadraticField& F = basis->field();
    if (basis->mod2) throw invalid_input("character-valued vector needs exact coefficients");
    if (!is_admissible_weight(F, basis->n, basis->k))
        throw parity_mismatch("weight is not admissible for this level");
    CUSPFORGE_CHECK(!basis->chars.empty());
    const RayClassGroup& G = *basis->G;
    GroupRingImage R(basis);

    ConstantTermVector B = zero_vector(basis);
    std::vector<char> have(basis->cusps.size(), 0);

    RayClassGroup Clplus(F, ring(F), true);
    std::vector<FractionalIdeal> mult = narrow_class_multipliers(Clplus, basis->n);
    for (const FractionalIdeal& t : mult) {
        CuspLabel C0 = standard_cusp(F, basis->n, t);
        for (std::size_t j = 0; j < G.size(); ++j) {
            CuspLabel D = rescale_label(diamond_act(G.representative(j), C0));
            // The entry on this translate is the canonical-character value
            // of the inverse class.
            RElem val;
            std::vector<Int> coords = G.coords(j);
            for (const GroupCharacter& chi : basis->chars)
                val.comp.push_back(char_value_inv(chi, coords));
            bool matched = false;
            for (std::size_t i = 0; i < basis->cusps.size(); ++i) {
                auto w = cusp_equiv(D, basis->cusps[i].label);
                if (!w) continue;
                CUSPFORGE_CHECK(basis->cusps[i].unramified);
                RElem cand = val * Rat(transport_sign(*basis, w->u));
                if (have[i]) {
                    // Independence of the (component, class) presentation.
                    CUSPFORGE_CHECK(B.entries[i] == cand);
                } else {
                    B.entries[i] = cand;
                    have[i] = 1;
                }
                matched = true;
                break;
            }
            CUSPFORGE_CHECK(matched);
        }
    }
    for (std::size_t i = 0; i < basis->cusps.size(); ++i)
        CUSPFORGE_CHECK(static_cast<bool>(have[i]) == basis->cusps[i].unramified);

    // Exact isotypy for the canonical character, on every class.
    std::vector<FractionalIdeal> reps =
        coprime_reps(G, coprimality_modulus(*basis));
    for (std::size_t c = 0; c < G.size(); ++c) {
        ConstantTermVector lhs = diamond_act_const(reps[c], B);
        ConstantTermVector rhs = scale_vector(B, R.canonical_value(c));
        CUSPFORGE_CHECK(lhs == rhs);
    }
    return B;
}

FractionalIdeal presented_intersection_ideal(const Mat2& A,
                                             const FractionalIdeal& t_lambda) {
    const RealQuadraticField& F = t_lambda.field();
    FractionalIdeal td_inv = (t_lambda * different(F)).inverse();
    std::vector<FieldElement> gens;
    if (!A.a.is_zero()) gens.push_back(A.a);
    if (!A.c.is_zero()) {
        gens.push_back(A.c * td_inv.basis_element(0));
        gens.push_back(A.c * td_inv.basis_element(1));
    }
    if (gens.empty()) throw invalid_input("presentation matrix is singular");
    FractionalIdeal J = FractionalIdeal::from_generators(F, gens);
    return FractionalIdeal::principal(A.det()) * J.inverse();
}

RElem normalized_entry(const ConstantTermVector& v, const Mat2& A,
                       const FractionalIdeal& t_lambda) {
    const CuspBasis& basis = *v.basis;
    const RealQuadraticField& F = basis.field();
    FieldElement det = A.det();
    if (det.is_zero() || !det.is_totally_positive())
        throw invalid_input("presentation matrix must have totally positive determinant");
    Lattice2 H = Lattice2::direct_sum(t_lambda * different(F), ring(F));
    Mat2 At = A.transpose();
    CuspLabel C{basis.n,
                ComponentLabel{H.apply(At), At.apply(Vec2{F.zero(), F.one()}),
                               {1, 1}},
                Line::infinity(F)};
    if (!label_is_valid(C)) throw invalid_input("invalid cusp presentation");
    C = rescale_label(C);
    for (std::size_t i = 0; i < basis.cusps.size(); ++i) {
        auto w = cusp_equiv(C, basis.cusps[i].label);
        if (!w) continue;
        return v.entries[i] * Rat(transport_sign(basis, w->u));
    }
    throw invalid_input("presented cusp is not indexed by this vector");
}

ConstantTermVector ones_vector(const RealQuadraticField& F,
                               const FractionalIdeal& n, long k) {
    CuspBasisPtr basis = make_cusp_basis(F, n, Int(0), k, /*mod2=*/k % 2 != 0);
    ConstantTermVector v;
    v.basis = basis;
    v.entries.assign(basis->cusps.size(),
                     RElem::scalar(CycQ(Rat(1)), basis->width()));
    return v;
}

long int_valuation(const Int& n, const Int& p) {
    CUSPFORGE_CHECK(n != 0 && p > 1);
    Int m = n;
    long v = 0;
    while (divides(p, m)) {
        m = divexact(m, p);
        ++v;
    }
    return v;
}

LiftTarget lift_target(const std::vector<ConstantTermVector>& per_char,
                       long m) {
    if (per_char.empty()) throw invalid_input("no character inputs");
    CuspBasisPtr basis = per_char[0].basis;
    for (const ConstantTermVector& v : per_char)
        if (v.basis != basis)
            throw invalid_input("character inputs use different cusp bases");
    if (basis->p <= 1 || !is_prime(basis->p))
        throw invalid_input("lifting target needs a prime residue characteristic");
    std::size_t s = basis->chars.size();
    if (per_char.size() != s)
        throw invalid_input("expected one input vector per character");
    const RayClassGroup& G = *basis->G;
    Int ord = G.order();
    long vp = int_valuation(ord, basis->p);
    if (m < vp)
        throw invalid_input("exponent below the p-valuation of the group order");
    Int pm = pow_int(basis->p, static_cast<unsigned long>(m));

    // Inputs must be scalar-valued, divisible by p^m, and isotypic for
    // their character.
    std::vector<FractionalIdeal> reps =
        coprime_reps(G, coprimality_modulus(*basis));
    for (std::size_t t = 0; t < s; ++t) {
        for (const RElem& e : per_char[t].entries) {
            if (!e.is_scalar() || !e.value().is_integral() ||
                !e.value().divisible_by(pm))
                throw invalid_input("entries are not divisible by p^m");
        }
        for (std::size_t c = 0; c < G.size(); ++c) {
            ConstantTermVector lhs = diamond_act_const(reps[c], per_char[t]);
            ConstantTermVector rhs = scale_vector(
                per_char[t], RElem::scalar(char_value(basis->chars[t], G.coords(c)),
                                           basis->width()));
            if (lhs != rhs)
                throw invalid_input("input vector is not isotypic for its character");
        }
    }

    Rat quotient = make_rat(ord, pm);
    LiftTarget out;
    out.quotient = quotient;
    out.quotient_valuation = vp - m;
    out.target = zero_vector(basis);
    for (std::size_t i = 0; i < basis->cusps.size(); ++i)
        for (std::size_t t = 0; t < s; ++t)
            out.target.entries[i].comp[t] =
                per_char[t].entries[i].value() * quotient;

    GroupRingImage R(basis);
    for (const RElem& e : out.target.entries) CUSPFORGE_CHECK(R.contains(e));
    for (std::size_t t = 0; t < s; ++t) {
        ConstantTermVector spec = specialize(out.target, t);
        ConstantTermVector expect =
            scale_vector(per_char[t], RElem::scalar(CycQ(Rat(1)) * quotient,
                                                    basis->width()));
        CUSPFORGE_CHECK(spec == expect);
    }
    return out;
}

// ---- truncated q-expansion index sets ------------------------------------

FieldElement totally_positive_unit(const RealQuadraticField& F) {
    FieldElement eps = F.fundamental_unit();
    if (eps.is_totally_positive()) return eps;
    if ((-eps).is_totally_positive()) return -eps;
    return eps * eps;
}

namespace {

// Deterministic comparison key for orbit canonicalization.
bool qindex_less(const FieldElement& a, const FieldElement& b) {
    Rat ta = a.trace(), tb = b.trace();
    if (ta != tb) return ta < tb;
    if (a.x() != b.x()) return a.x() < b.x();
    return a.y() < b.y();
}

}  // namespace

FieldElement qindex_orbit_rep(const FieldElement& mu, const FieldElement& x) {
    if (x.is_zero()) return x;
    CUSPFORGE_CHECK(x.is_totally_positive());
    CUSPFORGE_CHECK(mu.is_totally_positive() && mu.norm() == 1);
    FieldElement cur = x;
    FieldElement inv = mu.inverse();
    while (qindex_less(cur * mu, cur)) cur = cur * mu;
    while (qindex_less(cur * inv, cur)) cur = cur * inv;
    CUSPFORGE_CHECK(!qindex_less(cur * mu, cur));
    return cur;
}

std::vector<FieldElement> qindex_representatives(const CuspLabel& C,
                                                 const Rat& T) {
    const RealQuadraticField& F = C.field();
    CuspData dC = cusp_data(C);
    FieldElement mu = totally_positive_unit(F).pow(dC.Uc_exponent);
    const FractionalIdeal& M = dC.M;

    // Box bounds: a totally positive element of trace <= T has both
    // embeddings in (0, T), so its w-coordinate is bounded by T/sqrt(disc)
    // and its rational coordinate by (T + |t| T / sqrt(disc)) / 2; the
    // integer square root of disc underestimates sqrt(disc), which only
    // enlarges the box.
    Int sd = isqrt(F.disc());
    CUSPFORGE_CHECK(sd >= 1);
    Rat ybound = T / Rat(sd);
    Rat tb = Rat(F.t() >= 0 ? F.t() : -F.t());
    Rat xbound = (T + tb * ybound) / 2;

    // Invert the rational coordinate matrix of the ideal basis.
    const ZMatrix& bm = M.basis();
    Rat den(M.den());
    Rat b00 = Rat(bm(0, 0)) / den, b01 = Rat(bm(0, 1)) / den;
    Rat b10 = Rat(bm(1, 0)) / den, b11 = Rat(bm(1, 1)) / den;
    Rat det = b00 * b11 - b01 * b10;
    CUSPFORGE_CHECK(det != 0);
    // (n0, n1) = (X, Y) * B^{-1}; bound each coordinate by the box.
    auto absr = [](const Rat& q) { return q < 0 ? Rat(-q) : q; };
    Rat i00 = b11 / det, i01 = -b01 / det, i10 = -b10 / det, i11 = b00 / det;
    Rat bound0 = absr(i00) * xbound + absr(i10) * ybound;
    Rat bound1 = absr(i01) * xbound + absr(i11) * ybound;
    long B0 = to_long(fdiv(Int(bound0.get_num()), Int(bound0.get_den()))) + 1;
    long B1 = to_long(fdiv(Int(bound1.get_num()), Int(bound1.get_den()))) + 1;

    std::set<std::string> seen;
    std::vector<FieldElement> reps;
    for (long n0 = -B0; n0 <= B0; ++n0)
        for (long n1 = -B1; n1 <= B1; ++n1) {
            if (n0 == 0 && n1 == 0) continue;
            FieldElement e = F.element(Rat(n0) * b00 + Rat(n1) * b10,
                                       Rat(n0) * b01 + Rat(n1) * b11);
            if (!e.is_totally_positive() || e.trace() > T) continue;
            FieldElement r = qindex_orbit_rep(mu, e);
            if (r.trace() > T) continue;  // canonical member outside the window
            if (seen.insert(r.to_string()).second) reps.push_back(r);
        }
    std::sort(reps.begin(), reps.end(), qindex_less);
    std::vector<FieldElement> out;
    out.push_back(F.zero());
    out.insert(out.end(), reps.begin(), reps.end());
    return out;
}

FieldElement stabilizer_qindex_unit(const CuspLabel& C,
                                    const FractionalIdeal& N) {
    CuspLabel CN = rescale_label(diamond_act(N, C));
    auto w = cusp_equiv(CN, C);
    if (!w) throw invalid_input("class does not stabilize the cusp");
    FieldElement xi = w->v / w->u;
    auto sd = unit_log(C.field(), xi);  // checks that xi is a unit
    (void)sd;
    return xi;
}

TruncatedQExpansion truncated_qexpansion(const CuspLabel& C, const Rat& T) {
    TruncatedQExpansion q{C, T, qindex_representatives(C, T), {}};
    q.coefficients.assign(q.indices.size(), CycQ(Rat(0)));
    return q;
}

}  // namespace cuspforge
