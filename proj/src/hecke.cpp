#include "cuspforge/hecke.hpp"

namespace cuspforge {

bool is_admissible_weight(const RealQuadraticField& F, const FractionalIdeal& n,
                          long k) {
    // U_{1,n} is generated by one unit (and possibly -1, of norm 1), so
    // the condition reduces to the generator's norm.
    UnitGroupData u = unit_group_data(F, n);
    Rat nu = u.u1_generator.norm();
    CUSPFORGE_CHECK(nu == 1 || nu == -1);
    return nu == 1 || k % 2 == 0;
}

CompatibleCharacters compatible_characters(const RayClassGroup& G, long k) {
    CUSPFORGE_CHECK(G.narrow());
    const RealQuadraticField& F = G.field();
    const FractionalIdeal& n = G.modulus();
    CompatibleCharacters out;
    out.admissible = is_admissible_weight(F, n, k);
    if (!out.admissible) return out;  // no character satisfies the identity

    // Kernel of the narrow-to-wide projection: classes that are (alpha)
    // with alpha = 1 (mod n); for each, the witness alpha is found by
    // sweeping units over a wide-principal generator.
    auto n_factors = factor_ideal(n);
    const UnitGroupData& units = G.units();
    for (std::size_t i = 0; i < G.size(); ++i) {
        const FractionalIdeal& rep = G.representative(i);
        auto g = principal_generator(rep);
        if (!g) continue;  // not even wide-principal
        std::optional<FieldElement> witness;
        FieldElement x = *g;
        for (long j = 0; j < units.eps_order_mod_n && !witness; ++j) {
            for (int s : {1, -1}) {
                FieldElement y = s == 1 ? x : -x;
                if (mult_congruent_one(y, n_factors)) {
                    witness = y;
                    break;
                }
            }
            x = x * units.fund_unit;
        }
        if (!witness) continue;  // wide-principal but not with alpha = 1 mod n
        int sign = sgn(witness->norm());
        out.witnesses.push_back({i, *witness, sign});
    }
    CUSPFORGE_CHECK(!out.witnesses.empty());  // the trivial class is there

    for (const GroupCharacter& chi : G.characters()) {
        bool ok = true;
        for (const KernelWitness& w : out.witnesses) {
            int target = (k % 2 == 0) ? 1 : w.norm_sign;
            RootOfUnity want = target == 1 ? RootOfUnity(1, 0) : RootOfUnity(2, 1);
            if (!(chi.value(G.coords(w.class_index)) == want)) {
                ok = false;
                break;
            }
        }
        if (ok) out.chars.push_back(chi);
    }
    return out;
}

}  // namespace cuspforge
