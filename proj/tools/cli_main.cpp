// Command-line front end: parses field/modulus/weight configuration,
// dispatches to the library, and serializes exact results as JSON (or CSV
// for tabular subcommands).
//
// Exit codes: 0 success, 2 invalid input (including unparsable ideal
// strings), 3 parity mismatch (inadmissible weight / wrong-parity
// character), 4 internal assertion failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include "cuspforge/constterm.hpp"
#include "cuspforge/rigidity.hpp"

using json = nlohmann::ordered_json;
using namespace cuspforge;

namespace {

constexpr const char* kSchema = "cusp-forge/1";

// ---- exact input grammar -------------------------------------------------

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw invalid_input("empty number in: '" + s + "'");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
              c == '/'))
            throw invalid_input("bad number: '" + s + "'");
    try {
        Rat q(s);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw invalid_input("bad number: '" + s + "'");
    }
}

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

// Elements are written x+y*w with rational x, y, e.g. "3/2-5*w", "w", "-2".
FieldElement parse_element(const RealQuadraticField& F, const std::string& raw) {
    std::string s = strip(raw);
    if (s.empty()) throw invalid_input("empty element");
    Rat x(0), y(0);
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+') ++i;
        else if (s[i] == '-') { sign = -1; ++i; }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty()) throw invalid_input("bad element: '" + raw + "'");
        if (term.back() == 'w') {
            term.pop_back();
            if (!term.empty() && term.back() == '*') term.pop_back();
            y += sign * (term.empty() ? Rat(1) : parse_rat(term));
        } else {
            x += sign * parse_rat(term);
        }
        i = j;
    }
    return F.element(x, y);
}

// Ideals: "(g)" principal, "(g1, g2)" two-generator, or
// "hnf:[[a,b],[0,c]]/d" giving the Z-basis rows over a common denominator.
FractionalIdeal parse_ideal(const RealQuadraticField& F, const std::string& raw) {
    std::string s = strip(raw);
    if (s.rfind("hnf:", 0) == 0) {
        std::string body = s.substr(4);
        Int den(1);
        std::size_t slash = body.rfind('/');
        if (slash != std::string::npos && body.find(']', slash) == std::string::npos) {
            den = Int(parse_rat(body.substr(slash + 1)).get_num());
            body = body.substr(0, slash);
        }
        json rows;
        try {
            rows = json::parse(body);
        } catch (const std::exception&) {
            throw invalid_input("bad hnf ideal: '" + raw + "'");
        }
        if (!rows.is_array() || rows.size() != 2 || !rows[0].is_array() ||
            rows[0].size() != 2 || rows[1].size() != 2 || den <= 0)
            throw invalid_input("bad hnf ideal: '" + raw + "'");
        ZMatrix m(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                if (!rows[r][c].is_number_integer())
                    throw invalid_input("bad hnf ideal: '" + raw + "'");
                m(r, c) = Int(rows[r][c].get<long>());
            }
        try {
            return FractionalIdeal::from_z_basis(F, m, den);
        } catch (const std::exception&) {
            throw invalid_input("rows are not a module basis: '" + raw + "'");
        }
    }
    if (s.size() < 3 || s.front() != '(' || s.back() != ')')
        throw invalid_input("bad ideal: '" + raw + "'");
    std::string body = s.substr(1, s.size() - 2);
    std::vector<FieldElement> gens;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = body.find(',', start);
        std::string piece = body.substr(start, comma - start);
        gens.push_back(parse_element(F, piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (gens.size() > 2) throw invalid_input("bad ideal: '" + raw + "'");
    bool all_zero = true;
    for (const auto& g : gens)
        if (!g.is_zero()) all_zero = false;
    if (all_zero) throw invalid_input("zero ideal: '" + raw + "'");
    if (gens.size() == 1) return FractionalIdeal::principal(gens[0]);
    return FractionalIdeal::from_generators(F, gens);
}

// ---- serialization -------------------------------------------------------

json ideal_json(const FractionalIdeal& a) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r)
        rows.push_back({a.basis()(r, 0).get_str(), a.basis()(r, 1).get_str()});
    return json{{"two_generator", a.to_string()},
                {"hnf", rows},
                {"den", a.den().get_str()},
                {"norm", a.norm().get_str()}};
}

json cyc_json(const CycQ& c) {
    return json(c.to_string());
}

json relem_json(const RElem& e) {
    json out = json::array();
    for (const CycQ& c : e.comp) out.push_back(cyc_json(c));
    return out;
}

json character_json(const GroupCharacter& chi) {
    json exps = json::array();
    for (const Int& e : chi.exps) exps.push_back(e.get_str());
    return json{{"exponents", exps},
                {"modulus", chi.m},
                {"order", chi.order()},
                {"trivial", chi.is_trivial()}};
}

void emit(const json& j, const std::string& format) {
    if (format == "csv") {
        // Flat key,value rendering for tabular consumers.
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_array()) {
                std::cout << it.key();
                for (const auto& v : it.value())
                    std::cout << ","
                              << (v.is_string() ? v.get<std::string>()
                                                : v.dump());
                std::cout << "\n";
            } else {
                std::cout << it.key() << ","
                          << (it.value().is_string()
                                  ? it.value().get<std::string>()
                                  : it.value().dump())
                          << "\n";
            }
        }
    } else {
        std::cout << j.dump(2) << "\n";
    }
}

// ---- shared options ------------------------------------------------------

struct Options {
    long D = 0;
    std::string modulus = "(1)";
    long p = 0;
    long k = 2;
    long char_index = -1;
    bool trivial_psi = false;
    bool narrow = false;
    bool mod2 = false;
    bool all_cusps = false;
    double trunc = 0.0;
    unsigned long seed = 0;
    std::string format = "json";
};

unsigned long effective_seed(unsigned long flag_seed) {
    if (const char* env = std::getenv("CUSP_FORGE_SEED")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
            throw invalid_input("bad CUSP_FORGE_SEED");
        }
    }
    return flag_seed;
}

// ---- subcommands ---------------------------------------------------------

int run_field(const Options& o) {
    RealQuadraticField F(o.D);
    json j{{"schema", kSchema},
           {"D", o.D},
           {"discriminant", F.disc().get_str()},
           {"omega_trace", F.t()},
           {"omega_norm", Int(-F.c()).get_str()},
           {"fundamental_unit", F.fundamental_unit().to_string()},
           {"fundamental_unit_norm", F.fundamental_unit().norm().get_str()},
           {"class_number", class_number(F).get_str()}};
    emit(j, o.format);
    return 0;
}

int run_classgroup(const Options& o) {
    RealQuadraticField F(o.D);
    FractionalIdeal n = parse_ideal(F, o.modulus);
    RayClassGroup G(F, n, o.narrow);
    json inv = json::array();
    for (const Int& d : G.invariants()) inv.push_back(to_long(d));
    json gens = json::array();
    for (const auto& g : G.generators()) gens.push_back(g.to_string());
    json j{{"schema", kSchema},
           {"field", o.D},
           {"modulus", n.to_string()},
           {"narrow", o.narrow},
           {"invariant_factors", inv},
           {"order", G.order().get_str()},
           {"generators", gens}};
    emit(j, o.format);
    return 0;
}

int run_hecke(const Options& o) {
    RealQuadraticField F(o.D);
    FractionalIdeal n = parse_ideal(F, o.modulus);
    RayClassGroup G(F, n, /*narrow=*/true);
    CompatibleCharacters cc = compatible_characters(G, o.k);
    json chars = json::array();
    for (const auto& chi : cc.chars) chars.push_back(character_json(chi));
    json j{{"schema", kSchema},
           {"field", o.D},
           {"modulus", n.to_string()},
           {"weight", o.k},
           {"admissible", cc.admissible},
           {"compatible_characters", chars}};
    emit(j, o.format);
    return 0;
}

int run_cusps(const Options& o) {
    RealQuadraticField F(o.D);
    FractionalIdeal n = parse_ideal(F, o.modulus);
    std::vector<Cusp> cusps;
    if (o.all_cusps)
        cusps = enumerate_all_cusps(F, n);
    else if (o.p > 0)
        cusps = enumerate_p_unramified_cusps(F, n, Int(o.p));
    else
        cusps = enumerate_unramified_cusps(F, n);
    json list = json::array();
    std::size_t unram = 0;
    for (const Cusp& c : cusps) {
        CuspData d = cusp_data(c.label);
        if (c.unramified) ++unram;
        list.push_back(json{{"component", c.component},
                            {"unramified", c.unramified},
                            {"intersection_ideal", d.a.to_string()},
                            {"projection_ideal", d.b.to_string()},
                            {"unit_exponent", d.Uc_exponent},
                            {"norm_char_order", d.eps_order}});
    }
    json j{{"schema", kSchema},
           {"field", o.D},
           {"modulus", n.to_string()},
           {"count", cusps.size()},
           {"unramified_count", unram},
           {"cusps", list}};
    emit(j, o.format);
    return 0;
}

int run_constant_term(const Options& o) {
    RealQuadraticField F(o.D);
    FractionalIdeal n = parse_ideal(F, o.modulus);
    CuspBasisPtr basis = make_cusp_basis(F, n, Int(o.p), o.k, o.mod2);
    ConstantTermVector B = build_B(basis);
    long chi_index = o.char_index;
    if (o.trivial_psi) {
        chi_index = -1;
        for (std::size_t i = 0; i < basis->chars.size(); ++i)
            if (basis->chars[i].is_trivial()) chi_index = static_cast<long>(i);
        if (chi_index < 0)
            throw parity_mismatch("no trivial character at this weight");
    }
    if (chi_index >= static_cast<long>(basis->width()))
        throw invalid_input("character index out of range");
    json entries = json::array();
    for (std::size_t i = 0; i < B.entries.size(); ++i) {
        const Cusp& c = basis->cusps[i];
        CuspData d = cusp_data(c.label);
        json e{{"component", c.component},
               {"intersection_ideal", d.a.to_string()}};
        if (chi_index >= 0)
            e["entry"] = cyc_json(B.entries[i].comp[chi_index]);
        else
            e["entry"] = relem_json(B.entries[i]);
        entries.push_back(e);
    }
    json j{{"schema", kSchema},
           {"field", o.D},
           {"modulus", n.to_string()},
           {"p", o.p},
           {"weight", o.k},
           {"characters", basis->chars.size()},
           {"cusp_count", basis->cusps.size()},
           {"entries", entries}};
    if (o.trunc > 0) {
        json qsets = json::array();
        Rat T = make_rat(static_cast<long>(o.trunc * 100), 100);
        for (const Cusp& c : basis->cusps) {
            auto qe = truncated_qexpansion(c.label, T);
            json idx = json::array();
            for (const FieldElement& x : qe.indices) idx.push_back(x.to_string());
            qsets.push_back(idx);
        }
        j["q_indices"] = qsets;
    }
    emit(j, o.format);
    return 0;
}

int run_rigidity(const Options& o) {
    RealQuadraticField F(o.D);
    FractionalIdeal n = parse_ideal(F, o.modulus);
    LevelReport r = level_report(F, n);
    json excl = json::array();
    for (const Int& q : r.good_primes_excluded) excl.push_back(q.get_str());
    json j{{"schema", kSchema},
           {"field", o.D},
           {"modulus", n.to_string()},
           {"rigid_full_level", r.rigid_full_level},
           {"rigid_gamma1", r.rigid_gamma1},
           {"gl2_order", gl2_order(F, n).get_str()},
           {"inertia_bound", r.inertia_bound.get_str()},
           {"good_primes_excluded", excl},
           {"conservative", r.conservative}};
    if (o.p > 0) {
        bool cons = false;
        j["p"] = o.p;
        j["p_is_good"] = is_good_prime(F, n, Int(o.p), &cons);
        j["p_verdict_conservative"] = cons;
    }
    emit(j, o.format);
    return 0;
}

int run_check(const Options& o) {
    RealQuadraticField F(o.D);
    FractionalIdeal n = parse_ideal(F, o.modulus);
    unsigned long seed = effective_seed(o.seed);
    std::mt19937_64 rng(seed);
    json checks = json::array();
    auto report = [&](const std::string& name, bool ok) {
        checks.push_back(json{{"name", name}, {"status", ok ? "ok" : "FAIL"}});
        return ok;
    };
    bool all_ok = true;

    // Unit norms decide weight admissibility.
    bool adm2 = is_admissible_weight(F, n, 2);
    all_ok &= report("weight 2 admissible", adm2);

    // Ray class groups agree with the index-formula counting built into
    // their constructors; exercise both flavors.
    RayClassGroup Gn(F, n, /*narrow=*/true);
    RayClassGroup Gw(F, n, /*narrow=*/false);
    all_ok &= report("narrow order multiple of wide order",
                     fmod(Gn.order(), Gw.order()) == 0);

    // Cusp enumeration: bounded-height search agrees with the orbit
    // counting formula (asserted inside enumerate_all_cusps).
    std::vector<Cusp> cusps = enumerate_all_cusps(F, n);
    all_ok &= report("cusp enumeration consistent", !cusps.empty());

    // Diamond action laws on random cusps and classes.
    bool laws = true;
    std::uniform_int_distribution<std::size_t> pick(0, Gn.size() - 1);
    std::uniform_int_distribution<std::size_t> pickc(0, cusps.size() - 1);
    for (int trial = 0; trial < 10; ++trial) {
        const FractionalIdeal& N1 = Gn.representative(pick(rng));
        const FractionalIdeal& N2 = Gn.representative(pick(rng));
        const CuspLabel& C = cusps[pickc(rng)].label;
        CuspLabel lhs = diamond_act(N1 * N2, C);
        CuspLabel rhs = diamond_act(N1, diamond_act(N2, C));
        if (!cusp_equiv(lhs, rhs)) laws = false;
        if (!cusp_equiv(diamond_act(FractionalIdeal::ring_of_integers(F), C),
                        C))
            laws = false;
    }
    all_ok &= report("diamond action laws", laws);

    // Constant-term vector of the canonical character (runs its two
    // defining consistency assertions) and the all-ones invariance.
    if (adm2) {
        CuspBasisPtr basis = make_cusp_basis(F, n, Int(0), 2);
        ConstantTermVector B = build_B(basis);
        all_ok &= report("auxiliary vector assertions", !B.entries.empty());
        ConstantTermVector ones = ones_vector(F, n, 2);
        bool inv = true;
        for (const auto& g : Gn.generators())
            if (diamond_act_const(g, ones) != ones) inv = false;
        all_ok &= report("all-ones vector diamond-invariant", inv);
    }

    json j{{"schema", kSchema},
           {"field", o.D},
           {"modulus", n.to_string()},
           {"seed", seed},
           {"checks", checks},
           {"all_ok", all_ok}};
    emit(j, o.format);
    return all_ok ? 0 : 4;
}

void add_common(CLI::App* cmd, Options& o, bool need_field = true) {
    auto* f = cmd->add_option("--field", o.D, "Squarefree D of Q(sqrt D)");
    if (need_field) f->required();
    cmd->add_option("--modulus", o.modulus,
                    "Level ideal: \"(g)\", \"(g1, g2)\" or "
                    "\"hnf:[[a,b],[0,c]]/d\"");
    cmd->add_option("--format", o.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cusp combinatorics of Hilbert modular varieties"};
    app.require_subcommand(1);
    Options o;

    CLI::App* c_field = app.add_subcommand("field", "Field invariants");
    add_common(c_field, o);

    CLI::App* c_cg = app.add_subcommand("classgroup", "Ray class group");
    add_common(c_cg, o);
    c_cg->add_flag("--narrow", o.narrow, "Narrow (totally positive) version");

    CLI::App* c_hk = app.add_subcommand("hecke", "Admissible weights and characters");
    add_common(c_hk, o);
    c_hk->add_option("--weight", o.k, "Parallel weight k")->required();

    CLI::App* c_cu = app.add_subcommand("cusps", "Cusp enumeration");
    add_common(c_cu, o);
    c_cu->add_option("--p", o.p, "Restrict to p-unramified cusps");
    c_cu->add_flag("--all", o.all_cusps, "Enumerate all cusps, not just unramified");

    CLI::App* c_ct = app.add_subcommand("constant-term",
                                        "Canonical constant-term vector");
    add_common(c_ct, o);
    c_ct->add_option("--p", o.p, "Residue characteristic")->required();
    c_ct->add_option("--weight", o.k, "Parallel weight k")->required();
    c_ct->add_option("--character", o.char_index, "Project to this character index");
    c_ct->add_flag("--trivial-psi", o.trivial_psi, "Project to the trivial character");
    c_ct->add_flag("--mod2", o.mod2, "Mod-2 coefficients");
    c_ct->add_option("--trunc", o.trunc, "Also list q-indices up to this trace");

    CLI::App* c_rg = app.add_subcommand("rigidity", "Rigidity and inertia report");
    add_common(c_rg, o);
    c_rg->add_option("--p", o.p, "Also test whether p is a good prime");

    CLI::App* c_ck = app.add_subcommand("check", "Run the invariant suite");
    add_common(c_ck, o);
    c_ck->add_option("--seed", o.seed, "Seed for randomized checks "
                                       "(CUSP_FORGE_SEED overrides)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_field->parsed()) return run_field(o);
        if (c_cg->parsed()) return run_classgroup(o);
        if (c_hk->parsed()) return run_hecke(o);
        if (c_cu->parsed()) return run_cusps(o);
        if (c_ct->parsed()) return run_constant_term(o);
        if (c_rg->parsed()) return run_rigidity(o);
        if (c_ck->parsed()) return run_check(o);
        return 2;
    } catch (const parity_mismatch& e) {
        std::cerr << "parity mismatch: " << e.what() << "\n";
        return 3;
    } catch (const invalid_input& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
