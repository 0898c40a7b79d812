#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "twistmatch/harness.hpp"
#include "twistmatch/parse.hpp"

using namespace twistmatch;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string field, field2, curve, curve2, twist;
    std::string format = "json";
    std::string out;
    i64 p = 0, pmax = 0, N = 0;
    int l = 2;
    u64 seed = 1;
    std::string d_list = "1,-1,2,-2,3,-3,5,-5,6,-6";
};

void emit(const RunConfig& cfg, const json& j, const std::string& text_form) {
    std::string payload = cfg.format == "json" ? j.dump(2) + "\n" : text_form;
    if (cfg.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw Error("cannot open output file " + cfg.out);
        f << payload;
    }
}

LocalCharL parse_twist(const std::string& text, int l, int nprimes) {
    if (text.empty()) return trivial_char(l, nprimes);
    LocalCharL chi = trivial_char(l, nprimes);
    int i = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (i >= nprimes) throw Error("twist has more values than primes over p");
        if (tok == "0") {
            chi.ram_exp[i] = 1;
        } else if (tok == "+1" || tok == "1") {
            chi.value_exp[i] = 0;
        } else if (tok == "-1") {
            if (l != 2) throw Error("-1 is an order-2 twist value");
            chi.value_exp[i] = 1;
        } else if (tok.rfind("z^", 0) == 0 || tok.rfind("zeta^", 0) == 0) {
            chi.value_exp[i] = mod_floor(std::stoll(tok.substr(tok.find('^') + 1)), l);
        } else {
            throw Error("bad twist value '" + tok + "'");
        }
        ++i;
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (i != nprimes) throw Error("twist needs one value per prime over p");
    return chi;
}

std::vector<i64> parse_int_list(const std::string& text) {
    std::vector<i64> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        out.push_back(std::stoll(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int cmd_split(const RunConfig& cfg) {
    NumberField K = parse_field(cfg.field);
    std::vector<PrimeIdeal> primes = split_prime(K, cfg.p);
    json j;
    j["field"] = K.to_string();
    j["p"] = cfg.p;
    j["primes"] = json::array();
    std::string text;
    for (const PrimeIdeal& P : primes) {
        j["primes"].push_back({{"prime", P.to_string()}, {"f", P.f}});
        text += P.to_string() + "  f=" + std::to_string(P.f) + "\n";
    }
    emit(cfg, j, text);
    return 0;
}

int cmd_lfactor(const RunConfig& cfg) {
    NumberField K = parse_field(cfg.field);
    EllipticCurveOverK E = parse_curve(K, cfg.curve);
    LocalDataFamily fam = curve_family(E, cfg.p);
    LocalCharL chi = parse_twist(cfg.twist, cfg.l, (int)fam.entries.size());
    FactorAtP factor = factor_at_p(fam, chi);
    json j = factor_to_json(factor);
    j["twist"] = assignment_to_json(fam.primes(), chi);
    emit(cfg, j, factor.poly.to_string() + "\n");
    return 0;
}

int demo_counterexample(const RunConfig& cfg) {
    i64 pmax = cfg.pmax ? cfg.pmax : 50;
    CounterexampleReport rep = counterexample_report(pmax);
    json j = counterexample_to_json(rep);
    if (cfg.N > 1) {
        // Dirichlet coefficients of both sides agree up to N
        NumberField K({1, 0, 1});
        EllipticCurveOverK E(K, K.theta(), K.zero());
        FieldIso conj(K, K, K.neg(K.theta()));
        EllipticCurveOverK E2 = apply_iso_to_curve(conj, E);
        std::map<i64, FactorAtP> fa, fb;
        for (i64 q = 2; q <= cfg.N; ++q) {
            if (!is_prime_i64(q)) continue;
            if (q == 2) {
                FactorAtP triv;
                triv.p = 2;
                triv.poly = CycPoly(2);
                fa[2] = triv;
                fb[2] = triv;
                continue;
            }
            LocalDataFamily fam = curve_family(E, q);
            fa[q] = factor_at_p(fam, trivial_char(2, (int)fam.entries.size()));
            LocalDataFamily fam2 = curve_family(E2, q);
            fb[q] = factor_at_p(fam2, trivial_char(2, (int)fam2.entries.size()));
        }
        DirichletCoeffs ca = dirichlet_expand(fa, cfg.N), cb = dirichlet_expand(fb, cfg.N);
        bool agree = true;
        for (i64 n2 = 1; n2 <= cfg.N; ++n2) agree = agree && ca.at(n2) == cb.at(n2);
        j["dirichlet_agree_up_to_N"] = agree;
        j["N"] = cfg.N;
    }
    bool ok = rep.all_factors_at_p_equal && rep.has_witness;
    std::string text = std::string("factors at p equal for all checked p: ") +
                       (rep.all_factors_at_p_equal ? "yes" : "NO") + "\n";
    if (rep.has_witness)
        text += "witness: " + rep.witness_prime.to_string() + " points " +
                std::to_string(rep.count_E) + " vs " + std::to_string(rep.count_conj) + "; " +
                rep.factor_E.to_string() + " vs " + rep.factor_conj.to_string() + "\n";
    emit(cfg, j, text);
    return ok ? 0 : 4;
}

int demo_extra_iso(const RunConfig& cfg) {
    i64 p = cfg.p ? cfg.p : 5;
    i64 qmax = cfg.pmax ? cfg.pmax : 1000;
    ExtraIsoReport rep = extra_iso_demo(p, qmax, parse_int_list(cfg.d_list));
    emit(cfg, extra_iso_to_json(rep),
         std::string("all factor equalities hold: ") + (rep.all_equal ? "yes" : "NO") + "\n");
    return rep.all_equal && rep.supersingular_pattern_ok ? 0 : 4;
}

int demo_recovery2(const RunConfig& cfg) {
    HiddenInstance inst;
    if (!cfg.field2.empty()) {
        NumberField K = parse_field(cfg.field);
        NumberField K2 = parse_field(cfg.field2);
        EllipticCurveOverK E = parse_curve(K, cfg.curve);
        EllipticCurveOverK E2 = parse_curve(K2, cfg.curve2);
        auto isos = find_isomorphisms(K, K2);
        if (isos.empty()) throw Error("fields are not isomorphic");
        inst = curve_instance(E, E2, isos.front(), cfg.p ? cfg.p : 5);
    } else {
        inst = random_quadratic_instance(cfg.seed);
    }
    auto oracle = make_oracle(inst);
    PrimeMatch match = reconstruct_quadratic(inst.known, *oracle, cfg.seed);
    bool equiv = observably_equivalent(inst, instance_from_match(inst.known, match, 2), cfg.seed);
    json j;
    j["instance"] = instance_to_json(inst);
    j["match"] = prime_match_to_json(match);
    j["observably_equivalent"] = equiv;
    emit(cfg, j, prime_match_to_json(match).dump(2) + "\n");
    return equiv ? 0 : 4;
}

int demo_recovery_l(const RunConfig& cfg) {
    int dim = cfg.N == 2 ? 2 : 1;  // --N doubles as the dimension switch here
    HiddenInstance inst = random_order_l_instance(cfg.l > 2 ? cfg.l : 5, dim, cfg.seed);
    auto oracle = make_oracle(inst);
    PrimeMatch match = reconstruct_order_l(inst.known, *oracle, inst.l, cfg.seed);
    bool equiv = observably_equivalent(inst, instance_from_match(inst.known, match, inst.l), cfg.seed);
    json j;
    j["instance"] = instance_to_json(inst);
    j["match"] = prime_match_to_json(match);
    j["observably_equivalent"] = equiv;
    emit(cfg, j, prime_match_to_json(match).dump(2) + "\n");
    return equiv ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted L-series local data and prime-bijection recovery"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--out", cfg.out);
        cmd->add_option("--seed", cfg.seed);
    };

    CLI::App* split = app.add_subcommand("split", "factor a rational prime in a monogenic field");
    split->add_option("--field", cfg.field)->required();
    split->add_option("--p", cfg.p)->required();
    add_common(split);

    CLI::App* lfactor = app.add_subcommand("lfactor", "twisted factor at p of a curve");
    lfactor->add_option("--field", cfg.field)->required();
    lfactor->add_option("--curve", cfg.curve)->required();
    lfactor->add_option("--p", cfg.p)->required();
    lfactor->add_option("--l", cfg.l);
    lfactor->add_option("--twist", cfg.twist);
    add_common(lfactor);

    CLI::App* demo = app.add_subcommand("demo", "reproducible demos");
    std::string demo_name;
    demo->add_option("name", demo_name)->required()->check(
        CLI::IsMember({"counterexample", "extra-iso", "recovery2", "recovery-l"}));
    demo->add_option("--p", cfg.p);
    demo->add_option("--pmax", cfg.pmax);
    demo->add_option("--qmax", cfg.pmax);
    demo->add_option("--l", cfg.l);
    demo->add_option("--N", cfg.N);
    demo->add_option("--d", cfg.d_list);
    demo->add_option("--field", cfg.field);
    demo->add_option("--field2", cfg.field2);
    demo->add_option("--curve", cfg.curve);
    demo->add_option("--curve2", cfg.curve2);
    add_common(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (split->parsed()) return cmd_split(cfg);
        if (lfactor->parsed()) return cmd_lfactor(cfg);
        if (demo_name == "counterexample") return demo_counterexample(cfg);
        if (demo_name == "extra-iso") return demo_extra_iso(cfg);
        if (demo_name == "recovery2") return demo_recovery2(cfg);
        if (demo_name == "recovery-l") return demo_recovery_l(cfg);
        return 1;
    } catch (const ExcludedPrime& e) {
        std::cerr << "excluded prime: " << e.what() << "\n";
        return 2;
    } catch (const BadReduction& e) {
        std::cerr << "bad reduction: " << e.what() << "\n";
        return 3;
    } catch (const InconsistentOracle& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 4;
    } catch (const DegreeMismatch& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
