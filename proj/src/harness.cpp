#include "twistmatch/harness.hpp"

#include <algorithm>
#include <set>

namespace twistmatch {

namespace {

class InstanceOracle final : public TwistOracle {
  public:
    explicit InstanceOracle(HiddenInstance inst) : inst_(std::move(inst)) {
        killed_.assign(inst_.known.entries.size(), false);
        for (int i : inst_.value_killed) {
            if (inst_.known.entries.at(i).coeff(1) != 0 || inst_.l != 2)
                throw Error("value_killed is only admissible at quadratic a = 0 primes");
            killed_[i] = true;
        }
        LocalCharL triv = trivial_char(inst_.l, (int)inst_.hidden.entries.size());
        trivial_degree_ = factor_at_p(inst_.hidden, triv).poly.degree();
    }

    i64 p() const override { return inst_.known.p; }
    int l() const override { return inst_.l; }
    int hidden_prime_count() const override { return (int)inst_.hidden.entries.size(); }
    int hidden_inertia(int index) const override { return inst_.hidden.entries.at(index).prime.f; }
    PrimeIdeal hidden_prime(int index) const override { return inst_.hidden.entries.at(index).prime; }
    int trivial_degree() const override { return trivial_degree_; }

    CycPoly factor_query(const LocalCharL& chi) const override {
        validate(chi, inst_.known, "forward");
        // psi(chi): transport values along the hidden bijection
        LocalCharL out = trivial_char(inst_.l, (int)inst_.hidden.entries.size());
        for (int i = 0; i < chi.size(); ++i) {
            if (i >= (int)inst_.perm.size()) continue;
            int j = inst_.perm[i];
            if (j < 0 || j >= out.size()) continue;
            out.ram_exp[j] = mod_floor(out.ram_exp[j] + chi.ram_exp[i], inst_.l);
            if (!killed_[i]) out.value_exp[j] = mod_floor(out.value_exp[j] + chi.value_exp[i], inst_.l);
        }
        return factor_at_p(inst_.hidden, out).poly;
    }

    CycPoly reverse_factor_query(const LocalCharL& chi_hidden) const override {
        validate(chi_hidden, inst_.hidden, "reverse");
        LocalCharL out = trivial_char(inst_.l, (int)inst_.known.entries.size());
        for (int i = 0; i < out.size(); ++i) {
            if (i >= (int)inst_.perm.size()) continue;
            int j = inst_.perm[i];
            if (j < 0 || j >= chi_hidden.size()) continue;
            out.ram_exp[i] = chi_hidden.ram_exp[j];
            out.value_exp[i] = killed_[i] ? 0 : chi_hidden.value_exp[j];
        }
        return factor_at_p(inst_.known, out).poly;
    }

  private:
    void validate(const LocalCharL& chi, const LocalDataFamily& side, const char* dir) const {
        if (chi.l != inst_.l) throw Error("oracle query with wrong twist order");
        if (chi.size() != (int)side.entries.size())
            throw Error(std::string("oracle ") + dir + " query size mismatch");
        for (int i = 0; i < chi.size(); ++i)
            if (chi.is_ramified(i) && !l_admissible(side.entries[i].prime, inst_.l))
                throw AdmissibilityError("ramified component at an inadmissible prime");
    }

    HiddenInstance inst_;
    std::vector<bool> killed_;
    int trivial_degree_ = 0;
};

std::vector<int> norm_preserving_permutation(const std::vector<int>& inertias, Rng& rng) {
    std::vector<int> perm(inertias.size());
    std::map<int, std::vector<int>> by_f;
    for (int j = 0; j < (int)inertias.size(); ++j) by_f[inertias[j]].push_back(j);
    for (auto& [f, idxs] : by_f) {
        (void)f;
        std::vector<int> shuffled = idxs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (size_t t = 0; t < idxs.size(); ++t) perm[idxs[t]] = shuffled[t];
    }
    return perm;
}

LocalDataFamily permuted_hidden(const LocalDataFamily& known, const std::vector<int>& perm) {
    LocalDataFamily hidden = known;
    for (int i = 0; i < (int)known.entries.size(); ++i)
        hidden.entries[perm[i]].coeffs = known.entries[i].coeffs;
    return hidden;
}

constexpr i64 kInstancePrimes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31};

}  // namespace

std::unique_ptr<TwistOracle> make_oracle(const HiddenInstance& inst) {
    return std::make_unique<InstanceOracle>(inst);
}

HiddenInstance random_quadratic_instance(u64 seed) {
    Rng rng(seed);
    HiddenInstance inst;
    inst.l = 2;
    inst.seed = seed;
    i64 p = kInstancePrimes[rng() % std::size(kInstancePrimes)];
    int count = 1 + (int)(rng() % 5);
    std::vector<int> inertias;
    for (int i = 0; i < count; ++i) inertias.push_back(1 + (int)(rng() % 2));
    inst.known = synthetic_family(1, p, inertias, rng());
    // sprinkle supersingular primes
    for (auto& e : inst.known.entries)
        if (rng() % 4 == 0) e.coeffs[0] = 0;
    std::vector<int> fs;
    for (const auto& e : inst.known.entries) fs.push_back(e.prime.f);
    inst.perm = norm_preserving_permutation(fs, rng);
    inst.hidden = permuted_hidden(inst.known, inst.perm);
    for (int i = 0; i < (int)inst.known.entries.size(); ++i)
        if (inst.known.entries[i].coeff(1) == 0 && rng() % 2 == 0) inst.value_killed.push_back(i);
    return inst;
}

HiddenInstance random_order_l_instance(int l, int dim, u64 seed, bool force_collision) {
    Rng rng(seed);
    HiddenInstance inst;
    inst.l = l;
    inst.seed = seed;
    i64 p = kInstancePrimes[rng() % std::size(kInstancePrimes)];
    int count = 1 + (int)(rng() % 4);
    std::vector<int> inertias;
    for (int i = 0; i < count; ++i) inertias.push_back(1 + (int)(rng() % 2));
    inst.known = synthetic_family(dim, p, inertias, rng());
    if (force_collision) {
        // duplicate a coefficient list inside one inertia class
        for (int i = 0; i + 1 < (int)inst.known.entries.size(); ++i)
            for (int j = i + 1; j < (int)inst.known.entries.size(); ++j)
                if (inst.known.entries[i].prime.f == inst.known.entries[j].prime.f) {
                    inst.known.entries[j].coeffs = inst.known.entries[i].coeffs;
                    goto done;
                }
    done:;
    }
    std::vector<int> fs;
    for (const auto& e : inst.known.entries) fs.push_back(e.prime.f);
    inst.perm = norm_preserving_permutation(fs, rng);
    inst.hidden = permuted_hidden(inst.known, inst.perm);
    return inst;
}

HiddenInstance curve_instance(const EllipticCurveOverK& E, const EllipticCurveOverK& E2,
                              const FieldIso& sigma, i64 p) {
    HiddenInstance inst;
    inst.l = 2;
    inst.known = curve_family(E, p);
    inst.hidden = curve_family(E2, p);
    auto rights = inst.hidden.primes();
    for (const auto& e : inst.known.entries) {
        PrimeIdeal img = apply_iso_to_prime(sigma, e.prime);
        auto it = std::find(rights.begin(), rights.end(), img);
        if (it == rights.end()) throw Error("curve_instance: sigma image prime not found");
        inst.perm.push_back((int)(it - rights.begin()));
    }
    return inst;
}

HiddenInstance instance_from_match(const LocalDataFamily& known, const PrimeMatch& match, int l) {
    HiddenInstance inst;
    inst.l = l;
    inst.known = known;
    inst.hidden = known;
    inst.hidden.entries.clear();
    inst.hidden.entries.resize(match.right_primes.size());
    inst.perm.assign(known.entries.size(), -1);
    auto fill = [&](const MatchedPair& pair) {
        LocalData d;
        d.prime = match.right_primes.at(pair.right_index);
        d.dim = known.dim;
        d.coeffs = pair.coeffs;
        inst.hidden.entries[pair.right_index] = std::move(d);
        inst.perm[pair.left_index] = pair.right_index;
    };
    for (const auto& pair : match.pairs) fill(pair);
    for (const auto& pair : match.undetermined) fill(pair);
    for (int i = 0; i < (int)inst.perm.size(); ++i)
        if (inst.perm[i] < 0) throw Error("instance_from_match: incomplete pairing");
    return inst;
}

bool observably_equivalent(const HiddenInstance& a, const HiddenInstance& b, u64 probe_seed,
                           int random_probes) {
    if (a.l != b.l) return false;
    auto oa = make_oracle(a);
    auto ob = make_oracle(b);
    if (oa->hidden_prime_count() != ob->hidden_prime_count()) return false;
    if (oa->trivial_degree() != ob->trivial_degree()) return false;
    const int l = a.l;
    const int n = (int)a.known.entries.size();
    const int m = oa->hidden_prime_count();
    auto lprimes = a.known.primes();

    std::vector<LocalCharL> fwd_probes{trivial_char(l, n)};
    std::vector<LocalCharL> rev_probes{trivial_char(l, m)};
    for (int i = 0; i < n; ++i) {
        LocalCharL chi = trivial_char(l, n);
        chi.value_exp[i] = 1;
        fwd_probes.push_back(chi);
        if (l == 2 && l_admissible(lprimes[i], 2)) {
            std::vector<int> vals(n, 1);
            vals[i] = 0;
            fwd_probes.push_back(quad_to_order_l(prescribe_order_2(lprimes, vals)));
            vals.assign(n, 0);
            vals[i] = 1;
            fwd_probes.push_back(quad_to_order_l(prescribe_order_2(lprimes, vals)));
        }
    }
    for (int j = 0; j < m; ++j) {
        LocalCharL chi = trivial_char(l, m);
        chi.value_exp[j] = 1;
        rev_probes.push_back(chi);
        if (l == 2) {
            LocalCharL iso = trivial_char(2, m);
            for (int t = 0; t < m; ++t) iso.ram_exp[t] = t == j ? 0 : 1;
            iso.value_exp.assign(m, 0);
            rev_probes.push_back(iso);
        }
    }
    Rng rng(probe_seed);
    for (int t = 0; t < random_probes; ++t) {
        LocalCharL chi = trivial_char(l, n);
        for (int i = 0; i < n; ++i) chi.value_exp[i] = (i64)(rng() % (u64)l);
        fwd_probes.push_back(chi);
        LocalCharL chi2 = trivial_char(l, m);
        for (int j = 0; j < m; ++j) chi2.value_exp[j] = (i64)(rng() % (u64)l);
        rev_probes.push_back(chi2);
    }
    for (const auto& chi : fwd_probes)
        if (!(oa->factor_query(chi) == ob->factor_query(chi))) return false;
    for (const auto& chi : rev_probes)
        if (!(oa->reverse_factor_query(chi) == ob->reverse_factor_query(chi))) return false;
    return true;
}

i64 find_split_probe_prime(const NumberField& K, const NumberField& K2, int l,
                           const EllipticCurveOverK* E, const EllipticCurveOverK* E2, i64 bound) {
    auto splits_completely = [](const NumberField& F, i64 p) {
        try {
            for (const PrimeIdeal& P : split_prime(F, p))
                if (P.f != 1) return false;
        } catch (const ExcludedPrime&) {
            return false;
        }
        return true;
    };
    auto good = [](const EllipticCurveOverK* C, i64 p) {
        if (!C) return true;
        try {
            curve_family(*C, p);
        } catch (const Error&) {
            return false;
        }
        return true;
    };
    for (i64 p = 3; p <= bound; p += 2) {
        if (!is_prime_i64(p) || mod_floor(p, l) != 1) continue;
        if (splits_completely(K, p) && splits_completely(K2, p) && good(E, p) && good(E2, p))
            return p;
    }
    throw Error("no totally split probe prime = 1 mod l found below the scan bound");
}

namespace {

nlohmann::json family_to_json(const LocalDataFamily& fam) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : fam.entries)
        out.push_back({{"prime", e.prime.to_string()}, {"f", e.prime.f}, {"coeffs", e.coeffs}});
    return out;
}

}  // namespace

nlohmann::json cyc_to_json(const CyclotomicInt& v) {
    if (v.is_rational()) return v.rational_value();
    return nlohmann::json(v.coords());
}

nlohmann::json instance_to_json(const HiddenInstance& inst) {
    nlohmann::json j;
    j["p"] = inst.known.p;
    j["l"] = inst.l;
    j["dim"] = inst.known.dim;
    j["seed"] = inst.seed;
    j["known"] = family_to_json(inst.known);
    j["hidden"] = family_to_json(inst.hidden);
    j["perm"] = inst.perm;
    j["value_killed"] = inst.value_killed;
    return j;
}

HiddenInstance instance_from_json(const nlohmann::json& j) {
    HiddenInstance inst;
    inst.l = j.at("l").get<int>();
    inst.seed = j.value("seed", (u64)0);
    const i64 p = j.at("p").get<i64>();
    const int dim = j.at("dim").get<int>();
    auto read_family = [&](const nlohmann::json& arr) {
        LocalDataFamily fam;
        fam.p = p;
        fam.dim = dim;
        std::map<int, int> next_index;
        for (const auto& e : arr) {
            int f = e.at("f").get<int>();
            LocalData d;
            d.prime = synthetic_prime(p, f, next_index[f]++);
            d.dim = dim;
            d.coeffs = e.at("coeffs").get<std::vector<i64>>();
            if ((int)d.coeffs.size() != 2 * dim) throw Error("instance coeffs must have length 2*dim");
            fam.entries.push_back(std::move(d));
        }
        return fam;
    };
    inst.known = read_family(j.at("known"));
    inst.hidden = read_family(j.at("hidden"));
    inst.perm = j.at("perm").get<std::vector<int>>();
    if (j.contains("value_killed")) inst.value_killed = j.at("value_killed").get<std::vector<int>>();
    return inst;
}

nlohmann::json prime_match_to_json(const PrimeMatch& match) {
    auto pair_json = [&](const MatchedPair& pair) {
        return nlohmann::json{{"left", match.left_primes.at(pair.left_index).to_string()},
                              {"right", match.right_primes.at(pair.right_index).to_string()},
                              {"f", pair.f},
                              {"coeffs", pair.coeffs},
                              {"collision", pair.collision},
                              {"transport_verified", pair.transport_verified}};
    };
    nlohmann::json j;
    j["p"] = match.p;
    j["pairs"] = nlohmann::json::array();
    for (const auto& pair : match.pairs) j["pairs"].push_back(pair_json(pair));
    j["undetermined"] = nlohmann::json::array();
    for (const auto& pair : match.undetermined) j["undetermined"].push_back(pair_json(pair));
    return j;
}

nlohmann::json factor_to_json(const FactorAtP& factor) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (int i = 0; i <= factor.poly.degree(); ++i) coeffs.push_back(cyc_to_json(factor.poly.coeff(i)));
    nlohmann::json per_prime = nlohmann::json::array();
    for (const auto& lf : factor.per_prime) {
        nlohmann::json c = nlohmann::json::array();
        for (int i = 0; i <= lf.poly.degree(); ++i) c.push_back(cyc_to_json(lf.poly.coeff(i)));
        per_prime.push_back({{"f", lf.f}, {"coeffs", c}});
    }
    return {{"p", factor.p}, {"factor", coeffs}, {"per_prime", per_prime}};
}

nlohmann::json assignment_to_json(const std::vector<PrimeIdeal>& primes, const LocalCharL& chi) {
    nlohmann::json out = nlohmann::json::array();
    for (int i = 0; i < chi.size(); ++i) {
        std::string value;
        if (chi.is_ramified(i))
            value = "0";
        else if (chi.l == 2)
            value = chi.value_exp[i] ? "-1" : "+1";
        else
            value = chi.value_exp[i] == 0 ? "+1" : "zeta^" + std::to_string(chi.value_exp[i]);
        out.push_back({{"prime", primes.at(i).to_string()}, {"value", value}});
    }
    return out;
}

nlohmann::json counterexample_to_json(const CounterexampleReport& rep) {
    nlohmann::json j;
    j["p_max"] = rep.p_max;
    j["all_factors_at_p_equal"] = rep.all_factors_at_p_equal;
    j["checked_primes"] = rep.checked_primes;
    j["has_witness"] = rep.has_witness;
    if (rep.has_witness) {
        j["witness"] = {{"p", rep.witness_p},
                        {"prime", rep.witness_prime.to_string()},
                        {"points_E", rep.count_E},
                        {"points_conjugate", rep.count_conj},
                        {"factor_E", rep.factor_E.to_string()},
                        {"factor_conjugate", rep.factor_conj.to_string()}};
    }
    return j;
}

nlohmann::json extra_iso_to_json(const ExtraIsoReport& rep) {
    nlohmann::json j;
    j["p"] = rep.p;
    j["q_max"] = rep.q_max;
    j["d_list"] = rep.d_list;
    j["all_equal"] = rep.all_equal;
    j["checked"] = rep.checked;
    j["supersingular_pattern_ok"] = rep.supersingular_pattern_ok;
    j["failures"] = nlohmann::json::array();
    for (auto& [d, q] : rep.failures) j["failures"].push_back({{"d", d}, {"q", q}});
    return j;
}

nlohmann::json proxy_to_json(const IsogenyProxyReport& rep) {
    nlohmann::json j;
    j["p_max"] = rep.p_max;
    j["all_pass"] = rep.all_pass;
    j["primes_checked"] = rep.primes_checked;
    j["skipped"] = rep.skipped_rational;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : rep.entries)
        j["entries"].push_back({{"prime", e.prime.to_string()},
                                {"pass", e.pass},
                                {"coeffs_sigma", e.coeffs_sigma},
                                {"coeffs_other", e.coeffs_other},
                                {"supersingular", e.supersingular}});
    return j;
}

}  // namespace twistmatch
