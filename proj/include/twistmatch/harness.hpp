#pragma once

#include <json.hpp>

#include "twistmatch/reconstruct.hpp"

namespace twistmatch {

// A fully specified two-sided instance: known and hidden local data over one
// rational prime, the hidden norm-preserving bijection (perm[left] = right),
// and the transport map it induces. Oracles built from an instance answer
// queries consistently with it by construction.
struct HiddenInstance {
    int l = 2;
    LocalDataFamily known, hidden;
    std::vector<int> perm;
    // quadratic only: left indices whose transported value is scrambled;
    // admissible exactly where a = 0 (the factor is twist-invariant there)
    std::vector<int> value_killed;
    u64 seed = 0;
};

std::unique_ptr<TwistOracle> make_oracle(const HiddenInstance& inst);

// Randomized Weil-consistent quadratic instance: <= 5 primes over p, mixed
// inertia, random hidden bijection, a = 0 with positive probability.
HiddenInstance random_quadratic_instance(u64 seed);

// Randomized order-l instance of dimension d (synthetic data), mixed
// inertia; force_collision duplicates one coefficient list inside an
// inertia class.
HiddenInstance random_order_l_instance(int l, int dim, u64 seed, bool force_collision = false);

// Instance backed by two curves over isomorphic fields; consistent when
// E2 = E^sigma.
HiddenInstance curve_instance(const EllipticCurveOverK& E, const EllipticCurveOverK& E2,
                              const FieldIso& sigma, i64 p);

// Rebuild the hidden side an external observer would infer from a match:
// partner data on the right labels. Undetermined pairs carry their (zero)
// coefficients.
HiddenInstance instance_from_match(const LocalDataFamily& known, const PrimeMatch& match, int l);

// Two instances are observably equivalent when every probe in a seeded
// battery (forward and reverse) draws identical responses.
bool observably_equivalent(const HiddenInstance& a, const HiddenInstance& b, u64 probe_seed,
                           int random_probes = 40);

// Locate a rational prime = 1 mod l that splits completely in both fields
// and keeps good reduction for both curves; scan bound 10^5.
i64 find_split_probe_prime(const NumberField& K, const NumberField& K2, int l,
                           const EllipticCurveOverK* E = nullptr,
                           const EllipticCurveOverK* E2 = nullptr, i64 bound = 100000);

// JSON forms
nlohmann::json instance_to_json(const HiddenInstance& inst);
HiddenInstance instance_from_json(const nlohmann::json& j);
nlohmann::json prime_match_to_json(const PrimeMatch& match);
nlohmann::json factor_to_json(const FactorAtP& factor);
nlohmann::json assignment_to_json(const std::vector<PrimeIdeal>& primes, const LocalCharL& chi);
nlohmann::json counterexample_to_json(const CounterexampleReport& rep);
nlohmann::json extra_iso_to_json(const ExtraIsoReport& rep);
nlohmann::json proxy_to_json(const IsogenyProxyReport& rep);
nlohmann::json cyc_to_json(const CyclotomicInt& v);

}  // namespace twistmatch
