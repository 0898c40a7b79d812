#pragma once

#include <memory>
#include <optional>

#include "twistmatch/lseries.hpp"

namespace twistmatch {

// Query access to the factors at p of a hidden second variety: forward
// queries evaluate the hidden side under psi(chi), reverse queries evaluate
// the known side under psi^(-1)(chi'). Both directions exist because psi is
// an isomorphism of character groups. Responses are guaranteed consistent
// with some hidden instance; implementations must be safe for concurrent
// read-only use.
class TwistOracle {
  public:
    virtual ~TwistOracle() = default;

    virtual i64 p() const = 0;
    virtual int l() const = 0;
    virtual int hidden_prime_count() const = 0;
    virtual int hidden_inertia(int index) const = 0;
    virtual PrimeIdeal hidden_prime(int index) const = 0;  // label only
    virtual int trivial_degree() const = 0;                // degree of the hidden trivial-twist factor

    // chi is an assignment on the known side's primes over p, canonical order
    virtual CycPoly factor_query(const LocalCharL& chi) const = 0;
    // chi_hidden is an assignment on the hidden side's primes over p
    virtual CycPoly reverse_factor_query(const LocalCharL& chi_hidden) const = 0;
};

struct MatchedPair {
    int left_index = -1;
    int right_index = -1;
    int f = 1;
    std::vector<i64> coeffs;  // the common (a)_i list
    bool collision = false;
    bool transport_verified = false;
};

struct PrimeMatch {
    i64 p = 0;
    std::vector<MatchedPair> pairs;
    std::vector<MatchedPair> undetermined;  // matched by norm only (quadratic a = 0)
    std::vector<PrimeIdeal> left_primes, right_primes;  // canonical labels per index
};

// Shared field degree and dimension, certified by ramified probes in both
// directions at the session prime (which must be totally split with
// p = 1 mod l when l > 2; the harness supplies such a prime). Throws
// DegreeMismatch when the oracle responses are inconsistent with equality.
std::pair<int, int> check_degrees(const LocalDataFamily& known, const TwistOracle& oracle);

// Norm/ramification matching of the quadratic induction: a candidate
// norm-preserving pairing certified by the degree drop of each ramified
// probe, probing from whichever side currently holds the minimal unmatched
// inertia degree.
std::vector<std::pair<int, int>> match_by_ramification_quadratic(const LocalDataFamily& known,
                                                                 const TwistOracle& oracle);

// The quadratic maximizer of chi -> L_p(E/K, chi, 1): +1 at a >= 0, -1 at
// a < 0 (+1 is the canonical free choice at a = 0).
LocalQuadChar chi_plus_quadratic(const LocalDataFamily& data);

PrimeMatch reconstruct_quadratic(const LocalDataFamily& known, const TwistOracle& oracle,
                                 u64 probe_seed = 0x7157);

// Level sets of the order-l induction at level f, with the convention
// (a)_i = 0 for i > 2d.
struct QSets {
    int f = 1;
    std::vector<int> q_f, q_plus, q_minus, q_below;  // indices into the family
};

QSets q_sets(const LocalDataFamily& data, int f);

// c(chi) = sum over Q_f of (1 - chi(P)^(f/f_P)) (a_P)_(f/f_P), exact.
CyclotomicInt c_map(const LocalDataFamily& data, const LocalCharL& chi, int f);

// Level-f coefficient sum of the side behind a response:
// [T^f] response - [T^f] (product of the matched truncated factors below
// level f). The lower product is the induction data; pass nullopt only at
// the base level f = 1.
CyclotomicInt extract_level_f(const CycPoly& response, const std::optional<CycPoly>& lower_product,
                              int f);

// Exact solve of v = (1 - omega) * A over omega in mu_l \ {1} and A a
// rational integer; unique when it exists and v != 0 (line-circle argument).
std::optional<std::pair<i64, i64>> solve_line_circle(const CyclotomicInt& v);

PrimeMatch reconstruct_order_l(const LocalDataFamily& known, const TwistOracle& oracle, int l,
                               u64 probe_seed = 0x7157);

// True iff sigma maps every matched left prime onto its right partner.
bool verify_sigma(const FieldIso& sigma, const PrimeMatch& match);

struct IsogenyProxyEntry {
    PrimeIdeal prime;
    bool pass = false;
    std::vector<i64> coeffs_sigma, coeffs_other;
    bool supersingular = false;  // a = 0: the factor 1 + p^f T^(2f) is twist-invariant
};

struct IsogenyProxyReport {
    i64 p_max = 0;
    bool all_pass = false;
    i64 primes_checked = 0;
    std::vector<IsogenyProxyEntry> entries;
    std::vector<i64> skipped_rational;  // excluded or bad-reduction p
};

// Local-factor agreement of E^sigma and E2 over the target field at all good
// accepted primes: the computable isogeny proxy, never a proof.
IsogenyProxyReport isogeny_proxy_report(const EllipticCurveOverK& E, const EllipticCurveOverK& E2,
                                        const FieldIso& sigma, i64 p_max);

}  // namespace twistmatch
