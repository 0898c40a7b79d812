#include "twistmatch/lseries.hpp"

#include <algorithm>

namespace twistmatch {

int CycPoly::degree() const {
    for (int i = (int)c.size() - 1; i >= 0; --i)
        if (!c[i].is_zero()) return i;
    return 0;
}

CyclotomicInt CycPoly::coeff(int i) const {
    if (i < 0 || i >= (int)c.size()) return CyclotomicInt(l);
    return c[i];
}

bool CycPoly::operator==(const CycPoly& o) const {
    if (l != o.l) return false;
    int d = std::max(degree(), o.degree());
    for (int i = 0; i <= d; ++i)
        if (coeff(i) != o.coeff(i)) return false;
    return true;
}

CycPoly operator*(const CycPoly& a, const CycPoly& b) {
    if (a.l != b.l) throw Error("CycPoly order mismatch");
    CycPoly r(a.l);
    r.c.assign(a.degree() + b.degree() + 1, CyclotomicInt(a.l));
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j <= b.degree(); ++j) {
            if (b.c[j].is_zero()) continue;
            r.c[i + j] += a.c[i] * b.c[j];
        }
    }
    return r;
}

CycPoly operator-(const CycPoly& a, const CycPoly& b) {
    if (a.l != b.l) throw Error("CycPoly order mismatch");
    CycPoly r(a.l);
    r.c.assign(std::max(a.degree(), b.degree()) + 1, CyclotomicInt(a.l));
    for (int i = 0; i < (int)r.c.size(); ++i) r.c[i] = a.coeff(i) - b.coeff(i);
    return r;
}

CycPoly truncate_below(const CycPoly& a, int deg_limit) {
    CycPoly r(a.l);
    r.c.assign(std::max(1, deg_limit), CyclotomicInt(a.l));
    for (int i = 0; i < deg_limit && i <= a.degree(); ++i) r.c[i] = a.coeff(i);
    return r;
}

std::string CycPoly::to_string() const {
    std::string s;
    for (int i = 0; i <= degree(); ++i) {
        if (c[i].is_zero()) continue;
        std::string cs;
        bool neg = false;
        if (c[i].is_rational()) {
            i64 v = c[i].rational_value();
            neg = v < 0;
            i64 av = neg ? -v : v;
            cs = (av == 1 && i > 0) ? "" : std::to_string(av);
        } else {
            cs = "(" + c[i].to_string() + ")";
        }
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        s += cs;
        if (i >= 1) {
            s += "T";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

LocalFactor local_factor(const LocalData& data, int l, const TwistVal& chi_value) {
    const int f = data.prime.f;
    LocalFactor r;
    r.f = f;
    r.poly = CycPoly(l);
    if (chi_value.ramified) return r;  // invariants under inertia vanish: factor 1
    r.poly.c.assign(2 * data.dim * f + 1, CyclotomicInt(l));
    r.poly.c[0] = CyclotomicInt::from_int(l, 1);
    for (int i = 1; i <= 2 * data.dim; ++i) {
        CyclotomicInt zi = CyclotomicInt::zeta_pow(l, chi_value.exponent * i);
        r.poly.c[i * f] = zi * CyclotomicInt::from_int(l, data.coeff(i));
    }
    return r;
}

std::vector<PrimeIdeal> LocalDataFamily::primes() const {
    std::vector<PrimeIdeal> ps;
    ps.reserve(entries.size());
    for (const auto& e : entries) ps.push_back(e.prime);
    return ps;
}

int LocalDataFamily::inertia_sum() const {
    int s = 0;
    for (const auto& e : entries) s += e.prime.f;
    return s;
}

LocalDataFamily curve_family(const EllipticCurveOverK& E, i64 p) {
    LocalDataFamily fam;
    fam.p = p;
    fam.dim = 1;
    for (const PrimeIdeal& P : split_prime(E.field, p)) fam.entries.push_back(local_data(E, P));
    return fam;
}

LocalDataFamily synthetic_family(int dim, i64 p, const std::vector<int>& inertias, u64 seed) {
    LocalDataFamily fam;
    fam.p = p;
    fam.dim = dim;
    std::map<int, int> next_index;
    std::vector<PrimeIdeal> ps;
    for (int f : inertias) ps.push_back(synthetic_prime(p, f, next_index[f]++));
    std::sort(ps.begin(), ps.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.f != b.f ? a.f < b.f : poly_less(a.g, b.g);
    });
    for (size_t i = 0; i < ps.size(); ++i)
        fam.entries.push_back(synthetic_local_data(dim, ps[i], seed + 0x9e3779b9u * (u64)(i + 1)));
    return fam;
}

FactorAtP factor_at_p(const LocalDataFamily& family, const LocalCharL& chi) {
    if (chi.size() != (int)family.entries.size())
        throw Error("factor_at_p: assignment size does not match the primes over p");
    FactorAtP r;
    r.p = family.p;
    r.poly = CycPoly(chi.l);
    for (int i = 0; i < (int)family.entries.size(); ++i) {
        LocalFactor lf = local_factor(family.entries[i], chi.l, chi.value(i));
        r.poly = r.poly * lf.poly;
        r.per_prime.push_back(std::move(lf));
    }
    return r;
}

FactorAtP factor_at_p(const EllipticCurveOverK& E, i64 p, const LocalCharL& chi) {
    return factor_at_p(curve_family(E, p), chi);
}

DirichletCoeffs dirichlet_expand(const std::map<i64, FactorAtP>& factors, i64 bound) {
    if (bound < 1) throw Error("dirichlet_expand: bound >= 1 required");
    int l = factors.empty() ? 2 : factors.begin()->second.poly.l;
    for (const auto& [p, f] : factors) {
        (void)p;
        if (f.poly.l != l) throw Error("dirichlet_expand: mixed twist orders");
    }
    DirichletCoeffs out;
    out.bound = bound;
    out.l = l;
    out.c.assign((size_t)bound + 1, CyclotomicInt(l));
    out.c[1] = CyclotomicInt::from_int(l, 1);

    std::vector<i64> spf((size_t)bound + 1, 0);  // smallest prime factor
    for (i64 i = 2; i <= bound; ++i)
        if (spf[i] == 0)
            for (i64 j = i; j <= bound; j += i)
                if (spf[j] == 0) spf[j] = i;

    // prime power coefficients from 1/L_p(T): c_{p^k} = [T^k] L_p(T)^(-1)
    std::map<i64, std::vector<CyclotomicInt>> pp;
    for (i64 p = 2; p <= bound; ++p) {
        if (spf[p] != p) continue;
        auto it = factors.find(p);
        if (it == factors.end()) throw MissingPrime("no factor supplied at p = " + std::to_string(p));
        const CycPoly& poly = it->second.poly;
        if (poly.coeff(0) != CyclotomicInt::from_int(l, 1))
            throw Error("dirichlet_expand: factor constant term must be 1");
        int klim = 0;
        for (i64 q = 1; q <= bound / p; q *= p) ++klim;
        std::vector<CyclotomicInt> inv((size_t)klim + 1, CyclotomicInt(l));
        inv[0] = CyclotomicInt::from_int(l, 1);
        for (int k = 1; k <= klim; ++k) {
            CyclotomicInt s(l);
            for (int j = 1; j <= k; ++j) s += poly.coeff(j) * inv[k - j];
            inv[k] = -s;
        }
        pp.emplace(p, std::move(inv));
    }
    for (i64 n = 2; n <= bound; ++n) {
        i64 p = spf[n], m = n, k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        out.c[n] = pp[p][k] * out.c[m];
    }
    return out;
}

CounterexampleReport counterexample_report(i64 p_max) {
    NumberField K({1, 0, 1});  // x^2 + 1
    EllipticCurveOverK E(K, K.theta(), K.zero());
    FieldIso conj(K, K, K.neg(K.theta()));
    EllipticCurveOverK Econj = apply_iso_to_curve(conj, E);

    CounterexampleReport rep;
    rep.p_max = p_max;
    rep.all_factors_at_p_equal = true;
    std::vector<i64> ps;
    for (i64 p = 3; p <= p_max; p += 2)
        if (is_prime_i64(p)) ps.push_back(p);

    struct Row {
        bool accepted = false;
        bool factors_equal = false;
        int witness_index = -1;
        LocalDataFamily famE, famC;
    };
    std::vector<Row> rows(ps.size());
    parallel_for((i64)ps.size(), [&](i64 i) {
        Row& row = rows[i];
        try {
            row.famE = curve_family(E, ps[i]);
            row.famC = curve_family(Econj, ps[i]);
        } catch (const ExcludedPrime&) {
            return;
        }
        row.accepted = true;
        LocalCharL triv = trivial_char(2, (int)row.famE.entries.size());
        row.factors_equal = factor_at_p(row.famE, triv).poly == factor_at_p(row.famC, triv).poly;
        for (int j = 0; j < (int)row.famE.entries.size(); ++j)
            if (row.famE.entries[j].coeffs != row.famC.entries[j].coeffs) {
                row.witness_index = j;
                break;
            }
    });
    for (size_t i = 0; i < ps.size(); ++i) {
        const Row& row = rows[i];
        if (!row.accepted) continue;
        rep.checked_primes.push_back(ps[i]);
        rep.all_factors_at_p_equal = rep.all_factors_at_p_equal && row.factors_equal;
        if (!rep.has_witness && row.witness_index >= 0) {
            rep.has_witness = true;
            rep.witness_p = ps[i];
            const LocalData& dE = row.famE.entries[row.witness_index];
            const LocalData& dC = row.famC.entries[row.witness_index];
            rep.witness_prime = dE.prime;
            i64 q = pow_ck(ps[i], dE.prime.f);
            rep.count_E = dE.coeff(1) + q + 1;
            rep.count_conj = dC.coeff(1) + q + 1;
            rep.factor_E = local_factor(dE, 2, TwistVal::zeta(0)).poly;
            rep.factor_conj = local_factor(dC, 2, TwistVal::zeta(0)).poly;
        }
    }
    return rep;
}

ExtraIsoReport extra_iso_demo(i64 p, i64 q_max, const std::vector<i64>& d_list) {
    NumberField Q({0, 1});  // the rationals as a degree-1 field
    EllipticCurveOverK E(Q, Q.from_rational(-1), Q.zero());  // y^2 = x^3 - x

    ExtraIsoReport rep;
    rep.p = p;
    rep.q_max = q_max;
    rep.d_list = d_list;
    rep.all_equal = true;
    rep.supersingular_pattern_ok = true;

    std::vector<i64> qs;
    for (i64 q = 3; q <= q_max; q += 2)
        if (is_prime_i64(q)) qs.push_back(q);
    std::vector<LocalDataFamily> fams(qs.size());
    parallel_for((i64)qs.size(), [&](i64 i) { fams[i] = curve_family(E, qs[i]); });

    for (size_t i = 0; i < qs.size(); ++i) {
        i64 q = qs[i];
        const LocalDataFamily& fam = fams[i];
        if (mod_floor(q, 4) == 3 && fam.entries[0].coeff(1) != 0) rep.supersingular_pattern_ok = false;
        auto chi_of = [&](i64 dd) {
            int v = fp::legendre(dd, q);
            return quad_to_order_l(prescribe_order_2(fam.primes(), {v}));
        };
        for (i64 d : d_list) {
            if (d % q == 0) continue;
            i64 psi_d = extra_iso_psi(d, p);
            bool eq = factor_at_p(fam, chi_of(d)).poly == factor_at_p(fam, chi_of(psi_d)).poly;
            ++rep.checked;
            if (!eq) {
                rep.all_equal = false;
                rep.failures.emplace_back(d, q);
            }
        }
    }
    return rep;
}

}  // namespace twistmatch
