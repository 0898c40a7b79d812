#include "twistmatch/factor.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>

namespace twistmatch {

namespace {

std::vector<int> mpz_bits(const mpz_class& e) {
    std::vector<int> bits;
    size_t n = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = 0; i < n; ++i) bits.push_back(mpz_tstbit(e.get_mpz_t(), n - 1 - i));
    return bits;
}

PolyModP random_poly(i64 p, int max_deg, Rng& rng) {
    std::uniform_int_distribution<i64> dist(0, p - 1);
    std::vector<i64> c(max_deg + 1);
    for (auto& v : c) v = dist(rng);
    return PolyModP(p, std::move(c));
}

// f monic squarefree, all irreducible factors of degree d. Splits into the
// deg(f)/d irreducible pieces via gcd(h^((p^d-1)/2) - 1, f) for random h.
void equal_degree_split(const PolyModP& f, int d, Rng& rng, std::vector<PolyModP>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), (unsigned long)f.p, (unsigned long)d);
    std::vector<int> e_bits = mpz_bits((q - 1) / 2);
    const PolyModP one = PolyModP::constant(f.p, 1);
    for (;;) {
        PolyModP h = random_poly(f.p, f.degree() - 1, rng);
        if (h.is_zero()) continue;
        PolyModP g = poly_gcd(h, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            PolyModP q2, r2;
            poly_divmod(f, g, q2, r2);
            equal_degree_split(poly_monic(q2), d, rng, out);
            return;
        }
        PolyModP w = poly_powmod(h, e_bits, f) - one;
        g = poly_gcd(w, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            PolyModP q2, r2;
            poly_divmod(f, g, q2, r2);
            equal_degree_split(poly_monic(q2), d, rng, out);
            return;
        }
    }
}

// Distinct-degree decomposition of a monic squarefree f: gcd with x^(p^d)-x.
std::vector<std::pair<PolyModP, int>> distinct_degree(PolyModP f, Rng& rng) {
    std::vector<std::pair<PolyModP, int>> irreducibles;  // (factor, 1) accumulated flat
    PolyModP x = PolyModP::x(f.p);
    PolyModP h = poly_mod(x, f);  // x^(p^d) mod f, iterated
    for (int d = 1; f.degree() > 0 && d <= f.degree(); ++d) {
        h = poly_powmod(h, f.p, f);
        PolyModP g = poly_gcd(h - poly_mod(x, f), f);
        if (g.degree() > 0) {
            std::vector<PolyModP> parts;
            equal_degree_split(g, d, rng, parts);
            for (auto& q : parts) irreducibles.emplace_back(std::move(q), 1);
            PolyModP q2, r2;
            poly_divmod(f, g, q2, r2);
            f = poly_monic(q2);
            h = poly_mod(h, f);
        }
    }
    if (f.degree() > 0) irreducibles.emplace_back(f, 1);
    return irreducibles;
}

// f = g(x^p) => g, using c^(1/p) = c^(p^(deg-?)) ... in F_p simply c itself
// (Frobenius is identity on the prime field).
PolyModP pth_root(const PolyModP& f) {
    PolyModP g(f.p);
    g.coeffs.assign(f.degree() / (int)f.p + 1, 0);
    for (int i = 0; i <= f.degree(); i += (int)f.p) g.coeffs[i / (int)f.p] = f.coeffs[i];
    g.trim();
    return g;
}

void factor_squarefree_part(const PolyModP& f, int mult, Rng& rng,
                            std::map<std::vector<i64>, std::pair<PolyModP, int>>& acc) {
    if (f.degree() <= 0) return;
    PolyModP df = poly_derivative(f);
    if (df.is_zero()) {
        // f is a p-th power
        factor_squarefree_part(pth_root(f), mult * (int)f.p, rng, acc);
        return;
    }
    PolyModP g = poly_gcd(f, df);
    PolyModP sqfree, r;
    poly_divmod(f, g, sqfree, r);
    sqfree = poly_monic(sqfree);
    for (auto& [q, m] : distinct_degree(sqfree, rng)) {
        (void)m;
        auto it = acc.find(q.coeffs);
        if (it == acc.end())
            acc.emplace(q.coeffs, std::make_pair(q, mult));
        else
            it->second.second += mult;
    }
    if (g.degree() > 0) {
        // strip one copy of each squarefree factor from g's cofactor side:
        // recurse on f / sqfree, which carries multiplicities - 1
        PolyModP rest, r2;
        poly_divmod(f, sqfree, rest, r2);
        factor_squarefree_part(poly_monic(rest), mult, rng, acc);
    }
}

}  // namespace

std::vector<std::pair<PolyModP, int>> factor_mod_p(const PolyModP& f, u64 seed) {
    if (f.is_zero()) throw Error("factor_mod_p: zero polynomial");
    Rng rng(seed);
    std::map<std::vector<i64>, std::pair<PolyModP, int>> acc;
    factor_squarefree_part(poly_monic(f), 1, rng, acc);
    std::vector<std::pair<PolyModP, int>> out;
    out.reserve(acc.size());
    for (auto& [key, v] : acc) {
        (void)key;
        out.push_back(v);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

bool poly_irreducible(const PolyModP& f, u64 seed) {
    if (f.degree() <= 0) return false;
    auto fs = factor_mod_p(f, seed);
    return fs.size() == 1 && fs[0].second == 1 && fs[0].first.degree() == f.degree();
}

}  // namespace twistmatch
