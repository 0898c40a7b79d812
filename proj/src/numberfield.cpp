#include "twistmatch/numberfield.hpp"

#include <algorithm>
#include <set>

namespace twistmatch {

namespace {

// Bareiss fraction-free determinant, exact over Z.
mpz_class det_bareiss(std::vector<std::vector<mpz_class>> m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_class q = num / prev;  // exact by Bareiss
                m[i][j] = q;
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

mpz_class resultant(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    const int da = (int)a.size() - 1, db = (int)b.size() - 1;
    if (db == 0) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b[0].get_mpz_t(), da);
        return r;
    }
    const int n = da + db;
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < db; ++i)
        for (int j = 0; j <= da; ++j) m[i][i + j] = a[da - j];
    for (int i = 0; i < da; ++i)
        for (int j = 0; j <= db; ++j) m[db + i][i + j] = b[db - j];
    return det_bareiss(std::move(m));
}

mpz_class poly_discriminant(const std::vector<mpz_class>& f) {
    const int n = (int)f.size() - 1;
    if (n == 1) return 1;
    std::vector<mpz_class> df(n);
    for (int i = 1; i <= n; ++i) df[i - 1] = f[i] * i;
    mpz_class res = resultant(f, df);
    return ((i64)n * (n - 1) / 2) % 2 == 0 ? res : -res;
}

// integer roots of a monic integer polynomial (roots divide the constant term)
bool has_integer_root(const std::vector<mpz_class>& f) {
    mpz_class c0 = f[0];
    if (c0 == 0) return true;
    std::vector<mpz_class> divisors;
    for (mpz_class d = 1; d * d <= abs(c0); ++d) {
        if (c0 % d == 0) {
            divisors.push_back(d);
            divisors.push_back(abs(c0) / d);
        }
    }
    auto eval = [&](const mpz_class& x) {
        mpz_class v = 0;
        for (int i = (int)f.size() - 1; i >= 0; --i) v = v * x + f[i];
        return v;
    };
    for (const auto& d : divisors)
        if (eval(d) == 0 || eval(-d) == 0) return true;
    return false;
}

// monic quartics: check for a factorization into two monic integer quadratics
bool quartic_has_quadratic_factor(const std::vector<mpz_class>& f) {
    const mpz_class &c0 = f[0], &c1 = f[1], &c2 = f[2], &c3 = f[3];
    if (c0 == 0) return true;
    std::vector<mpz_class> divisors;
    for (mpz_class d = 1; d * d <= abs(c0); ++d)
        if (c0 % d == 0) {
            divisors.push_back(d);
            divisors.push_back(-d);
            divisors.push_back(abs(c0) / d);
            divisors.push_back(-abs(c0) / d);
        }
    for (const auto& b : divisors) {
        if (b == 0 || c0 % b != 0) continue;
        mpz_class d = c0 / b;
        // a + c = c3, a*c = c2 - b - d, a*d + b*c = c1
        mpz_class s = c3, prod = c2 - b - d;
        mpz_class disc = s * s - 4 * prod;
        if (disc < 0) continue;
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
        if (r * r != disc) continue;
        for (int sg : {1, -1}) {
            mpz_class two_a = s + sg * r;
            if (two_a % 2 != 0) continue;
            mpz_class a_co = two_a / 2, c_co = s - a_co;
            if (a_co * d + b * c_co == c1) return true;
        }
    }
    return false;
}

void check_irreducible_over_q(const std::vector<mpz_class>& f) {
    const int n = (int)f.size() - 1;
    if (n == 1) return;
    if (has_integer_root(f)) throw Error("minpoly is reducible over Q (rational root)");
    if (n <= 3) return;
    if (n == 4) {
        if (quartic_has_quadratic_factor(f)) throw Error("minpoly is reducible over Q (quadratic factor)");
        return;
    }
    // degree >= 5: proof by irreducibility mod some good prime, or by an
    // empty intersection of possible proper factor degrees across primes
    mpz_class disc = poly_discriminant(f);
    std::set<int> possible;
    for (int d = 1; d < n; ++d) possible.insert(d);
    int tried = 0;
    for (i64 p = 3; p < 500 && tried < 30; p += 2) {
        if (!is_prime_i64(p)) continue;
        if (mpz_divisible_ui_p(disc.get_mpz_t(), (unsigned long)p)) continue;
        ++tried;
        std::vector<i64> c(n + 1);
        for (int i = 0; i <= n; ++i) c[i] = (i64)mpz_fdiv_ui(f[i].get_mpz_t(), (unsigned long)p);
        auto factors = factor_mod_p(PolyModP(p, c));
        if (factors.size() == 1 && factors[0].first.degree() == n) return;
        // subset sums of the factor degrees = degrees realizable mod p
        std::set<int> sums{0};
        for (auto& [g, m] : factors) {
            (void)m;
            std::set<int> next = sums;
            for (int s : sums) next.insert(s + g.degree());
            sums = next;
        }
        std::set<int> keep;
        for (int d : possible)
            if (sums.count(d)) keep.insert(d);
        possible = keep;
        if (possible.empty()) return;
    }
    throw UnsupportedDegree("cannot certify irreducibility of minpoly at this degree");
}

void reduce_mod_minpoly(std::vector<mpq_class>& c, const std::vector<mpz_class>& f) {
    const int n = (int)f.size() - 1;
    for (int i = (int)c.size() - 1; i >= n; --i) {
        mpq_class lead = c[i];
        if (lead == 0) continue;
        c[i] = 0;
        for (int j = 0; j < n; ++j) c[i - n + j] -= lead * mpq_class(f[j]);
    }
    c.resize(n);
    for (auto& v : c) v.canonicalize();
}

}  // namespace

bool FieldElem::is_zero() const {
    for (const auto& v : coords)
        if (v != 0) return false;
    return true;
}

NumberField::NumberField(std::vector<mpz_class> minpoly) : minpoly_(std::move(minpoly)) {
    n_ = (int)minpoly_.size() - 1;
    if (n_ < 1) throw Error("minpoly must have degree >= 1");
    if (minpoly_.back() != 1) throw Error("minpoly must be monic");
    check_irreducible_over_q(minpoly_);
    disc_ = poly_discriminant(minpoly_);
}

FieldElem NumberField::zero() const { return FieldElem{std::vector<mpq_class>(n_, 0)}; }

FieldElem NumberField::one() const { return from_rational(1); }

FieldElem NumberField::from_rational(const mpq_class& r) const {
    FieldElem e = zero();
    e.coords[0] = r;
    return e;
}

FieldElem NumberField::theta() const {
    if (n_ == 1) return from_rational(mpq_class(-minpoly_[0]));
    FieldElem e = zero();
    e.coords[1] = 1;
    return e;
}

FieldElem NumberField::add(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = a;
    for (int i = 0; i < n_; ++i) r.coords[i] += b.coords[i];
    return r;
}

FieldElem NumberField::sub(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = a;
    for (int i = 0; i < n_; ++i) r.coords[i] -= b.coords[i];
    return r;
}

FieldElem NumberField::neg(const FieldElem& a) const {
    FieldElem r = a;
    for (auto& v : r.coords) v = -v;
    return r;
}

FieldElem NumberField::mul(const FieldElem& a, const FieldElem& b) const {
    std::vector<mpq_class> c(2 * n_ - 1, 0);
    for (int i = 0; i < n_; ++i) {
        if (a.coords[i] == 0) continue;
        for (int j = 0; j < n_; ++j) c[i + j] += a.coords[i] * b.coords[j];
    }
    reduce_mod_minpoly(c, minpoly_);
    return FieldElem{std::move(c)};
}

FieldElem NumberField::mul_int(const FieldElem& a, i64 k) const {
    FieldElem r = a;
    for (auto& v : r.coords) v *= (long)k;
    return r;
}

std::string NumberField::to_string() const {
    std::string s;
    for (int i = n_; i >= 0; --i) {
        const mpz_class& c = minpoly_[i];
        if (c == 0) continue;
        if (!s.empty() && c > 0) s += "+";
        std::string cs = c.get_str();
        if (i == 0) {
            s += cs;
        } else {
            if (c == -1)
                s += "-";
            else if (c != 1)
                s += cs;
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

mpz_class PrimeIdeal::norm() const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, (unsigned long)f);
    return r;
}

std::string PrimeIdeal::to_string() const { return "(" + std::to_string(p) + ", " + poly_to_string(g) + ")"; }

std::vector<PrimeIdeal> split_prime(const NumberField& K, i64 p) {
    if (p == 2) throw ExcludedPrime("p = 2 is excluded");
    if (p < 3 || !is_prime_i64(p)) throw Error("split_prime: p must be an odd prime");
    if (mpz_divisible_ui_p(K.disc().get_mpz_t(), (unsigned long)p))
        throw ExcludedPrime("p divides disc(minpoly)");
    std::vector<i64> c(K.degree() + 1);
    for (int i = 0; i <= K.degree(); ++i)
        c[i] = (i64)mpz_fdiv_ui(K.minpoly()[i].get_mpz_t(), (unsigned long)p);
    auto factors = factor_mod_p(PolyModP(p, std::move(c)));
    std::vector<PrimeIdeal> primes;
    for (auto& [g, m] : factors) {
        if (m != 1) throw Error("split_prime: repeated factor at an unramified prime");
        primes.push_back(PrimeIdeal{p, g, g.degree()});
    }
    // factor_mod_p sorts by (degree, coefficient-lex) already
    return primes;
}

FqCtxPtr residue_field(const PrimeIdeal& P) { return make_fq(P.p, P.g, false); }

ExtFieldElem residue_embed(const NumberField& K, const PrimeIdeal& P, const FieldElem& a) {
    FqCtxPtr ctx = residue_field(P);
    std::vector<i64> c(K.degree());
    for (int i = 0; i < K.degree(); ++i) {
        const mpq_class& v = a.coords[i];
        if (mpz_divisible_ui_p(v.get_den().get_mpz_t(), (unsigned long)P.p))
            throw DenominatorNotCoprime("coordinate denominator divisible by p");
        i64 num = (i64)mpz_fdiv_ui(v.get_num().get_mpz_t(), (unsigned long)P.p);
        i64 den = (i64)mpz_fdiv_ui(v.get_den().get_mpz_t(), (unsigned long)P.p);
        c[i] = fp::mul(num, fp::inv(den, P.p), P.p);
    }
    PolyModP r = poly_mod(PolyModP(P.p, std::move(c)), P.g);
    ExtFieldElem e = fq_zero(ctx);
    for (int i = 0; i <= r.degree(); ++i) e.c[i] = r.coeffs[i];
    return e;
}

FieldIso::FieldIso(NumberField source, NumberField target, FieldElem image_of_theta)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image_of_theta)) {
    // minpoly of the source must vanish at the image (exact rational check)
    FieldElem acc = target_.zero();
    for (int i = source_.degree(); i >= 0; --i) {
        acc = target_.mul(acc, image_);
        FieldElem c = target_.from_rational(mpq_class(source_.minpoly()[i]));
        acc = target_.add(acc, c);
    }
    if (!acc.is_zero()) throw Error("FieldIso: image of theta is not a root of the source minpoly");
}

FieldElem FieldIso::apply(const FieldElem& a) const {
    FieldElem acc = target_.zero();
    for (int i = source_.degree() - 1; i >= 0; --i) {
        acc = target_.mul(acc, image_);
        acc = target_.add(acc, target_.from_rational(a.coords[i]));
    }
    return acc;
}

FieldIso FieldIso::inverse() const {
    for (const FieldIso& tau : find_isomorphisms(target_, source_))
        if (tau.apply(image_) == source_.theta()) return tau;
    throw Error("FieldIso: no inverse found");
}

PrimeIdeal apply_iso_to_prime(const FieldIso& sigma, const PrimeIdeal& P) {
    std::vector<PrimeIdeal> candidates = split_prime(sigma.target(), P.p);
    // sigma(P) is the unique prime of the target killing g_P(sigma(theta))
    FieldElem img = sigma.target().zero();
    for (int i = P.g.degree(); i >= 0; --i) {
        img = sigma.target().mul(img, sigma.image_of_theta());
        img = sigma.target().add(img, sigma.target().from_rational(mpq_class((long)P.g.coeff(i))));
    }
    const PrimeIdeal* found = nullptr;
    for (const PrimeIdeal& Q : candidates) {
        if (residue_embed(sigma.target(), Q, img).is_zero()) {
            if (found) throw Error("apply_iso_to_prime: image prime not unique");
            found = &Q;
        }
    }
    if (!found) throw Error("apply_iso_to_prime: no image prime found");
    return *found;
}

std::vector<FieldIso> find_isomorphisms(const NumberField& K, const NumberField& K2) {
    if (K.degree() > 2 || K2.degree() > 2)
        throw UnsupportedDegree("find_isomorphisms supports degree <= 2 only");
    std::vector<FieldIso> out;
    if (K.degree() != K2.degree()) return out;
    if (K.degree() == 1) {
        out.emplace_back(K, K2, K2.from_rational(mpq_class(-K.minpoly()[0])));
        return out;
    }
    // x^2 + b x + c -> x^2 + b2 x + c2: theta -> u + v theta2 with
    // v^2 = (b^2 - 4c) / (b2^2 - 4c2) and u = (b2 v - b)/2
    mpq_class b(K.minpoly()[1]), c(K.minpoly()[0]);
    mpq_class b2(K2.minpoly()[1]), c2(K2.minpoly()[0]);
    mpq_class ratio = (b * b - 4 * c) / (b2 * b2 - 4 * c2);
    ratio.canonicalize();
    if (ratio <= 0) return out;
    if (!mpz_perfect_square_p(ratio.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(ratio.get_den().get_mpz_t()))
        return out;
    mpz_class num_root, den_root;
    mpz_sqrt(num_root.get_mpz_t(), ratio.get_num().get_mpz_t());
    mpz_sqrt(den_root.get_mpz_t(), ratio.get_den().get_mpz_t());
    for (int sg : {1, -1}) {
        mpq_class v = mpq_class(num_root, den_root) * sg;
        v.canonicalize();
        mpq_class u = (b2 * v - b) / 2;
        FieldElem img{{u, v}};
        out.emplace_back(K, K2, std::move(img));
    }
    return out;
}

}  // namespace twistmatch
