#include "twistmatch/cyclotomic.hpp"

#include <mpfr.h>

namespace twistmatch {

void CyclotomicInt::check_order(int l) {
    if (l < 2 || !is_prime_i64(l)) throw Error("cyclotomic order must be a prime");
    if (l > 101) throw Error("cyclotomic order bound exceeded");
}

CyclotomicInt::CyclotomicInt(int l, std::vector<i64> coords) : order_(l), coords_(std::move(coords)) {
    check_order(l);
    if ((int)coords_.size() != l - 1) throw Error("cyclotomic coordinate length must be l-1");
}

CyclotomicInt CyclotomicInt::from_int(int l, i64 n) {
    CyclotomicInt r(l);
    r.coords_[0] = n;
    return r;
}

CyclotomicInt CyclotomicInt::zeta_pow(int l, i64 exp) {
    check_order(l);
    CyclotomicInt r(l);
    i64 e = mod_floor(exp, l);
    if (e == l - 1) {
        for (auto& c : r.coords_) c = -1;
    } else {
        r.coords_[e] = 1;
    }
    return r;
}

bool CyclotomicInt::is_zero() const {
    for (i64 c : coords_)
        if (c != 0) return false;
    return true;
}

bool CyclotomicInt::is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

i64 CyclotomicInt::rational_value() const {
    if (!is_rational()) throw Error("cyclotomic value is not a rational integer");
    return coords_[0];
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
    if (order_ != o.order_) throw Error("cyclotomic order mismatch");
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] = add_ck(coords_[i], o.coords_[i]);
    return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
    if (order_ != o.order_) throw Error("cyclotomic order mismatch");
    for (size_t i = 0; i < coords_.size(); ++i) coords_[i] = sub_ck(coords_[i], o.coords_[i]);
    return *this;
}

CyclotomicInt CyclotomicInt::operator-() const {
    CyclotomicInt r = *this;
    for (auto& c : r.coords_) c = sub_ck(0, c);
    return r;
}

CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.order() != b.order()) throw Error("cyclotomic order mismatch");
    const int l = a.order();
    // convolution on exponents 0..2l-4, folded mod l, then zeta^(l-1)
    // rewritten on the basis
    std::vector<i64> acc(l, 0);
    for (int i = 0; i < l - 1; ++i) {
        if (a.coords()[i] == 0) continue;
        for (int j = 0; j < l - 1; ++j) {
            if (b.coords()[j] == 0) continue;
            int e = (i + j) % l;
            acc[e] = add_ck(acc[e], mul_ck(a.coords()[i], b.coords()[j]));
        }
    }
    std::vector<i64> out(l - 1);
    for (int e = 0; e < l - 1; ++e) out[e] = sub_ck(acc[e], acc[l - 1]);
    return CyclotomicInt(l, std::move(out));
}

CyclotomicInt CyclotomicInt::conj() const {
    const int l = order_;
    std::vector<i64> acc(l, 0);
    for (int e = 0; e < l - 1; ++e) acc[(l - e) % l] = coords_[e];
    std::vector<i64> out(l - 1);
    for (int e = 0; e < l - 1; ++e) out[e] = sub_ck(acc[e], acc[l - 1]);
    return CyclotomicInt(l, std::move(out));
}

std::string CyclotomicInt::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int e = 0; e < order_ - 1; ++e) {
        i64 c = coords_[e];
        if (c == 0) continue;
        if (!s.empty() && c > 0) s += "+";
        if (e == 0) {
            s += std::to_string(c);
        } else {
            if (c == -1)
                s += "-";
            else if (c != 1)
                s += std::to_string(c);
            s += "z";
            if (e > 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

int zeta_min_re_exponent(int l) { return (l - 1) / 2; }

CyclotomicInt zeta_min_re(int l) { return CyclotomicInt::zeta_pow(l, zeta_min_re_exponent(l)); }

namespace {

// Accumulate c * cos(2*pi*k/l) into a running interval [lo, hi] with outward
// rounding. The angle avoids 0 and pi exactly (0 < k < l, l odd), so cos has
// no interior extremum over the tiny angle interval and endpoint evaluation
// is sound.
void add_cos_term(mpfr_t lo, mpfr_t hi, i64 c, int k, int l, mpfr_prec_t prec) {
    mpfr_t th_lo, th_hi, c_lo, c_hi, t;
    mpfr_inits2(prec, th_lo, th_hi, c_lo, c_hi, t, (mpfr_ptr)nullptr);

    mpfr_const_pi(th_lo, MPFR_RNDD);
    mpfr_mul_si(th_lo, th_lo, 2 * k, MPFR_RNDD);
    mpfr_div_si(th_lo, th_lo, l, MPFR_RNDD);
    mpfr_const_pi(th_hi, MPFR_RNDU);
    mpfr_mul_si(th_hi, th_hi, 2 * k, MPFR_RNDU);
    mpfr_div_si(th_hi, th_hi, l, MPFR_RNDU);

    mpfr_cos(c_lo, th_lo, MPFR_RNDD);
    mpfr_cos(t, th_hi, MPFR_RNDD);
    mpfr_min(c_lo, c_lo, t, MPFR_RNDD);
    mpfr_cos(c_hi, th_lo, MPFR_RNDU);
    mpfr_cos(t, th_hi, MPFR_RNDU);
    mpfr_max(c_hi, c_hi, t, MPFR_RNDU);

    if (c >= 0) {
        mpfr_mul_si(t, c_lo, c, MPFR_RNDD);
        mpfr_add(lo, lo, t, MPFR_RNDD);
        mpfr_mul_si(t, c_hi, c, MPFR_RNDU);
        mpfr_add(hi, hi, t, MPFR_RNDU);
    } else {
        mpfr_mul_si(t, c_hi, c, MPFR_RNDD);
        mpfr_add(lo, lo, t, MPFR_RNDD);
        mpfr_mul_si(t, c_lo, c, MPFR_RNDU);
        mpfr_add(hi, hi, t, MPFR_RNDU);
    }
    mpfr_clears(th_lo, th_hi, c_lo, c_hi, t, (mpfr_ptr)nullptr);
}

// sign of Re(w) for w known to have nonzero real part candidate; 0 means the
// interval still straddles zero at this precision
int re_sign_at(const CyclotomicInt& w, mpfr_prec_t prec) {
    mpfr_t lo, hi;
    mpfr_inits2(prec, lo, hi, (mpfr_ptr)nullptr);
    mpfr_set_si(lo, w.coords()[0], MPFR_RNDD);
    mpfr_set_si(hi, w.coords()[0], MPFR_RNDU);
    for (int k = 1; k < w.order() - 1; ++k)
        if (w.coords()[k] != 0) add_cos_term(lo, hi, w.coords()[k], k, w.order(), prec);
    int s = 0;
    if (mpfr_sgn(lo) > 0)
        s = 1;
    else if (mpfr_sgn(hi) < 0)
        s = -1;
    mpfr_clears(lo, hi, (mpfr_ptr)nullptr);
    return s;
}

}  // namespace

RealOrder cyc_real_compare(const CyclotomicInt& u, const CyclotomicInt& v) {
    if (u.order() != v.order()) throw Error("cyclotomic order mismatch");
    CyclotomicInt w = u - v;
    // Re(w) = 0  <=>  w = -conj(w)
    if ((w + w.conj()).is_zero()) return RealOrder::equal;
    for (mpfr_prec_t prec : {96, 160, 224}) {
        int s = re_sign_at(w, prec);
        if (s > 0) return RealOrder::greater;
        if (s < 0) return RealOrder::less;
    }
    throw PrecisionExhausted("real-part comparison unresolved at 128 fractional bits");
}

std::optional<CyclotomicInt> cyc_div_one_minus_zeta(const CyclotomicInt& w, i64 k) {
    const int l = w.order();
    k = mod_floor(k, l);
    if (k == 0) throw Error("division by zero (1 - zeta^0)");
    // prod_{t=1..l-1} (1 - zeta^(kt)) = l, so 1/(1 - zeta^k) is the partial
    // product over l
    CyclotomicInt num = w;
    const CyclotomicInt one = CyclotomicInt::from_int(l, 1);
    for (i64 t = 2; t <= l - 1; ++t) num = num * (one - CyclotomicInt::zeta_pow(l, k * t));
    std::vector<i64> q(l - 1);
    for (int i = 0; i < l - 1; ++i) {
        if (num.coords()[i] % l != 0) return std::nullopt;
        q[i] = num.coords()[i] / l;
    }
    return CyclotomicInt(l, std::move(q));
}

}  // namespace twistmatch
