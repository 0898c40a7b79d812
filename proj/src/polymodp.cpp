#include "twistmatch/polymodp.hpp"

#include <algorithm>

namespace twistmatch {

PolyModP::PolyModP(i64 p_, std::vector<i64> c) : p(p_), coeffs(std::move(c)) {
    fp::check_char(p_);
    for (auto& v : coeffs) v = fp::reduce(v, p);
    trim();
}

void PolyModP::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

PolyModP operator+(const PolyModP& a, const PolyModP& b) {
    PolyModP r(a.p);
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = fp::add(a.coeff((int)i), b.coeff((int)i), a.p);
    r.trim();
    return r;
}

PolyModP operator-(const PolyModP& a, const PolyModP& b) {
    PolyModP r(a.p);
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = fp::sub(a.coeff((int)i), b.coeff((int)i), a.p);
    r.trim();
    return r;
}

PolyModP operator*(const PolyModP& a, const PolyModP& b) {
    if (a.is_zero() || b.is_zero()) return PolyModP::zero(a.p);
    PolyModP r(a.p);
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] = fp::add(r.coeffs[i + j], fp::mul(a.coeffs[i], b.coeffs[j], a.p), a.p);
    }
    r.trim();
    return r;
}

PolyModP poly_scale(const PolyModP& a, i64 c) {
    PolyModP r(a.p);
    c = fp::reduce(c, a.p);
    r.coeffs.reserve(a.coeffs.size());
    for (i64 v : a.coeffs) r.coeffs.push_back(fp::mul(v, c, a.p));
    r.trim();
    return r;
}

PolyModP poly_monic(const PolyModP& a) {
    if (a.is_zero() || a.lead() == 1) return a;
    return poly_scale(a, fp::inv(a.lead(), a.p));
}

void poly_divmod(const PolyModP& a, const PolyModP& b, PolyModP& q, PolyModP& r) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    q = PolyModP::zero(a.p);
    r = a;
    if (a.degree() < b.degree()) return;
    q.coeffs.assign(a.degree() - b.degree() + 1, 0);
    i64 lead_inv = fp::inv(b.lead(), a.p);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        i64 c = fp::mul(r.lead(), lead_inv, a.p);
        q.coeffs[shift] = c;
        for (int i = 0; i <= b.degree(); ++i)
            r.coeffs[i + shift] = fp::sub(r.coeffs[i + shift], fp::mul(b.coeffs[i], c, a.p), a.p);
        r.trim();
    }
    q.trim();
}

PolyModP poly_mod(const PolyModP& a, const PolyModP& b) {
    PolyModP q, r;
    poly_divmod(a, b, q, r);
    return r;
}

PolyModP poly_gcd(PolyModP a, PolyModP b) {
    while (!b.is_zero()) {
        PolyModP r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

PolyModP poly_derivative(const PolyModP& a) {
    PolyModP r(a.p);
    for (int i = 1; i <= a.degree(); ++i) r.coeffs.push_back(fp::mul(a.coeffs[i], i % a.p, a.p));
    r.trim();
    return r;
}

i64 poly_eval(const PolyModP& a, i64 x) {
    i64 r = 0;
    x = fp::reduce(x, a.p);
    for (int i = a.degree(); i >= 0; --i) r = fp::add(fp::mul(r, x, a.p), a.coeffs[i], a.p);
    return r;
}

PolyModP poly_powmod(const PolyModP& base, const std::vector<int>& e_bits, const PolyModP& m) {
    PolyModP r = PolyModP::constant(base.p, 1);
    for (int bit : e_bits) {
        r = poly_mod(r * r, m);
        if (bit) r = poly_mod(r * base, m);
    }
    return r;
}

PolyModP poly_powmod(const PolyModP& base, i64 e, const PolyModP& m) {
    std::vector<int> bits;
    for (; e > 0; e >>= 1) bits.push_back((int)(e & 1));
    std::reverse(bits.begin(), bits.end());
    return poly_powmod(base, bits, m);
}

std::string poly_to_string(const PolyModP& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::string s;
    for (int i = a.degree(); i >= 0; --i) {
        i64 c = a.coeffs[i];
        if (c == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(c);
        } else {
            if (c != 1) s += std::to_string(c);
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

bool poly_less(const PolyModP& a, const PolyModP& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeffs < b.coeffs;
}

}  // namespace twistmatch
