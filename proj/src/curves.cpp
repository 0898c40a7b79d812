#include "twistmatch/curves.hpp"

#include <vector>

namespace twistmatch {

namespace {

std::string elem_to_string(const FieldElem& a) {
    std::string s;
    for (int i = (int)a.coords.size() - 1; i >= 0; --i) {
        const mpq_class& c = a.coords[i];
        if (c == 0) continue;
        if (!s.empty() && c > 0) s += "+";
        if (i == 0) {
            s += c.get_str();
        } else {
            if (c == -1)
                s += "-";
            else if (c != 1)
                s += c.get_str();
            s += "θ";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

}  // namespace

EllipticCurveOverK::EllipticCurveOverK(NumberField K, FieldElem a_, FieldElem b_)
    : field(std::move(K)), a(std::move(a_)), b(std::move(b_)) {
    // disc = -16(4a^3 + 27b^2) must not vanish
    FieldElem a3 = field.mul(field.mul(a, a), a);
    FieldElem b2 = field.mul(b, b);
    FieldElem d = field.add(field.mul_int(a3, 4), field.mul_int(b2, 27));
    if (d.is_zero()) throw Error("singular curve: 4a^3 + 27b^2 = 0");
}

std::string EllipticCurveOverK::to_string() const {
    return "y^2 = x^3 + (" + elem_to_string(a) + ")x + (" + elem_to_string(b) + ")";
}

CurveOverFq::CurveOverFq(FqCtxPtr ctx_, ExtFieldElem a_, ExtFieldElem b_)
    : ctx(std::move(ctx_)), a(std::move(a_)), b(std::move(b_)) {
    ExtFieldElem d = fq_from_int(ctx, 4) * a * a * a + fq_from_int(ctx, 27) * b * b;
    if (d.is_zero()) throw BadReduction("discriminant vanishes in the residue field");
}

EllipticCurveOverK apply_iso_to_curve(const FieldIso& sigma, const EllipticCurveOverK& E) {
    return EllipticCurveOverK(sigma.target(), sigma.apply(E.a), sigma.apply(E.b));
}

CurveOverFq reduce_curve(const EllipticCurveOverK& E, const PrimeIdeal& P) {
    ExtFieldElem a = residue_embed(E.field, P, E.a);
    ExtFieldElem b = residue_embed(E.field, P, E.b);
    return CurveOverFq(residue_field(P), std::move(a), std::move(b));
}

i64 count_points(const CurveOverFq& C) {
    const i64 q = C.ctx->q_i64(kPointCountBudget);
    const i64 p = C.ctx->p;
    if (C.ctx->f == 1) {
        const i64 a = C.a.c[0], b = C.b.c[0];
        std::vector<bool> sq(p, false);
        for (i64 y = 0; y <= p / 2; ++y) sq[fp::mul(y, y, p)] = true;
        i64 n = 1;
        for (i64 x = 0; x < p; ++x) {
            i64 rhs = fp::add(fp::mul(fp::add(fp::mul(x, x, p), a, p), x, p), b, p);
            if (rhs == 0)
                n += 1;
            else if (sq[rhs])
                n += 2;
        }
        return n;
    }
    std::vector<bool> sq(q, false);
    for (i64 i = 0; i < q; ++i) {
        ExtFieldElem y = fq_decode(C.ctx, i);
        sq[fq_encode(y * y)] = true;
    }
    i64 n = 1;
    for (i64 i = 0; i < q; ++i) {
        ExtFieldElem x = fq_decode(C.ctx, i);
        ExtFieldElem rhs = (x * x + C.a) * x + C.b;
        if (rhs.is_zero())
            n += 1;
        else if (sq[fq_encode(rhs)])
            n += 2;
    }
    return n;
}

LocalData local_data(const EllipticCurveOverK& E, const PrimeIdeal& P) {
    CurveOverFq C = reduce_curve(E, P);
    i64 q = C.ctx->q_i64(kPointCountBudget);
    i64 n = count_points(C);
    i64 a = n - q - 1;
    if ((__int128)a * a > (__int128)4 * q) throw Error("point count violates the Hasse bound");
    return LocalData{P, 1, {a, q}};
}

LocalData synthetic_local_data(int dim, const PrimeIdeal& P, u64 seed) {
    if (dim < 1) throw Error("synthetic_local_data: dim >= 1 required");
    const i64 pf = pow_ck(P.p, P.f);
    mpz_class bound_z;
    mpz_class pf4 = mpz_class((long)pf) * 4;
    mpz_sqrt(bound_z.get_mpz_t(), pf4.get_mpz_t());
    const i64 bound = bound_z.get_si();  // floor(2 sqrt(p^f))
    Rng rng(seed);
    std::uniform_int_distribution<i64> dist(-bound, bound);
    // product of dim quadratics in U = T^f
    std::vector<i64> poly{1};
    for (int j = 0; j < dim; ++j) {
        i64 t = dist(rng);
        std::vector<i64> next(poly.size() + 2, 0);
        for (size_t i = 0; i < poly.size(); ++i) {
            next[i] = add_ck(next[i], poly[i]);
            next[i + 1] = add_ck(next[i + 1], mul_ck(poly[i], t));
            next[i + 2] = add_ck(next[i + 2], mul_ck(poly[i], pf));
        }
        poly = std::move(next);
    }
    std::vector<i64> coeffs(poly.begin() + 1, poly.end());
    return LocalData{P, dim, std::move(coeffs)};
}

PrimeIdeal synthetic_prime(i64 p, int f, int index) {
    if (f == 1) {
        if (index >= p) throw Error("synthetic_prime: index out of range");
        return PrimeIdeal{p, PolyModP(p, {index, 1}), 1};
    }
    int found = 0;
    // enumerate monic degree-f polynomials in lex coefficient order
    std::vector<i64> c(f + 1, 0);
    c[f] = 1;
    for (;;) {
        PolyModP g(p, c);
        if (g.degree() == f && poly_irreducible(g)) {
            if (found == index) return PrimeIdeal{p, g, f};
            ++found;
        }
        int i = f - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) throw Error("synthetic_prime: index out of range");
        ++c[i];
    }
}

}  // namespace twistmatch
