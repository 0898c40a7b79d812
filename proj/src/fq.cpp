#include "twistmatch/fq.hpp"

namespace twistmatch {

FqCtx::FqCtx(i64 p_, PolyModP g_, bool check_irreducible) : p(p_), g(std::move(g_)) {
    fp::check_char(p);
    if (g.p != p || !g.is_monic() || g.degree() < 1) throw Error("FqCtx: modulus polynomial must be monic of degree >= 1");
    if (g.degree() > 12) throw Error("FqCtx: inertia degree bound f <= 12 exceeded");
    if (check_irreducible && g.degree() > 1 && !poly_irreducible(g)) throw Error("FqCtx: modulus polynomial is reducible");
    f = g.degree();
    mpz_ui_pow_ui(q.get_mpz_t(), (unsigned long)p, (unsigned long)f);
}

i64 FqCtx::q_i64(i64 budget) const {
    if (q > budget) throw BudgetExceeded("field size exceeds enumeration budget");
    return (i64)q.get_si();
}

FqCtxPtr make_fq(i64 p, PolyModP g, bool check_irreducible) {
    return std::make_shared<const FqCtx>(p, std::move(g), check_irreducible);
}

FqCtxPtr make_fp(i64 p) { return make_fq(p, PolyModP::x(p), false); }

ExtFieldElem::ExtFieldElem(FqCtxPtr ctx_, std::vector<i64> coeffs) : ctx(std::move(ctx_)), c(std::move(coeffs)) {
    if ((int)c.size() > ctx->f) {
        PolyModP r = poly_mod(PolyModP(ctx->p, c), ctx->g);
        c = std::move(r.coeffs);
    }
    for (auto& v : c) v = fp::reduce(v, ctx->p);
    c.resize(ctx->f, 0);
}

bool ExtFieldElem::is_zero() const {
    for (i64 v : c)
        if (v != 0) return false;
    return true;
}

ExtFieldElem fq_zero(const FqCtxPtr& ctx) { return ExtFieldElem(ctx, {}); }
ExtFieldElem fq_one(const FqCtxPtr& ctx) { return ExtFieldElem(ctx, {1}); }
ExtFieldElem fq_from_int(const FqCtxPtr& ctx, i64 v) { return ExtFieldElem(ctx, {fp::reduce(v, ctx->p)}); }

ExtFieldElem fq_gen(const FqCtxPtr& ctx) {
    if (ctx->f == 1) return ExtFieldElem(ctx, {fp::neg(ctx->g.coeff(0), ctx->p)});  // t = -g(0)
    return ExtFieldElem(ctx, {0, 1});
}

ExtFieldElem operator+(const ExtFieldElem& a, const ExtFieldElem& b) {
    ExtFieldElem r = a;
    for (int i = 0; i < a.ctx->f; ++i) r.c[i] = fp::add(a.c[i], b.c[i], a.ctx->p);
    return r;
}

ExtFieldElem operator-(const ExtFieldElem& a, const ExtFieldElem& b) {
    ExtFieldElem r = a;
    for (int i = 0; i < a.ctx->f; ++i) r.c[i] = fp::sub(a.c[i], b.c[i], a.ctx->p);
    return r;
}

ExtFieldElem fq_neg(const ExtFieldElem& a) {
    ExtFieldElem r = a;
    for (auto& v : r.c) v = fp::neg(v, a.ctx->p);
    return r;
}

ExtFieldElem operator*(const ExtFieldElem& a, const ExtFieldElem& b) {
    const i64 p = a.ctx->p;
    const int f = a.ctx->f;
    if (f == 1) {
        ExtFieldElem r = a;
        r.c[0] = fp::mul(a.c[0], b.c[0], p);
        return r;
    }
    PolyModP prod = PolyModP(p, a.c) * PolyModP(p, b.c);
    PolyModP red = poly_mod(prod, a.ctx->g);
    ExtFieldElem r;
    r.ctx = a.ctx;
    r.c = std::move(red.coeffs);
    r.c.resize(f, 0);
    return r;
}

ExtFieldElem fq_pow(const ExtFieldElem& a, const mpz_class& e) {
    if (e < 0) return fq_pow(fq_inv(a), -e);
    ExtFieldElem r = fq_one(a.ctx);
    ExtFieldElem base = a;
    size_t n = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = n; i-- > 0;) {
        r = r * r;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = r * base;
    }
    return r;
}

ExtFieldElem fq_inv(const ExtFieldElem& a) {
    if (a.is_zero()) throw Error("division by zero in F_q");
    return fq_pow(a, a.ctx->q - 2);
}

bool is_square(const ExtFieldElem& a) {
    if (a.is_zero()) return true;
    ExtFieldElem r = fq_pow(a, (a.ctx->q - 1) / 2);
    return r == fq_one(a.ctx);
}

i64 fq_encode(const ExtFieldElem& a) {
    i64 idx = 0;
    for (int i = a.ctx->f; i-- > 0;) idx = idx * a.ctx->p + a.c[i];
    return idx;
}

ExtFieldElem fq_decode(const FqCtxPtr& ctx, i64 index) {
    std::vector<i64> c(ctx->f);
    for (int i = 0; i < ctx->f; ++i) {
        c[i] = index % ctx->p;
        index /= ctx->p;
    }
    return ExtFieldElem(ctx, std::move(c));
}

}  // namespace twistmatch
