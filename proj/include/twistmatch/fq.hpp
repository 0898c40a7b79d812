#pragma once

#include <gmpxx.h>

#include <memory>
#include <vector>

#include "twistmatch/factor.hpp"
#include "twistmatch/polymodp.hpp"

namespace twistmatch {

// F_{p^f} = F_p[t]/(g) for a monic irreducible g of degree f.
struct FqCtx {
    i64 p;
    PolyModP g;  // monic irreducible, deg >= 1
    int f;
    mpz_class q;  // p^f

    FqCtx(i64 p_, PolyModP g_, bool check_irreducible = true);

    // p^f as i64; throws if it does not fit the naive-enumeration regime
    i64 q_i64(i64 budget) const;

    friend bool operator==(const FqCtx& a, const FqCtx& b) { return a.p == b.p && a.g == b.g; }
};

using FqCtxPtr = std::shared_ptr<const FqCtx>;

FqCtxPtr make_fq(i64 p, PolyModP g, bool check_irreducible = true);
FqCtxPtr make_fp(i64 p);  // degree-1 context, g = t

struct ExtFieldElem {
    FqCtxPtr ctx;
    std::vector<i64> c;  // length f, coefficients on 1, t, ..., t^(f-1)

    ExtFieldElem() = default;
    ExtFieldElem(FqCtxPtr ctx_, std::vector<i64> coeffs);

    bool is_zero() const;
    friend bool operator==(const ExtFieldElem& a, const ExtFieldElem& b) {
        return *a.ctx == *b.ctx && a.c == b.c;
    }
};

ExtFieldElem fq_zero(const FqCtxPtr& ctx);
ExtFieldElem fq_one(const FqCtxPtr& ctx);
ExtFieldElem fq_from_int(const FqCtxPtr& ctx, i64 v);
ExtFieldElem fq_gen(const FqCtxPtr& ctx);  // the class of t

ExtFieldElem operator+(const ExtFieldElem& a, const ExtFieldElem& b);
ExtFieldElem operator-(const ExtFieldElem& a, const ExtFieldElem& b);
ExtFieldElem operator*(const ExtFieldElem& a, const ExtFieldElem& b);
ExtFieldElem fq_neg(const ExtFieldElem& a);
ExtFieldElem fq_pow(const ExtFieldElem& a, const mpz_class& e);
ExtFieldElem fq_inv(const ExtFieldElem& a);

// Euler criterion in F_q, q odd; zero counts as a square.
bool is_square(const ExtFieldElem& a);

// Dense element <-> index in [0, q) by base-p digits; used by the point
// counting bitsets. Requires q to fit in i64.
i64 fq_encode(const ExtFieldElem& a);
ExtFieldElem fq_decode(const FqCtxPtr& ctx, i64 index);

}  // namespace twistmatch
