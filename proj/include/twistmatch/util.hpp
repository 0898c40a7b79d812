#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "twistmatch/errors.hpp"

namespace twistmatch {

using i64 = std::int64_t;
using u64 = std::uint64_t;

using Rng = std::mt19937_64;

inline i64 add_ck(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("i64 add overflow");
    return r;
}

inline i64 sub_ck(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("i64 sub overflow");
    return r;
}

inline i64 mul_ck(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("i64 mul overflow");
    return r;
}

// p^e with overflow check
inline i64 pow_ck(i64 p, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r = mul_ck(r, p);
    return r;
}

inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline bool is_prime_i64(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline int thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("TWISTMATCH_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && (unsigned)v < hw) hw = (unsigned)v;
    }
    return (int)hw;
}

// Index-parallel loop with deterministic result placement; honors
// TWISTMATCH_THREADS.
inline void parallel_for(i64 n, const std::function<void(i64)>& fn) {
    int nt = thread_cap();
    if (nt <= 1 || n < 4) {
        for (i64 i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (i64 i = t; i < n; i += nt) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace twistmatch
