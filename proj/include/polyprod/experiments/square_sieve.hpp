#pragma once

// The square-sieve pipeline for |S_d(M, N)| run as an instrumented
// computation: ground-truth S_d, the split S_d = S_1 u S_2 by gaps > H, the
// prime sets L_z (rootless primes in [z, 2z]) and P_z (those where no F_h,
// h <= H, is a square), and the full-sum identity on S_2.

#include <polyprod/core_arith.hpp>
#include <polyprod/experiments/census.hpp>
#include <polyprod/polynomials/roots.hpp>
#include <polyprod/products.hpp>

#include <cmath>
#include <optional>
#include <vector>

namespace polyprod {

struct SquareSieveOptions {
    std::optional<u64> H;
    std::optional<u64> z;
    unsigned threads = 1;
};

/// H = N^(1/8) / (log N)^(1/4), rounded, at least 1.
inline u64 default_sieve_H(u64 N) {
    const double n = static_cast<double>(N);
    const double h = std::pow(n, 1.0 / 8.0) / std::pow(std::log(n), 0.25);
    return std::max<u64>(1, static_cast<u64>(std::llround(h)));
}

/// z = sqrt(N), rounded, at least 1.
inline u64 default_sieve_z(u64 N) {
    return std::max<u64>(1, static_cast<u64>(std::llround(std::sqrt(static_cast<double>(N)))));
}

struct SieveCheck {
    u64 n = 0;
    u64 partner_h = 0;          // smallest h <= H with n + h in S_d
    i64 partner_sum = 0;        // sum over P_z of (F_h(n) / l) at h = partner_h
    std::optional<u64> first_full_h;  // smallest h <= H whose sum reaches |P_z|
    bool passes = false;        // partner_sum == |P_z|
};

struct SieveReport {
    IntPoly poly;
    BigInt d;
    u64 M = 0, N = 0, H = 0, z = 0;
    std::vector<u64> solutions;  // S_d(M, N)
    std::vector<u64> s1, s2;
    std::vector<u64> curly_L;
    std::vector<u64> curly_P;
    std::vector<SieveCheck> checks;

    std::size_t s1_count() const { return s1.size(); }
    std::size_t s2_count() const { return s2.size(); }
    double bound_value() const { return square_class_bound(N); }
    /// |S_1| <= N / H
    bool s1_within_gap_bound() const { return s1.size() * H <= N; }
    bool all_checks_pass() const {
        for (const auto& c : checks) {
            if (!c.passes) return false;
        }
        return true;
    }
};

/// Jacobi-sum of F_h(n) = P(n+1)...P(n+h) over the prime set.
inline i64 shifted_symbol_sum(const IntPoly& P, u64 n, u64 h, const std::vector<u64>& primes) {
    i64 sum = 0;
    for (u64 l : primes) {
        const ModPoly r = ModPoly::reduce(P, l);
        u64 v = 1;
        for (u64 j = 1; j <= h; ++j) v = mul_mod(v, r((n + j) % l), l);
        sum += jacobi(v, l);
    }
    return sum;
}

inline SieveReport square_sieve(const IntPoly& P, const BigInt& d, u64 M, u64 N, SquareSieveOptions opt = {}) {
    if (N < 16) fail(ErrorKind::precondition, "square sieve needs N >= 16");
    if (!is_squarefree(d)) fail(ErrorKind::precondition, "d must be squarefree");
    SieveReport rep;
    rep.poly = P;
    rep.d = d;
    rep.M = M;
    rep.N = N;
    rep.H = opt.H.value_or(default_sieve_H(N));
    rep.z = opt.z.value_or(default_sieve_z(N));
    if (rep.H < 1) fail(ErrorKind::invalid_argument, "H must be >= 1");

    // (i) ground truth
    stream_parities(P, M, N, KernelMode::absolute, opt.threads, [&](u64 n, const ParityState& s, const FactorMap&) {
        if (n > M && s.kernel() == d) rep.solutions.push_back(n);
    });

    // (ii) split by gaps
    for (std::size_t i = 0; i < rep.solutions.size(); ++i) {
        const bool close_successor = i + 1 < rep.solutions.size() && rep.solutions[i + 1] - rep.solutions[i] <= rep.H;
        (close_successor ? rep.s2 : rep.s1).push_back(rep.solutions[i]);
    }

    // (iii) L_z and P_z
    for (u64 l : primes_in(std::max<u64>(rep.z, 3), 2 * rep.z)) {
        const ModPoly r = ModPoly::reduce(P, l);
        if (r.is_zero() || count_roots_mod(r) != 0) continue;
        rep.curly_L.push_back(l);
        ModPoly Fh = ModPoly::constant(l, 1);
        bool some_square = false;
        for (u64 h = 1; h <= rep.H && !some_square; ++h) {
            Fh = Fh * r.shifted(h);
            some_square = is_square_poly_mod(Fh);
        }
        if (!some_square) rep.curly_P.push_back(l);
    }
    if (rep.curly_P.empty()) fail(ErrorKind::precondition, "P_z is empty; choose a larger z");

    // (iv) full-sum identity on S_2
    const i64 full = static_cast<i64>(rep.curly_P.size());
    for (std::size_t i = 0; i + 1 < rep.solutions.size(); ++i) {
        const u64 n = rep.solutions[i];
        const u64 gap = rep.solutions[i + 1] - n;
        if (gap > rep.H) continue;
        SieveCheck c;
        c.n = n;
        c.partner_h = gap;
        c.partner_sum = shifted_symbol_sum(P, n, gap, rep.curly_P);
        for (u64 h = 1; h <= rep.H; ++h) {
            if ((h == gap ? c.partner_sum : shifted_symbol_sum(P, n, h, rep.curly_P)) == full) {
                c.first_full_h = h;
                break;
            }
        }
        c.passes = c.partner_sum == full;
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace polyprod
