#pragma once

// Perfect-power solutions F_P(n) = m^k and the census of squarefree kernels
// d(n) with F_P(n) = d t^2 over a window (M, M+N].

#include <polyprod/core_arith.hpp>
#include <polyprod/products.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <vector>

namespace polyprod {

struct PowerSolution {
    u64 n = 0;
    FactorMap root;  // m, with F_P(n) = m^k
};

/// Every n <= N with F_P(n) a perfect k-th power (negative values count
/// only for odd k).
inline std::vector<PowerSolution> find_power_solutions(const IntPoly& P, unsigned k, u64 N, unsigned threads = 1) {
    if (k < 2) fail(ErrorKind::invalid_argument, "power k must be at least 2");
    std::vector<PowerSolution> out;
    std::map<BigInt, u64> exponents;
    std::size_t off_residue = 0;  // primes whose exponent is not divisible by k
    int sign = 1;
    for (u64 lo = 1; lo <= N; lo += detail::kFactorBlock) {
        const u64 hi = std::min(N, lo + detail::kFactorBlock - 1);
        const std::vector<FactorMap> block = factor_values(P, lo, hi, threads);
        for (u64 i = lo; i <= hi; ++i) {
            const FactorMap& f = block[i - lo];
            sign *= f.sign;
            for (const auto& [q, e] : f.entries) {
                u64& total = exponents[q];
                const bool was_off = total % k != 0;
                total += e;
                const bool is_off = total % k != 0;
                if (was_off && !is_off) --off_residue;
                if (!was_off && is_off) ++off_residue;
            }
            if (off_residue != 0 || (sign < 0 && k % 2 == 0)) continue;
            PowerSolution s{i, {}};
            s.root.sign = sign;
            for (const auto& [q, e] : exponents) {
                if (e > 0) s.root.entries.emplace_back(q, static_cast<unsigned>(e / k));
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

/// One kernel class S_d of the census. Kernels wider than the census bit
/// limit are not materialized; the class is still identified exactly.
struct KernelClass {
    std::optional<BigInt> kernel;
    std::size_t kernel_bits = 0;
    int sign = 1;
    std::array<u64, 2> fingerprint{0, 0};
    std::vector<u64> members;
};

/// N^(7/8) (log N)^(1/4)
inline double square_class_bound(u64 N) {
    if (N < 2) return 0.0;
    const double n = static_cast<double>(N);
    return std::pow(n, 7.0 / 8.0) * std::pow(std::log(n), 0.25);
}

struct FieldCensus {
    u64 M = 0;
    u64 N = 0;
    KernelMode mode = KernelMode::absolute;
    std::vector<KernelClass> classes;  // ordered by first member

    std::size_t distinct_fields() const { return classes.size(); }

    std::size_t max_class_size() const {
        std::size_t best = 0;
        for (const auto& c : classes) best = std::max(best, c.members.size());
        return best;
    }

    double bound_value() const { return square_class_bound(N); }

    std::optional<double> ratio() const {
        const double b = bound_value();
        if (b <= 0) return std::nullopt;
        return static_cast<double>(max_class_size()) / b;
    }

    const KernelClass* find(const BigInt& d) const {
        for (const auto& c : classes) {
            if (c.kernel && *c.kernel == d) return &c;
        }
        return nullptr;
    }
};

inline constexpr std::size_t kDefaultKernelBitLimit = 4096;

namespace detail {

/// d(m) == d(n) for m < n iff P(m+1)...P(n) is a positive square.
inline bool same_kernel(const IntPoly& P, u64 m, u64 n, unsigned threads) {
    ParityState s;
    for (const FactorMap& f : factor_values(P, m + 1, n, threads)) s.absorb(f);
    return s.is_square();
}

}  // namespace detail

/// Groups the window (M, M+N] by squarefree kernel. Classes are keyed by a
/// 128-bit fingerprint of the odd-exponent prime set and confirmed exactly
/// against the class's latest member, so the grouping is exact.
inline FieldCensus s_d_census(const IntPoly& P, u64 M, u64 N, KernelMode mode = KernelMode::absolute,
                              unsigned threads = 1, std::size_t kernel_bit_limit = kDefaultKernelBitLimit) {
    FieldCensus census;
    census.M = M;
    census.N = N;
    census.mode = mode;
    std::map<std::array<u64, 2>, std::vector<std::size_t>> buckets;
    stream_parities(P, M, N, mode, threads, [&](u64 n, const ParityState& s, const FactorMap&) {
        if (n <= M) return;
        const auto fp = s.fingerprint();
        auto& bucket = buckets[fp];
        for (std::size_t idx : bucket) {
            KernelClass& c = census.classes[idx];
            if (c.sign == s.sign() && c.kernel_bits == bit_length(s.kernel_abs()) &&
                detail::same_kernel(P, c.members.back(), n, threads)) {
                c.members.push_back(n);
                return;
            }
        }
        KernelClass c;
        c.kernel_bits = bit_length(s.kernel_abs());
        c.sign = s.sign();
        c.fingerprint = fp;
        if (c.kernel_bits <= kernel_bit_limit) c.kernel = s.kernel();
        c.members.push_back(n);
        bucket.push_back(census.classes.size());
        census.classes.push_back(std::move(c));
    });
    return census;
}

}  // namespace polyprod
