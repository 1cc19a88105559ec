#pragma once

// The product objects: F_P(n) = P(1)...P(n) reduced mod p, the shifted
// products F_h(x) = P(x+1)...P(x+h) and f_n(x) = P(x)P(x+1)...P(x+n-1) - 1,
// and exact parity data about F_P(n) over the integers.
//
// Note the two offsets: F_h starts its shifts at 1, f_n starts at 0. The
// collision identity F_P(t0+n-1) = F_P(t0-1) (mod p) at a root t0 of f_n
// depends on exactly this convention.

#include <polyprod/core_arith.hpp>
#include <polyprod/parallel.hpp>
#include <polyprod/polynomials/int_poly.hpp>
#include <polyprod/polynomials/mod_poly.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace polyprod {

// ---------------------------------------------------------------------------
// Orbits mod p
// ---------------------------------------------------------------------------

/// F_P(1..p) mod p.
class ProductOrbit {
  public:
    ProductOrbit(IntPoly poly, u64 p, std::vector<u64> values)
        : poly_(std::move(poly)), p_(p), values_(std::move(values)) {}

    const IntPoly& poly() const { return poly_; }
    u64 modulus() const { return p_; }

    /// F_P(n) mod p for 0 <= n <= p, with F_P(0) = 1.
    u64 at(u64 n) const { return n == 0 ? 1 % p_ : values_.at(n - 1); }

    /// values()[n-1] = F_P(n) mod p.
    const std::vector<u64>& values() const { return values_; }

  private:
    IntPoly poly_;
    u64 p_;
    std::vector<u64> values_;
};

inline void require_prime_modulus(u64 p) {
    if (!is_prime(p)) fail(ErrorKind::invalid_argument, "modulus " + std::to_string(p) + " is not prime");
}

inline ModPoly reduce_nondegenerate(const IntPoly& P, u64 p) {
    ModPoly r = ModPoly::reduce(P, p);
    if (r.is_zero()) fail(ErrorKind::precondition, "degenerate reduction: p divides every coefficient");
    return r;
}

inline ProductOrbit orbit_mod(const IntPoly& P, u64 p) {
    require_prime_modulus(p);
    const ModPoly r = reduce_nondegenerate(P, p);
    std::vector<u64> values(p);
    u64 acc = 1;
    for (u64 n = 1; n <= p; ++n) {
        acc = mul_mod(acc, r(n), p);
        values[n - 1] = acc;
    }
    return ProductOrbit(P, p, std::move(values));
}

// ---------------------------------------------------------------------------
// Shifted products
// ---------------------------------------------------------------------------

/// prod_{j=first}^{last} P(x+j)
inline IntPoly shift_product_range(const IntPoly& P, i64 first, i64 last) {
    IntPoly acc = IntPoly::constant(1);
    for (i64 j = first; j <= last; ++j) acc = acc * P.shifted(from_i64(j));
    return acc;
}

/// F_h(x) = P(x+1) P(x+2) ... P(x+h)
inline IntPoly shifted_product(const IntPoly& P, u64 h) {
    if (h < 1) fail(ErrorKind::invalid_argument, "shift count h must be >= 1");
    return shift_product_range(P, 1, static_cast<i64>(h));
}

/// f_n(x) = P(x) P(x+1) ... P(x+n-1) - 1
inline IntPoly shifted_product_minus_one(const IntPoly& P, u64 n) {
    if (n < 1) fail(ErrorKind::invalid_argument, "shift count n must be >= 1");
    return shift_product_range(P, 0, static_cast<i64>(n) - 1) - IntPoly::constant(1);
}

/// f_1, f_2, ..., f_N reduced mod p, built incrementally.
inline std::vector<ModPoly> shifted_products_minus_one_mod(const IntPoly& P, u64 p, u64 N) {
    const ModPoly base = ModPoly::reduce(P, p);
    std::vector<ModPoly> out;
    out.reserve(N);
    ModPoly acc = ModPoly::constant(p, 1);
    for (u64 n = 1; n <= N; ++n) {
        acc = acc * base.shifted(n - 1);
        out.push_back(acc - ModPoly::constant(p, 1));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kernel tracing over Z
// ---------------------------------------------------------------------------

enum class KernelMode {
    absolute,  ///< kernels of F_P(n) itself (factors from i = 1)
    relative,  ///< kernels of F_P(n) / F_P(M) (factors i in (M, n] only)
};

namespace detail {

inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// 128-bit hash of a prime, folded over its limbs.
inline std::array<u64, 2> prime_hash(const BigInt& q) {
    std::array<u64, 2> h{0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL};
    const std::size_t limbs = mpz_size(q.get_mpz_t());
    for (std::size_t i = 0; i < limbs; ++i) {
        u64 limb = mpz_getlimbn(q.get_mpz_t(), static_cast<mp_size_t>(i));
        h[0] = splitmix64(h[0] ^ limb);
        h[1] = splitmix64(h[1] + limb * 0x9e3779b97f4a7c15ULL);
    }
    return h;
}

}  // namespace detail

/// Running exponent parities of a product: the set of primes with odd
/// exponent, the sign, and the kernel they determine. Memory is linear in
/// the number of odd-exponent primes.
class ParityState {
  public:
    void absorb(const FactorMap& f) {
        sign_ *= f.sign;
        for (const auto& [q, e] : f.entries) {
            if ((e & 1) == 0) continue;
            auto h = detail::prime_hash(q);
            fingerprint_[0] ^= h[0];
            fingerprint_[1] ^= h[1];
            if (odd_.erase(q)) {
                mpz_divexact(kernel_abs_.get_mpz_t(), kernel_abs_.get_mpz_t(), q.get_mpz_t());
            } else {
                odd_.insert(q);
                kernel_abs_ *= q;
            }
        }
    }

    int sign() const { return sign_; }
    const std::set<BigInt>& odd_primes() const { return odd_; }
    const BigInt& kernel_abs() const { return kernel_abs_; }
    BigInt kernel() const { return sign_ < 0 ? BigInt(-kernel_abs_) : kernel_abs_; }

    /// Order-independent hash of (sign, odd prime set).
    std::array<u64, 2> fingerprint() const {
        return {fingerprint_[0] ^ (sign_ < 0 ? 0x5bd1e995ULL : 0), fingerprint_[1]};
    }

    /// True when the absorbed product is a positive perfect square.
    bool is_square() const { return sign_ > 0 && odd_.empty(); }

    /// Kernel rebuilt from the prime set, independent of the running product.
    BigInt reconstruct() const {
        BigInt d = sign_;
        for (const auto& q : odd_) d *= q;
        return d;
    }

  private:
    int sign_ = 1;
    std::set<BigInt> odd_;
    BigInt kernel_abs_ = 1;
    std::array<u64, 2> fingerprint_{0, 0};
};

/// Factorizations of P(first..last) in index order; factoring runs in
/// parallel, the result does not depend on the thread count.
inline std::vector<FactorMap> factor_values(const IntPoly& P, u64 first, u64 last, unsigned threads) {
    if (last < first) return {};
    const std::size_t count = static_cast<std::size_t>(last - first + 1);
    return parallel_map<FactorMap>(count, threads, [&](std::size_t k) {
        const u64 i = first + k;
        BigInt v = P(from_u64(i));
        if (sgn(v) == 0) fail(ErrorKind::precondition, "P(" + std::to_string(i) + ") = 0");
        return factorize(v);
    });
}

namespace detail {
inline constexpr u64 kFactorBlock = 4096;
}

/// Streams (n, parity state after absorbing P(n), factorization of P(n)) for
/// n = start..M+N where start = 1 in absolute mode and M+1 in relative mode.
/// visit is called for every absorbed index, including n <= M in absolute
/// mode; callers filter by n > M.
template <class Visitor>
void stream_parities(const IntPoly& P, u64 M, u64 N, KernelMode mode, unsigned threads, Visitor&& visit) {
    ParityState state;
    const u64 start = mode == KernelMode::absolute ? 1 : M + 1;
    const u64 end = M + N;
    for (u64 lo = start; lo <= end; lo += detail::kFactorBlock) {
        const u64 hi = std::min(end, lo + detail::kFactorBlock - 1);
        std::vector<FactorMap> block = factor_values(P, lo, hi, threads);
        for (u64 i = lo; i <= hi; ++i) {
            const FactorMap& f = block[i - lo];
            state.absorb(f);
            visit(i, static_cast<const ParityState&>(state), f);
        }
    }
}

/// d(n) for n in (M, M+N].
struct KernelTrace {
    IntPoly poly;
    u64 offset = 0;  // M
    u64 upper = 0;   // N
    KernelMode mode = KernelMode::absolute;
    std::map<u64, BigInt> kernels;
    ParityState parity_state;  // after the last step
};

inline KernelTrace kernel_trace(const IntPoly& P, u64 N, u64 M = 0, KernelMode mode = KernelMode::absolute,
                                unsigned threads = 1) {
    KernelTrace t{P, M, N, mode, {}, {}};
    stream_parities(P, M, N, mode, threads, [&](u64 n, const ParityState& s, const FactorMap&) {
        if (n > M) t.kernels.emplace(n, s.kernel());
        if (n == M + N) t.parity_state = s;
    });
    return t;
}

/// Largest prime dividing F_P(n); empty when |F_P(n)| = 1.
inline std::optional<BigInt> largest_prime_factor_of_F(const IntPoly& P, u64 n, unsigned threads = 1) {
    std::optional<BigInt> best;
    for (const FactorMap& f : factor_values(P, 1, n, threads)) {
        if (!f.entries.empty() && (!best || f.entries.back().first > *best)) best = f.entries.back().first;
    }
    return best;
}

}  // namespace polyprod
