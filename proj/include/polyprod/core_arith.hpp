#pragma once

// Integer primitives: primality, prime enumeration, Jacobi symbols,
// factorization into FactorMap, squarefree kernels and perfect-power tests.

#include <polyprod/bigint.hpp>
#include <polyprod/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace polyprod {

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

/// Bases 2..37 make Miller-Rabin deterministic below 3.3e24, so in
/// particular for every 64-bit input.
inline constexpr std::array<u64, 12> kDeterministicBases = {2,  3,  5,  7,  11, 13,
                                                            17, 19, 23, 29, 31, 37};

/// Fixed witness set for inputs beyond 64 bits: the first 40 primes.
inline constexpr std::array<unsigned long, 40> kBigBases = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : kDeterministicBases) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : kDeterministicBases) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline bool is_prime(const BigInt& n) {
    if (sgn(n) <= 0) return false;
    if (fits_u64(n)) return is_prime(to_u64(n));
    for (unsigned long p : kBigBases) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    BigInt n1 = n - 1;
    BigInt d = n1;
    mp_bitcnt_t r = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
    BigInt x;
    for (unsigned long a : kBigBases) {
        BigInt base(a);
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n1) continue;
        bool composite = true;
        for (mp_bitcnt_t i = 1; i < r; ++i) {
            mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
            if (x == n1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Prime enumeration
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<u64> simple_sieve(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

inline u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace detail

/// Primes in [lo, hi], ascending, by a segmented sieve of Eratosthenes.
inline std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    lo = std::max<u64>(lo, 2);
    if (lo > hi) return out;
    const std::vector<u64> base = detail::simple_sieve(detail::isqrt(hi));
    constexpr u64 kSegment = u64{1} << 18;
    std::vector<char> mark(kSegment);
    for (u64 seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
        const u64 seg_hi = std::min(hi, seg_lo + kSegment - 1);
        const u64 len = seg_hi - seg_lo + 1;
        std::fill(mark.begin(), mark.begin() + static_cast<std::ptrdiff_t>(len), 1);
        for (u64 p : base) {
            if (p * p > seg_hi) break;
            u64 start = std::max(p * p, (seg_lo + p - 1) / p * p);
            for (u64 j = start; j <= seg_hi; j += p) mark[j - seg_lo] = 0;
        }
        for (u64 i = 0; i < len; ++i) {
            if (mark[i]) out.push_back(seg_lo + i);
        }
        if (seg_hi == hi) break;
    }
    return out;
}

/// pi(x), the number of primes <= x.
inline u64 prime_count(u64 x) { return x < 2 ? 0 : primes_in(2, x).size(); }

/// Primes below 10^6, shared by every trial-division pass.
inline const std::vector<u64>& trial_primes() {
    static const std::vector<u64> table = detail::simple_sieve(1'000'000);
    return table;
}

inline constexpr u64 kTrialDivisionLimit = 1'000'000;

// ---------------------------------------------------------------------------
// Jacobi symbol
// ---------------------------------------------------------------------------

inline int jacobi(u64 a, u64 n) {
    if ((n & 1) == 0) fail(ErrorKind::invalid_argument, "modulus must be odd");
    a %= n;
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            u64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

inline int jacobi(i64 a, u64 n) {
    if ((n & 1) == 0) fail(ErrorKind::invalid_argument, "modulus must be odd");
    i64 r = a % static_cast<i64>(n);
    if (r < 0) r += static_cast<i64>(n);
    return jacobi(static_cast<u64>(r), n);
}

inline int jacobi(const BigInt& a, const BigInt& n) {
    if (sgn(n) <= 0 || mpz_even_p(n.get_mpz_t()))
        fail(ErrorKind::invalid_argument, "modulus must be odd");
    if (fits_u64(n)) {
        u64 m = to_u64(n);
        return jacobi(mod_u64(a, m), m);
    }
    BigInt x, m = n;
    mpz_fdiv_r(x.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    int t = 1;
    while (sgn(x) != 0) {
        mp_bitcnt_t z = mpz_scan1(x.get_mpz_t(), 0);
        mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), z);
        unsigned long r = mpz_fdiv_ui(m.get_mpz_t(), 8);
        if ((z & 1) && (r == 3 || r == 5)) t = -t;
        std::swap(x, m);
        if (mpz_fdiv_ui(x.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(m.get_mpz_t(), 4) == 3) t = -t;
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    }
    return m == 1 ? t : 0;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

/// sign * prod p^e, primes strictly increasing, exponents >= 1.
struct FactorMap {
    int sign = 1;
    std::vector<std::pair<BigInt, unsigned>> entries;

    BigInt value() const {
        BigInt v = sign;
        for (const auto& [p, e] : entries) v *= pow(p, e);
        return v;
    }

    bool operator==(const FactorMap&) const = default;
};

class PartialFactorizationError : public Error {
  public:
    PartialFactorizationError(FactorMap partial, BigInt cofactor)
        : Error(ErrorKind::partial_factorization,
                "partial factorization: cofactor " + cofactor.get_str() +
                    " resisted Pollard rho"),
          partial_(std::move(partial)),
          cofactor_(std::move(cofactor)) {}
    const FactorMap& partial() const { return partial_; }
    const BigInt& cofactor() const { return cofactor_; }

  private:
    FactorMap partial_;
    BigInt cofactor_;
};

/// Rho restarts use c = 1, 2, ..., kRhoRestarts.
inline constexpr unsigned kRhoRestarts = 20;

namespace detail {

inline constexpr u64 kRhoMaxRun = u64{1} << 26;

inline u64 rho_brent(u64 n, u64 c) {
    auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
    constexpr u64 kBatch = 128;
    u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
    for (u64 r = 1; g == 1 && r <= kRhoMaxRun; r <<= 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        for (u64 k = 0; k < r && g == 1; k += kBatch) {
            ys = y;
            for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
                y = f(y);
                q = mul_mod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
        }
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

inline BigInt rho_brent(const BigInt& n, unsigned long c) {
    auto f = [&](BigInt& v) {
        v *= v;
        v += c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    constexpr u64 kBatch = 128;
    BigInt y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
    for (u64 r = 1; g == 1 && r <= kRhoMaxRun; r <<= 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) f(y);
        for (u64 k = 0; k < r && g == 1; k += kBatch) {
            ys = y;
            for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
                f(y);
                diff = abs(x - y);
                q *= diff;
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
    }
    if (g == n) {
        do {
            f(ys);
            diff = abs(x - ys);
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g;
}

/// A nontrivial factor of composite n, or nullopt after all restarts fail.
inline std::optional<BigInt> find_factor(const BigInt& n) {
    if (mpz_even_p(n.get_mpz_t())) return BigInt(2);
    for (unsigned long c = 1; c <= kRhoRestarts; ++c) {
        BigInt g;
        if (fits_u64(n)) {
            g = from_u64(rho_brent(to_u64(n), c));
        } else {
            g = rho_brent(n, c);
        }
        if (g != 1 && g != n) return g;
    }
    return std::nullopt;
}

inline FactorMap assemble(int sign, std::map<BigInt, unsigned>& counts) {
    FactorMap f;
    f.sign = sign;
    f.entries.reserve(counts.size());
    for (auto& [p, e] : counts) f.entries.emplace_back(p, e);
    return f;
}

}  // namespace detail

/// Complete factorization: trial division below 10^6, then Brent-Pollard rho
/// on the cofactor with every prime certified by is_prime.
inline FactorMap factorize(const BigInt& n) {
    if (sgn(n) == 0) fail(ErrorKind::invalid_argument, "zero has no factorization");
    const int sign = sgn(n) < 0 ? -1 : 1;
    BigInt m = abs(n);
    std::map<BigInt, unsigned> counts;

    bool exhausted = true;  // set false if trial division stopped on the table limit
    if (fits_u64(m)) {
        u64 v = to_u64(m);
        for (u64 p : trial_primes()) {
            if (p * p > v) break;
            if (v % p != 0) continue;
            unsigned e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            counts[from_u64(p)] += e;
        }
        if (v > 1 && v > kTrialDivisionLimit * kTrialDivisionLimit) exhausted = false;
        m = from_u64(v);
    } else {
        for (u64 p : trial_primes()) {
            if (fits_u64(m) && p * p > to_u64(m)) break;
            if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
            unsigned e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            }
            counts[from_u64(p)] += e;
        }
        if (!fits_u64(m) || to_u64(m) > kTrialDivisionLimit * kTrialDivisionLimit) exhausted = false;
    }

    if (m == 1) return detail::assemble(sign, counts);
    if (exhausted) {
        ++counts[m];
        return detail::assemble(sign, counts);
    }

    std::vector<BigInt> pending{m};
    while (!pending.empty()) {
        BigInt c = std::move(pending.back());
        pending.pop_back();
        if (c == 1) continue;
        if (is_prime(c)) {
            ++counts[c];
            continue;
        }
        auto d = detail::find_factor(c);
        if (!d) {
            throw PartialFactorizationError(detail::assemble(sign, counts), c);
        }
        pending.push_back(*d);
        pending.push_back(divexact(c, *d));
    }
    return detail::assemble(sign, counts);
}

/// Signed squarefree kernel: sign * prod of primes with odd exponent.
inline BigInt squarefree_kernel(const FactorMap& f) {
    BigInt d = f.sign;
    for (const auto& [p, e] : f.entries) {
        if (e & 1) d *= p;
    }
    return d;
}

inline bool is_squarefree(const BigInt& n) {
    if (sgn(n) == 0) return false;
    for (const auto& [p, e] : factorize(n).entries) {
        if (e > 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Perfect powers
// ---------------------------------------------------------------------------

namespace detail {

/// floor(a^(1/k)) for a > 0 by integer Newton iteration from above.
inline BigInt iroot(const BigInt& a, unsigned k) {
    const std::size_t bits = bit_length(a);
    BigInt x = 1;
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), (bits + k - 1) / k);
    for (;;) {
        BigInt y = (BigInt(k - 1) * x + a / pow(x, k - 1)) / k;
        if (y >= x) return x;
        x = std::move(y);
    }
}

}  // namespace detail

/// The integer m with m^k == a, if any.
inline std::optional<BigInt> is_perfect_kth_power(const BigInt& a, unsigned k) {
    if (k < 2) fail(ErrorKind::invalid_argument, "exponent must be at least 2");
    if (sgn(a) == 0) return BigInt(0);
    if (sgn(a) < 0) {
        if (k % 2 == 0) return std::nullopt;
        auto r = is_perfect_kth_power(-a, k);
        if (!r) return std::nullopt;
        return BigInt(-*r);
    }
    BigInt r = detail::iroot(a, k);
    if (pow(r, k) == a) return r;
    return std::nullopt;
}

}  // namespace polyprod
