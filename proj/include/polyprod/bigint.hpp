#pragma once

// Arbitrary-precision integers (GMP) and the small fixed-width helpers the
// rest of the library leans on.

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>

namespace polyprod {

using BigInt = mpz_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

static_assert(sizeof(unsigned long) == 8, "polyprod assumes an LP64 platform");

inline BigInt from_u64(u64 v) { return BigInt(static_cast<unsigned long>(v)); }
inline BigInt from_i64(i64 v) { return BigInt(static_cast<long>(v)); }

inline bool fits_u64(const BigInt& v) {
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline bool fits_i64(const BigInt& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

// Caller guarantees fits_u64(v).
inline u64 to_u64(const BigInt& v) { return mpz_get_ui(v.get_mpz_t()); }
inline i64 to_i64(const BigInt& v) { return mpz_get_si(v.get_mpz_t()); }

/// Least non-negative residue of v modulo m (m > 0).
inline u64 mod_u64(const BigInt& v, u64 m) {
    return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m));
}

inline std::size_t bit_length(const BigInt& v) {
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline BigInt pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt divexact(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

constexpr u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo m via extended Euclid; a must be a unit.
constexpr u64 inv_mod(u64 a, u64 m) {
    i64 t = 0, new_t = 1;
    u64 r = m, new_r = a % m;
    while (new_r != 0) {
        u64 q = r / new_r;
        i64 tmp_t = t - static_cast<i64>(q) * new_t;
        t = new_t;
        new_t = tmp_t;
        u64 tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    return t < 0 ? static_cast<u64>(t + static_cast<i64>(m)) : static_cast<u64>(t);
}

}  // namespace polyprod
