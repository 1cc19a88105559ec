#pragma once

// Polynomials over the prime field F_p, p < 2^63. Coefficients are kept
// reduced and trailing zeros stripped.

#include <polyprod/bigint.hpp>
#include <polyprod/error.hpp>
#include <polyprod/polynomials/int_poly.hpp>

#include <utility>
#include <vector>

namespace polyprod {

class ModPoly {
  public:
    explicit ModPoly(u64 p) : p_(p) { check_modulus(); }

    ModPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
        check_modulus();
        for (auto& x : c_) x %= p_;
        normalize();
    }

    static ModPoly reduce(const IntPoly& f, u64 p) {
        std::vector<u64> c(f.coeffs().size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_u64(f.coeffs()[i], p);
        return ModPoly(p, std::move(c));
    }

    static ModPoly constant(u64 p, u64 c) { return ModPoly(p, std::vector<u64>{c}); }

    static ModPoly monomial(u64 p, u64 c, std::size_t deg) {
        std::vector<u64> v(deg + 1, 0);
        v[deg] = c;
        return ModPoly(p, std::move(v));
    }

    static ModPoly x(u64 p) { return monomial(p, 1, 1); }

    u64 modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<u64>& coeffs() const { return c_; }
    u64 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    u64 lead() const { return c_.empty() ? 0 : c_.back(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    u64 operator()(u64 x) const {
        x %= p_;
        u64 acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = add_mod(mul_mod(acc, x, p_), *it, p_);
        return acc;
    }

    ModPoly derivative() const {
        if (c_.size() < 2) return ModPoly(p_);
        std::vector<u64> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = mul_mod(c_[i], i % p_, p_);
        return ModPoly(p_, std::move(d));
    }

    ModPoly monic() const {
        if (is_zero()) return *this;
        return scaled(inv_mod(lead(), p_));
    }

    ModPoly scaled(u64 s) const {
        std::vector<u64> v(c_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = mul_mod(c_[i], s, p_);
        return ModPoly(p_, std::move(v));
    }

    /// f(x + k)
    ModPoly shifted(u64 k) const {
        std::vector<u64> c = c_;
        k %= p_;
        const std::size_t n = c.size();
        if (k == 0 || n < 2) return ModPoly(p_, std::move(c));
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = n - 1; j-- > i;) c[j] = add_mod(c[j], mul_mod(k, c[j + 1], p_), p_);
        }
        return ModPoly(p_, std::move(c));
    }

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        std::vector<u64> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = add_mod(a[i], b[i], a.p_);
        return ModPoly(a.p_, std::move(c));
    }

    friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        std::vector<u64> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = sub_mod(a[i], b[i], a.p_);
        return ModPoly(a.p_, std::move(c));
    }

    friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        if (a.is_zero() || b.is_zero()) return ModPoly(a.p_);
        const u64 p = a.p_;
        std::vector<u64> c(a.c_.size() + b.c_.size() - 1, 0);
        if (p < (u64{1} << 31)) {
            // Products stay below 2^62, so 128-bit accumulators cannot overflow.
            std::vector<u128> acc(c.size(), 0);
            for (std::size_t i = 0; i < a.c_.size(); ++i) {
                if (a.c_[i] == 0) continue;
                for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += static_cast<u128>(a.c_[i]) * b.c_[j];
            }
            for (std::size_t k = 0; k < c.size(); ++k) c[k] = static_cast<u64>(acc[k] % p);
        } else {
            for (std::size_t i = 0; i < a.c_.size(); ++i) {
                for (std::size_t j = 0; j < b.c_.size(); ++j)
                    c[i + j] = add_mod(c[i + j], mul_mod(a.c_[i], b.c_[j], p), p);
            }
        }
        return ModPoly(p, std::move(c));
    }

    friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

    /// Quotient and remainder of a by nonzero b.
    friend std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
        a.same_field(b);
        if (b.is_zero()) fail(ErrorKind::invalid_argument, "division by zero polynomial");
        const u64 p = a.p_;
        if (a.degree() < b.degree()) return {ModPoly(p), a};
        std::vector<u64> r = a.c_;
        const std::size_t db = static_cast<std::size_t>(b.degree());
        std::vector<u64> q(r.size() - db, 0);
        const u64 inv = inv_mod(b.lead(), p);
        for (std::size_t i = r.size(); i-- > db;) {
            u64 coef = mul_mod(r[i], inv, p);
            q[i - db] = coef;
            if (coef == 0) continue;
            for (std::size_t j = 0; j <= db; ++j) r[i - db + j] = sub_mod(r[i - db + j], mul_mod(coef, b.c_[j], p), p);
        }
        r.resize(db);
        return {ModPoly(p, std::move(q)), ModPoly(p, std::move(r))};
    }

    friend ModPoly operator%(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }
    friend ModPoly operator/(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }

  private:
    void check_modulus() const {
        if (p_ < 2 || p_ >= (u64{1} << 63)) fail(ErrorKind::invalid_argument, "modulus out of range");
    }
    void same_field(const ModPoly& o) const {
        if (p_ != o.p_) fail(ErrorKind::invalid_argument, "mixed moduli");
    }
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    u64 p_;
    std::vector<u64> c_;
};

inline u64 evaluate(const ModPoly& f, u64 x) { return f(x); }

/// Monic gcd (zero only when both inputs are zero).
inline ModPoly gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// base^e mod m by square-and-multiply; e given as a BigInt.
inline ModPoly powmod(const ModPoly& base, const BigInt& e, const ModPoly& m) {
    ModPoly result = ModPoly::constant(m.modulus(), 1) % m;
    ModPoly b = base % m;
    const std::size_t bits = bit_length(e);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % m;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
    }
    return result;
}

inline ModPoly powmod(const ModPoly& base, u64 e, const ModPoly& m) { return powmod(base, from_u64(e), m); }

/// Res(a, b) in F_p by the Euclidean recurrence
/// Res(A, B) = (-1)^(deg A deg B) lc(B)^(deg A - deg R) Res(B, R), R = A mod B.
inline u64 resultant(ModPoly a, ModPoly b) {
    const u64 p = a.modulus();
    if (a.is_zero() || b.is_zero()) return 0;
    u64 acc = 1;
    for (;;) {
        const int da = a.degree(), db = b.degree();
        if (db == 0) return mul_mod(acc, pow_mod(b.lead(), static_cast<u64>(da), p), p);
        if (da == 0) return mul_mod(acc, pow_mod(a.lead(), static_cast<u64>(db), p), p);
        ModPoly r = a % b;
        if (r.is_zero()) return 0;
        if ((da & 1) && (db & 1)) acc = sub_mod(0, acc, p);
        acc = mul_mod(acc, pow_mod(b.lead(), static_cast<u64>(da - r.degree()), p), p);
        a = std::move(b);
        b = std::move(r);
    }
}

/// disc(f mod p) = (-1)^(d(d-1)/2) Res(f, f') / lc(f), with f' at its formal
/// degree d-1 so the value agrees with reducing the integer discriminant.
inline u64 discriminant(const ModPoly& f) {
    const u64 p = f.modulus();
    if (f.degree() < 1) fail(ErrorKind::invalid_argument, "discriminant needs degree >= 1");
    const u64 d = static_cast<u64>(f.degree());
    if (d == 1) return 1 % p;
    const ModPoly df = f.derivative();
    u64 r = mul_mod(resultant(f, df), inv_mod(f.lead(), p), p);
    // Res with the formal degree d-1 of f' differs by lc^(d-1-deg f').
    if (!df.is_zero()) r = mul_mod(r, pow_mod(f.lead(), d - 1 - static_cast<u64>(df.degree()), p), p);
    return ((d * (d - 1) / 2) & 1) ? sub_mod(0, r, p) : r;
}

}  // namespace polyprod
