#pragma once

// Shift-discriminant checks for P = x^d - a: with q the smallest prime
// factor of a and gcd(dk, q) = 1, the discriminant of f_{kq} is a unit mod q.

#include <polyprod/core_arith.hpp>
#include <polyprod/polynomials/irreducibility.hpp>
#include <polyprod/polynomials/mod_poly.hpp>
#include <polyprod/products.hpp>

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace polyprod {

/// Above this degree only the F_q route is evaluated.
inline constexpr int kExactDiscriminantDegreeLimit = 80;

struct ShiftCheck {
    u64 k = 0;
    bool accepted = false;
    std::string rejection;  // reason when !accepted
    u64 shift_length = 0;   // kq
    int degree = 0;         // deg f_{kq} = d k q
    u64 disc_mod_q = 0;     // disc(f_{kq} mod q), computed in F_q
    std::optional<u64> integer_disc_mod_q;  // disc(f_{kq}) over Z, reduced mod q
    bool nonzero = false;

    bool routes_agree() const { return !integer_disc_mod_q || *integer_disc_mod_q == disc_mod_q; }
};

struct BinomialShiftReport {
    u64 d = 0;
    BigInt a;
    u64 q = 0;
    bool irreducible_over_Q = false;
    std::vector<ShiftCheck> checks;
};

inline BinomialShiftReport binomial_shift_check(u64 d, const BigInt& a, const std::vector<u64>& ks) {
    if (d < 2) fail(ErrorKind::precondition, "degree d must be >= 2");
    if (sgn(a) == 0 || abs(a) == 1) fail(ErrorKind::precondition, "a must not be 0 or +-1");
    BigInt g;
    mpz_gcd_ui(g.get_mpz_t(), a.get_mpz_t(), d);
    if (g != 1) fail(ErrorKind::precondition, "gcd(d, a) must be 1");
    const FactorMap fa = factorize(a);
    for (const auto& [p, e] : fa.entries) {
        if (e > 1) fail(ErrorKind::precondition, "a must be squarefree");
    }
    BinomialShiftReport rep;
    rep.d = d;
    rep.a = a;
    rep.q = to_u64(fa.entries.front().first);
    rep.irreducible_over_Q = binomial_irreducible_over_Q(static_cast<unsigned>(d), a);
    const IntPoly P = IntPoly::binomial(d, a);
    const u64 q = rep.q;
    for (u64 k : ks) {
        ShiftCheck c;
        c.k = k;
        if (k < 1) {
            c.rejection = "k must be >= 1";
        } else if (std::gcd(d * k, q) != 1) {
            c.rejection = "gcd(dk, q) = " + std::to_string(std::gcd(d * k, q)) + " != 1";
        } else {
            c.accepted = true;
        }
        if (!c.accepted) {
            rep.checks.push_back(c);
            continue;
        }
        c.shift_length = k * q;
        c.degree = static_cast<int>(d * k * q);
        const ModPoly f_mod = shifted_products_minus_one_mod(P, q, c.shift_length).back();
        c.disc_mod_q = discriminant(f_mod);
        if (c.degree <= kExactDiscriminantDegreeLimit) {
            const IntPoly f = shifted_product_minus_one(P, c.shift_length);
            c.integer_disc_mod_q = mod_u64(discriminant(f), q);
        }
        c.nonzero = c.disc_mod_q != 0;
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace polyprod
