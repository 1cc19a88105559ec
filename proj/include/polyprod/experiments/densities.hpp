#pragma once

// Empirical prime-splitting counts: rootless-prime density in [z, 2z] and
// the census of primes p where some F_h, h <= H, is a square mod p.

#include <polyprod/core_arith.hpp>
#include <polyprod/parallel.hpp>
#include <polyprod/polynomials/roots.hpp>
#include <polyprod/products.hpp>

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace polyprod {

struct DensityReport {
    u64 z = 0;
    int degree = 0;
    u64 primes_total = 0;
    u64 rootless = 0;

    double rootless_fraction() const {
        return primes_total ? static_cast<double>(rootless) / static_cast<double>(primes_total) : 0.0;
    }

    /// primes_total / rootless
    std::optional<double> kappa_hat() const {
        if (rootless == 0) return std::nullopt;
        return static_cast<double>(primes_total) / static_cast<double>(rootless);
    }

    /// D! / (D - 1)
    std::optional<double> kappa_bound() const {
        if (degree < 2) return std::nullopt;
        double f = 1;
        for (int i = 2; i <= degree; ++i) f *= i;
        return f / (degree - 1);
    }
};

inline DensityReport chebotarev_census(const IntPoly& P, u64 z, unsigned threads = 1) {
    if (z < 10) fail(ErrorKind::precondition, "chebotarev census needs z >= 10");
    const std::vector<u64> primes = primes_in(z, 2 * z);
    if (primes.empty()) fail(ErrorKind::precondition, "no primes in [z, 2z]");
    DensityReport rep;
    rep.z = z;
    rep.degree = P.degree();
    rep.primes_total = primes.size();
    auto rootless = parallel_map<char>(primes.size(), threads, [&](std::size_t i) -> char {
        const ModPoly r = ModPoly::reduce(P, primes[i]);
        return !r.is_zero() && count_roots_mod(r) == 0;
    });
    for (char c : rootless) rep.rootless += static_cast<u64>(c);
    return rep;
}

struct ExceptionalReport {
    u64 H = 0;
    u64 x = 0;
    std::vector<std::pair<u64, u64>> pairs;  // (p, h) with F_h a square mod p
    std::vector<u64> degenerate;             // p dividing every coefficient of P

    /// Number of distinct exceptional primes.
    std::size_t count() const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (i == 0 || pairs[i].first != pairs[i - 1].first) ++c;
        }
        return c;
    }

    /// H log H / log log H, defined once log log H > 0.
    std::optional<double> comparison_value() const {
        const double h = static_cast<double>(H);
        if (h <= std::exp(1.0)) return std::nullopt;
        return h * std::log(h) / std::log(std::log(h));
    }
};

/// Odd primes only; square detection is not defined for p = 2.
inline ExceptionalReport exceptional_prime_census(const IntPoly& P, u64 H, u64 x, unsigned threads = 1) {
    if (H < 1) fail(ErrorKind::precondition, "H must be >= 1");
    if (x < 3) fail(ErrorKind::precondition, "x must be >= 3");
    const std::vector<u64> primes = primes_in(3, x);
    struct PerPrime {
        bool degenerate = false;
        std::vector<u64> hs;
    };
    auto parts = parallel_map<PerPrime>(primes.size(), threads, [&](std::size_t i) {
        const u64 p = primes[i];
        PerPrime out;
        const ModPoly r = ModPoly::reduce(P, p);
        if (r.is_zero()) {
            out.degenerate = true;
            return out;
        }
        ModPoly Fh = ModPoly::constant(p, 1);
        for (u64 h = 1; h <= H; ++h) {
            Fh = Fh * r.shifted(h);
            if (is_square_poly_mod(Fh)) out.hs.push_back(h);
        }
        return out;
    });
    ExceptionalReport rep;
    rep.H = H;
    rep.x = x;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (parts[i].degenerate) rep.degenerate.push_back(primes[i]);
        for (u64 h : parts[i].hs) rep.pairs.emplace_back(primes[i], h);
    }
    return rep;
}

}  // namespace polyprod
