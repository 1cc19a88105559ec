#pragma once

// Per-prime image statistics of n -> F_P(n) mod p.

#include <polyprod/core_arith.hpp>
#include <polyprod/parallel.hpp>
#include <polyprod/polynomials/roots.hpp>
#include <polyprod/products.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace polyprod {

struct PrimeClass {
    bool good = false;
    /// Smallest root index in [1, p] when bad; residue 0 maps to p.
    std::optional<u64> n0;
    /// p <= deg P: handled, but the image-size lower bound does not apply.
    bool small_prime = false;
};

inline PrimeClass classify_prime(const IntPoly& P, u64 p) {
    require_prime_modulus(p);
    const ModPoly r = reduce_nondegenerate(P, p);
    PrimeClass c;
    c.small_prime = p <= static_cast<u64>(std::max(P.degree(), 0));
    if (count_roots_mod(r) == 0) {
        c.good = true;
        return c;
    }
    const std::vector<u64> roots = roots_mod(r);
    c.n0 = roots.front() != 0 ? roots.front() : (roots.size() > 1 ? roots[1] : p);
    return c;
}

struct ImageStats {
    u64 p = 0;
    bool good = false;
    std::optional<u64> n0;
    bool small_prime = false;
    u64 image_size = 0;            // G_P(p)
    std::vector<bool> attained;    // attained[r] iff some F_P(n) = r, 1 <= n <= p
    double lower_bound = 0;        // sqrt(p / deg P)
    bool lower_bound_holds = true; // good => G >= sqrt(p / deg P)
    bool n0_bound_holds = true;    // bad  => G <= n0

    std::vector<u64> missing() const {
        std::vector<u64> out;
        out.reserve(p - image_size);
        for (u64 r = 0; r < p; ++r) {
            if (!attained[r]) out.push_back(r);
        }
        return out;
    }
};

inline ImageStats image_stats(const IntPoly& P, const ProductOrbit& orbit, const PrimeClass& cls) {
    const u64 p = orbit.modulus();
    ImageStats s;
    s.p = p;
    s.good = cls.good;
    s.n0 = cls.n0;
    s.small_prime = cls.small_prime;
    s.attained.assign(p, false);
    for (u64 v : orbit.values()) {
        if (!s.attained[v]) {
            s.attained[v] = true;
            ++s.image_size;
        }
    }
    const int deg = std::max(P.degree(), 1);
    s.lower_bound = std::sqrt(static_cast<double>(p) / deg);
    if (s.good && !s.small_prime) s.lower_bound_holds = static_cast<double>(s.image_size) >= s.lower_bound;
    if (!s.good) s.n0_bound_holds = s.image_size <= *s.n0;
    return s;
}

inline ImageStats image_stats(const IntPoly& P, u64 p) {
    const PrimeClass cls = classify_prime(P, p);
    return image_stats(P, orbit_mod(P, p), cls);
}

// ---------------------------------------------------------------------------
// Collisions from roots of f_n
// ---------------------------------------------------------------------------

/// f_n(t0) = 0 mod p forces F_P(t0+n-1) = F_P(t0-1) mod p.
struct CollisionWitness {
    u64 n = 0;
    u64 t0 = 0;
    u64 lhs_index() const { return t0 + n - 1; }
    u64 rhs_index() const { return t0 - 1; }
};

/// Witnesses for n = 1..N, keeping roots with 1 <= t0 <= p - n so that both
/// orbit indices stay inside [0, p]. Each witness is checked against the
/// orbit before it is returned.
inline std::vector<CollisionWitness> collision_witnesses(const IntPoly& P, const ProductOrbit& orbit, u64 N) {
    const u64 p = orbit.modulus();
    if (N >= p) fail(ErrorKind::precondition, "collision search needs N < p");
    std::vector<CollisionWitness> out;
    const std::vector<ModPoly> fs = shifted_products_minus_one_mod(P, p, N);
    for (u64 n = 1; n <= N; ++n) {
        const ModPoly& f = fs[n - 1];
        if (f.is_zero()) continue;  // f_n = 0 identically: every t0 collides, nothing to extract
        for (u64 t0 : roots_mod(f)) {
            if (t0 < 1 || t0 > p - n) continue;
            CollisionWitness w{n, t0};
            if (f(t0) != 0 || orbit.at(w.lhs_index()) != orbit.at(w.rhs_index()))
                fail(ErrorKind::internal, "collision witness failed verification (n=" + std::to_string(n) +
                                              ", t0=" + std::to_string(t0) + ")");
            out.push_back(w);
        }
    }
    return out;
}

inline std::vector<CollisionWitness> collision_witnesses(const IntPoly& P, u64 p, u64 N) {
    if (N == 0) return {};
    const PrimeClass cls = classify_prime(P, p);
    if (!cls.good) fail(ErrorKind::precondition, "collision witnesses need a good prime");
    return collision_witnesses(P, orbit_mod(P, p), N);
}

// ---------------------------------------------------------------------------
// Averaged missing values
// ---------------------------------------------------------------------------

struct MissingAverageReport {
    u64 x = 0;
    u64 N = 0;
    u64 prime_count = 0;        // pi(x)
    u64 good_primes = 0;
    u64 bad_primes = 0;
    u64 missing_sum_good = 0;   // sum over good p of (p - G_P(p))
    u64 missing_sum_bad = 0;    // same over bad p, reported separately
    std::vector<u64> rho_sums;  // rho_sums[n-1] = sum over good p of rho_n(p)
    double image_fraction_good = 0;  // mean G_P(p)/p over good p

    /// (1/pi(x)) * sum_{good p} (p - G_P(p))
    double lhs() const { return prime_count ? static_cast<double>(missing_sum_good) / prime_count : 0.0; }

    double rhs_term(u64 n) const {
        return prime_count ? static_cast<double>(rho_sums.at(n - 1)) / prime_count : 0.0;
    }

    /// sum_{n <= N} (1/pi(x)) sum_{good p} rho_n(p)
    double rhs() const {
        u64 total = 0;
        for (u64 s : rho_sums) total += s;
        return prime_count ? static_cast<double>(total) / prime_count : 0.0;
    }

    std::optional<double> ratio() const {
        if (rhs() == 0) return std::nullopt;
        return lhs() / rhs();
    }

    /// Finite-x violation of LHS >= RHS. Reported, never asserted.
    bool violated() const {
        u64 total = 0;
        for (u64 s : rho_sums) total += s;
        return missing_sum_good < total;
    }
};

namespace detail {
struct PrimeContribution {
    bool good = false;
    u64 missing = 0;
    double fraction = 0;
    std::vector<u64> rho;
};
}  // namespace detail

/// Both sides of the averaged missing-value inequality at finite (x, N).
/// Sums run over odd primes p <= x; the normalization pi(x) counts 2 as well.
/// Primes dividing every coefficient of P are skipped (they are neither good
/// nor carry an orbit).
inline MissingAverageReport missing_average(const IntPoly& P, u64 x, u64 N, unsigned threads = 1) {
    MissingAverageReport rep;
    rep.x = x;
    rep.N = N;
    rep.rho_sums.assign(N, 0);
    if (x < 3) {
        rep.prime_count = prime_count(x);
        return rep;
    }
    rep.prime_count = prime_count(x);
    const std::vector<u64> primes = primes_in(3, x);
    auto parts = parallel_map<detail::PrimeContribution>(primes.size(), threads, [&](std::size_t idx) {
        const u64 p = primes[idx];
        detail::PrimeContribution c;
        if (ModPoly::reduce(P, p).is_zero()) return c;
        const PrimeClass cls = classify_prime(P, p);
        const ImageStats s = image_stats(P, orbit_mod(P, p), cls);
        c.good = cls.good;
        c.missing = p - s.image_size;
        c.fraction = static_cast<double>(s.image_size) / static_cast<double>(p);
        if (cls.good) {
            c.rho.resize(N);
            const std::vector<ModPoly> fs = shifted_products_minus_one_mod(P, p, N);
            for (u64 n = 1; n <= N; ++n) {
                // f_n = 0 identically would mean every residue is a root.
                c.rho[n - 1] = fs[n - 1].is_zero() ? p : count_roots_mod(fs[n - 1]);
            }
        }
        return c;
    });
    double fraction_sum = 0;
    for (std::size_t idx = 0; idx < parts.size(); ++idx) {
        const auto& c = parts[idx];
        if (ModPoly::reduce(P, primes[idx]).is_zero()) continue;
        if (c.good) {
            ++rep.good_primes;
            rep.missing_sum_good += c.missing;
            fraction_sum += c.fraction;
            for (u64 n = 0; n < N; ++n) rep.rho_sums[n] += c.rho[n];
        } else {
            ++rep.bad_primes;
            rep.missing_sum_bad += c.missing;
        }
    }
    rep.image_fraction_good = rep.good_primes ? fraction_sum / static_cast<double>(rep.good_primes) : 0.0;
    return rep;
}

}  // namespace polyprod
