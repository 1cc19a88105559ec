#pragma once

// Random permutation model: partial products pi(1)...pi(n) mod p of a
// uniform permutation pi of the units {1, ..., p-1}.
//
// Generator: std::mt19937_64 (fully specified by the standard). Trial t uses
// the seed splitmix64(seed + (t + 1) * 0x9e3779b97f4a7c15). Bounded draws use
// rejection sampling rather than std::uniform_int_distribution, whose output
// is implementation-defined, so reports are bit-identical across toolchains.

#include <polyprod/core_arith.hpp>
#include <polyprod/parallel.hpp>
#include <polyprod/products.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace polyprod {

struct RandomModelReport {
    u64 p = 0;
    u64 trials = 0;
    u64 seed = 0;
    std::vector<double> fractions;  // per trial, distinct partial products / (p - 1)
    double mean_image_fraction = 0;
    double stddev = 0;  // sample standard deviation (0 for a single trial)
};

namespace detail {

inline u64 trial_seed(u64 seed, u64 trial) { return splitmix64(seed + (trial + 1) * 0x9e3779b97f4a7c15ULL); }

/// Uniform integer in [0, bound).
inline u64 uniform_below(std::mt19937_64& gen, u64 bound) {
    const u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % bound;
    for (;;) {
        u64 v = gen();
        if (v < limit) return v % bound;
    }
}

inline double random_model_trial(u64 p, u64 seed) {
    std::mt19937_64 gen(seed);
    std::vector<u64> perm(p - 1);
    for (u64 i = 0; i < p - 1; ++i) perm[i] = i + 1;
    for (u64 i = p - 2; i > 0; --i) std::swap(perm[i], perm[uniform_below(gen, i + 1)]);
    std::vector<char> seen(p, 0);
    u64 acc = 1, distinct = 0;
    for (u64 v : perm) {
        acc = mul_mod(acc, v, p);
        if (!seen[acc]) {
            seen[acc] = 1;
            ++distinct;
        }
    }
    return static_cast<double>(distinct) / static_cast<double>(p - 1);
}

}  // namespace detail

inline RandomModelReport random_permutation_model(u64 p, u64 trials, u64 seed, unsigned threads = 1) {
    if (p < 5 || !is_prime(p)) fail(ErrorKind::precondition, "random model needs a prime p >= 5");
    if (trials < 1) fail(ErrorKind::precondition, "trials must be >= 1");
    RandomModelReport rep;
    rep.p = p;
    rep.trials = trials;
    rep.seed = seed;
    rep.fractions = parallel_map<double>(trials, threads, [&](std::size_t t) {
        return detail::random_model_trial(p, detail::trial_seed(seed, t));
    });
    double sum = 0;
    for (double f : rep.fractions) sum += f;
    rep.mean_image_fraction = sum / static_cast<double>(trials);
    if (trials > 1) {
        double ss = 0;
        for (double f : rep.fractions) ss += (f - rep.mean_image_fraction) * (f - rep.mean_image_fraction);
        rep.stddev = std::sqrt(ss / static_cast<double>(trials - 1));
    }
    return rep;
}

}  // namespace polyprod
