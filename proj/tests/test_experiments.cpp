#include <polyprod/experiments.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace polyprod;

namespace {

const IntPoly kX2p1({1, 0, 1});
const IntPoly kX3m2({-2, 0, 0, 1});
const IntPoly kX({0, 1});

std::vector<u64> solution_indices(const std::vector<PowerSolution>& s) {
    std::vector<u64> out;
    for (const auto& x : s) out.push_back(x.n);
    return out;
}

}  // namespace

TEST(Powers, Examples) {
    const auto sq = find_power_solutions(kX2p1, 2, 100);
    ASSERT_EQ(solution_indices(sq), std::vector<u64>{3});
    EXPECT_EQ(sq[0].root.value(), 10);
    const auto fact = find_power_solutions(kX, 2, 50);
    ASSERT_EQ(solution_indices(fact), std::vector<u64>{1});
    EXPECT_EQ(fact[0].root.value(), 1);
    EXPECT_TRUE(find_power_solutions(kX2p1, 3, 50).empty());
    EXPECT_THROW(find_power_solutions(kX2p1, 1, 5), Error);
}

TEST(Powers, MatchesExpandedProducts) {
    for (const IntPoly& P : {kX2p1, kX3m2, IntPoly({0, 0, 1}), IntPoly({-1, 0, 1, 0})}) {
        if (P(BigInt(1)) == 0) continue;
        for (unsigned k = 2; k <= 3; ++k) {
            std::vector<u64> expected;
            for (u64 n = 1; n <= 40; ++n) {
                if (is_perfect_kth_power(oracle::product_value(P.coeffs(), n), k)) expected.push_back(n);
            }
            EXPECT_EQ(solution_indices(find_power_solutions(P, k, 40)), expected) << to_string(P) << " k=" << k;
        }
    }
    // x^3 - 2 gives F(1) = -1, a cube
    EXPECT_EQ(solution_indices(find_power_solutions(kX3m2, 3, 1)), std::vector<u64>{1});
}

TEST(Census, Examples) {
    const FieldCensus c = s_d_census(kX2p1, 0, 5);
    std::vector<BigInt> kernels;
    for (const auto& k : c.classes) kernels.push_back(*k.kernel);
    EXPECT_EQ(kernels, (std::vector<BigInt>{2, 10, 1, 17, 442}));
    EXPECT_EQ(c.distinct_fields(), 5u);
    const FieldCensus one = s_d_census(kX3m2, 7, 1);
    EXPECT_EQ(one.distinct_fields(), 1u);
    EXPECT_EQ(one.classes[0].members, std::vector<u64>{8});
}

TEST(Census, KernelsMatchExpandedProducts) {
    for (const IntPoly& P : {kX2p1, kX3m2, IntPoly({1, 1, 1}), IntPoly({-1, 0, 2})}) {
        const FieldCensus c = s_d_census(P, 0, 12);
        std::map<BigInt, std::vector<u64>> expected;
        for (u64 n = 1; n <= 12; ++n) expected[oracle::kernel(oracle::product_value(P.coeffs(), n))].push_back(n);
        ASSERT_EQ(c.distinct_fields(), expected.size()) << to_string(P);
        for (const auto& k : c.classes) {
            ASSERT_TRUE(k.kernel.has_value());
            EXPECT_EQ(k.members, expected.at(*k.kernel));
        }
    }
}

TEST(Census, GroupsBeyondBitLimitStillExact) {
    // a tiny bit limit forces fingerprint-only classes; grouping must not change
    const FieldCensus full = s_d_census(IntPoly({-1, 0, 2}), 0, 200);
    const FieldCensus slim = s_d_census(IntPoly({-1, 0, 2}), 0, 200, KernelMode::absolute, 2, 8);
    ASSERT_EQ(full.classes.size(), slim.classes.size());
    for (std::size_t i = 0; i < full.classes.size(); ++i) {
        EXPECT_EQ(full.classes[i].members, slim.classes[i].members);
        EXPECT_EQ(slim.classes[i].kernel.has_value(), full.classes[i].kernel_bits <= 8);
    }
    EXPECT_GE(full.max_class_size(), 2u);  // d(4) = d(5)
}

TEST(Census, BoundDiagnostic) {
    const FieldCensus c = s_d_census(kX2p1, 0, 1000);
    ASSERT_TRUE(c.ratio().has_value());
    EXPECT_DOUBLE_EQ(*c.ratio(), c.max_class_size() / square_class_bound(1000));
    EXPECT_EQ(square_class_bound(1), 0.0);
}

TEST(Sieve, PipelineOnPairedKernels) {
    // 2x^2-1: P(5) = 49, so d(4) = d(5) = 3689 = 7 * 17 * 31
    const SieveReport s = square_sieve(IntPoly({-1, 0, 2}), BigInt(3689), 0, 64);
    EXPECT_EQ(s.solutions, (std::vector<u64>{4, 5}));
    EXPECT_EQ(s.s2, std::vector<u64>{4});
    EXPECT_EQ(s.s1, std::vector<u64>{5});
    EXPECT_EQ(s.H, 1u);
    EXPECT_EQ(s.z, 8u);
    ASSERT_EQ(s.checks.size(), 1u);
    EXPECT_TRUE(s.checks[0].passes);
    EXPECT_EQ(s.checks[0].partner_h, 1u);
    EXPECT_TRUE(s.s1_within_gap_bound());
    // rootless primes of 2x^2-1 are those with 2 a non-residue: p = 3, 5 mod 8
    for (u64 l : s.curly_L) EXPECT_TRUE(l % 8 == 3 || l % 8 == 5);
}

TEST(Sieve, FullSumIdentityOnEverySecondSubsetMember) {
    const IntPoly P({-1, 0, 2});
    const FieldCensus c = s_d_census(P, 0, 400);
    int pipelines = 0;
    for (const auto& k : c.classes) {
        if (k.members.size() < 2 || !k.kernel || sgn(*k.kernel) < 0) continue;
        SquareSieveOptions opt;
        opt.H = 4;
        opt.z = 40;
        const SieveReport s = square_sieve(P, *k.kernel, 0, 400, opt);
        EXPECT_EQ(s.solutions, k.members);
        EXPECT_TRUE(s.all_checks_pass());
        ++pipelines;
    }
    EXPECT_GT(pipelines, 0);
}

TEST(Sieve, Preconditions) {
    EXPECT_THROW(square_sieve(kX2p1, BigInt(2), 0, 8), Error);
    EXPECT_THROW(square_sieve(kX2p1, BigInt(12), 0, 100), Error);
    SquareSieveOptions opt;
    opt.z = 2;
    EXPECT_THROW(square_sieve(IntPoly({2, 3, 1}), BigInt(2), 0, 100, opt), Error);  // every prime has a root
}

TEST(Sieve, DefaultParameters) {
    EXPECT_EQ(default_sieve_z(10000), 100u);
    EXPECT_EQ(default_sieve_H(64), 1u);
    EXPECT_EQ(default_sieve_H(10000), 2u);
    EXPECT_EQ(default_sieve_H(u64{1} << 40), 14u);
}

TEST(Weil, CompletePeriodValues) {
    EXPECT_EQ(weil_ratio(kX2p1, 3, 7, 0, 21).sum, 1);
    EXPECT_EQ(weil_ratio(kX2p1, 3, 7, 0, 42).sum, 2);
    EXPECT_THROW(weil_ratio(IntPoly({1, 2, 1}), 3, 7, 0, 21), Error);
    EXPECT_THROW(weil_ratio(kX2p1, 3, 3, 0, 9), Error);
    EXPECT_THROW(weil_ratio(kX2p1, 2, 7, 0, 14), Error);
}

TEST(Weil, CompleteSumFactorsOverPrimes) {
    const auto primes = primes_in(3, 60);
    for (const IntPoly& P : {kX2p1, kX3m2, IntPoly({1, 1, 1})}) {
        for (std::size_t i = 0; i < primes.size(); ++i) {
            for (std::size_t j = i + 1; j < primes.size(); ++j) {
                const u64 l = primes[i], p = primes[j];
                const ModPoly rl = ModPoly::reduce(P, l), rp = ModPoly::reduce(P, p);
                if (is_square_poly_mod(rl) || is_square_poly_mod(rp)) continue;
                long sl = 0, sp = 0;
                for (u64 n = 0; n < l; ++n) sl += oracle::legendre(rl(n), l);
                for (u64 n = 0; n < p; ++n) sp += oracle::legendre(rp(n), p);
                ASSERT_EQ(weil_ratio(P, l, p, 0, l * p).sum, sl * sp) << to_string(P) << " " << l << " " << p;
            }
        }
    }
}

TEST(Chebotarev, QuadraticRootlessCountIsThreeModFour) {
    for (u64 z : {u64{10}, u64{1000}, u64{50000}}) {
        const DensityReport d = chebotarev_census(kX2p1, z, 2);
        u64 expected = 0;
        for (u64 p : primes_in(z, 2 * z)) expected += p % 4 == 3;
        EXPECT_EQ(d.rootless, expected);
    }
}

TEST(Chebotarev, KappaEstimates) {
    const DensityReport a = chebotarev_census(kX2p1, 10000);
    EXPECT_NEAR(*a.kappa_hat(), 2.0, 0.1);
    EXPECT_DOUBLE_EQ(*a.kappa_bound(), 2.0);
    const DensityReport b = chebotarev_census(kX3m2, 10000);
    EXPECT_NEAR(*b.kappa_hat(), 3.0, 0.3);
    EXPECT_DOUBLE_EQ(*b.kappa_bound(), 3.0);
    EXPECT_THROW(chebotarev_census(kX2p1, 5), Error);
}

TEST(Exceptional, Examples) {
    EXPECT_EQ(exceptional_prime_census(kX2p1, 1, 50).count(), 0u);
    const ExceptionalReport sq = exceptional_prime_census(IntPoly({0, 0, 1}), 1, 50);
    EXPECT_EQ(sq.count(), primes_in(3, 50).size());
}

TEST(Exceptional, AgreesWithEnumerationForSmallPrimes) {
    for (const IntPoly& P : {kX2p1, IntPoly({0, 0, 1}), IntPoly({2, 3, 1}), IntPoly({1, 1, 1})}) {
        const ExceptionalReport rep = exceptional_prime_census(P, 3, 23);
        std::set<std::pair<u64, u64>> flagged(rep.pairs.begin(), rep.pairs.end());
        for (u64 p : primes_in(3, 23)) {
            oracle::Poly acc{1};
            for (u64 h = 1; h <= 3; ++h) {
                acc = oracle::mul(acc, oracle::shift(P.coeffs(), static_cast<long>(h)));
                const bool sq = oracle::is_square_mod(oracle::reduce(acc, p), p);
                ASSERT_EQ(flagged.count({p, h}) == 1, sq) << to_string(P) << " p=" << p << " h=" << h;
            }
        }
    }
}

TEST(RandomModel, Examples) {
    const RandomModelReport r = random_permutation_model(2003, 200, 1);
    EXPECT_NEAR(r.mean_image_fraction, 0.632, 0.010);
    const RandomModelReport small = random_permutation_model(5, 1, 42);
    const double f = small.fractions.at(0);
    EXPECT_TRUE(f == 0.25 || f == 0.5 || f == 0.75 || f == 1.0);
    EXPECT_THROW(random_permutation_model(4, 10, 1), Error);
    EXPECT_THROW(random_permutation_model(7, 0, 1), Error);
}

TEST(RandomModel, DeterministicUnderSeedAndThreads) {
    const RandomModelReport a = random_permutation_model(1009, 64, 7, 1);
    const RandomModelReport b = random_permutation_model(1009, 64, 7, 4);
    const RandomModelReport c = random_permutation_model(1009, 64, 8, 1);
    EXPECT_EQ(a.fractions, b.fractions);
    EXPECT_EQ(a.mean_image_fraction, b.mean_image_fraction);
    EXPECT_NE(a.fractions, c.fractions);
}

TEST(Binomial, Examples) {
    const BinomialShiftReport r = binomial_shift_check(3, BigInt(2), {1, 2});
    EXPECT_EQ(r.q, 2u);
    EXPECT_TRUE(r.irreducible_over_Q);
    ASSERT_EQ(r.checks.size(), 2u);
    EXPECT_TRUE(r.checks[0].accepted);
    EXPECT_TRUE(r.checks[0].nonzero);
    EXPECT_EQ(r.checks[0].degree, 6);
    EXPECT_FALSE(r.checks[1].accepted);
    EXPECT_EQ(r.checks[1].rejection, "gcd(dk, q) = 2 != 1");

    const BinomialShiftReport t = binomial_shift_check(2, BigInt(3), {1});
    EXPECT_EQ(t.q, 3u);
    EXPECT_TRUE(t.checks[0].nonzero);
    EXPECT_THROW(binomial_shift_check(2, BigInt(4), {1}), Error);
    EXPECT_THROW(binomial_shift_check(2, BigInt(1), {1}), Error);
    EXPECT_THROW(binomial_shift_check(3, BigInt(6), {1}), Error);
}

TEST(Binomial, BothDiscriminantRoutesAgree) {
    for (auto [d, a] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{5, 2}, std::pair{3, 5}, std::pair{2, -7}}) {
        const BinomialShiftReport r = binomial_shift_check(d, BigInt(a), {1, 3, 5});
        for (const auto& c : r.checks) {
            if (!c.accepted) continue;
            EXPECT_TRUE(c.nonzero) << d << " " << a << " k=" << c.k;
            EXPECT_TRUE(c.routes_agree()) << d << " " << a << " k=" << c.k;
            if (c.degree <= 30) {
                const oracle::Poly f = [&] {
                    oracle::Poly acc{1};
                    const IntPoly P = IntPoly::binomial(d, BigInt(a));
                    for (u64 j = 0; j < c.shift_length; ++j)
                        acc = oracle::mul(acc, oracle::shift(P.coeffs(), static_cast<long>(j)));
                    acc[0] -= 1;
                    return acc;
                }();
                mpz_class disc = oracle::discriminant(f) % static_cast<unsigned long>(r.q);
                if (disc < 0) disc += static_cast<unsigned long>(r.q);
                EXPECT_EQ(c.disc_mod_q, disc.get_ui());
            }
        }
    }
}
