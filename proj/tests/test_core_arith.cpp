#include <polyprod/core_arith.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace polyprod;

TEST(Primality, SmallValues) {
    EXPECT_FALSE(is_prime(u64{0}));
    EXPECT_FALSE(is_prime(u64{1}));
    EXPECT_TRUE(is_prime(u64{2}));
    EXPECT_TRUE(is_prime(u64{2003}));
    EXPECT_FALSE(is_prime(u64{2001}));
}

TEST(Primality, AgreesWithTrialDivisionBelow20000) {
    for (u64 n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
}

TEST(Primality, StrongPseudoprimesRejected) {
    // strong pseudoprimes to several small bases
    for (u64 n : {u64{2047}, u64{1373653}, u64{25326001}, u64{3215031751}, u64{2152302898747},
                  u64{3474749660383}, u64{341550071728321}, u64{3825123056546413051ULL}}) {
        EXPECT_FALSE(is_prime(n)) << n;
    }
    EXPECT_TRUE(is_prime(u64{18446744073709551557ULL}));  // largest 64-bit prime
}

TEST(Primality, BeyondSixtyFourBits) {
    const BigInt m61 = (BigInt(1) << 61) - 1;
    const BigInt m89 = (BigInt(1) << 89) - 1;
    const BigInt m127 = (BigInt(1) << 127) - 1;
    EXPECT_TRUE(is_prime(m89));
    EXPECT_TRUE(is_prime(m127));
    EXPECT_FALSE(is_prime(BigInt(m61 * m89)));
    EXPECT_FALSE(is_prime(BigInt((BigInt(1) << 67) - 1)));  // 193707721 * 761838257287
    EXPECT_FALSE(is_prime(BigInt(-7)));
}

TEST(Primes, Ranges) {
    EXPECT_EQ(primes_in(2, 10), (std::vector<u64>{2, 3, 5, 7}));
    EXPECT_EQ(primes_in(10, 20), (std::vector<u64>{11, 13, 17, 19}));
    EXPECT_EQ(primes_in(0, 1), std::vector<u64>{});
    EXPECT_EQ(primes_in(20, 10), std::vector<u64>{});
    EXPECT_EQ(primes_in(100000, 200000).size(), 8392u);
    EXPECT_EQ(prime_count(10000), 1229u);
}

TEST(Primes, SegmentBoundariesMatchOracle) {
    const u64 lo = (u64{1} << 18) - 500, hi = (u64{1} << 19) + 500;
    std::vector<u64> expected;
    for (u64 n = lo; n <= hi; ++n) {
        if (oracle::is_prime(n)) expected.push_back(n);
    }
    EXPECT_EQ(primes_in(lo, hi), expected);
}

TEST(Jacobi, Examples) {
    EXPECT_EQ(jacobi(u64{1}, u64{7}), 1);
    EXPECT_EQ(jacobi(u64{2}, u64{7}), 1);
    EXPECT_EQ(jacobi(u64{3}, u64{5}), -1);
    EXPECT_EQ(jacobi(u64{0}, u64{1}), 1);
    EXPECT_EQ(jacobi(i64{-1}, u64{7}), -1);
    EXPECT_EQ(jacobi(i64{-1}, u64{13}), 1);
    EXPECT_THROW(jacobi(u64{3}, u64{8}), Error);
}

TEST(Jacobi, MatchesSquareTablesForOddPrimesBelow200) {
    for (u64 p : oracle::primes_upto(199)) {
        if (p == 2) continue;
        const auto squares = oracle::squares_mod(p);
        for (u64 a = 0; a < p; ++a) {
            const int expected = a == 0 ? 0 : (squares.count(a) ? 1 : -1);
            ASSERT_EQ(jacobi(a, p), expected) << a << " mod " << p;
        }
    }
}

TEST(Jacobi, MultiplicativeInModulus) {
    std::mt19937_64 gen(7);
    const auto primes = primes_in(3, 1000);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    for (int t = 0; t < 2000; ++t) {
        const u64 l = primes[pick(gen)], p = primes[pick(gen)];
        if (l == p) continue;
        const u64 a = gen() % (l * p * 3);
        ASSERT_EQ(jacobi(a, l * p), jacobi(a, l) * jacobi(a, p));
    }
}

TEST(Jacobi, CompositeModuliMatchOracle) {
    for (u64 n = 1; n < 300; n += 2) {
        for (u64 a = 0; a < n; ++a) ASSERT_EQ(jacobi(a, n), oracle::jacobi(a, n)) << a << "/" << n;
    }
}

TEST(Jacobi, BigIntOverload) {
    const BigInt n = (BigInt(1) << 127) - 1;
    EXPECT_EQ(jacobi(BigInt(4), n), 1);
    EXPECT_EQ(jacobi(BigInt(-1), n), -1);  // n = 3 mod 4
    EXPECT_EQ(jacobi(BigInt(10), BigInt(21)), oracle::jacobi(10, 21));
}

namespace {

FactorMap fm(int sign, std::vector<std::pair<long, unsigned>> e) {
    FactorMap f;
    f.sign = sign;
    for (auto [p, k] : e) f.entries.emplace_back(BigInt(p), k);
    return f;
}

}  // namespace

TEST(Factorize, Examples) {
    EXPECT_EQ(factorize(BigInt(100)), fm(1, {{2, 2}, {5, 2}}));
    EXPECT_EQ(factorize(BigInt(-108)), fm(-1, {{2, 2}, {3, 3}}));
    EXPECT_EQ(factorize(BigInt(10001)), fm(1, {{73, 1}, {137, 1}}));
    EXPECT_EQ(factorize(BigInt(1)), fm(1, {}));
    EXPECT_EQ(factorize(BigInt(-1)), fm(-1, {}));
    EXPECT_THROW(factorize(BigInt(0)), Error);
}

TEST(Factorize, ReassemblesRandomValuesUpTo1e12) {
    std::mt19937_64 gen(12345);
    std::uniform_int_distribution<u64> dist(2, 1'000'000'000'000ULL);
    for (int t = 0; t < 10000; ++t) {
        const BigInt n = from_u64(dist(gen));
        const FactorMap f = factorize(n);
        ASSERT_EQ(f.value(), n);
        for (std::size_t i = 0; i < f.entries.size(); ++i) {
            ASSERT_TRUE(is_prime(f.entries[i].first));
            if (i) {
                ASSERT_LT(f.entries[i - 1].first, f.entries[i].first);
            }
        }
    }
}

TEST(Factorize, RhoOnLargeSemiprimes) {
    const BigInt p1("1000000000039"), p2("1000000000061"), p3("18446744073709551557");
    const FactorMap f = factorize(BigInt(p1 * p2));
    ASSERT_EQ(f.entries.size(), 2u);
    EXPECT_EQ(f.entries[0].first, p1);
    EXPECT_EQ(f.entries[1].first, p2);

    const BigInt n = p1 * p1 * p3 * 12;
    const FactorMap g = factorize(n);
    EXPECT_EQ(g.value(), n);
    ASSERT_EQ(g.entries.size(), 4u);
    EXPECT_EQ(g.entries[2], std::make_pair(p1, 2u));
    EXPECT_EQ(g.entries[3], std::make_pair(p3, 1u));
}

TEST(Factorize, MatchesTrialDivisionOracle) {
    std::mt19937_64 gen(99);
    for (int t = 0; t < 500; ++t) {
        const long v = static_cast<long>(gen() % 100'000'000) - 50'000'000;
        if (v == 0) continue;
        const auto expected = oracle::factor(BigInt(v));
        const FactorMap f = factorize(BigInt(v));
        ASSERT_EQ(f.sign, v < 0 ? -1 : 1);
        ASSERT_EQ(f.entries.size(), expected.size());
        std::size_t i = 0;
        for (const auto& [q, e] : expected) {
            ASSERT_EQ(f.entries[i].first, q);
            ASSERT_EQ(f.entries[i].second, e);
            ++i;
        }
    }
}

TEST(Kernel, Examples) {
    EXPECT_EQ(squarefree_kernel(fm(1, {{2, 2}, {5, 2}})), 1);
    EXPECT_EQ(squarefree_kernel(fm(1, {{2, 1}})), 2);
    EXPECT_EQ(squarefree_kernel(fm(-1, {{2, 3}, {3, 2}})), -2);
}

TEST(Kernel, TimesSquareRestoresValue) {
    std::mt19937_64 gen(5);
    for (int t = 0; t < 2000; ++t) {
        const BigInt n = from_i64(static_cast<i64>(gen() % 2'000'000'000) - 1'000'000'000);
        if (sgn(n) == 0) continue;
        const BigInt d = squarefree_kernel(factorize(n));
        ASSERT_EQ(n % d, 0);
        const BigInt t2 = n / d;
        ASSERT_GT(t2, 0);
        ASSERT_TRUE(is_perfect_kth_power(t2, 2).has_value());
        ASSERT_TRUE(abs(d) == 1 || is_squarefree(abs(d)));
        ASSERT_EQ(d, oracle::kernel(n));
    }
}

TEST(Squarefree, Basics) {
    EXPECT_TRUE(is_squarefree(BigInt(1)));
    EXPECT_TRUE(is_squarefree(BigInt(-30)));
    EXPECT_FALSE(is_squarefree(BigInt(12)));
    EXPECT_FALSE(is_squarefree(BigInt(0)));
}

TEST(PerfectPower, Examples) {
    EXPECT_EQ(is_perfect_kth_power(BigInt(100), 2), BigInt(10));
    EXPECT_EQ(is_perfect_kth_power(BigInt(-8), 3), BigInt(-2));
    EXPECT_FALSE(is_perfect_kth_power(BigInt(2), 5).has_value());
    EXPECT_FALSE(is_perfect_kth_power(BigInt(-4), 2).has_value());
    EXPECT_EQ(is_perfect_kth_power(BigInt(1), 7), BigInt(1));
    EXPECT_THROW(is_perfect_kth_power(BigInt(4), 1), Error);
}

TEST(PerfectPower, ExactAroundLargePowers) {
    for (unsigned k = 2; k <= 9; ++k) {
        for (long b : {2L, 3L, 999L, 123456789L}) {
            const BigInt v = pow(BigInt(b), k);
            ASSERT_EQ(is_perfect_kth_power(v, k), BigInt(b));
            ASSERT_FALSE(is_perfect_kth_power(BigInt(v + 1), k).has_value());
            ASSERT_FALSE(is_perfect_kth_power(BigInt(v - 1), k).has_value());
        }
    }
}

TEST(ModArith, Helpers) {
    const u64 p = 18446744073709551557ULL;
    EXPECT_EQ(mul_mod(p - 1, p - 1, p), 1u);
    EXPECT_EQ(pow_mod(3, p - 1, p), 1u);
    EXPECT_EQ(mul_mod(inv_mod(12345, p), 12345, p), 1u);
}
