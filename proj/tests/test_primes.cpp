#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kummer/errors.hpp"
#include "kummer/primes.hpp"
#include "oracles.hpp"

using namespace kummer;
using namespace kummer::primes;

TEST_CASE("primality agrees with trial division")
{
    for (std::uint64_t n = 0; n < 20000; ++n)
        CHECK(is_prime(n) == oracle::trial_is_prime(n));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t n = rng() % 1000000000000ULL;
        CHECK(is_prime(n) == oracle::trial_is_prime(n));
    }
}

TEST_CASE("strong pseudoprimes and large primes")
{
    CHECK_FALSE(is_prime(3215031751ULL));       // spsp to bases 2, 3, 5, 7
    CHECK_FALSE(is_prime(3825123056546413051ULL)); // spsp to bases up to 23
    CHECK(is_prime(4611686018427387847ULL));     // 2^62 - 57
    CHECK(is_prime(1000000007ULL));
    CHECK_FALSE(is_prime(1000000007ULL * 998244353ULL));
}

TEST_CASE("factorization")
{
    using F = std::vector<std::pair<std::uint64_t, unsigned>>;
    CHECK(factor(1).empty());
    CHECK(factor(5) == F{{5, 1}});
    CHECK(factor(65) == F{{5, 1}, {13, 1}});
    CHECK(factor(325) == F{{5, 2}, {13, 1}});
    CHECK(factor(1000000007ULL * 998244353ULL) == F{{998244353ULL, 1}, {1000000007ULL, 1}});

    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const std::uint64_t n = 1 + rng() % 10000000;
        std::uint64_t product = 1;
        std::uint64_t last = 0;
        for (const auto & [p, e] : factor(n)) {
            CHECK(oracle::trial_is_prime(p));
            CHECK(p > last);
            last = p;
            for (unsigned k = 0; k < e; ++k)
                product *= p;
        }
        CHECK(product == n);
    }
}

TEST_CASE("squarefree and conversion")
{
    CHECK(is_squarefree(65));
    CHECK_FALSE(is_squarefree(325));
    CHECK(is_squarefree(1));
    CHECK(to_u64(Integer(17)) == 17);
    try {
        to_u64(Integer("100000000000000000000"));
        FAIL("expected OverflowScope");
    } catch (const KummerError & e) {
        CHECK(e.code() == ErrorCode::OverflowScope);
    }
    CHECK_THROWS_AS(to_u64(Integer(-1)), KummerError);
}
