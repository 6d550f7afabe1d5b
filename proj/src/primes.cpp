#include "kummer/primes.hpp"

#include <array>

#include "kummer/errors.hpp"

namespace kummer::primes {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m)
{
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 a, u64 e, u64 m)
{
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

constexpr std::array<u64, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool strong_probable_prime(u64 n, u64 a)
{
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

} // namespace

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 p : kBases) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    if (n < 41 * 41)
        return true;
    for (u64 a : kBases)
        if (!strong_probable_prime(n, a))
            return false;
    return true;
}

std::vector<std::pair<u64, unsigned>> factor(u64 n)
{
    std::vector<std::pair<u64, unsigned>> out;
    if (n < 2)
        return out;
    auto strip = [&](u64 p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            out.emplace_back(p, e);
    };
    strip(2);
    if (n > 1 && !is_prime(n)) {
        for (u64 p = 3; p <= n / p; p += 2) {
            if (n % p != 0)
                continue;
            strip(p);
            if (n == 1 || is_prime(n))
                break;
        }
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(u64 n)
{
    for (const auto & [p, e] : factor(n))
        if (e > 1)
            return false;
    return true;
}

u64 to_u64(const Integer & n)
{
    if (n < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 63)
        throw KummerError(ErrorCode::OverflowScope, "value " + n.get_str() + " exceeds the 63-bit desk-scale bound");
    return static_cast<u64>(mpz_get_ui(n.get_mpz_t()));
}

} // namespace kummer::primes
