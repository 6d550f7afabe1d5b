#ifndef KUMMER_PRIMES_HPP
#define KUMMER_PRIMES_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "kummer/exact_linalg.hpp"

namespace kummer::primes {

/*
 * Deterministic for all 64-bit n: trial division by small primes, then
 * Miller-Rabin with the first twelve prime bases.
 */
bool is_prime(std::uint64_t n);

/* Prime factorization (p, e) with p ascending. */
std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

/* Throws OverflowScope if n is negative or does not fit in 63 bits. */
std::uint64_t to_u64(const Integer & n);

} // namespace kummer::primes

#endif
