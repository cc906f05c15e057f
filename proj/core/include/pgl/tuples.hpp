#pragma once

#include "pgl/prime_table.hpp"

#include <cstdint>
#include <vector>

namespace pgl {

// Strictly increasing integer offsets h_1 < ... < h_k.
struct Tuple {
    std::vector<std::int64_t> h;

    explicit Tuple(std::vector<std::int64_t> offsets);
    int k() const { return static_cast<int>(h.size()); }
    std::int64_t diameter() const { return h.back() - h.front(); }
    Tuple shifted(std::int64_t c) const;
};

// Pre-sift data: Z = prod of primes <= Y, and a residue c0 mod Z with
// gcd(Z, prod_j (c0 + h_j)) = 1. Restricting n = c0 (mod Z) forces every
// n + h_j coprime to all small primes.
struct Presift {
    double Y = 0;
    std::int64_t Z = 1;
    std::int64_t c0 = 0;
};

// A tuple is admissible iff for every prime p <= k its offsets miss at least
// one residue class mod p (primes p > k can never cover all classes).
bool is_admissible(const Tuple& t, const PrimeTable& table);

// The first k primes exceeding k, shifted so h_1 = 0. Always admissible.
Tuple shifted_primes_tuple(int k, const PrimeTable& table);

// Greedy sieve over [0, window): for each prime p <= k in ascending order,
// remove the residue class whose removal leaves the narrowest achievable
// k-survivor window (ties: smallest residue); return the leftmost narrowest
// k consecutive survivors. Throws if fewer than k survive.
Tuple greedy_tuple(int k, std::int64_t window, const PrimeTable& table);

// Smallest nonnegative c0 with gcd(Z, prod(c0 + h_j)) = 1; throws
// std::domain_error if the tuple is inadmissible at some prime <= Y.
Presift build_presift(const Tuple& t, double Y, const PrimeTable& table);

} // namespace pgl
