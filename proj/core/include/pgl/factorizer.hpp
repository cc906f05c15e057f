#pragma once

#include "pgl/prime_table.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pgl {

// n = prod of prime^exponent, primes strictly increasing, exponents >= 1.
struct Factorization {
    std::int64_t n = 1;
    std::vector<std::pair<std::int64_t, int>> prime_powers;

    bool squarefree() const
    {
        for (const auto& [p, e] : prime_powers)
            if (e > 1)
                return false;
        return true;
    }
    int distinct_primes() const { return static_cast<int>(prime_powers.size()); }
};

// Exact factorization service. Numbers up to spf_limit use a stored
// smallest-prime-factor array; beyond that, trial division by the table's
// primes (covers n up to table.limit()^2). No probabilistic tests anywhere.
class Factorizer {
public:
    explicit Factorizer(const PrimeTable& table, std::uint64_t spf_limit = 0);

    Factorization factorize(std::int64_t n) const;

    // All divisors of n, ascending.
    std::vector<std::int64_t> divisors(std::int64_t n) const;

    // Squarefree divisors of n below the exclusive bound, ascending. These
    // are the only divisors sieve weights see (mu kills the rest).
    std::vector<std::int64_t> squarefree_divisors_below(std::int64_t n, std::int64_t bound) const;

    const PrimeTable& table() const { return *table_; }

private:
    const PrimeTable* table_;
    std::uint64_t spf_limit_;
    std::vector<std::uint32_t> spf_; // smallest prime factor, index = n
};

} // namespace pgl
