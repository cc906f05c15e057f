#include "pgl/factorizer.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgl {

Factorizer::Factorizer(const PrimeTable& table, std::uint64_t spf_limit)
    : table_(&table)
{
    if (spf_limit == 0)
        spf_limit = std::min<std::uint64_t>(table.limit(), 1u << 22);
    spf_limit_ = std::min<std::uint64_t>(spf_limit, table.limit());

    spf_.assign(spf_limit_, 0);
    for (std::uint64_t i = 2; i < spf_limit_; ++i) {
        if (spf_[i] == 0) { // i is prime
            for (std::uint64_t j = i; j < spf_limit_; j += i)
                if (spf_[j] == 0)
                    spf_[j] = static_cast<std::uint32_t>(i);
        }
    }
}

Factorization Factorizer::factorize(std::int64_t n) const
{
    if (n < 1)
        throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    f.n = n;
    std::int64_t m = n;

    if (static_cast<std::uint64_t>(m) < spf_limit_) {
        while (m > 1) {
            std::int64_t p = spf_[static_cast<std::uint64_t>(m)];
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            f.prime_powers.emplace_back(p, e);
        }
        return f;
    }

    for (std::uint64_t p : table_->primes()) {
        if (static_cast<std::int64_t>(p) * static_cast<std::int64_t>(p) > m)
            break;
        if (m % static_cast<std::int64_t>(p) == 0) {
            int e = 0;
            while (m % static_cast<std::int64_t>(p) == 0) {
                m /= static_cast<std::int64_t>(p);
                ++e;
            }
            f.prime_powers.emplace_back(static_cast<std::int64_t>(p), e);
        }
    }
    if (m > 1) {
        // remaining cofactor is prime iff no tabled prime <= sqrt(m) divides it
        if (static_cast<std::uint64_t>(m) >= table_->limit() * table_->limit())
            throw std::out_of_range("factorize: n exceeds trial-division reach of the prime table");
        f.prime_powers.emplace_back(m, 1);
    }
    std::sort(f.prime_powers.begin(), f.prime_powers.end());
    return f;
}

std::vector<std::int64_t> Factorizer::divisors(std::int64_t n) const
{
    Factorization f = factorize(n);
    std::vector<std::int64_t> out{1};
    for (const auto& [p, e] : f.prime_powers) {
        const std::size_t base = out.size();
        std::int64_t pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j)
                out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::int64_t> Factorizer::squarefree_divisors_below(std::int64_t n,
                                                                std::int64_t bound) const
{
    Factorization f = factorize(n);
    std::vector<std::int64_t> out;
    if (bound > 1)
        out.push_back(1);
    for (const auto& [p, e] : f.prime_powers) {
        (void)e;
        const std::size_t base = out.size();
        for (std::size_t j = 0; j < base; ++j)
            if (out[j] <= (bound - 1) / p)
                out.push_back(out[j] * p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace pgl
