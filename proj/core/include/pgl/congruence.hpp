#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>

namespace pgl {

// floor division for possibly negative numerators
inline std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

// #{n in [lo, hi) : n = r (mod m)}, exact, O(1)
inline std::int64_t count_in_range(std::int64_t lo, std::int64_t hi, std::int64_t r,
                                   std::int64_t m)
{
    if (hi <= lo)
        return 0;
    return floor_div(hi - 1 - r, m) - floor_div(lo - 1 - r, m);
}

inline std::int64_t mod_positive(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

// modular inverse of a mod m for gcd(a, m) = 1
inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t t = 0, new_t = 1, r = m, new_r = mod_positive(a, m);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return mod_positive(t, m);
}

struct Congruence {
    std::int64_t r = 0;
    std::int64_t m = 1;
};

// Merge n = a.r (mod a.m) with n = b.r (mod b.m); nullopt if incompatible.
inline std::optional<Congruence> crt_merge(const Congruence& a, const Congruence& b)
{
    const std::int64_t g = std::gcd(a.m, b.m);
    std::int64_t diff = b.r - a.r;
    if (diff % g != 0)
        return std::nullopt;
    const std::int64_t m2 = b.m / g;
    std::int64_t t = mod_positive((diff / g) % m2, m2);
    t = mul_mod(t, inverse_mod((a.m / g) % m2, m2), m2);
    const std::int64_t lcm = a.m / g * b.m;
    const std::int64_t r = mod_positive(a.r + static_cast<std::int64_t>(
                                                  static_cast<__int128>(a.m) * t % lcm),
                                        lcm);
    return Congruence{r, lcm};
}

} // namespace pgl
