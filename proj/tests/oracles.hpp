// Independent oracles for the test suites. Everything here is deliberately
// naive and separate from the library implementations it checks: plain
// full-array sieve, trial division, series evaluation, brute-force
// enumeration. Keep it that way.
#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

// classic full-array sieve of Eratosthenes over [0, limit)
inline std::vector<char> naive_sieve(std::int64_t limit)
{
    std::vector<char> is_prime(static_cast<std::size_t>(limit), 1);
    if (limit > 0)
        is_prime[0] = 0;
    if (limit > 1)
        is_prime[1] = 0;
    for (std::int64_t i = 2; i * i < limit; ++i)
        if (is_prime[static_cast<std::size_t>(i)])
            for (std::int64_t j = i * i; j < limit; j += i)
                is_prime[static_cast<std::size_t>(j)] = 0;
    return is_prime;
}

inline bool trial_division_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::int64_t naive_pi(std::int64_t x, const std::vector<char>& sieve)
{
    std::int64_t c = 0;
    for (std::int64_t n = 2; n < x; ++n)
        c += sieve[static_cast<std::size_t>(n)];
    return c;
}

inline std::int64_t naive_twin_count(std::int64_t x, const std::vector<char>& sieve)
{
    std::int64_t c = 0;
    for (std::int64_t n = 2; n < x; ++n)
        c += sieve[static_cast<std::size_t>(n)] && sieve[static_cast<std::size_t>(n + 2)];
    return c;
}

// li(x) by the rapidly converging series
//   li(x) = gamma + ln ln x + sum_{n>=1} (ln x)^n / (n * n!)
// evaluated in long double; good to ~1e-15 relative for x <= 1e8.
inline long double li_series(long double x)
{
    const long double euler_gamma = 0.57721566490153286060651209008240243L;
    const long double lx = std::log(x);
    long double sum = euler_gamma + std::log(lx);
    long double term = 1.0L; // (ln x)^n / n!
    for (int n = 1; n < 400; ++n) {
        term *= lx / n;
        long double add = term / n;
        sum += add;
        if (add < 1e-22L * std::fabs(sum) && n > 10)
            break;
    }
    return sum;
}

// #{p prime < x : p = a (mod q)} by trial division, independent of any table
inline std::int64_t naive_pi_progression(std::int64_t x, std::int64_t a, std::int64_t q,
                                         const std::vector<char>& sieve)
{
    std::int64_t c = 0;
    for (std::int64_t n = 2; n < x; ++n)
        if (sieve[static_cast<std::size_t>(n)] && n % q == a)
            ++c;
    return c;
}

// ordered l-tuples of positive integers with the given product
inline std::int64_t count_ordered_factorizations(int l, std::int64_t n)
{
    if (l == 1)
        return 1;
    std::int64_t total = 0;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0)
            total += count_ordered_factorizations(l - 1, n / d);
    return total;
}

// admissibility by definition, with trial-division primes
inline bool naive_admissible(const std::vector<std::int64_t>& h)
{
    const std::int64_t k = static_cast<std::int64_t>(h.size());
    for (std::int64_t p = 2; p <= k; ++p) {
        if (!trial_division_prime(p))
            continue;
        std::vector<char> hit(static_cast<std::size_t>(p), 0);
        std::int64_t distinct = 0;
        for (std::int64_t v : h) {
            std::int64_t r = ((v % p) + p) % p;
            if (!hit[static_cast<std::size_t>(r)]) {
                hit[static_cast<std::size_t>(r)] = 1;
                ++distinct;
            }
        }
        if (distinct >= p)
            return false;
    }
    return true;
}

// recursive numeric integration of f over the k-simplex (Simpson per axis);
// crude but fully independent of the exact integrator
template <typename F>
double numeric_simplex_integral(const F& f, std::vector<double>& point, std::size_t axis,
                                double remaining, int panels = 64)
{
    const double h = remaining / panels;
    double acc = 0.0;
    for (int i = 0; i <= panels; ++i) {
        point[axis] = i * h;
        double v;
        if (axis + 1 == point.size())
            v = f(point);
        else
            v = numeric_simplex_integral(f, point, axis + 1, remaining - point[axis],
                                         panels >= 16 ? panels / 2 : panels);
        double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * v;
    }
    return acc * h / 3.0;
}

template <typename F>
double numeric_simplex_integral(const F& f, std::size_t k)
{
    std::vector<double> point(k, 0.0);
    return numeric_simplex_integral(f, point, 0, 1.0);
}

} // namespace oracle
