#include "pgl/arith.hpp"

#include <cmath>
#include <stdexcept>

namespace pgl {

int mobius(const Factorization& f)
{
    if (!f.squarefree())
        return 0;
    return (f.distinct_primes() % 2 == 0) ? 1 : -1;
}

std::int64_t totient(const Factorization& f)
{
    std::int64_t r = 1;
    for (const auto& [p, e] : f.prime_powers) {
        std::int64_t pe = 1;
        for (int i = 1; i < e; ++i)
            pe *= p;
        r *= pe * (p - 1);
    }
    return r;
}

std::int64_t totient2(const Factorization& f)
{
    if (!f.squarefree() || f.n % 2 == 0)
        throw std::domain_error("totient2: argument must be odd and squarefree");
    std::int64_t r = 1;
    for (const auto& [p, e] : f.prime_powers) {
        (void)e;
        r *= p - 2;
    }
    return r;
}

std::int64_t tau_l(int l, const Factorization& f)
{
    if (l < 1)
        throw std::invalid_argument("tau_l: l must be at least 1");
    std::int64_t r = 1;
    for (const auto& [p, e] : f.prime_powers) {
        (void)p;
        // C(e + l - 1, l - 1)
        std::int64_t c = 1;
        for (int i = 1; i <= e; ++i)
            c = c * (l - 1 + i) / i; // exact: running product of binomials
        r *= c;
    }
    return r;
}

double mobius_log_moment(std::int64_t n, int j, const Factorizer& fac)
{
    if (j < 0)
        throw std::invalid_argument("mobius_log_moment: j must be nonnegative");
    Factorization f = fac.factorize(n);
    if (!f.squarefree())
        throw std::domain_error("mobius_log_moment: n must be squarefree");

    double sum = 0.0;
    const int k = f.distinct_primes();
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        double logd = 0.0;
        int bits = 0;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                logd += std::log(static_cast<double>(f.prime_powers[i].first));
                ++bits;
            }
        double term = (j == 0) ? 1.0 : std::pow(logd, j);
        sum += (bits % 2 == 0) ? term : -term;
    }
    return sum;
}

namespace {

// adaptive Simpson on 1/log t
double inv_log(double t) { return 1.0 / std::log(t); }

double simpson(double a, double b, double fa, double fm, double fb)
{
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(double a, double b, double fa, double fm, double fb, double whole, double eps,
             int depth)
{
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = inv_log(lm), frm = inv_log(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adapt(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adapt(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

} // namespace

double logarithmic_integral(double x)
{
    if (!(x >= 2.0))
        throw std::domain_error("logarithmic_integral: defined for x >= 2");
    // li(2), the principal value at the lower endpoint
    constexpr double kLi2 = 1.0451637801174927848;
    if (x == 2.0)
        return kLi2;

    // integrate in pieces so the local tolerance tracks the growing total
    double total = kLi2;
    double lo = 2.0;
    while (lo < x) {
        double hi = std::min(x, lo * 4.0);
        double fa = inv_log(lo), fb = inv_log(hi), fm = inv_log(0.5 * (lo + hi));
        double whole = simpson(lo, hi, fa, fm, fb);
        double eps = 1e-12 * std::max(1.0, std::fabs(whole));
        total += adapt(lo, hi, fa, fm, fb, whole, eps, 48);
        lo = hi;
    }
    return total;
}

} // namespace pgl
