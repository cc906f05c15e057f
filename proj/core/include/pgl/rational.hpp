#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

namespace pgl {

// Exact rational arithmetic. All identity checks in the test suites rely on
// these being exact; never round-trip a Rational through double on a path
// that feeds an equality assertion.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

// "num/den" with the denominator always spelled out ("3/1", "-17/20").
inline std::string rational_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Best rational approximation of x with denominator <= max_den, via
// continued-fraction convergents. Exact inputs p/q with q <= max_den are
// recovered exactly (up to the double representation of x).
inline Rational rational_from_double(double x, std::uint64_t max_den = 1000000)
{
    if (x == 0.0)
        return Rational(0);
    bool neg = x < 0;
    double v = neg ? -x : x;

    // convergents h/k of the continued fraction of v
    BigInt h0(0), h1(1), k0(1), k1(0);
    BigInt cap(static_cast<unsigned long>(max_den));
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 9e18)
            break;
        BigInt a(static_cast<long>(fl));
        BigInt h2 = a * h1 + h0;
        BigInt k2 = a * k1 + k0;
        if (k2 > cap)
            break;
        h0 = h1; h1 = h2;
        k0 = k1; k1 = k2;
        double rem = frac - fl;
        if (rem < 1e-15 * std::max(1.0, std::fabs(v)))
            break;
        frac = 1.0 / rem;
    }
    if (k1 == 0)
        return Rational(0);
    Rational r(h1, k1);
    r.canonicalize();
    if (neg)
        r = -r;
    return r;
}

// r^e for integer e >= 0.
inline Rational rational_pow(const Rational& r, unsigned e)
{
    Rational out(1);
    Rational base = r;
    while (e) {
        if (e & 1u)
            out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

inline BigInt factorial(unsigned n)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt binomial(unsigned n, unsigned k)
{
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace pgl
