#pragma once

#include "pgl/factorizer.hpp"

#include <cstdint>

namespace pgl {

// mu(n): 0 unless squarefree, else (-1)^{number of prime factors}.
int mobius(const Factorization& f);

// Euler phi, multiplicative with phi(p^e) = p^e - p^{e-1}.
std::int64_t totient(const Factorization& f);

// prod_{p | n} (p - 2), the twin analogue of phi. Defined for odd squarefree
// n only (the totient-ratio identity it serves is stated there); 1 for n = 1.
std::int64_t totient2(const Factorization& f);

// tau_l(n): ordered l-tuples with product n; multiplicative with
// tau_l(p^e) = C(e + l - 1, l - 1).
std::int64_t tau_l(int l, const Factorization& f);

// sum_{d | n} mu(d) (log d)^j for squarefree n. Vanishes whenever n has more
// than j distinct prime factors, which is what every tapered sieve weight
// approximates.
double mobius_log_moment(std::int64_t n, int j, const Factorizer& fac);

// Logarithmic integral li(x) for x >= 2, relative accuracy 1e-10.
// li(2) = 1.0451637801... and li(x) = li(2) + int_2^x dt/log t.
double logarithmic_integral(double x);

} // namespace pgl
