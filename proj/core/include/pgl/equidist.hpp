#pragma once

#include "pgl/factorizer.hpp"
#include "pgl/prime_table.hpp"
#include "pgl/tuples.hpp"

#include <cstdint>
#include <vector>

namespace pgl {

// Error aggregate over moduli q <= Q:
//   E_total = sum_q tau_l(q) * max over (a,q)=1 of |pi(x;a,q) - li(x)/phi(q)|
struct EquidistReport {
    std::int64_t x = 0;
    std::int64_t Q = 0;
    int l = 1;
    double omega = 0.0; // smooth variant only
    struct PerModulus {
        std::int64_t q = 0;
        std::int64_t witness_a = 0;
        double max_error = 0.0;
        std::int64_t tau_weight = 1;
    };
    std::vector<PerModulus> per_q;
    double E_total = 0.0;
    double theta_equivalent = 0.0; // log Q / log x
};

// exact #{p prime : p < x, p = a (mod q)}
std::int64_t pi_in_progression(std::int64_t x, std::int64_t a, std::int64_t q,
                               const PrimeTable& table);

// tau_l-weighted worst-residue error sum over q in [1, Q].
EquidistReport error_sum_El(std::int64_t x, std::int64_t Q, int l, const Factorizer& fac,
                            int threads = 0);

// E_1(x, floor(x^theta)) for each theta in the grid.
std::vector<EquidistReport> level_scan(std::int64_t x, const std::vector<double>& theta_grid,
                                       const Factorizer& fac, int threads = 0);

// all residues a mod q with prod_j (a + h_j) = 0 (mod q), q squarefree,
// assembled by CRT from the per-prime root sets {-h_j mod p}.
std::vector<std::int64_t> roots_of_P_mod_q(const Tuple& t, std::int64_t q, const Factorizer& fac);

// Root-weighted error sum over x^omega-smooth squarefree q <= x^theta:
// sum_q sum_{(a,q)=1, P(a)=0 (q)} |pi(x;a,q) - li(x)/phi(q)|
// (absolute-value sum over roots, not a max).
EquidistReport smooth_moduli_scan(std::int64_t x, double theta, double omega, const Tuple& t,
                                  const Factorizer& fac, int threads = 0);

// Measured Cauchy-reduction ratio E_3(x,Q)^2 / (x (log Q)^9 E_1(x,Q)).
// Reported, never asserted (the implied constant is unknown).
double cauchy_ratio(std::int64_t x, std::int64_t Q, const Factorizer& fac, int threads = 0);

} // namespace pgl
