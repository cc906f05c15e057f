#pragma once

#include "pgl/rational.hpp"
#include "pgl/simplex_poly.hpp"

#include <string>
#include <vector>

namespace pgl {

// Exact bilinear forms over a polynomial basis on the k-simplex:
//   B[i][j] = I_k(f_i, f_j)         = int f_i f_j
//   A[i][j] = sum_j J_k^(j)(f_i,f_j) = sum_m int (int f_i dxi_m)(int f_j dxi_m)
struct FormPair {
    int k = 0;
    std::vector<SimplexPolynomial> basis;
    std::vector<std::vector<Rational>> A;
    std::vector<std::vector<Rational>> B;
};

FormPair build_forms(int k, const std::vector<SimplexPolynomial>& basis);

// Rayleigh-quotient lower bound for M_k: a coefficient vector over a stated
// basis whose exactly recomputed quotient (c^T A c)/(c^T B c) certifies
// bound <= M_k. The float estimate is diagnostic only.
struct MkCertificate {
    int k = 0;
    int degree_cap = 0;
    std::string basis_description;
    std::vector<std::pair<int, int>> basis_powers; // (a, b) of (1-P1)^a P2^b
    std::vector<Rational> coefficients;
    Rational bound;
    double float_eigen_estimate = 0.0;
};

// Symmetric-basis certificate: span of (1-P1)^a P2^b with P1 = sum xi_i,
// P2 = sum xi_i^2, a + 2b <= degree_cap. The basis is pruned to a maximal
// B-independent subset by exact rational elimination before solving.
MkCertificate mk_lower_bound(int k, int degree_cap, int threads = 0);

// Exact re-evaluation of a certificate's Rayleigh quotient from scratch.
Rational certify_rayleigh(const MkCertificate& cert);

// Exact matrices of the symmetric family for one k: entries indexed by the
// (a, b) power pairs. Exposed for cross-checks against build_forms.
struct SymmetricForms {
    int k = 0;
    std::vector<std::pair<int, int>> powers;
    std::vector<std::vector<Rational>> A;
    std::vector<std::vector<Rational>> B;
};
SymmetricForms symmetric_forms(int k, int degree_cap);

// 2k(2l+1) / ((l+1)(k+2l+1)): the exact ratio sum_j J/I for F = (1-P1)^l.
Rational gpy_ratio_closed_form(int k, int ell);

// m = smallest positive integer >= theta * mk_bound / 2, rho = m - 1.
std::pair<int, int> primes_count_threshold(double theta, const Rational& mk_bound);

// log k - 2 log log k - 2, the elementary lower-bound comparison curve
// (meaningful for large k only; callers report, never assert, against it).
double logk_bound(int k);

} // namespace pgl
