#pragma once

#include "pgl/rational.hpp"

#include <map>
#include <vector>

namespace pgl {

// Exact-rational polynomial in k variables, used on the simplex
// {xi_i >= 0, sum xi_i <= 1}. Terms map exponent vectors to coefficients;
// zero coefficients are never stored.
class SimplexPolynomial {
public:
    using Exponents = std::vector<int>;

    explicit SimplexPolynomial(int k) : k_(k) {}

    static SimplexPolynomial constant(int k, const Rational& c);
    // (1 - xi_1 - ... - xi_k)^ell, the tapered product form.
    static SimplexPolynomial one_minus_sum_pow(int k, int ell);

    int dimension() const { return k_; }
    bool empty() const { return terms_.empty(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    int degree() const;

    void add_term(const Exponents& e, const Rational& c);

    SimplexPolynomial operator+(const SimplexPolynomial& o) const;
    SimplexPolynomial operator*(const SimplexPolynomial& o) const;
    SimplexPolynomial scaled(const Rational& c) const;

    Rational evaluate(const std::vector<Rational>& xi) const;

    // Integral over the k-simplex, term by term:
    // int prod xi_i^{a_i} = (prod a_i!) / (k + sum a_i)!.
    Rational integral_simplex() const;

    // int_0^{1 - sum_{i != j} xi_i} (this) d xi_j, re-expanded as a
    // polynomial in the remaining k-1 variables (dimension drops by one).
    SimplexPolynomial integrate_out(int j) const;

private:
    int k_;
    std::map<Exponents, Rational> terms_;
};

// (prod a_i!) / (k + sum a_i)! -- the k-simplex monomial integral.
Rational simplex_monomial_integral(const std::vector<int>& exponents, int k);

} // namespace pgl
