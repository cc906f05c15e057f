#include "pgl/simplex_poly.hpp"

#include <stdexcept>

namespace pgl {

SimplexPolynomial SimplexPolynomial::constant(int k, const Rational& c)
{
    SimplexPolynomial p(k);
    p.add_term(Exponents(static_cast<std::size_t>(k), 0), c);
    return p;
}

SimplexPolynomial SimplexPolynomial::one_minus_sum_pow(int k, int ell)
{
    if (ell < 0)
        throw std::invalid_argument("one_minus_sum_pow: exponent must be nonnegative");
    SimplexPolynomial acc = constant(k, Rational(1));
    SimplexPolynomial base = constant(k, Rational(1));
    for (int i = 0; i < k; ++i) {
        Exponents e(static_cast<std::size_t>(k), 0);
        e[static_cast<std::size_t>(i)] = 1;
        base.add_term(e, Rational(-1));
    }
    for (int i = 0; i < ell; ++i)
        acc = acc * base;
    return acc;
}

int SimplexPolynomial::degree() const
{
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int a : e)
            d += a;
        deg = std::max(deg, d);
    }
    return deg;
}

void SimplexPolynomial::add_term(const Exponents& e, const Rational& c)
{
    if (static_cast<int>(e.size()) != k_)
        throw std::invalid_argument("SimplexPolynomial: exponent vector has wrong dimension");
    for (int a : e)
        if (a < 0)
            throw std::invalid_argument("SimplexPolynomial: negative exponent");
    if (c == 0)
        return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

SimplexPolynomial SimplexPolynomial::operator+(const SimplexPolynomial& o) const
{
    if (o.k_ != k_)
        throw std::invalid_argument("SimplexPolynomial: dimension mismatch");
    SimplexPolynomial out = *this;
    for (const auto& [e, c] : o.terms_)
        out.add_term(e, c);
    return out;
}

SimplexPolynomial SimplexPolynomial::operator*(const SimplexPolynomial& o) const
{
    if (o.k_ != k_)
        throw std::invalid_argument("SimplexPolynomial: dimension mismatch");
    SimplexPolynomial out(k_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(ea);
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

SimplexPolynomial SimplexPolynomial::scaled(const Rational& c) const
{
    SimplexPolynomial out(k_);
    if (c == 0)
        return out;
    for (const auto& [e, coef] : terms_)
        out.add_term(e, coef * c);
    return out;
}

Rational SimplexPolynomial::evaluate(const std::vector<Rational>& xi) const
{
    if (static_cast<int>(xi.size()) != k_)
        throw std::invalid_argument("SimplexPolynomial::evaluate: dimension mismatch");
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            term *= rational_pow(xi[i], static_cast<unsigned>(e[i]));
        sum += term;
    }
    return sum;
}

Rational simplex_monomial_integral(const std::vector<int>& exponents, int k)
{
    if (static_cast<int>(exponents.size()) != k)
        throw std::invalid_argument("simplex_monomial_integral: dimension mismatch");
    int total = 0;
    BigInt num(1);
    for (int a : exponents) {
        if (a < 0)
            throw std::invalid_argument("simplex_monomial_integral: negative exponent");
        num *= factorial(static_cast<unsigned>(a));
        total += a;
    }
    Rational r(num, factorial(static_cast<unsigned>(k + total)));
    r.canonicalize();
    return r;
}

Rational SimplexPolynomial::integral_simplex() const
{
    Rational sum(0);
    for (const auto& [e, c] : terms_)
        sum += c * simplex_monomial_integral(e, k_);
    return sum;
}

SimplexPolynomial SimplexPolynomial::integrate_out(int j) const
{
    if (j < 0 || j >= k_)
        throw std::invalid_argument("integrate_out: variable index out of range");
    SimplexPolynomial out(k_ - 1);

    // per-term: int_0^{u} xi_j^{a_j} = u^{a_j+1}/(a_j+1) with
    // u = 1 - sum_{i != j} xi_i, then multinomial-expand u^{a_j+1}.
    for (const auto& [e, c] : terms_) {
        const int a = e[static_cast<std::size_t>(j)];
        const int power = a + 1;
        Rational coef = c / power;

        Exponents rest;
        rest.reserve(static_cast<std::size_t>(k_ - 1));
        for (int i = 0; i < k_; ++i)
            if (i != j)
                rest.push_back(e[static_cast<std::size_t>(i)]);

        // expand (1 - x_1 - ... - x_{k-1})^power over compositions
        std::vector<int> comp(static_cast<std::size_t>(k_ - 1), 0);
        const BigInt pfac = factorial(static_cast<unsigned>(power));
        // depth-first over exponents assigned to each remaining variable
        auto expand = [&](auto&& self, int var, int left, const BigInt& denom) -> void {
            if (var == k_ - 1) {
                // remaining "left" goes to the constant 1; sign = parity of
                // power - left
                BigInt ways = pfac / (denom * factorial(static_cast<unsigned>(left)));
                Rational term = coef * Rational(ways);
                if ((power - left) % 2 != 0)
                    term = -term;
                Exponents eo(rest);
                for (std::size_t i = 0; i < comp.size(); ++i)
                    eo[i] += comp[i];
                out.add_term(eo, term);
                return;
            }
            for (int take = 0; take <= left; ++take) {
                comp[static_cast<std::size_t>(var)] = take;
                self(self, var + 1, left - take, denom * factorial(static_cast<unsigned>(take)));
            }
            comp[static_cast<std::size_t>(var)] = 0;
        };
        expand(expand, 0, power, BigInt(1));
    }
    return out;
}

} // namespace pgl
