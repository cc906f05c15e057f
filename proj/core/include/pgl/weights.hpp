#pragma once

#include "pgl/factorizer.hpp"
#include "pgl/rational.hpp"
#include "pgl/simplex_poly.hpp"
#include "pgl/tuples.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pgl {

enum class WeightKind { SelbergTwin, Gpy, SmoothedMp, Maynard };

std::string weight_kind_name(WeightKind k);
WeightKind weight_kind_from_name(const std::string& name);

// Everything needed to evaluate one weight family. ell is the taper
// exponent (Gpy / SmoothedMp), omega the smoothness exponent (SmoothedMp),
// F and presift drive the multidimensional kind.
struct WeightSpec {
    WeightKind kind = WeightKind::SelbergTwin;
    Tuple tuple{{0, 2}};
    std::int64_t D = 2;
    int ell = 0;
    double omega = 0.5;
    std::optional<SimplexPolynomial> F;
    std::optional<Presift> presift;

    void validate() const; // throws std::invalid_argument on constraint breach
};

// Finitely supported sieve coefficients. Scalar kinds use 1-element keys;
// the multidimensional kind uses k-element keys (d_1, ..., d_k) that are
// squarefree with pairwise coprime entries, coprime to Z, product <= D.
struct LambdaTable {
    int k = 1;
    std::int64_t D = 2;
    std::int64_t Z = 1;
    std::map<std::vector<std::int64_t>, Rational> entries;

    Rational value(const std::vector<std::int64_t>& key) const
    {
        auto it = entries.find(key);
        return it == entries.end() ? Rational(0) : it->second;
    }
    Rational max_abs() const;
};

// Transformed coefficients after the Selberg change of variables; same key
// discipline as LambdaTable. eta determines lambda and vice versa.
struct EtaTable {
    int k = 1;
    std::int64_t D = 2;
    std::int64_t Z = 1;
    std::map<std::vector<std::int64_t>, Rational> entries;

    Rational value(const std::vector<std::int64_t>& key) const
    {
        auto it = entries.find(key);
        return it == entries.end() ? Rational(0) : it->second;
    }
    Rational max_abs() const;
};

// ---- scalar weights --------------------------------------------------------

// Quasi-optimal Selberg coefficient mu(d) (log(D/d)/log D)^2 for squarefree
// d < D, zero otherwise; returned as the continued-fraction rounding of the
// double value (exact at rational log-ratios such as d=2, D=4).
Rational lambda_selberg_quasi(std::int64_t d, std::int64_t D, const Factorizer& fac);

// (sum_{d | n(n+2), d < D} lambda(d))^2 with the quasi-optimal lambda,
// evaluated in double (1e-12 arithmetic tolerance).
double weight_selberg_twin(std::int64_t n, std::int64_t D, const Factorizer& fac);

// Tapered coefficient mu(d) (log(D/d)/log D)^{k+ell}.
Rational lambda_gpy_taper(std::int64_t d, std::int64_t D, int k, int ell, const Factorizer& fac);

// (sum_{d | P(n), d < D} mu(d)(log(D/d)/log D)^{k+ell})^2 with
// P(n) = prod (n + h_j). SmoothedMp restricts d to D^omega-smooth divisors.
double weight_gpy(std::int64_t n, const WeightSpec& spec, const Factorizer& fac);

// true iff every prime factor of d is < D^omega.
bool smooth_divisor_filter(std::int64_t d, std::int64_t D, double omega, const Factorizer& fac);

// ---- multidimensional weights ----------------------------------------------

// All valid support keys for dimension k: squarefree pairwise-coprime
// tuples, coprime to Z, product <= D. Ascending-product recursive descent.
std::vector<std::vector<std::int64_t>> support_keys(int k, std::int64_t D, std::int64_t Z,
                                                    const Factorizer& fac);

// eta(d_1..d_k) = F(log d_1/log D, ..., log d_k/log D) on the valid keys,
// zero beyond them. Evaluation points are continued-fraction-rounded
// rationals, so exact log ratios are honoured exactly.
EtaTable eta_from_F(const WeightSpec& spec, const Factorizer& fac);

// Mobius inversion: lambda(d) = prod mu(d_i) d_i * sum over keys w >= d
// (componentwise divisibility) of eta(w) / prod phi(w_i).
LambdaTable lambda_from_eta(const EtaTable& eta, const Factorizer& fac);

// Forward map: eta(w) = prod mu(w_i) phi(w_i) * sum_{w | d} lambda(d)/prod d_i.
// Exact inverse of lambda_from_eta on valid keys.
EtaTable eta_from_lambda(const LambdaTable& lambdas, const Factorizer& fac);

// eta_1(u): exact value mu(u) gamma(u) sum_{u | d} lambda(1,d)/phi(d) from
// the lambda table, its one-line collapse sum_{w} mu^2(w u) eta(w,u)/phi(w),
// and a rigorous bound on their difference (shape eta_max log D / Y).
struct Eta1Value {
    std::int64_t u = 1;
    Rational exact;
    Rational collapsed;
    Rational defect;       // |exact - collapsed|
    Rational defect_bound; // computable rigorous bound, >= defect
};
Eta1Value eta1_from_eta(std::int64_t u, const EtaTable& eta, const LambdaTable& lambdas,
                        const Presift& presift, const Factorizer& fac);

// W(n) = (sum_{d_j | n + h_j for all j} lambda(d))^2, exact rational.
// Requires n = c0 (mod Z) when a presift is attached.
Rational weight_maynard(std::int64_t n, const LambdaTable& lambdas, const WeightSpec& spec,
                        const Factorizer& fac);

// Materialized table for export: exact for Maynard, rounded rationals of
// the double values for scalar kinds.
LambdaTable build_lambda_table(const WeightSpec& spec, const Factorizer& fac);

} // namespace pgl
