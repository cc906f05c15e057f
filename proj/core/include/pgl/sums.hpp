#pragma once

#include "pgl/rational.hpp"
#include "pgl/weights.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pgl {

struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0; // exclusive
};

// One weighted-sum experiment: T1 = sum W(n), T2 = sum (sum_j pi-indicator
// of n+h_j) W(n). Maynard-kind sums are exact rationals; scalar kinds are
// compensated doubles (1e-9 relative target).
struct SumReport {
    Range range;
    WeightKind kind = WeightKind::SelbergTwin;
    bool exact = false;

    Rational t1_exact;
    Rational t2_exact;
    double t1 = 0.0;
    double t2 = 0.0;

    double theta = 0.0;
    double rho = 0.0;
    double predicted_ratio = 0.0; // trend target, never a pass/fail bound
    double empirical_ratio = 0.0; // t2 / t1

    struct Partial {
        Range sub;
        double t1 = 0.0;
        double t2 = 0.0;
    };
    std::vector<Partial> partials;
};

// sum_{n in [1, x)} (varpi(n) + varpi(n+2) - 1), exact. The statistically
// hopeless unweighted detector; equals pi(x) + pi(x+2) - x.
std::int64_t naive_detector_sum(std::int64_t x, const PrimeTable& table);

// T1 over the range. For Maynard kind only n = c0 (mod Z) contribute.
SumReport sum_T1(Range range, const WeightSpec& spec, const LambdaTable& lambdas,
                 const Factorizer& fac, int threads = 0);

// Independent oracle for the Maynard T1: expand the square into lambda-key
// pairs and count matching n by CRT + floor arithmetic. Pure identity, no
// main/error split; exact rational.
Rational expansion_oracle_T1(Range range, const LambdaTable& lambdas, const WeightSpec& spec);

// T1 and T2 plus ratio fields. predicted_ratio uses the closed form
// theta k(2l+1)/((k+2l+1)(l+1)) for tapered kinds and (theta/2) sum J/I for
// the Maynard kind.
SumReport sum_T2(Range range, const WeightSpec& spec, const LambdaTable& lambdas,
                 const Factorizer& fac, double theta, double rho, int threads = 0);

// ---- exact main-term forms (k = 2 pipeline) ---------------------------------

// sum over key pairs of lambda(d) lambda(f) / ([d1,f1][d2,f2]) restricted to
// gcd(d1 f1, d2 f2) = 1 -- the expanded T1 main form.
Rational t1_form_direct(const LambdaTable& lambdas, const Factorizer& fac);

// The same form after the change of variables: full four-index expansion
// over (u1, u2, v1, v2), plus its diagonal truncation (v1 = v2 = 1) and a
// rigorous bound on the truncation defect (shape eta_max^2 (log D)^2 / Y).
struct T1EtaForm {
    Rational full;
    Rational diagonal;
    Rational defect;       // |full - diagonal|
    Rational defect_bound; // sum of |off-diagonal terms| >= defect
};
T1EtaForm t1_form_eta(const EtaTable& eta, const Factorizer& fac);

// sum_{d,f} lambda(1,d) lambda(1,f) / phi([d,f]) -- the expanded T2 main form.
Rational t2_form_direct(const LambdaTable& lambdas, const Factorizer& fac);

// sum_u eta_1(u)^2 / gamma(u) with the exact eta_1; equals t2_form_direct.
Rational t2_form_eta(const EtaTable& eta, const LambdaTable& lambdas, const Presift& presift,
                     const Factorizer& fac);

// ---- scaling targets ---------------------------------------------------------

// The two k=2 limit expressions and the resulting multiplier:
//   t1_target = (log D)^2 (phi(Z)/Z)^2 * I(F)
//   t2_target = (log D)^3 (phi(Z)/Z)^3 * J1(F)
//   multiplier = theta/2 * sum_j J^(j)(F) - rho * I(F)      (exact rational)
struct AsymptoticTargets {
    Rational I;     // int F^2 over the simplex
    Rational J1;    // int (int F dxi_1)^2
    Rational J_sum; // sum over coordinates
    double t1_target = 0.0;
    double t2_target = 0.0;
    Rational multiplier;
};
AsymptoticTargets asymptotic_targets(const WeightSpec& spec, double theta, double rho);

} // namespace pgl
