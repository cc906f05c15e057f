#include "pgl/sums.hpp"

#include "pgl/arith.hpp"
#include "pgl/congruence.hpp"
#include "pgl/parallel.hpp"
#include "pgl/variational.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace pgl {

std::int64_t naive_detector_sum(std::int64_t x, const PrimeTable& table)
{
    if (x < 1)
        throw std::invalid_argument("naive_detector_sum: x must be positive");
    if (static_cast<std::uint64_t>(x) + 2 > table.limit())
        throw std::out_of_range("naive_detector_sum: need table limit >= x + 2");
    const std::int64_t pi_x = static_cast<std::int64_t>(table.pi(static_cast<std::uint64_t>(x)));
    const std::int64_t pi_x2 =
        static_cast<std::int64_t>(table.pi(static_cast<std::uint64_t>(x) + 2));
    // sum varpi(n) = pi(x); sum varpi(n+2) = pi(x+2) - 1 (skips only p = 2)
    return pi_x + pi_x2 - 1 - (x - 1);
}

namespace {

constexpr std::int64_t kChunk = 1 << 14;

double weight_scalar(std::int64_t n, const WeightSpec& spec, const Factorizer& fac)
{
    switch (spec.kind) {
    case WeightKind::SelbergTwin:
        return weight_selberg_twin(n, spec.D, fac);
    case WeightKind::Gpy:
    case WeightKind::SmoothedMp:
        return weight_gpy(n, spec, fac);
    default:
        throw std::invalid_argument("weight_scalar: not a scalar kind");
    }
}

// Kahan-compensated accumulator
struct Compensated {
    double sum = 0.0;
    double c = 0.0;
    void add(double v)
    {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

int count_prime_offsets(std::int64_t n, const Tuple& t, const PrimeTable& table)
{
    int hits = 0;
    for (std::int64_t h : t.h)
        if (table.is_prime(static_cast<std::uint64_t>(n + h)))
            ++hits;
    return hits;
}

} // namespace

SumReport sum_T1(Range range, const WeightSpec& spec, const LambdaTable& lambdas,
                 const Factorizer& fac, int threads)
{
    SumReport rep = sum_T2(range, spec, lambdas, fac, 0.0, 0.0, threads);
    return rep;
}

SumReport sum_T2(Range range, const WeightSpec& spec, const LambdaTable& lambdas,
                 const Factorizer& fac, double theta, double rho, int threads)
{
    spec.validate();
    if (range.hi < range.lo)
        throw std::invalid_argument("sum: empty-or-negative range must have hi >= lo");
    const PrimeTable& table = fac.table();
    if (range.hi > 0 &&
        static_cast<std::uint64_t>(range.hi + spec.tuple.h.back()) > table.limit())
        throw std::out_of_range("sum: range + tuple diameter exceeds prime table");

    SumReport rep;
    rep.range = range;
    rep.kind = spec.kind;
    rep.theta = theta;
    rep.rho = rho;
    rep.exact = spec.kind == WeightKind::Maynard;

    const std::int64_t n_total = std::max<std::int64_t>(0, range.hi - range.lo);
    const std::size_t n_chunks = static_cast<std::size_t>((n_total + kChunk - 1) / kChunk);

    if (rep.exact) {
        std::vector<Rational> part1(n_chunks, Rational(0));
        std::vector<Rational> part2(n_chunks, Rational(0));
        const std::int64_t Z = spec.presift ? spec.presift->Z : 1;
        const std::int64_t c0 = spec.presift ? spec.presift->c0 : 0;
        parallel_chunks(n_total, kChunk, threads,
                        [&](std::size_t chunk, std::int64_t lo_off, std::int64_t hi_off) {
                            Rational s1(0), s2(0);
                            std::int64_t lo = range.lo + lo_off;
                            std::int64_t hi = range.lo + hi_off;
                            // first n >= lo with n = c0 (mod Z)
                            std::int64_t n = lo + mod_positive(c0 - lo, Z);
                            for (; n < hi; n += Z) {
                                Rational w = weight_maynard(n, lambdas, spec, fac);
                                if (w == 0)
                                    continue;
                                s1 += w;
                                int hits = count_prime_offsets(n, spec.tuple, table);
                                if (hits)
                                    s2 += w * hits;
                            }
                            part1[chunk] = std::move(s1);
                            part2[chunk] = std::move(s2);
                        });
        Rational t1(0), t2(0);
        rep.partials.reserve(n_chunks);
        for (std::size_t c = 0; c < n_chunks; ++c) {
            t1 += part1[c];
            t2 += part2[c];
            Range sub{range.lo + static_cast<std::int64_t>(c) * kChunk,
                      std::min(range.hi, range.lo + static_cast<std::int64_t>(c + 1) * kChunk)};
            rep.partials.push_back({sub, to_double(part1[c]), to_double(part2[c])});
        }
        rep.t1_exact = t1;
        rep.t2_exact = t2;
        rep.t1 = to_double(t1);
        rep.t2 = to_double(t2);
    } else {
        std::vector<double> part1(n_chunks, 0.0), part2(n_chunks, 0.0);
        parallel_chunks(n_total, kChunk, threads,
                        [&](std::size_t chunk, std::int64_t lo_off, std::int64_t hi_off) {
                            Compensated s1, s2;
                            for (std::int64_t n = range.lo + lo_off; n < range.lo + hi_off; ++n) {
                                if (n < 1)
                                    continue;
                                double w = weight_scalar(n, spec, fac);
                                s1.add(w);
                                int hits = count_prime_offsets(n, spec.tuple, table);
                                if (hits)
                                    s2.add(w * hits);
                            }
                            part1[chunk] = s1.sum;
                            part2[chunk] = s2.sum;
                        });
        Compensated t1, t2;
        rep.partials.reserve(n_chunks);
        for (std::size_t c = 0; c < n_chunks; ++c) {
            t1.add(part1[c]);
            t2.add(part2[c]);
            Range sub{range.lo + static_cast<std::int64_t>(c) * kChunk,
                      std::min(range.hi, range.lo + static_cast<std::int64_t>(c + 1) * kChunk)};
            rep.partials.push_back({sub, part1[c], part2[c]});
        }
        rep.t1 = t1.sum;
        rep.t2 = t2.sum;
    }

    rep.empirical_ratio = rep.t1 > 0 ? rep.t2 / rep.t1 : 0.0;

    const int k = spec.tuple.k();
    if (spec.kind == WeightKind::Maynard && spec.F) {
        FormPair fp = build_forms(k, {*spec.F});
        if (fp.B[0][0] != 0)
            rep.predicted_ratio = theta / 2.0 * to_double(Rational(fp.A[0][0] / fp.B[0][0]));
    } else if (spec.kind != WeightKind::Maynard) {
        rep.predicted_ratio = theta * static_cast<double>(k) * (2.0 * spec.ell + 1.0) /
                              ((k + 2.0 * spec.ell + 1.0) * (spec.ell + 1.0));
    }
    return rep;
}

Rational expansion_oracle_T1(Range range, const LambdaTable& lambdas, const WeightSpec& spec)
{
    if (spec.kind != WeightKind::Maynard)
        throw std::invalid_argument("expansion_oracle_T1: Maynard kind only");
    const std::int64_t Z = spec.presift ? spec.presift->Z : 1;
    const std::int64_t c0 = spec.presift ? spec.presift->c0 : 0;
    const auto& h = spec.tuple.h;

    Rational total(0);
    for (const auto& [d, ld] : lambdas.entries)
        for (const auto& [f, lf] : lambdas.entries) {
            Congruence merged{mod_positive(c0, Z), Z};
            bool feasible = true;
            for (std::size_t i = 0; i < d.size() && feasible; ++i) {
                const std::int64_t m = std::lcm(d[i], f[i]);
                const auto next = crt_merge(merged, Congruence{mod_positive(-h[i], m), m});
                if (!next)
                    feasible = false;
                else
                    merged = *next;
            }
            if (!feasible)
                continue; // colliding moduli: counted as zero, not an error
            const std::int64_t count = count_in_range(range.lo, range.hi, merged.r, merged.m);
            if (count)
                total += ld * lf * count;
        }
    return total;
}

// ---- exact main-term forms ---------------------------------------------------

namespace {

struct MuPhi {
    int mu;
    std::int64_t phi;
};

MuPhi mu_phi_of(std::int64_t v, const Factorizer& fac)
{
    Factorization f = fac.factorize(v);
    return {mobius(f), totient(f)};
}

} // namespace

Rational t1_form_direct(const LambdaTable& lambdas, const Factorizer& fac)
{
    (void)fac;
    if (lambdas.k != 2)
        throw std::invalid_argument("t1_form_direct: defined for the k=2 pipeline");
    Rational sum(0);
    for (const auto& [d, ld] : lambdas.entries)
        for (const auto& [f, lf] : lambdas.entries) {
            if (std::gcd(d[0] * f[0], d[1] * f[1]) != 1)
                continue;
            const std::int64_t m1 = std::lcm(d[0], f[0]);
            const std::int64_t m2 = std::lcm(d[1], f[1]);
            sum += ld * lf / Rational(BigInt(m1) * BigInt(m2));
        }
    return sum;
}

T1EtaForm t1_form_eta(const EtaTable& eta, const Factorizer& fac)
{
    if (eta.k != 2)
        throw std::invalid_argument("t1_form_eta: defined for the k=2 pipeline");

    T1EtaForm out;
    out.full = Rational(0);
    out.diagonal = Rational(0);
    Rational offdiag_abs(0);

    // enumerate coprime squarefree quadruples (u1, u2, v1, v2) with
    // u1 v1 u2 v2 <= D and all parts coprime to Z, then read both eta keys
    std::vector<std::int64_t> values;
    for (std::int64_t v = 1; v <= eta.D; ++v) {
        if (std::gcd(v, eta.Z) != 1)
            continue;
        if (!fac.factorize(v).squarefree())
            continue;
        values.push_back(v);
    }

    for (std::int64_t u1 : values) {
        for (std::int64_t u2 : values) {
            if (u2 > eta.D / u1 || std::gcd(u1, u2) != 1)
                continue;
            const std::int64_t p12 = u1 * u2;
            for (std::int64_t v1 : values) {
                if (v1 > eta.D / p12 || std::gcd(v1, p12) != 1)
                    continue;
                const std::int64_t p123 = p12 * v1;
                for (std::int64_t v2 : values) {
                    if (v2 > eta.D / p123 || std::gcd(v2, p123) != 1)
                        continue;
                    const Rational ea = eta.value({u1 * v1, u2 * v2});
                    if (ea == 0)
                        continue;
                    const Rational eb = eta.value({u1 * v2, u2 * v1});
                    if (eb == 0)
                        continue;
                    const auto [mu1, phi_u1] = mu_phi_of(u1, fac);
                    const auto [mu2, phi_u2] = mu_phi_of(u2, fac);
                    const auto [mv1, phi_v1] = mu_phi_of(v1, fac);
                    const auto [mv2, phi_v2] = mu_phi_of(v2, fac);
                    (void)mu1;
                    (void)mu2;
                    Rational term = ea * eb * (mv1 * mv2);
                    term /= Rational(BigInt(phi_u1) * BigInt(phi_u2));
                    term /= Rational(BigInt(phi_v1) * BigInt(phi_v1));
                    term /= Rational(BigInt(phi_v2) * BigInt(phi_v2));
                    out.full += term;
                    if (v1 == 1 && v2 == 1)
                        out.diagonal += term;
                    else
                        offdiag_abs += abs(term);
                }
            }
        }
    }
    out.defect = abs(out.full - out.diagonal);
    out.defect_bound = offdiag_abs;
    return out;
}

Rational t2_form_direct(const LambdaTable& lambdas, const Factorizer& fac)
{
    if (lambdas.k != 2)
        throw std::invalid_argument("t2_form_direct: defined for the k=2 pipeline");
    Rational sum(0);
    for (const auto& [d, ld] : lambdas.entries) {
        if (d[0] != 1)
            continue;
        for (const auto& [f, lf] : lambdas.entries) {
            if (f[0] != 1)
                continue;
            const std::int64_t m = std::lcm(d[1], f[1]);
            sum += ld * lf / Rational(BigInt(totient(fac.factorize(m))));
        }
    }
    return sum;
}

Rational t2_form_eta(const EtaTable& eta, const LambdaTable& lambdas, const Presift& presift,
                     const Factorizer& fac)
{
    if (eta.k != 2)
        throw std::invalid_argument("t2_form_eta: defined for the k=2 pipeline");
    // u ranges over valid second coordinates (including u = 1)
    Rational sum(0);
    for (std::int64_t u = 1; u <= eta.D; ++u) {
        if (std::gcd(u, presift.Z) != 1)
            continue;
        Factorization fu = fac.factorize(u);
        if (!fu.squarefree())
            continue;
        Eta1Value e1 = eta1_from_eta(u, eta, lambdas, presift, fac);
        if (e1.exact == 0)
            continue;
        sum += e1.exact * e1.exact / Rational(BigInt(totient2(fu)));
    }
    return sum;
}

AsymptoticTargets asymptotic_targets(const WeightSpec& spec, double theta, double rho)
{
    spec.validate();
    if (spec.kind != WeightKind::Maynard)
        throw std::invalid_argument("asymptotic_targets: Maynard kind only");
    if (spec.tuple.k() != 2)
        throw std::invalid_argument("asymptotic_targets: k=2 display only");
    if (!spec.presift)
        throw std::invalid_argument("asymptotic_targets: presift required");

    const SimplexPolynomial& F = *spec.F;
    AsymptoticTargets out;
    out.I = (F * F).integral_simplex();
    SimplexPolynomial g1 = F.integrate_out(0);
    out.J1 = (g1 * g1).integral_simplex();
    SimplexPolynomial g2 = F.integrate_out(1);
    out.J_sum = out.J1 + (g2 * g2).integral_simplex();

    const double logD = std::log(static_cast<double>(spec.D));
    const std::int64_t Z = spec.presift->Z;
    // phi(Z)/Z = prod over p | Z of (1 - 1/p); Z is a primorial so plain
    // trial division is instant
    double phi_ratio = 1.0;
    for (std::int64_t z = Z, p = 2; p <= z; ++p)
        if (z % p == 0) {
            phi_ratio *= 1.0 - 1.0 / static_cast<double>(p);
            while (z % p == 0)
                z /= p;
        }

    out.t1_target = logD * logD * phi_ratio * phi_ratio * to_double(out.I);
    out.t2_target = logD * logD * logD * phi_ratio * phi_ratio * phi_ratio * to_double(out.J1);
    out.multiplier = rational_from_double(theta) / 2 * out.J_sum -
                     rational_from_double(rho) * out.I;
    return out;
}

} // namespace pgl
