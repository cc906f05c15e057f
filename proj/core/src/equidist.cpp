#include "pgl/equidist.hpp"

#include "pgl/arith.hpp"
#include "pgl/congruence.hpp"
#include "pgl/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pgl {

std::int64_t pi_in_progression(std::int64_t x, std::int64_t a, std::int64_t q,
                               const PrimeTable& table)
{
    if (q < 1)
        throw std::invalid_argument("pi_in_progression: q must be positive");
    if (a < 0 || a >= q)
        throw std::invalid_argument("pi_in_progression: need 0 <= a < q");
    if (static_cast<std::uint64_t>(x) > table.limit())
        throw std::out_of_range("pi_in_progression: x beyond prime table");
    std::int64_t count = 0;
    for (std::uint64_t p : table.primes()) {
        if (static_cast<std::int64_t>(p) >= x)
            break;
        if (static_cast<std::int64_t>(p % static_cast<std::uint64_t>(q)) == a)
            ++count;
    }
    return count;
}

namespace {

// one pass over the primes below x, bucketed by residue mod q
std::vector<std::int64_t> residue_histogram(std::int64_t x, std::int64_t q,
                                            const PrimeTable& table)
{
    std::vector<std::int64_t> hist(static_cast<std::size_t>(q), 0);
    for (std::uint64_t p : table.primes()) {
        if (static_cast<std::int64_t>(p) >= x)
            break;
        ++hist[static_cast<std::size_t>(p % static_cast<std::uint64_t>(q))];
    }
    return hist;
}

EquidistReport::PerModulus worst_residue(std::int64_t x, std::int64_t q, double li_x,
                                         const Factorizer& fac, const PrimeTable& table)
{
    EquidistReport::PerModulus pm;
    pm.q = q;
    const auto hist = residue_histogram(x, q, table);
    const double expected = li_x / static_cast<double>(totient(fac.factorize(q)));
    double worst = -1.0;
    std::int64_t witness = 0;
    for (std::int64_t a = 0; a < q; ++a) {
        if (std::gcd(a, q) != 1 && q != 1)
            continue;
        double err = std::fabs(static_cast<double>(hist[static_cast<std::size_t>(a)]) - expected);
        if (err > worst) {
            worst = err;
            witness = a;
        }
    }
    pm.witness_a = witness;
    pm.max_error = worst;
    return pm;
}

} // namespace

EquidistReport error_sum_El(std::int64_t x, std::int64_t Q, int l, const Factorizer& fac,
                            int threads)
{
    if (Q < 1)
        throw std::invalid_argument("error_sum_El: Q must be positive");
    if (l < 1)
        throw std::invalid_argument("error_sum_El: l must be positive");
    const PrimeTable& table = fac.table();
    if (static_cast<std::uint64_t>(x) > table.limit())
        throw std::out_of_range("error_sum_El: x beyond prime table");

    EquidistReport rep;
    rep.x = x;
    rep.Q = Q;
    rep.l = l;
    rep.theta_equivalent = x > 1 ? std::log(static_cast<double>(Q)) /
                                       std::log(static_cast<double>(x))
                                 : 0.0;

    const double li_x = logarithmic_integral(static_cast<double>(x));
    rep.per_q.assign(static_cast<std::size_t>(Q), {});
    parallel_chunks(Q, 4, threads, [&](std::size_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t q = lo + 1; q <= hi; ++q) {
            auto pm = worst_residue(x, q, li_x, fac, table);
            pm.tau_weight = tau_l(l, fac.factorize(q));
            rep.per_q[static_cast<std::size_t>(q - 1)] = pm;
        }
    });

    double total = 0.0;
    for (const auto& pm : rep.per_q) // ascending q: deterministic reduction
        total += static_cast<double>(pm.tau_weight) * pm.max_error;
    rep.E_total = total;
    return rep;
}

std::vector<EquidistReport> level_scan(std::int64_t x, const std::vector<double>& theta_grid,
                                       const Factorizer& fac, int threads)
{
    std::vector<EquidistReport> out;
    out.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        if (!(theta > 0.0 && theta < 1.0))
            throw std::invalid_argument("level_scan: grid values must lie in (0,1)");
        const std::int64_t Q = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::pow(static_cast<double>(x), theta)));
        out.push_back(error_sum_El(x, Q, 1, fac, threads));
    }
    return out;
}

std::vector<std::int64_t> roots_of_P_mod_q(const Tuple& t, std::int64_t q, const Factorizer& fac)
{
    if (q < 1)
        throw std::invalid_argument("roots_of_P_mod_q: q must be positive");
    Factorization f = fac.factorize(q);
    if (!f.squarefree())
        throw std::invalid_argument("roots_of_P_mod_q: non-squarefree moduli unsupported");

    std::vector<Congruence> roots{{0, 1}};
    for (const auto& [p, e] : f.prime_powers) {
        (void)e;
        // distinct root classes -h_j mod p
        std::vector<std::int64_t> local;
        for (std::int64_t h : t.h)
            local.push_back(mod_positive(-h, p));
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());

        std::vector<Congruence> next;
        next.reserve(roots.size() * local.size());
        for (const auto& base : roots)
            for (std::int64_t r : local) {
                auto merged = crt_merge(base, Congruence{r, p});
                next.push_back(*merged); // moduli coprime: always feasible
            }
        roots = std::move(next);
    }
    std::vector<std::int64_t> out;
    out.reserve(roots.size());
    for (const auto& c : roots)
        out.push_back(c.r);
    std::sort(out.begin(), out.end());
    return out;
}

EquidistReport smooth_moduli_scan(std::int64_t x, double theta, double omega, const Tuple& t,
                                  const Factorizer& fac, int threads)
{
    if (!(omega > 0.0 && omega < 1.0))
        throw std::invalid_argument("smooth_moduli_scan: omega must lie in (0,1)");
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("smooth_moduli_scan: theta must lie in (0,1)");
    const PrimeTable& table = fac.table();
    if (static_cast<std::uint64_t>(x) > table.limit())
        throw std::out_of_range("smooth_moduli_scan: x beyond prime table");

    const std::int64_t Q = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::pow(static_cast<double>(x), theta)));
    const double smooth_cut = std::pow(static_cast<double>(x), omega);
    const double li_x = logarithmic_integral(static_cast<double>(x));

    EquidistReport rep;
    rep.x = x;
    rep.Q = Q;
    rep.l = 1;
    rep.omega = omega;
    rep.theta_equivalent = std::log(static_cast<double>(Q)) / std::log(static_cast<double>(x));

    // qualifying moduli: squarefree, all prime factors < x^omega
    std::vector<std::int64_t> moduli;
    for (std::int64_t q = 1; q <= Q; ++q) {
        Factorization f = fac.factorize(q);
        if (!f.squarefree())
            continue;
        bool smooth = true;
        for (const auto& [p, e] : f.prime_powers) {
            (void)e;
            if (static_cast<double>(p) >= smooth_cut) {
                smooth = false;
                break;
            }
        }
        if (smooth)
            moduli.push_back(q);
    }

    rep.per_q.assign(moduli.size(), {});
    parallel_chunks(static_cast<std::int64_t>(moduli.size()), 4, threads,
                    [&](std::size_t, std::int64_t lo, std::int64_t hi) {
                        for (std::int64_t i = lo; i < hi; ++i) {
                            const std::int64_t q = moduli[static_cast<std::size_t>(i)];
                            const auto hist = residue_histogram(x, q, table);
                            const double expected =
                                li_x / static_cast<double>(totient(fac.factorize(q)));
                            double sum = 0.0;
                            double worst = -1.0;
                            std::int64_t witness = 0;
                            for (std::int64_t a : roots_of_P_mod_q(t, q, fac)) {
                                if (std::gcd(a, q) != 1 && q != 1)
                                    continue;
                                double err = std::fabs(
                                    static_cast<double>(hist[static_cast<std::size_t>(a)]) -
                                    expected);
                                sum += err;
                                if (err > worst) {
                                    worst = err;
                                    witness = a;
                                }
                            }
                            auto& pm = rep.per_q[static_cast<std::size_t>(i)];
                            pm.q = q;
                            pm.witness_a = witness;
                            pm.max_error = sum; // per-q contribution (root sum)
                            pm.tau_weight = 1;
                        }
                    });

    double total = 0.0;
    for (const auto& pm : rep.per_q)
        total += pm.max_error;
    rep.E_total = total;
    return rep;
}

double cauchy_ratio(std::int64_t x, std::int64_t Q, const Factorizer& fac, int threads)
{
    const double e1 = error_sum_El(x, Q, 1, fac, threads).E_total;
    const double e3 = error_sum_El(x, Q, 3, fac, threads).E_total;
    if (e1 <= 0.0 || Q < 2)
        return 0.0;
    const double lq = std::log(static_cast<double>(Q));
    return e3 * e3 / (static_cast<double>(x) * std::pow(lq, 9) * e1);
}

} // namespace pgl
