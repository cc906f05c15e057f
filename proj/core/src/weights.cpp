#include "pgl/weights.hpp"

#include "pgl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pgl {

std::string weight_kind_name(WeightKind k)
{
    switch (k) {
    case WeightKind::SelbergTwin: return "selberg-twin";
    case WeightKind::Gpy: return "gpy";
    case WeightKind::SmoothedMp: return "smoothed-mp";
    case WeightKind::Maynard: return "maynard";
    }
    return "?";
}

WeightKind weight_kind_from_name(const std::string& name)
{
    if (name == "selberg-twin") return WeightKind::SelbergTwin;
    if (name == "gpy") return WeightKind::Gpy;
    if (name == "smoothed-mp") return WeightKind::SmoothedMp;
    if (name == "maynard") return WeightKind::Maynard;
    throw std::invalid_argument("unknown weight kind: " + name);
}

void WeightSpec::validate() const
{
    if (D < 1)
        throw std::invalid_argument("WeightSpec: D must be at least 1");
    if (kind == WeightKind::Gpy || kind == WeightKind::SmoothedMp) {
        if (ell < 0 || ell >= tuple.k())
            throw std::invalid_argument("WeightSpec: need 0 <= ell < k");
    }
    if (kind == WeightKind::SmoothedMp) {
        if (!(omega > 0.0 && omega < 1.0))
            throw std::invalid_argument("WeightSpec: omega must lie in (0,1)");
    }
    if (kind == WeightKind::Maynard) {
        if (!F)
            throw std::invalid_argument("WeightSpec: Maynard kind needs F");
        if (F->dimension() != tuple.k())
            throw std::invalid_argument("WeightSpec: F dimension must equal k");
    }
}

Rational LambdaTable::max_abs() const
{
    Rational m(0);
    for (const auto& [key, v] : entries)
        m = std::max(m, Rational(abs(v)));
    return m;
}

Rational EtaTable::max_abs() const
{
    Rational m(0);
    for (const auto& [key, v] : entries)
        m = std::max(m, Rational(abs(v)));
    return m;
}

// ---- scalar weights ---------------------------------------------------------

namespace {

double log_ratio_power(std::int64_t d, std::int64_t D, int exponent)
{
    const double r = std::log(static_cast<double>(D) / static_cast<double>(d)) /
                     std::log(static_cast<double>(D));
    return std::pow(r, exponent);
}

} // namespace

Rational lambda_selberg_quasi(std::int64_t d, std::int64_t D, const Factorizer& fac)
{
    if (D < 2)
        throw std::invalid_argument("lambda_selberg_quasi: D must be at least 2");
    if (d < 1)
        throw std::invalid_argument("lambda_selberg_quasi: d must be positive");
    if (d == 1)
        return Rational(1);
    if (d >= D)
        return Rational(0);
    const int mu = mobius(fac.factorize(d));
    if (mu == 0)
        return Rational(0);
    return mu * rational_from_double(log_ratio_power(d, D, 2));
}

Rational lambda_gpy_taper(std::int64_t d, std::int64_t D, int k, int ell, const Factorizer& fac)
{
    if (D < 2)
        throw std::invalid_argument("lambda_gpy_taper: D must be at least 2");
    if (ell < 0 || ell >= k)
        throw std::invalid_argument("lambda_gpy_taper: need 0 <= ell < k");
    if (d < 1)
        throw std::invalid_argument("lambda_gpy_taper: d must be positive");
    if (d == 1)
        return Rational(1);
    if (d >= D)
        return Rational(0);
    const int mu = mobius(fac.factorize(d));
    if (mu == 0)
        return Rational(0);
    return mu * rational_from_double(log_ratio_power(d, D, k + ell));
}

bool smooth_divisor_filter(std::int64_t d, std::int64_t D, double omega, const Factorizer& fac)
{
    if (!(omega > 0.0 && omega < 1.0))
        throw std::invalid_argument("smooth_divisor_filter: omega must lie in (0,1)");
    if (d < 1)
        throw std::invalid_argument("smooth_divisor_filter: d must be positive");
    const double threshold = std::pow(static_cast<double>(D), omega);
    for (const auto& [p, e] : fac.factorize(d).prime_powers) {
        (void)e;
        if (static_cast<double>(p) >= threshold)
            return false;
    }
    return true;
}

namespace {

// distinct primes of prod_j (n + h_j), merged across coordinates
std::vector<std::int64_t> distinct_primes_of_product(std::int64_t n,
                                                     const std::vector<std::int64_t>& offsets,
                                                     const Factorizer& fac)
{
    std::vector<std::int64_t> ps;
    for (std::int64_t h : offsets) {
        const std::int64_t v = n + h;
        if (v < 1)
            throw std::domain_error("weight: n + h must be positive");
        if (v == 1)
            continue;
        for (const auto& [p, e] : fac.factorize(v).prime_powers) {
            (void)e;
            ps.push_back(p);
        }
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

// sum of mu(d) * (log(D/d)/log D)^expo over squarefree d < D built from the
// given primes (optionally pruned to primes < smooth_cut)
double tapered_divisor_sum(const std::vector<std::int64_t>& primes, std::int64_t D, int expo,
                           double smooth_cut)
{
    std::vector<std::int64_t> usable;
    for (std::int64_t p : primes) {
        if (p >= D)
            continue;
        if (smooth_cut > 0 && static_cast<double>(p) >= smooth_cut)
            continue;
        usable.push_back(p);
    }
    const double logD = std::log(static_cast<double>(D));
    double sum = 0.0;
    // DFS over squarefree products < D
    auto rec = [&](auto&& self, std::size_t idx, std::int64_t prod, int sign) -> void {
        const double r = (logD - std::log(static_cast<double>(prod))) / logD;
        sum += sign * std::pow(r, expo);
        for (std::size_t i = idx; i < usable.size(); ++i) {
            if (usable[i] > (D - 1) / prod)
                break;
            self(self, i + 1, prod * usable[i], -sign);
        }
    };
    rec(rec, 0, 1, 1);
    return sum;
}

} // namespace

double weight_selberg_twin(std::int64_t n, std::int64_t D, const Factorizer& fac)
{
    if (n < 1)
        throw std::invalid_argument("weight_selberg_twin: n must be positive");
    if (D < 2)
        throw std::invalid_argument("weight_selberg_twin: D must be at least 2");
    const auto primes = distinct_primes_of_product(n, {0, 2}, fac);
    const double s = tapered_divisor_sum(primes, D, 2, 0.0);
    return s * s;
}

double weight_gpy(std::int64_t n, const WeightSpec& spec, const Factorizer& fac)
{
    spec.validate();
    if (spec.kind != WeightKind::Gpy && spec.kind != WeightKind::SmoothedMp)
        throw std::invalid_argument("weight_gpy: spec must be gpy or smoothed-mp kind");
    const auto primes = distinct_primes_of_product(n, spec.tuple.h, fac);
    const int expo = spec.tuple.k() + spec.ell;
    const double cut = spec.kind == WeightKind::SmoothedMp
                           ? std::pow(static_cast<double>(spec.D), spec.omega)
                           : 0.0;
    const double s = tapered_divisor_sum(primes, spec.D, expo, cut);
    return s * s;
}

// ---- multidimensional weights ------------------------------------------------

namespace {

bool squarefree_coprime_valid(std::int64_t v, std::int64_t Z, const Factorizer& fac)
{
    if (v < 1)
        return false;
    if (std::gcd(v, Z) != 1)
        return false;
    return fac.factorize(v).squarefree();
}

} // namespace

std::vector<std::vector<std::int64_t>> support_keys(int k, std::int64_t D, std::int64_t Z,
                                                    const Factorizer& fac)
{
    if (k < 1)
        throw std::invalid_argument("support_keys: k must be positive");
    if (D < 1)
        throw std::invalid_argument("support_keys: D must be at least 1");

    // candidate coordinate values, ascending
    std::vector<std::int64_t> values;
    for (std::int64_t v = 1; v <= D; ++v)
        if (squarefree_coprime_valid(v, Z, fac))
            values.push_back(v);

    std::vector<std::vector<std::int64_t>> keys;
    std::vector<std::int64_t> cur(static_cast<std::size_t>(k), 1);
    auto rec = [&](auto&& self, int pos, std::int64_t prod) -> void {
        if (pos == k) {
            keys.push_back(cur);
            return;
        }
        for (std::int64_t v : values) {
            if (v > D / prod)
                break; // product-ordered cutoff
            bool coprime = true;
            for (int i = 0; i < pos; ++i)
                if (std::gcd(cur[static_cast<std::size_t>(i)], v) != 1) {
                    coprime = false;
                    break;
                }
            if (!coprime)
                continue;
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, prod * v);
        }
        cur[static_cast<std::size_t>(pos)] = 1;
    };
    rec(rec, 0, 1);
    std::sort(keys.begin(), keys.end());
    return keys;
}

EtaTable eta_from_F(const WeightSpec& spec, const Factorizer& fac)
{
    spec.validate();
    if (spec.kind != WeightKind::Maynard)
        throw std::invalid_argument("eta_from_F: spec must be Maynard kind");
    const int k = spec.tuple.k();
    const std::int64_t Z = spec.presift ? spec.presift->Z : 1;

    EtaTable eta;
    eta.k = k;
    eta.D = spec.D;
    eta.Z = Z;

    const double logD = std::log(static_cast<double>(spec.D));
    for (const auto& key : support_keys(k, spec.D, Z, fac)) {
        std::vector<Rational> xi;
        xi.reserve(key.size());
        for (std::int64_t d : key) {
            double t = d == 1 ? 0.0 : std::log(static_cast<double>(d)) / logD;
            xi.push_back(rational_from_double(t));
        }
        Rational v = spec.F->evaluate(xi);
        if (v != 0)
            eta.entries.emplace(key, std::move(v));
    }
    return eta;
}

LambdaTable lambda_from_eta(const EtaTable& eta, const Factorizer& fac)
{
    LambdaTable lam;
    lam.k = eta.k;
    lam.D = eta.D;
    lam.Z = eta.Z;

    const auto keys = support_keys(eta.k, eta.D, eta.Z, fac);

    // phi and mu per coordinate value, memoized on demand
    std::map<std::int64_t, std::pair<int, std::int64_t>> mp; // v -> (mu, phi)
    auto mu_phi = [&](std::int64_t v) {
        auto it = mp.find(v);
        if (it == mp.end()) {
            Factorization f = fac.factorize(v);
            it = mp.emplace(v, std::make_pair(mobius(f), totient(f))).first;
        }
        return it->second;
    };

    for (const auto& d : keys) {
        Rational sum(0);
        for (const auto& [w, ev] : eta.entries) {
            bool divides = true;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (w[i] % d[i] != 0) {
                    divides = false;
                    break;
                }
            if (!divides)
                continue;
            BigInt phis(1);
            for (std::int64_t wi : w)
                phis *= mu_phi(wi).second;
            sum += ev / Rational(phis);
        }
        if (sum == 0)
            continue;
        BigInt scale(1);
        int sign = 1;
        for (std::int64_t di : d) {
            auto [mu, phi] = mu_phi(di);
            (void)phi;
            sign *= mu;
            scale *= di;
        }
        Rational v = sum * Rational(scale) * sign;
        if (v != 0)
            lam.entries.emplace(d, std::move(v));
    }
    return lam;
}

EtaTable eta_from_lambda(const LambdaTable& lambdas, const Factorizer& fac)
{
    EtaTable eta;
    eta.k = lambdas.k;
    eta.D = lambdas.D;
    eta.Z = lambdas.Z;

    const auto keys = support_keys(lambdas.k, lambdas.D, lambdas.Z, fac);

    for (const auto& w : keys) {
        Rational sum(0);
        for (const auto& [d, lv] : lambdas.entries) {
            bool divides = true;
            for (std::size_t i = 0; i < d.size(); ++i)
                if (d[i] % w[i] != 0) {
                    divides = false;
                    break;
                }
            if (!divides)
                continue;
            BigInt prod(1);
            for (std::int64_t di : d)
                prod *= di;
            sum += lv / Rational(prod);
        }
        if (sum == 0)
            continue;
        int sign = 1;
        BigInt phis(1);
        for (std::int64_t wi : w) {
            Factorization f = fac.factorize(wi);
            sign *= mobius(f);
            phis *= totient(f);
        }
        Rational v = sum * Rational(phis) * sign;
        if (v != 0)
            eta.entries.emplace(w, std::move(v));
    }
    return eta;
}

Eta1Value eta1_from_eta(std::int64_t u, const EtaTable& eta, const LambdaTable& lambdas,
                        const Presift& presift, const Factorizer& fac)
{
    if (eta.k != 2 || lambdas.k != 2)
        throw std::invalid_argument("eta1_from_eta: defined for the k=2 pipeline");
    if (u < 1)
        throw std::invalid_argument("eta1_from_eta: u must be positive");
    Factorization fu = fac.factorize(u);
    if (!fu.squarefree())
        throw std::domain_error("eta1_from_eta: u must be squarefree");
    if (std::gcd(u, presift.Z) != 1)
        throw std::domain_error("eta1_from_eta: u must be coprime to Z");

    Eta1Value out;
    out.u = u;

    // exact: mu(u) gamma(u) sum_{u | d} lambda(1, d)/phi(d)
    {
        Rational s(0);
        for (const auto& [key, lv] : lambdas.entries) {
            if (key[0] != 1 || key[1] % u != 0)
                continue;
            s += lv / Rational(BigInt(totient(fac.factorize(key[1]))));
        }
        out.exact = s * mobius(fu) * totient2(fu);
    }

    // collapsed: sum over eta keys (w1, u) of eta(w1, u)/phi(w1)
    Rational collapsed(0), collapsed_abs(0);
    for (const auto& [key, ev] : eta.entries) {
        if (key[1] != u)
            continue;
        Rational t = ev / Rational(BigInt(totient(fac.factorize(key[0]))));
        collapsed += t;
        collapsed_abs += abs(t);
    }
    out.collapsed = collapsed;

    // rigorous defect bound:
    //   exact = factor * (collapsed + tail),  factor = u gamma(u)/phi(u)^2,
    //   tail  = sum over keys (w1, u*v), v > 1, of mu(v) eta/(phi(w1) phi(v)^2)
    // so |exact - collapsed| <= |factor - 1| |collapsed| + factor * sum |tail terms|
    const std::int64_t phi_u = totient(fu);
    Rational factor = Rational(BigInt(u) * BigInt(totient2(fu)), BigInt(phi_u) * BigInt(phi_u));
    factor.canonicalize();

    Rational tail_abs(0);
    for (const auto& [key, ev] : eta.entries) {
        if (key[1] == u || key[1] % u != 0)
            continue;
        const std::int64_t v = key[1] / u;
        const std::int64_t phi_v = totient(fac.factorize(v));
        Rational t = abs(ev) / Rational(BigInt(totient(fac.factorize(key[0]))) * BigInt(phi_v) *
                                        BigInt(phi_v));
        tail_abs += t;
    }
    out.defect = abs(out.exact - out.collapsed);
    out.defect_bound = abs(factor - 1) * abs(collapsed) + factor * tail_abs;
    return out;
}

Rational weight_maynard(std::int64_t n, const LambdaTable& lambdas, const WeightSpec& spec,
                        const Factorizer& fac)
{
    (void)fac;
    if (spec.presift) {
        const std::int64_t Z = spec.presift->Z;
        std::int64_t r = (n - spec.presift->c0) % Z;
        if (r < 0)
            r += Z;
        if (r != 0)
            throw std::domain_error("weight_maynard: n is not in the presifted class c0 mod Z");
    }
    Rational s(0);
    for (const auto& [key, lv] : lambdas.entries) {
        bool divides = true;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if ((n + spec.tuple.h[i]) % key[i] != 0) {
                divides = false;
                break;
            }
        }
        if (divides)
            s += lv;
    }
    return s * s;
}

LambdaTable build_lambda_table(const WeightSpec& spec, const Factorizer& fac)
{
    spec.validate();
    if (spec.kind == WeightKind::Maynard)
        return lambda_from_eta(eta_from_F(spec, fac), fac);

    LambdaTable lam;
    lam.k = 1;
    lam.D = spec.D;
    lam.Z = 1;
    for (std::int64_t d = 1; d < spec.D; ++d) {
        Rational v;
        switch (spec.kind) {
        case WeightKind::SelbergTwin:
            v = lambda_selberg_quasi(d, spec.D, fac);
            break;
        case WeightKind::Gpy:
            v = lambda_gpy_taper(d, spec.D, spec.tuple.k(), spec.ell, fac);
            break;
        case WeightKind::SmoothedMp:
            v = smooth_divisor_filter(d, spec.D, spec.omega, fac)
                    ? lambda_gpy_taper(d, spec.D, spec.tuple.k(), spec.ell, fac)
                    : Rational(0);
            break;
        default:
            break;
        }
        if (v != 0)
            lam.entries.emplace(std::vector<std::int64_t>{d}, std::move(v));
    }
    return lam;
}

} // namespace pgl
