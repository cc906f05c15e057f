#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pgl/arith.hpp"
#include "pgl/weights.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace pgl;

namespace {

const PrimeTable& table()
{
    static PrimeTable t(1 << 16);
    return t;
}

const Factorizer& fac()
{
    static Factorizer f(table());
    return f;
}

WeightSpec maynard_spec(std::int64_t D, double Y = 3.0, int ell = 1)
{
    WeightSpec spec;
    spec.kind = WeightKind::Maynard;
    spec.tuple = Tuple({0, 2});
    spec.D = D;
    spec.presift = build_presift(spec.tuple, Y, table());
    spec.F = SimplexPolynomial::one_minus_sum_pow(2, ell);
    return spec;
}

} // namespace

TEST_CASE("quasi-optimal Selberg coefficients")
{
    CHECK(lambda_selberg_quasi(1, 100, fac()) == Rational(1));
    CHECK(lambda_selberg_quasi(100, 100, fac()) == Rational(0));
    CHECK(lambda_selberg_quasi(101, 100, fac()) == Rational(0));
    CHECK(lambda_selberg_quasi(4, 100, fac()) == Rational(0)); // not squarefree
    CHECK(lambda_selberg_quasi(2, 4, fac()) == make_rational(-1, 4));
    CHECK_THROWS_AS(lambda_selberg_quasi(2, 1, fac()), std::invalid_argument);
}

TEST_CASE("selberg twin weight")
{
    for (std::int64_t n : {1, 2, 9, 10, 100})
        CHECK(weight_selberg_twin(n, 2, fac()) == doctest::Approx(1.0).epsilon(1e-12));

    // large twin primes beyond D carry weight exactly 1
    for (std::int64_t n : {101, 1031, 1049})
        CHECK(weight_selberg_twin(n, 100, fac()) == doctest::Approx(1.0).epsilon(1e-12));

    // 15 * 17 = 255: divisors below 4 are {1, 3}
    const double lam3 = -std::pow(std::log(4.0 / 3.0) / std::log(4.0), 2);
    CHECK(weight_selberg_twin(15, 4, fac()) ==
          doctest::Approx((1.0 + lam3) * (1.0 + lam3)).epsilon(1e-12));

    // nonnegativity, and weight 1 whenever n(n+2) has no divisor in (1, D)
    for (std::int64_t n = 1; n <= 2000; ++n) {
        const double w = weight_selberg_twin(n, 30, fac());
        CHECK(w >= 0.0);
        bool has_small_divisor = false;
        for (std::int64_t d = 2; d < 30 && !has_small_divisor; ++d)
            has_small_divisor = (n * (n + 2)) % d == 0;
        if (!has_small_divisor)
            CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("tapered coefficients")
{
    CHECK(lambda_gpy_taper(1, 8, 2, 1, fac()) == Rational(1));
    CHECK(lambda_gpy_taper(12, 100, 2, 1, fac()) == Rational(0));
    CHECK(lambda_gpy_taper(2, 8, 2, 1, fac()) == make_rational(-8, 27));
    CHECK_THROWS_AS(lambda_gpy_taper(2, 8, 2, 2, fac()), std::invalid_argument);
    CHECK_THROWS_AS(lambda_gpy_taper(2, 8, 2, -1, fac()), std::invalid_argument);
}

TEST_CASE("tapered weight")
{
    WeightSpec spec;
    spec.kind = WeightKind::Gpy;
    spec.tuple = Tuple({0, 2});
    spec.D = 2;
    spec.ell = 1;
    for (std::int64_t n : {1, 5, 9, 50})
        CHECK(weight_gpy(n, spec, fac()) == doctest::Approx(1.0).epsilon(1e-12));

    // P(1) = 1 * 3 = 3, divisors below 4: {1, 3}
    spec.D = 4;
    const double lam3 = -std::pow(std::log(4.0 / 3.0) / std::log(4.0), 3);
    CHECK(weight_gpy(1, spec, fac()) ==
          doctest::Approx((1.0 + lam3) * (1.0 + lam3)).epsilon(1e-12));

    // ell = 0 reduces to the plain exponent-k weight
    spec.ell = 0;
    spec.D = 30;
    const auto primes_of = [&](std::int64_t n) {
        std::vector<std::int64_t> ps;
        for (const auto& [p, e] : fac().factorize(n * (n + 2)).prime_powers)
            ps.push_back(p);
        return ps;
    };
    for (std::int64_t n : {3, 7, 13, 25}) {
        double direct = 0.0;
        // brute: all squarefree divisors of n(n+2) below D from distinct primes
        const auto ps = primes_of(n);
        for (std::size_t mask = 0; mask < (1u << ps.size()); ++mask) {
            std::int64_t d = 1;
            int bits = 0;
            for (std::size_t i = 0; i < ps.size(); ++i)
                if (mask & (1u << i)) {
                    d *= ps[i];
                    ++bits;
                }
            if (d >= spec.D)
                continue;
            const double r = std::log(30.0 / d) / std::log(30.0);
            direct += (bits % 2 ? -1 : 1) * std::pow(r, 2);
        }
        CHECK(weight_gpy(n, spec, fac()) ==
              doctest::Approx(direct * direct).epsilon(1e-12));
    }
}

TEST_CASE("smooth divisor filter")
{
    CHECK(smooth_divisor_filter(1, 100, 0.25, fac()));
    CHECK_FALSE(smooth_divisor_filter(7, 100, 0.25, fac())); // 7 > 100^0.25
    CHECK(smooth_divisor_filter(6, 100, 0.5, fac()));        // 2, 3 < 10
    CHECK_THROWS_AS(smooth_divisor_filter(6, 100, 0.0, fac()), std::invalid_argument);
    CHECK_THROWS_AS(smooth_divisor_filter(6, 100, 1.0, fac()), std::invalid_argument);
}

TEST_CASE("smoothed weight drops rough divisors")
{
    // P(1) = 3; with 10^0.4 < 3 the divisor 3 is cut, leaving only d = 1
    WeightSpec spec;
    spec.kind = WeightKind::SmoothedMp;
    spec.tuple = Tuple({0, 2});
    spec.D = 10;
    spec.ell = 1;
    spec.omega = 0.4;
    CHECK(weight_gpy(1, spec, fac()) == doctest::Approx(1.0).epsilon(1e-12));

    WeightSpec rough = spec;
    rough.kind = WeightKind::Gpy;
    const double lam3 = -std::pow(std::log(10.0 / 3.0) / std::log(10.0), 3);
    CHECK(weight_gpy(1, rough, fac()) ==
          doctest::Approx((1.0 + lam3) * (1.0 + lam3)).epsilon(1e-12));

    // with a generous cut the smoothed weight coincides with the plain one
    WeightSpec wide = spec;
    wide.omega = 0.999;
    for (std::int64_t n : {1, 5, 11, 25})
        CHECK(weight_gpy(n, wide, fac()) ==
              doctest::Approx(weight_gpy(n, rough, fac())).epsilon(1e-12));
}

TEST_CASE("support keys: squarefree, pairwise coprime, Z-coprime, product bounded")
{
    const auto keys = support_keys(2, 10, 6, fac());
    // values coprime to 6, squarefree, with pairwise product <= 10
    const std::vector<std::vector<std::int64_t>> expect = {
        {1, 1}, {1, 5}, {1, 7}, {5, 1}, {7, 1}};
    CHECK(keys == expect);

    for (const auto& key : support_keys(3, 60, 2, fac())) {
        std::int64_t prod = 1;
        for (std::size_t i = 0; i < key.size(); ++i) {
            prod *= key[i];
            CHECK(fac().factorize(key[i]).squarefree());
            CHECK(std::gcd(key[i], std::int64_t{2}) == 1);
            for (std::size_t j = i + 1; j < key.size(); ++j)
                CHECK(std::gcd(key[i], key[j]) == 1);
        }
        CHECK(prod <= 60);
    }
}

TEST_CASE("eta from F")
{
    WeightSpec spec = maynard_spec(25);
    EtaTable eta = eta_from_F(spec, fac());
    CHECK(eta.value({1, 1}) == Rational(1)); // F(0,0) = 1

    // log 5 / log 25 = 1/2 exactly: F(1/2, 1/2) = 0
    CHECK(eta.value({5, 5}) == Rational(0));

    // keys beyond the product bound are absent
    for (const auto& [key, v] : eta.entries)
        CHECK(key[0] * key[1] <= 25);

    WeightSpec bad = spec;
    bad.F = SimplexPolynomial::one_minus_sum_pow(3, 1);
    CHECK_THROWS_AS(eta_from_F(bad, fac()), std::invalid_argument);
}

TEST_CASE("lambda from eta: single-entry table")
{
    EtaTable eta;
    eta.k = 2;
    eta.D = 10;
    eta.Z = 6;
    eta.entries.emplace(std::vector<std::int64_t>{1, 1}, Rational(1));
    LambdaTable lam = lambda_from_eta(eta, fac());
    CHECK(lam.value({1, 1}) == Rational(1));
    CHECK(lam.entries.size() == 1); // every other key has an empty sum
}

TEST_CASE("lambda from eta: worked key")
{
    WeightSpec spec = maynard_spec(10);
    EtaTable eta = eta_from_F(spec, fac());
    LambdaTable lam = lambda_from_eta(eta, fac());
    // only w = (5, 1) is divisible by (5, 1) in the support:
    // lambda(5,1) = mu(5) mu(1) * 5 * eta(5,1) / phi(5)
    CHECK(lam.value({5, 1}) == Rational(-5) * eta.value({5, 1}) / 4);
}

TEST_CASE("mobius inversion round-trip on random eta tables")
{
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> num(-20, 20);
    for (int trial = 0; trial < 20; ++trial) {
        const std::int64_t D = 10 + 8 * trial % 41;
        EtaTable eta;
        eta.k = 2;
        eta.D = std::min<std::int64_t>(D, 50);
        eta.Z = 6;
        for (const auto& key : support_keys(2, eta.D, 6, fac())) {
            int n = num(rng);
            if (n != 0)
                eta.entries.emplace(key, make_rational(n, 1 + (trial % 7)));
        }
        LambdaTable lam = lambda_from_eta(eta, fac());
        EtaTable back = eta_from_lambda(lam, fac());
        CHECK(back.entries == eta.entries);
    }
}

TEST_CASE("support discipline scan at D = 200")
{
    WeightSpec spec = maynard_spec(200);
    EtaTable eta = eta_from_F(spec, fac());
    LambdaTable lam = lambda_from_eta(eta, fac());
    // every stored key valid...
    for (const auto& [key, v] : lam.entries) {
        CHECK(key[0] * key[1] <= 200);
        CHECK(fac().factorize(key[0] * key[1]).squarefree()); // squarefree + coprime
        CHECK(std::gcd(key[0] * key[1], std::int64_t{6}) == 1);
    }
    // ...and every invalid candidate evaluates to zero via lookup
    for (std::int64_t a = 1; a <= 200; ++a)
        for (std::int64_t b = 1; a * b <= 200; ++b) {
            const bool valid = fac().factorize(a).squarefree() &&
                               fac().factorize(b).squarefree() && std::gcd(a, b) == 1 &&
                               std::gcd(a * b, std::int64_t{6}) == 1;
            if (!valid)
                CHECK(lam.value({a, b}) == Rational(0));
        }
}

TEST_CASE("eta1: exact vs collapsed with rigorous bound")
{
    WeightSpec spec = maynard_spec(30);
    EtaTable eta = eta_from_F(spec, fac());
    LambdaTable lam = lambda_from_eta(eta, fac());

    // u = 1 with a single-entry eta: both routes give eta(1,1)
    {
        EtaTable single;
        single.k = 2;
        single.D = 10;
        single.Z = 6;
        single.entries.emplace(std::vector<std::int64_t>{1, 1}, make_rational(7, 3));
        LambdaTable lam1 = lambda_from_eta(single, fac());
        Eta1Value v = eta1_from_eta(1, single, lam1, *spec.presift, fac());
        CHECK(v.exact == make_rational(7, 3));
        CHECK(v.collapsed == make_rational(7, 3));
        CHECK(v.defect == Rational(0));
    }

    // the totient-square factor at u = 5 is 15/16
    {
        const std::int64_t u = 5;
        Rational factor =
            Rational(BigInt(u) * BigInt(totient2(fac().factorize(u))),
                     BigInt(totient(fac().factorize(u))) * BigInt(totient(fac().factorize(u))));
        factor.canonicalize();
        CHECK(factor == make_rational(15, 16));
    }

    // discrepancy table over all valid u at D = 30
    for (std::int64_t u = 1; u <= 30; ++u) {
        if (std::gcd<std::int64_t>(u, 6) != 1 || !fac().factorize(u).squarefree())
            continue;
        Eta1Value v = eta1_from_eta(u, eta, lam, *spec.presift, fac());
        CHECK(v.defect <= v.defect_bound);
        MESSAGE("u=", u, " exact=", rational_string(v.exact),
                " collapsed=", rational_string(v.collapsed),
                " defect=", to_double(v.defect), " bound=", to_double(v.defect_bound));
    }

    CHECK_THROWS_AS(eta1_from_eta(3, eta, lam, *spec.presift, fac()), std::domain_error);
    CHECK_THROWS_AS(eta1_from_eta(25, eta, lam, *spec.presift, fac()), std::domain_error);
}

TEST_CASE("maynard weight")
{
    WeightSpec spec = maynard_spec(10);
    EtaTable eta = eta_from_F(spec, fac());
    LambdaTable lam = lambda_from_eta(eta, fac());

    const std::int64_t c0 = spec.presift->c0;
    const std::int64_t Z = spec.presift->Z;

    CHECK_THROWS_AS(weight_maynard(c0 + 1, lam, spec, fac()), std::domain_error);

    // single-key table: W(n) = 1 on the presifted class
    {
        LambdaTable one;
        one.k = 2;
        one.D = 10;
        one.Z = 6;
        one.entries.emplace(std::vector<std::int64_t>{1, 1}, Rational(1));
        CHECK(weight_maynard(c0, one, spec, fac()) == Rational(1));
    }

    // nonnegativity plus brute-force divisor-scan agreement
    for (std::int64_t n = c0; n < c0 + 40 * Z; n += Z) {
        Rational w = weight_maynard(n, lam, spec, fac());
        CHECK(w >= 0);
        Rational s(0);
        for (const auto& [key, lv] : lam.entries)
            if ((n + 0) % key[0] == 0 && (n + 2) % key[1] == 0)
                s += lv;
        CHECK(w == s * s);
    }
}

TEST_CASE("presifted classes make the two shifts coprime")
{
    WeightSpec spec = maynard_spec(10);
    const std::int64_t c0 = spec.presift->c0;
    const std::int64_t Z = spec.presift->Z;
    for (std::int64_t n = c0; n <= 10000; n += Z)
        CHECK(std::gcd(n, n + 2) == 1);
}

TEST_CASE("scalar lambda tables for export")
{
    WeightSpec spec;
    spec.kind = WeightKind::SelbergTwin;
    spec.D = 20;
    LambdaTable lam = build_lambda_table(spec, fac());
    CHECK(lam.value({1}) == Rational(1));
    CHECK(lam.value({4}) == Rational(0));    // non-squarefree: absent
    CHECK(lam.entries.count({15}) == 1);     // squarefree below D: present
    for (const auto& [key, v] : lam.entries)
        CHECK(key[0] < 20);
}
