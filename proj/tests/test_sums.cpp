#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pgl/arith.hpp"
#include "pgl/equidist.hpp"
#include "pgl/sums.hpp"

#include <cmath>
#include <random>

using namespace pgl;

namespace {

const PrimeTable& table()
{
    static PrimeTable t(1100000);
    return t;
}

const Factorizer& fac()
{
    static Factorizer f(table(), 1100000);
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

TEST_CASE("naive detector sum by direct enumeration")
{
    // enumeration oracle
    auto brute = [&](std::int64_t x) {
        std::int64_t s = 0;
        for (std::int64_t n = 1; n < x; ++n) {
            s += (oracle::trial_division_prime(n) ? 1 : 0) +
                 (oracle::trial_division_prime(n + 2) ? 1 : 0) - 1;
        }
        return s;
    };
    CHECK(brute(10) == -1);
    CHECK(naive_detector_sum(10, table()) == -1);
    CHECK(naive_detector_sum(3, table()) == 0);
    for (std::int64_t x : {2, 5, 17, 100, 1000})
        CHECK(naive_detector_sum(x, table()) == brute(x));

    // the trend is large and negative (never asserted numerically beyond sign)
    const std::int64_t s = naive_detector_sum(100000, table());
    MESSAGE("detector sum at 1e5: ", s, " (vs -x = -100000)");
    CHECK(s < 0);
}

TEST_CASE("T1 with trivial support counts the range")
{
    WeightSpec spec;
    spec.kind = WeightKind::SelbergTwin;
    spec.tuple = Tuple({0, 2});
    spec.D = 2; // only d = 1 contributes: W = 1
    LambdaTable lam = build_lambda_table(spec, fac());
    SumReport rep = sum_T1({1, 5000}, spec, lam, fac());
    CHECK(rep.t1 == doctest::Approx(4999.0).epsilon(1e-12));

    SumReport empty = sum_T1({10, 10}, spec, lam, fac());
    CHECK(empty.t1 == 0.0);
}

TEST_CASE("maynard T1 equals the expansion oracle exactly")
{
    // spans the stated envelope: D up to 100, ranges up to 1e5, Z in {6, 30}
    for (double Y : {3.0, 5.0}) {
        for (std::int64_t D : {10, 50, 100}) {
            WeightSpec spec = maynard_spec(D, Y);
            LambdaTable lam = lambda_from_eta(eta_from_F(spec, fac()), fac());
            for (Range r : {Range{1, 1000}, Range{5000, 10000}, Range{1, 100000}}) {
                SumReport rep = sum_T1(r, spec, lam, fac());
                Rational oracle_val = expansion_oracle_T1(r, lam, spec);
                CHECK(rep.t1_exact == oracle_val);
            }
            // the first presifted term already witnesses positivity
            const std::int64_t n0 = spec.presift->c0 == 0 ? spec.presift->Z : spec.presift->c0;
            Rational w0 = weight_maynard(n0, lam, spec, fac());
            CHECK(w0 >= 0);
            SumReport head = sum_T1({1, n0 + 1}, spec, lam, fac());
            CHECK(head.t1_exact >= w0);
        }
    }
}

TEST_CASE("expansion oracle with singleton support counts the presifted class")
{
    WeightSpec spec = maynard_spec(10);
    LambdaTable one;
    one.k = 2;
    one.D = 10;
    one.Z = 6;
    one.entries.emplace(std::vector<std::int64_t>{1, 1}, Rational(1));
    Rational c = expansion_oracle_T1({1, 601}, one, spec);
    // n = 5 (mod 6) in [1, 601): exactly 100 values
    CHECK(c == Rational(100));
}

TEST_CASE("T1 main form: worked example")
{
    LambdaTable lam;
    lam.k = 2;
    lam.D = 10;
    lam.Z = 6;
    lam.entries.emplace(std::vector<std::int64_t>{1, 1}, Rational(1));
    lam.entries.emplace(std::vector<std::int64_t>{1, 5}, make_rational(-1, 2));
    CHECK(t1_form_direct(lam, fac()) == make_rational(17, 20));
}

TEST_CASE("main forms collapse to 1 on the singleton table")
{
    LambdaTable lam;
    lam.k = 2;
    lam.D = 10;
    lam.Z = 6;
    lam.entries.emplace(std::vector<std::int64_t>{1, 1}, Rational(1));
    EtaTable eta;
    eta.k = 2;
    eta.D = 10;
    eta.Z = 6;
    eta.entries.emplace(std::vector<std::int64_t>{1, 1}, Rational(1));

    CHECK(t1_form_direct(lam, fac()) == Rational(1));
    T1EtaForm ef = t1_form_eta(eta, fac());
    CHECK(ef.full == Rational(1));
    CHECK(ef.diagonal == Rational(1));
    CHECK(t2_form_direct(lam, fac()) == Rational(1)); // phi(1) = gamma(1) = 1
    Presift ps{3.0, 6, 5};
    CHECK(t2_form_eta(eta, lam, ps, fac()) == Rational(1));
}

TEST_CASE("T1 main form: direct equals eta-expanded, diagonal bounded")
{
    for (std::int64_t D : {10, 30, 50}) {
        WeightSpec spec = maynard_spec(D);
        EtaTable eta = eta_from_F(spec, fac());
        LambdaTable lam = lambda_from_eta(eta, fac());
        const Rational direct = t1_form_direct(lam, fac());
        T1EtaForm ef = t1_form_eta(eta, fac());
        CHECK(direct == ef.full);
        CHECK(ef.defect <= ef.defect_bound);
        const double eta_max = to_double(eta.max_abs());
        const double shape = eta_max * eta_max * std::pow(std::log(double(D)), 2) / 3.0;
        MESSAGE("D=", D, " truncation defect=", to_double(ef.defect), " shape=", shape,
                " constant=", to_double(ef.defect) / shape);
    }
}

TEST_CASE("mutation is detected by the identity pair")
{
    WeightSpec spec = maynard_spec(30);
    EtaTable eta = eta_from_F(spec, fac());
    LambdaTable lam = lambda_from_eta(eta, fac());
    REQUIRE(t1_form_direct(lam, fac()) == t1_form_eta(eta, fac()).full);

    LambdaTable corrupted = lam;
    auto it = corrupted.entries.find({5, 1});
    REQUIRE(it != corrupted.entries.end());
    it->second = -it->second; // flip one sign
    CHECK(t1_form_direct(corrupted, fac()) != t1_form_eta(eta, fac()).full);
}

TEST_CASE("T2 main form: hand expansion")
{
    // lambda(1,1) = 1, lambda(1,5) = c: direct form gives 1 + 2c/4 + c^2/4;
    // the totient2 route gives (1 + c/4)^2 + 3 (c/4)^2 -- equal identically
    const Rational c = make_rational(-1, 2);
    LambdaTable lam;
    lam.k = 2;
    lam.D = 10;
    lam.Z = 6;
    lam.entries.emplace(std::vector<std::int64_t>{1, 1}, Rational(1));
    lam.entries.emplace(std::vector<std::int64_t>{1, 5}, c);
    const Rational direct = t2_form_direct(lam, fac());
    CHECK(direct == Rational(1) + c / 2 + c * c / 4);
    const Rational gamma_route = (Rational(1) + c / 4) * (Rational(1) + c / 4) +
                                 Rational(3) * (c / 4) * (c / 4);
    CHECK(direct == gamma_route);
}

TEST_CASE("T2 main form: direct equals eta1-expanded on derived tables")
{
    for (std::int64_t D : {10, 30, 100}) {
        WeightSpec spec = maynard_spec(D);
        EtaTable eta = eta_from_F(spec, fac());
        LambdaTable lam = lambda_from_eta(eta, fac());
        CHECK(t2_form_direct(lam, fac()) ==
              t2_form_eta(eta, lam, *spec.presift, fac()));
    }
}

TEST_CASE("T2 main form equality on random supports up to D = 100")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> num(-9, 9);
    for (int trial = 0; trial < 10; ++trial) {
        EtaTable eta;
        eta.k = 2;
        eta.D = 100;
        eta.Z = 6;
        for (const auto& key : support_keys(2, 100, 6, fac())) {
            int n = num(rng);
            if (n)
                eta.entries.emplace(key, make_rational(n, 4));
        }
        LambdaTable lam = lambda_from_eta(eta, fac());
        Presift ps{3.0, 6, 5};
        CHECK(t2_form_direct(lam, fac()) == t2_form_eta(eta, lam, ps, fac()));
    }
}

TEST_CASE("maynard T2 with singleton support counts primes on the class")
{
    WeightSpec spec = maynard_spec(10);
    LambdaTable one;
    one.k = 2;
    one.D = 10;
    one.Z = 6;
    one.entries.emplace(std::vector<std::int64_t>{1, 1}, Rational(1));
    Range r{1000, 9000};
    SumReport rep = sum_T2(r, spec, one, fac(), 0.5, 1.0);
    // independent count: W = 1 exactly on n = c0 (mod Z)
    std::int64_t expect = 0;
    for (std::int64_t n = r.lo; n < r.hi; ++n) {
        if ((n - spec.presift->c0) % 6 != 0)
            continue;
        expect += (oracle::trial_division_prime(n) ? 1 : 0) +
                  (oracle::trial_division_prime(n + 2) ? 1 : 0);
    }
    CHECK(rep.t2_exact == Rational(static_cast<long>(expect)));
}

TEST_CASE("T2 sums with trivial weight reduce to prime counting")
{
    WeightSpec spec;
    spec.kind = WeightKind::Gpy;
    spec.tuple = Tuple({0, 2});
    spec.D = 2;
    spec.ell = 1;
    LambdaTable lam = build_lambda_table(spec, fac());
    Range r{1, 10000};
    SumReport rep = sum_T2(r, spec, lam, fac(), 0.5, 1.0);
    const double expect = static_cast<double>(table().pi(10000) - table().pi(1)) +
                          static_cast<double>(table().pi(10002) - table().pi(3));
    CHECK(rep.t2 == doctest::Approx(expect).epsilon(1e-12));

    // k = 1, tuple {0}: T2 = pi over the range
    WeightSpec single;
    single.kind = WeightKind::Gpy;
    single.tuple = Tuple({0});
    single.D = 2;
    single.ell = 0;
    LambdaTable lam1 = build_lambda_table(single, fac());
    SumReport rep1 = sum_T2(r, single, lam1, fac(), 0.5, 1.0);
    CHECK(rep1.t2 == doctest::Approx(static_cast<double>(table().pi(10000))).epsilon(1e-12));
}

TEST_CASE("tapered report against its trend target (informational)")
{
    WeightSpec spec;
    spec.kind = WeightKind::Gpy;
    spec.tuple = Tuple({0, 2});
    spec.ell = 1;
    spec.D = static_cast<std::int64_t>(std::pow(1e6, 0.12));
    LambdaTable lam = build_lambda_table(spec, fac());
    SumReport rep = sum_T2({1, 1000000}, spec, lam, fac(), 0.48, 1.0);
    CHECK(rep.t1 > 0);
    CHECK(rep.predicted_ratio ==
          doctest::Approx(0.48 * 2.0 * 3.0 / (5.0 * 2.0)).epsilon(1e-12));
    MESSAGE("empirical T2/T1 = ", rep.empirical_ratio,
            " vs asymptotic target ", rep.predicted_ratio, " (slow convergence expected)");
}

TEST_CASE("scalar sums are deterministic across thread counts")
{
    WeightSpec spec;
    spec.kind = WeightKind::SelbergTwin;
    spec.tuple = Tuple({0, 2});
    spec.D = 50;
    LambdaTable lam = build_lambda_table(spec, fac());
    SumReport a = sum_T2({1, 200000}, spec, lam, fac(), 0.5, 1.0, 1);
    SumReport b = sum_T2({1, 200000}, spec, lam, fac(), 0.5, 1.0, 8);
    CHECK(a.t1 == b.t1); // bitwise: fixed chunking and reduction order
    CHECK(a.t2 == b.t2);
}

TEST_CASE("scaling targets for the k=2 display")
{
    WeightSpec spec = maynard_spec(25);
    AsymptoticTargets t = asymptotic_targets(spec, 0.5, 1.0);
    // F = 1 - xi1 - xi2 over the simplex: I = 1/12, J1 = 1/20, sum J = 1/10
    CHECK(t.I == make_rational(1, 12));
    CHECK(t.J1 == make_rational(1, 20));
    CHECK(t.J_sum == make_rational(1, 10));
    // ratio matches the closed form at k = 2, ell = 1
    CHECK(t.J_sum / t.I == make_rational(6, 5));
    // multiplier (1/2)/2 * (1/10) - 1 * (1/12) = 1/40 - 1/12 < 0
    CHECK(t.multiplier == make_rational(1, 40) - make_rational(1, 12));
    CHECK(t.multiplier < 0);

    // constant F: simplex integrals, volume 1/2 and J1 = 1/3
    WeightSpec c = maynard_spec(25, 3.0, 0);
    AsymptoticTargets tc = asymptotic_targets(c, 0.5, 1.0);
    CHECK(tc.I == make_rational(1, 2));
    CHECK(tc.J1 == make_rational(1, 3));
    const double logD = std::log(25.0);
    CHECK(tc.t1_target ==
          doctest::Approx(logD * logD * (1.0 / 9.0) * 0.5).epsilon(1e-12)); // phi(6)/6 = 1/3
}

TEST_CASE("cauchy reduction ratio is finite and reported")
{
    const double ratio = cauchy_ratio(1000000, 50, fac());
    CHECK(std::isfinite(ratio));
    CHECK(ratio > 0.0);
    MESSAGE("measured E3^2/(x (log Q)^9 E1) at x=1e6, Q=50: ", ratio);
}
