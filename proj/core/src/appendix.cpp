#include "pgl/appendix.hpp"

#include "pgl/arith.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace pgl {

namespace {

AppendixReport::Identity exact_line(std::string name, const Rational& lhs, const Rational& rhs)
{
    AppendixReport::Identity id;
    id.name = std::move(name);
    id.exact = true;
    id.pass = lhs == rhs;
    id.lhs = rational_string(lhs);
    id.rhs = rational_string(rhs);
    return id;
}

} // namespace

AppendixReport verify_appendix(const Tuple& tuple, std::int64_t D, double Y,
                               const Factorizer& fac, const SimplexPolynomial* F)
{
    AppendixReport rep;
    rep.D = D;
    rep.Y = Y;

    Presift presift = build_presift(tuple, Y, fac.table());
    rep.Z = presift.Z;
    rep.c0 = presift.c0;

    WeightSpec spec;
    spec.kind = WeightKind::Maynard;
    spec.tuple = tuple;
    spec.D = D;
    spec.presift = presift;
    spec.F = F ? *F : SimplexPolynomial::one_minus_sum_pow(tuple.k(), 1);
    spec.validate();

    EtaTable eta = eta_from_F(spec, fac);
    LambdaTable lambda = lambda_from_eta(eta, fac);

    // -- support discipline: every stored key squarefree, pairwise coprime,
    //    coprime to Z, product <= D
    {
        bool ok = true;
        for (const auto& [key, v] : lambda.entries) {
            (void)v;
            std::int64_t prod = 1;
            for (std::size_t i = 0; i < key.size() && ok; ++i) {
                prod *= key[i];
                if (!fac.factorize(key[i]).squarefree() || std::gcd(key[i], presift.Z) != 1)
                    ok = false;
                for (std::size_t j = i + 1; j < key.size(); ++j)
                    if (std::gcd(key[i], key[j]) != 1)
                        ok = false;
            }
            if (prod > D)
                ok = false;
            if (!ok)
                break;
        }
        AppendixReport::Identity id;
        id.name = "support discipline (squarefree, Z-coprime, product <= D)";
        id.exact = true;
        id.pass = ok;
        id.lhs = ok ? "all keys valid" : "violating key found";
        id.rhs = "all keys valid";
        rep.identities.push_back(std::move(id));
    }

    // -- T1 main form: direct lambda expansion vs four-index eta expansion
    const Rational s0_direct = t1_form_direct(lambda, fac);
    const T1EtaForm s0_eta = t1_form_eta(eta, fac);
    rep.identities.push_back(
        exact_line("T1 main form: lambda-direct == eta-expanded", s0_direct, s0_eta.full));

    // -- Mobius inversion round-trip
    {
        EtaTable back = eta_from_lambda(lambda, fac);
        bool same = back.entries == eta.entries;
        AppendixReport::Identity id;
        id.name = "Mobius inversion round-trip (eta -> lambda -> eta)";
        id.exact = true;
        id.pass = same;
        id.lhs = same ? "recovered exactly" : "mismatch";
        id.rhs = "recovered exactly";
        rep.identities.push_back(std::move(id));
    }

    // -- T2 main form: totient form vs eta_1 form
    const Rational s1_direct = t2_form_direct(lambda, fac);
    const Rational s1_eta = t2_form_eta(eta, lambda, presift, fac);
    rep.identities.push_back(
        exact_line("T2 main form: lambda-direct == eta1-expanded", s1_direct, s1_eta));

    // -- totient ratio identity phi(d)phi(f)/phi([d,f]) = sum_{u|(d,f)} gamma(u)
    {
        bool ok = true;
        for (std::int64_t d = 1; d <= 199 && ok; d += 2) {
            Factorization fd = fac.factorize(d);
            if (!fd.squarefree())
                continue;
            for (std::int64_t f = 1; f <= 199 && ok; f += 2) {
                Factorization ff = fac.factorize(f);
                if (!ff.squarefree())
                    continue;
                const std::int64_t lcm = std::lcm(d, f);
                std::int64_t rhs = 0;
                for (std::int64_t u : fac.divisors(std::gcd(d, f)))
                    rhs += totient2(fac.factorize(u));
                if (totient(fd) * totient(ff) != totient(fac.factorize(lcm)) * rhs)
                    ok = false;
            }
        }
        AppendixReport::Identity id;
        id.name = "totient ratio identity (odd squarefree d, f < 200)";
        id.exact = true;
        id.pass = ok;
        id.lhs = ok ? "holds" : "violated";
        id.rhs = "holds";
        rep.identities.push_back(std::move(id));
    }

    const double logD = std::log(static_cast<double>(D));
    const double eta_max = to_double(eta.max_abs());

    // -- T1 diagonal truncation defect
    {
        AppendixReport::Defect d;
        d.name = "T1 eta-form diagonal truncation";
        d.defect = to_double(s0_eta.defect);
        d.bound = to_double(s0_eta.defect_bound);
        d.shape = eta_max * eta_max * logD * logD / Y;
        d.measured_constant = d.shape > 0 ? d.defect / d.shape : 0.0;
        rep.defects.push_back(d);

        AppendixReport::Identity id;
        id.name = "T1 truncation defect within computable bound";
        id.exact = true; // the bound is rigorous, so this must hold
        id.pass = s0_eta.defect <= s0_eta.defect_bound;
        id.lhs = rational_string(s0_eta.defect);
        id.rhs = "<= " + rational_string(s0_eta.defect_bound);
        rep.identities.push_back(std::move(id));
    }

    // -- eta_1 collapse defect, worst case over valid u
    {
        Rational worst_defect(0), worst_bound(0);
        bool bounded = true;
        for (std::int64_t u = 1; u <= D; ++u) {
            if (std::gcd(u, presift.Z) != 1 || !fac.factorize(u).squarefree())
                continue;
            Eta1Value e1 = eta1_from_eta(u, eta, lambda, presift, fac);
            if (e1.defect > e1.defect_bound)
                bounded = false;
            if (e1.defect > worst_defect) {
                worst_defect = e1.defect;
                worst_bound = e1.defect_bound;
            }
        }
        AppendixReport::Defect d;
        d.name = "eta1 one-line collapse (worst u)";
        d.defect = to_double(worst_defect);
        d.bound = to_double(worst_bound);
        d.shape = eta_max * logD / Y;
        d.measured_constant = d.shape > 0 ? d.defect / d.shape : 0.0;
        rep.defects.push_back(d);

        AppendixReport::Identity id;
        id.name = "eta1 collapse defects within computable bounds";
        id.exact = true;
        id.pass = bounded;
        id.lhs = bounded ? "all u bounded" : "bound violated";
        id.rhs = "all u bounded";
        rep.identities.push_back(std::move(id));
    }

    return rep;
}

std::string render_text(const AppendixReport& rep)
{
    std::ostringstream out;
    out << "appendix identity suite: D=" << rep.D << " Y=" << rep.Y << " Z=" << rep.Z
        << " c0=" << rep.c0 << "\n";
    for (const auto& id : rep.identities) {
        out << (id.pass ? "[PASS] " : "[FAIL] ") << id.name;
        if (!id.pass)
            out << "  (lhs=" << id.lhs << " rhs=" << id.rhs << ")";
        out << "\n";
    }
    for (const auto& d : rep.defects) {
        out << "[defect] " << d.name << ": defect=" << d.defect << " bound=" << d.bound
            << " shape=" << d.shape << " measured-constant=" << d.measured_constant << "\n";
    }
    return out.str();
}

} // namespace pgl
