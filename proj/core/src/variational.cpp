#include "pgl/variational.hpp"

#include "pgl/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <stdexcept>

namespace pgl {

FormPair build_forms(int k, const std::vector<SimplexPolynomial>& basis)
{
    if (k < 1)
        throw std::invalid_argument("build_forms: k must be positive");
    for (const auto& f : basis)
        if (f.dimension() != k)
            throw std::invalid_argument("build_forms: basis polynomial has wrong dimension");

    FormPair fp;
    fp.k = k;
    fp.basis = basis;
    const std::size_t n = basis.size();
    fp.A.assign(n, std::vector<Rational>(n, Rational(0)));
    fp.B.assign(n, std::vector<Rational>(n, Rational(0)));

    // inner integrals: G[m][i] = int_0^{1-...} f_i d xi_m
    std::vector<std::vector<SimplexPolynomial>> G(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m) {
        G[static_cast<std::size_t>(m)].reserve(n);
        for (const auto& f : basis)
            G[static_cast<std::size_t>(m)].push_back(f.integrate_out(m));
    }

    // upper-triangle pairs, data-parallel (each pair writes disjoint cells)
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            pairs.emplace_back(i, j);
    parallel_chunks(static_cast<std::int64_t>(pairs.size()), 8, 0,
                    [&](std::size_t, std::int64_t lo, std::int64_t hi) {
                        for (std::int64_t p = lo; p < hi; ++p) {
                            const auto [i, j] = pairs[static_cast<std::size_t>(p)];
                            fp.B[i][j] = (basis[i] * basis[j]).integral_simplex();
                            Rational a(0);
                            for (int m = 0; m < k; ++m)
                                a += (G[static_cast<std::size_t>(m)][i] *
                                      G[static_cast<std::size_t>(m)][j])
                                         .integral_simplex();
                            fp.A[i][j] = a;
                        }
                    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            fp.B[j][i] = fp.B[i][j];
            fp.A[j][i] = fp.A[i][j];
        }
    return fp;
}

namespace {

// ---- closed-form integrals for the symmetric family ------------------------
//
// With P1 = sum xi_i and P2 = sum xi_i^2 over n variables:
//   I_n(A,B) = int_simplex (1-P1)^A P2^B
//            = A!/(n+A+2B)! * sum over partitions lam of B of
//              [ n!/((n-len)! prod mult_v!) ] * [ B!/prod lam_i! ] * prod (2 lam_i)!
// from the multinomial expansion of P2^B and the Dirichlet integral
//   int (1-P1)^A prod xi^{c_i} = A! prod c_i! / (n + A + sum c_i)!.

void partitions_rec(int left, int maxpart, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out)
{
    if (left == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(left, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(left - p, p, cur, out);
        cur.pop_back();
    }
}

const std::vector<std::vector<int>>& partitions_of(int b)
{
    static std::map<int, std::vector<std::vector<int>>> cache;
    auto it = cache.find(b);
    if (it != cache.end())
        return it->second;
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    partitions_rec(b, b, cur, out);
    return cache.emplace(b, std::move(out)).first->second;
}

class SymmetricIntegrals {
public:
    explicit SymmetricIntegrals(int n) : n_(n) {}

    const Rational& I(int A, int B)
    {
        auto key = std::make_pair(A, B);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;

        BigInt sum(0);
        for (const auto& lam : partitions_of(B)) {
            const int len = static_cast<int>(lam.size());
            if (len > n_)
                continue;
            // n (n-1) ... (n-len+1) / prod(multiplicities!)
            BigInt placements(1);
            for (int i = 0; i < len; ++i)
                placements *= n_ - i;
            int run = 1;
            for (std::size_t i = 1; i <= lam.size(); ++i) {
                if (i < lam.size() && lam[i] == lam[i - 1]) {
                    ++run;
                } else {
                    placements /= factorial(static_cast<unsigned>(run));
                    run = 1;
                }
            }
            BigInt term = placements * factorial(static_cast<unsigned>(B));
            for (int v : lam)
                term = term / factorial(static_cast<unsigned>(v)) *
                       factorial(static_cast<unsigned>(2 * v));
            sum += term;
        }
        Rational r(factorial(static_cast<unsigned>(A)) * sum,
                   factorial(static_cast<unsigned>(n_ + A + 2 * B)));
        r.canonicalize();
        return cache_.emplace(key, std::move(r)).first->second;
    }

private:
    int n_;
    std::map<std::pair<int, int>, Rational> cache_;
};

// int_0^{1-s} (1-P1)^a P2^b d xi_1 as sum of coef * (1-P1')^A (P2')^B over
// the remaining variables: expand P2 = xi_1^2 + P2' and integrate the Beta
// factor exactly.
struct InnerTerm {
    Rational coef;
    int A;
    int B;
};

std::vector<InnerTerm> inner_expansion(int a, int b)
{
    std::vector<InnerTerm> out;
    out.reserve(static_cast<std::size_t>(b + 1));
    for (int m = 0; m <= b; ++m) {
        Rational c(binomial(static_cast<unsigned>(b), static_cast<unsigned>(m)) *
                       factorial(static_cast<unsigned>(a)) *
                       factorial(static_cast<unsigned>(2 * m)),
                   factorial(static_cast<unsigned>(a + 2 * m + 1)));
        c.canonicalize();
        out.push_back({c, a + 2 * m + 1, b - m});
    }
    return out;
}

std::vector<std::pair<int, int>> symmetric_powers(int cap)
{
    std::vector<std::pair<int, int>> out;
    for (int b = 0; 2 * b <= cap; ++b)
        for (int a = 0; a + 2 * b <= cap; ++a)
            out.emplace_back(a, b);
    return out;
}

} // namespace

SymmetricForms symmetric_forms(int k, int degree_cap)
{
    if (k < 1)
        throw std::invalid_argument("symmetric_forms: k must be positive");
    if (degree_cap < 0)
        throw std::invalid_argument("symmetric_forms: degree cap must be nonnegative");

    SymmetricForms sf;
    sf.k = k;
    sf.powers = symmetric_powers(degree_cap);
    const std::size_t n = sf.powers.size();
    sf.A.assign(n, std::vector<Rational>(n, Rational(0)));
    sf.B.assign(n, std::vector<Rational>(n, Rational(0)));

    SymmetricIntegrals Ik(k);
    SymmetricIntegrals Ik1(k - 1);

    std::vector<std::vector<InnerTerm>> inner;
    inner.reserve(n);
    for (auto [a, b] : sf.powers)
        inner.push_back(inner_expansion(a, b));

    for (std::size_t i = 0; i < n; ++i) {
        const auto [ai, bi] = sf.powers[i];
        for (std::size_t j = i; j < n; ++j) {
            const auto [aj, bj] = sf.powers[j];
            sf.B[i][j] = Ik.I(ai + aj, bi + bj);

            // sum over coordinates = k * J^(1) by symmetry of the basis
            // (the n = k-1 integrals degrade gracefully to the 0-variable
            // point measure when k = 1)
            Rational acc(0);
            for (const auto& ti : inner[i])
                for (const auto& tj : inner[j])
                    acc += ti.coef * tj.coef * Ik1.I(ti.A + tj.A, ti.B + tj.B);
            acc *= k;
            sf.A[i][j] = acc;
            sf.A[j][i] = sf.A[i][j];
            sf.B[j][i] = sf.B[i][j];
        }
    }
    return sf;
}

namespace {

// Exact rational symmetric elimination over the Gram matrix B. A residual
// zero pivot means the candidate lies in the span of the kept set (for a
// Gram matrix the whole residual row vanishes with the pivot), so it is
// dropped and elimination continues. Single pass, O(n^3) rational ops.
std::vector<std::size_t> prune_independent(const std::vector<std::vector<Rational>>& B)
{
    const std::size_t n = B.size();
    std::vector<std::vector<Rational>> M = B;
    std::vector<std::size_t> kept;
    for (std::size_t c = 0; c < n; ++c) {
        if (M[c][c] <= 0)
            continue; // dependent on kept columns
        kept.push_back(c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (M[i][c] == 0)
                continue;
            Rational f = M[i][c] / M[c][c];
            for (std::size_t j = c; j < n; ++j)
                M[i][j] -= f * M[c][j];
        }
    }
    return kept;
}

} // namespace

Rational certify_rayleigh(const MkCertificate& cert)
{
    SymmetricForms sf = symmetric_forms(cert.k, cert.degree_cap);
    // map certificate powers into the family's index set
    std::map<std::pair<int, int>, std::size_t> pos;
    for (std::size_t i = 0; i < sf.powers.size(); ++i)
        pos.emplace(sf.powers[i], i);

    Rational num(0), den(0);
    for (std::size_t i = 0; i < cert.basis_powers.size(); ++i) {
        if (cert.coefficients[i] == 0)
            continue;
        const std::size_t pi = pos.at(cert.basis_powers[i]);
        for (std::size_t j = 0; j < cert.basis_powers.size(); ++j) {
            if (cert.coefficients[j] == 0)
                continue;
            const std::size_t pj = pos.at(cert.basis_powers[j]);
            Rational cc = cert.coefficients[i] * cert.coefficients[j];
            num += cc * sf.A[pi][pj];
            den += cc * sf.B[pi][pj];
        }
    }
    if (den <= 0)
        throw std::domain_error("certify_rayleigh: certificate has nonpositive B-norm");
    return num / den;
}

MkCertificate mk_lower_bound(int k, int degree_cap, int /*threads*/)
{
    SymmetricForms sf = symmetric_forms(k, degree_cap);
    std::vector<std::size_t> kept = prune_independent(sf.B);
    if (kept.empty())
        throw std::domain_error("mk_lower_bound: basis degenerate");
    const std::size_t n = kept.size();

    // power-of-two prescaling keeps the double conversion well conditioned
    // and stays exact in rational arithmetic
    std::vector<long> e(n);
    std::vector<Rational> scale(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = to_double(sf.B[kept[i]][kept[i]]);
        e[i] = llround(-std::log2(d) / 2.0);
        Rational s(1);
        if (e[i] >= 0)
            mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), static_cast<unsigned long>(e[i]));
        else
            mpq_div_2exp(s.get_mpq_t(), s.get_mpq_t(), static_cast<unsigned long>(-e[i]));
        scale[i] = s;
    }

    Eigen::MatrixXd Af(n, n), Bf(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational sij = scale[i] * scale[j];
            Af(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                to_double(Rational(sij * sf.A[kept[i]][kept[j]]));
            Bf(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                to_double(Rational(sij * sf.B[kept[i]][kept[j]]));
        }

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(Af, Bf);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("mk_lower_bound: eigen solver failed");
    const Eigen::Index last = static_cast<Eigen::Index>(n) - 1;
    const double mu = solver.eigenvalues()(last);
    Eigen::VectorXd v = solver.eigenvectors().col(last);

    double vmax = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        vmax = std::max(vmax, std::fabs(v(i)));
    if (vmax > 0)
        v /= vmax;

    MkCertificate cert;
    cert.k = k;
    cert.degree_cap = degree_cap;
    cert.basis_description =
        "(1-P1)^a * P2^b, P1=sum(xi), P2=sum(xi^2), a+2b <= " + std::to_string(degree_cap);
    cert.float_eigen_estimate = mu;

    Rational num(0), den(0);
    std::vector<Rational> coeffs(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational w = rational_from_double(v(static_cast<Eigen::Index>(i)));
        coeffs[i] = w * scale[i]; // certificate lives in the unscaled basis
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (coeffs[i] == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (coeffs[j] == 0)
                continue;
            Rational cc = coeffs[i] * coeffs[j];
            num += cc * sf.A[kept[i]][kept[j]];
            den += cc * sf.B[kept[i]][kept[j]];
        }
    }
    if (den <= 0)
        throw std::runtime_error("mk_lower_bound: rounded vector degenerated");

    cert.bound = num / den;
    cert.basis_powers.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        cert.basis_powers.push_back(sf.powers[kept[i]]);
    cert.coefficients = std::move(coeffs);
    return cert;
}

Rational gpy_ratio_closed_form(int k, int ell)
{
    if (k < 1)
        throw std::invalid_argument("gpy_ratio_closed_form: k must be positive");
    if (ell < 0 || ell >= k)
        throw std::invalid_argument("gpy_ratio_closed_form: need 0 <= ell < k");
    return make_rational(2LL * k * (2 * ell + 1), static_cast<std::int64_t>(ell + 1) * (k + 2 * ell + 1));
}

std::pair<int, int> primes_count_threshold(double theta, const Rational& mk_bound)
{
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("primes_count_threshold: theta must be in (0, 1]");
    if (mk_bound <= 0)
        throw std::invalid_argument("primes_count_threshold: bound must be positive");

    // theta is a double, hence an exact dyadic rational
    Rational t = rational_from_double(theta, std::uint64_t(1) << 62);
    Rational x = t * mk_bound / 2;
    BigInt m_big;
    mpz_cdiv_q(m_big.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    long m = m_big.get_si();
    if (m < 1)
        m = 1;
    return {static_cast<int>(m), static_cast<int>(m - 1)};
}

double logk_bound(int k)
{
    if (k < 3)
        throw std::domain_error("logk_bound: defined for k >= 3");
    const double lk = std::log(static_cast<double>(k));
    return lk - 2.0 * std::log(lk) - 2.0;
}

} // namespace pgl
