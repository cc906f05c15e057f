#include "pgl/tuples.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pgl {

Tuple::Tuple(std::vector<std::int64_t> offsets) : h(std::move(offsets))
{
    if (h.empty())
        throw std::invalid_argument("Tuple: need at least one offset");
    for (std::size_t i = 1; i < h.size(); ++i)
        if (h[i] <= h[i - 1])
            throw std::invalid_argument("Tuple: offsets must be strictly increasing");
}

Tuple Tuple::shifted(std::int64_t c) const
{
    std::vector<std::int64_t> out(h);
    for (auto& v : out)
        v += c;
    return Tuple(std::move(out));
}

bool is_admissible(const Tuple& t, const PrimeTable& table)
{
    const int k = t.k();
    if (table.limit() <= static_cast<std::uint64_t>(k))
        throw std::out_of_range("is_admissible: prime table must cover primes up to k");
    for (std::uint64_t p : table.primes()) {
        if (p > static_cast<std::uint64_t>(k))
            break;
        std::set<std::int64_t> classes;
        for (std::int64_t hj : t.h) {
            std::int64_t r = hj % static_cast<std::int64_t>(p);
            if (r < 0)
                r += static_cast<std::int64_t>(p);
            classes.insert(r);
            if (classes.size() >= p)
                return false;
        }
    }
    return true;
}

Tuple shifted_primes_tuple(int k, const PrimeTable& table)
{
    if (k < 1)
        throw std::invalid_argument("shifted_primes_tuple: k must be positive");
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(k));
    for (std::uint64_t p : table.primes()) {
        if (p > static_cast<std::uint64_t>(k)) {
            out.push_back(static_cast<std::int64_t>(p));
            if (static_cast<int>(out.size()) == k)
                break;
        }
    }
    if (static_cast<int>(out.size()) < k)
        throw std::out_of_range("shifted_primes_tuple: prime table exhausted");
    const std::int64_t first = out.front();
    for (auto& v : out)
        v -= first;
    return Tuple(std::move(out));
}

namespace {

// narrowest k-consecutive span; INT64_MAX if fewer than k survivors
std::int64_t best_span(const std::vector<std::int64_t>& alive, int k)
{
    if (static_cast<int>(alive.size()) < k)
        return INT64_MAX;
    std::int64_t best = INT64_MAX;
    for (std::size_t i = 0; i + k <= alive.size(); ++i)
        best = std::min(best, alive[i + k - 1] - alive[i]);
    return best;
}

} // namespace

Tuple greedy_tuple(int k, std::int64_t window, const PrimeTable& table)
{
    if (k < 1)
        throw std::invalid_argument("greedy_tuple: k must be positive");
    if (window < k)
        throw std::invalid_argument("greedy_tuple: window must be at least k");

    std::vector<std::int64_t> alive(static_cast<std::size_t>(window));
    std::iota(alive.begin(), alive.end(), 0);

    for (std::uint64_t pu : table.primes()) {
        if (pu > static_cast<std::uint64_t>(k))
            break;
        const std::int64_t p = static_cast<std::int64_t>(pu);
        std::int64_t best_r = -1;
        std::int64_t best_d = INT64_MAX;
        std::vector<std::int64_t> scratch;
        scratch.reserve(alive.size());
        for (std::int64_t r = 0; r < p; ++r) {
            scratch.clear();
            for (std::int64_t n : alive)
                if (n % p != r)
                    scratch.push_back(n);
            std::int64_t d = best_span(scratch, k);
            if (d < best_d) {
                best_d = d;
                best_r = r;
            }
        }
        if (best_r < 0)
            throw std::out_of_range("greedy_tuple: window too small");
        std::erase_if(alive, [&](std::int64_t n) { return n % p == best_r; });
    }

    if (static_cast<int>(alive.size()) < k)
        throw std::out_of_range("greedy_tuple: window too small");
    std::size_t best_i = 0;
    std::int64_t best_d = INT64_MAX;
    for (std::size_t i = 0; i + k <= alive.size(); ++i) {
        std::int64_t d = alive[i + k - 1] - alive[i];
        if (d < best_d) {
            best_d = d;
            best_i = i;
        }
    }
    return Tuple(std::vector<std::int64_t>(alive.begin() + static_cast<std::ptrdiff_t>(best_i),
                                           alive.begin() + static_cast<std::ptrdiff_t>(best_i) + k));
}

Presift build_presift(const Tuple& t, double Y, const PrimeTable& table)
{
    Presift ps;
    ps.Y = Y;
    ps.Z = 1;
    for (std::uint64_t p : table.primes()) {
        if (static_cast<double>(p) > Y)
            break;
        ps.Z *= static_cast<std::int64_t>(p);
    }
    for (std::int64_t c = 0; c < ps.Z; ++c) {
        bool ok = true;
        for (std::int64_t hj : t.h) {
            std::int64_t v = (c + hj) % ps.Z;
            if (v < 0)
                v += ps.Z;
            if (std::gcd(v, ps.Z) != 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            ps.c0 = c;
            return ps;
        }
    }
    throw std::domain_error("build_presift: tuple is inadmissible at a prime <= Y");
}

} // namespace pgl
