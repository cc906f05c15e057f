#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pgl/prime_table.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace pgl;

TEST_CASE("small table matches trial division")
{
    PrimeTable t(10);
    CHECK(t.primes() == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(t.pi(10) == 4);
    for (std::uint64_t n = 0; n < 10; ++n)
        CHECK(t.is_prime(n) == oracle::trial_division_prime(static_cast<std::int64_t>(n)));
}

TEST_CASE("degenerate limits")
{
    PrimeTable t(2);
    CHECK(t.primes().empty());
    CHECK(t.pi(2) == 0);
    CHECK_THROWS_AS(PrimeTable(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeTable(0), std::invalid_argument);
}

TEST_CASE("pi(1e6) against the naive sieve oracle")
{
    const auto sieve = oracle::naive_sieve(1000003);
    PrimeTable t(1000000);
    CHECK(t.pi(1000000) == 78498);
    CHECK(oracle::naive_pi(1000000, sieve) == 78498);

    // spot agreement across the whole range
    for (std::int64_t x : {2, 3, 10, 100, 541, 1000, 9999, 65536, 999999})
        CHECK(t.pi(static_cast<std::uint64_t>(x)) ==
              static_cast<std::uint64_t>(oracle::naive_pi(x, sieve)));
}

TEST_CASE("is_prime agrees with trial division up to 1e6 (sampled)")
{
    PrimeTable t(1000000);
    for (std::int64_t n = 1; n < 1000000; n += 997)
        CHECK(t.is_prime(static_cast<std::uint64_t>(n)) == oracle::trial_division_prime(n));
    CHECK_THROWS_AS(t.is_prime(1000000), std::out_of_range);
}

TEST_CASE("parallel construction is identical to serial")
{
    PrimeTable serial(3000000, 1);
    PrimeTable parallel(3000000, 4);
    CHECK(serial.primes() == parallel.primes());
}

TEST_CASE("twin counting")
{
    PrimeTable t(1000200);
    CHECK(count_twins(10, t) == 2);   // (3,5), (5,7)
    CHECK(count_twins(100, t) == 8);
    CHECK(count_twins(3, t) == 0);

    const auto sieve = oracle::naive_sieve(1000200);
    CHECK(count_twins(1000000, t) == oracle::naive_twin_count(1000000, sieve));
    CHECK(count_twins(1000000, t) == 8169);

    PrimeTable small(50);
    CHECK_THROWS_AS(count_twins(49, small), std::out_of_range);
}

TEST_CASE("cache round trip, corruption, and env override")
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "pgl-cache-test";
    fs::remove_all(dir);
    setenv("PRIMEGAP_CACHE", dir.c_str(), 1);

    PrimeTable built = PrimeTable::load_or_build(100000);
    const fs::path file = PrimeTable::cache_file(100000);
    CHECK(fs::exists(file));

    auto loaded = PrimeTable::load(file);
    REQUIRE(loaded.has_value());
    CHECK(loaded->primes() == built.primes());

    // flip one payload byte: checksum must reject the file
    {
        std::fstream f(file, std::ios::binary | std::ios::in | std::ios::out);
        f.seekp(20);
        char c;
        f.seekg(20);
        f.get(c);
        f.seekp(20);
        f.put(static_cast<char>(c ^ 0x40));
    }
    CHECK_FALSE(PrimeTable::load(file).has_value());

    // load_or_build falls back to a rebuild and repairs the cache
    PrimeTable rebuilt = PrimeTable::load_or_build(100000);
    CHECK(rebuilt.primes() == built.primes());
    CHECK(PrimeTable::load(file).has_value());

    fs::remove_all(dir);
    unsetenv("PRIMEGAP_CACHE");
}

TEST_CASE("cache header carries magic and limit")
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "pgl-cache-hdr";
    fs::remove_all(dir);
    PrimeTable t(5000);
    t.save(dir / "primes-5000.bin");
    std::ifstream in(dir / "primes-5000.bin", std::ios::binary);
    char header[16];
    in.read(header, 16);
    CHECK(std::string(header, 4) == "PGL1");
    std::uint64_t limit = 0;
    for (int i = 0; i < 8; ++i)
        limit |= static_cast<std::uint64_t>(static_cast<unsigned char>(header[4 + i])) << (8 * i);
    CHECK(limit == 5000);
    fs::remove_all(dir);
}
