#include "pgl/prime_table.hpp"

#include "pgl/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace pgl {

namespace {

constexpr char kMagic[4] = {'P', 'G', 'L', '1'};

std::uint32_t crc32(const unsigned char* data, std::size_t len)
{
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int b = 0; b < 8; ++b)
                c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i)
        crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

// number of odd integers below limit = bits in the table
std::uint64_t odd_count(std::uint64_t limit) { return limit / 2; }

} // namespace

PrimeTable::PrimeTable(std::uint64_t limit, int threads)
{
    if (limit < 2)
        throw std::invalid_argument("PrimeTable: limit must be at least 2");
    limit_ = limit;
    const std::uint64_t n_bits = odd_count(limit);
    bits_.assign((n_bits + 63) / 64, ~0ull);
    // clear bit 0 (the integer 1) and trailing bits past limit
    if (!bits_.empty()) {
        bits_[0] &= ~1ull;
        if (std::uint64_t tail = n_bits % 64)
            bits_.back() &= (1ull << tail) - 1;
    }

    // base primes up to sqrt(limit), simple odd sieve
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
    while ((root + 1) * (root + 1) <= limit)
        ++root;
    std::vector<std::uint64_t> base;
    if (root >= 3) {
        std::vector<char> small((root + 1) / 2, 1); // small[i] <-> 2i+1
        small[0] = 0;
        for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= root; ++i)
            if (small[i]) {
                std::uint64_t p = 2 * i + 1;
                for (std::uint64_t j = (p * p) / 2; j < small.size(); j += p)
                    small[j] = 0;
            }
        for (std::uint64_t i = 1; i < small.size(); ++i)
            if (small[i])
                base.push_back(2 * i + 1);
    }

    // segmented marking over the odds bitset; segments are word-aligned so
    // workers write disjoint words
    const std::int64_t n_segments =
        static_cast<std::int64_t>((n_bits + kSegmentOdds - 1) / kSegmentOdds);
    parallel_chunks(n_segments, 1, threads, [&](std::size_t, std::int64_t seg, std::int64_t) {
        const std::uint64_t lo_bit = static_cast<std::uint64_t>(seg) * kSegmentOdds;
        const std::uint64_t hi_bit = std::min(n_bits, lo_bit + kSegmentOdds);
        const std::uint64_t lo_val = 2 * lo_bit + 1; // first odd in segment
        for (std::uint64_t p : base) {
            std::uint64_t start = p * p;
            if (start >= limit)
                break;
            if (start < lo_val) {
                std::uint64_t q = (lo_val + p - 1) / p;
                if (q % 2 == 0)
                    ++q; // odd multiples only
                start = q * p;
            }
            for (std::uint64_t m = start; ; m += 2 * p) {
                std::uint64_t bit = m / 2;
                if (bit >= hi_bit)
                    break;
                bits_[bit / 64] &= ~(1ull << (bit % 64));
            }
        }
    });

    collect_primes();
}

void PrimeTable::collect_primes()
{
    primes_.clear();
    if (limit_ > 2)
        primes_.push_back(2);
    const std::uint64_t n_bits = odd_count(limit_);
    for (std::uint64_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            unsigned b = static_cast<unsigned>(__builtin_ctzll(word));
            word &= word - 1;
            std::uint64_t bit = w * 64 + b;
            if (bit < n_bits)
                primes_.push_back(2 * bit + 1);
        }
    }
}

bool PrimeTable::is_prime(std::uint64_t n) const
{
    if (n >= limit_)
        throw std::out_of_range("PrimeTable::is_prime: value beyond table limit");
    if (n < 2)
        return false;
    if (n == 2)
        return true;
    if (n % 2 == 0)
        return false;
    std::uint64_t bit = n / 2;
    return (bits_[bit / 64] >> (bit % 64)) & 1ull;
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const
{
    if (x > limit_)
        throw std::out_of_range("PrimeTable::pi: argument beyond table limit");
    auto it = std::lower_bound(primes_.begin(), primes_.end(), x);
    return static_cast<std::uint64_t>(it - primes_.begin());
}

void PrimeTable::save(const std::filesystem::path& file) const
{
    if (!file.parent_path().empty())
        std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write prime cache: " + file.string());

    const auto* payload = reinterpret_cast<const unsigned char*>(bits_.data());
    const std::size_t payload_len = bits_.size() * sizeof(std::uint64_t);
    const std::uint32_t crc = crc32(payload, payload_len);

    unsigned char header[16];
    std::memcpy(header, kMagic, 4);
    for (int i = 0; i < 8; ++i)
        header[4 + i] = static_cast<unsigned char>((limit_ >> (8 * i)) & 0xFF);
    for (int i = 0; i < 4; ++i)
        header[12 + i] = static_cast<unsigned char>((crc >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(header), sizeof header);
    out.write(reinterpret_cast<const char*>(payload), static_cast<std::streamsize>(payload_len));
    if (!out)
        throw std::runtime_error("short write on prime cache: " + file.string());
}

std::optional<PrimeTable> PrimeTable::load(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        return std::nullopt;
    unsigned char header[16];
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (!in || std::memcmp(header, kMagic, 4) != 0)
        return std::nullopt;
    std::uint64_t limit = 0;
    for (int i = 0; i < 8; ++i)
        limit |= static_cast<std::uint64_t>(header[4 + i]) << (8 * i);
    std::uint32_t crc_stored = 0;
    for (int i = 0; i < 4; ++i)
        crc_stored |= static_cast<std::uint32_t>(header[12 + i]) << (8 * i);
    if (limit < 2)
        return std::nullopt;

    PrimeTable t;
    t.limit_ = limit;
    t.bits_.assign((odd_count(limit) + 63) / 64, 0);
    in.read(reinterpret_cast<char*>(t.bits_.data()),
            static_cast<std::streamsize>(t.bits_.size() * sizeof(std::uint64_t)));
    if (!in)
        return std::nullopt;
    const auto* payload = reinterpret_cast<const unsigned char*>(t.bits_.data());
    if (crc32(payload, t.bits_.size() * sizeof(std::uint64_t)) != crc_stored)
        return std::nullopt;
    t.collect_primes();
    return t;
}

std::filesystem::path PrimeTable::cache_dir()
{
    if (const char* env = std::getenv("PRIMEGAP_CACHE"); env && *env)
        return std::filesystem::path(env);
    return std::filesystem::path(".cache");
}

std::filesystem::path PrimeTable::cache_file(std::uint64_t limit)
{
    return cache_dir() / ("primes-" + std::to_string(limit) + ".bin");
}

PrimeTable PrimeTable::load_or_build(std::uint64_t limit, int threads)
{
    const auto file = cache_file(limit);
    if (auto cached = load(file); cached && cached->limit() == limit)
        return std::move(*cached);
    PrimeTable t(limit, threads);
    try {
        t.save(file);
    } catch (const std::exception&) {
        // cache is an optimization; a read-only cache dir is not an error
    }
    return t;
}

std::int64_t count_twins(std::uint64_t x, const PrimeTable& table)
{
    if (x + 2 > table.limit())
        throw std::out_of_range("count_twins: need table limit >= x + 2");
    std::int64_t count = 0;
    for (std::uint64_t p : table.primes()) {
        if (p >= x)
            break;
        if (table.is_prime(p + 2))
            ++count;
    }
    return count;
}

} // namespace pgl
