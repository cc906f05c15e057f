#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pgl {

// Primality oracle over [2, limit), backed by a segmented odds-only bitset
// sieve. Immutable after construction; concurrent reads are safe.
//
// Bit j of the bitset corresponds to the odd integer 2j+1 (bit 0, the
// integer 1, is always clear). 2 is handled as a special case.
class PrimeTable {
public:
    // Sieve segment size in odd-number entries. Word-aligned so parallel
    // segment workers never touch the same bitset word.
    static constexpr std::uint64_t kSegmentOdds = 1u << 20;

    explicit PrimeTable(std::uint64_t limit, int threads = 0);

    std::uint64_t limit() const { return limit_; }

    // n prime and n < limit.
    bool is_prime(std::uint64_t n) const;

    // pi(x) = #{p prime : p < x}, valid for x <= limit.
    std::uint64_t pi(std::uint64_t x) const;

    const std::vector<std::uint64_t>& primes() const { return primes_; }

    // ---- binary cache -----------------------------------------------------
    // Layout: 16-byte header ("PGL1", little-endian u64 limit, little-endian
    // u32 CRC of the payload) followed by the odds bitset, one bit per odd
    // integer below limit.
    void save(const std::filesystem::path& file) const;
    static std::optional<PrimeTable> load(const std::filesystem::path& file);

    // Cache-aware factory: PRIMEGAP_CACHE (default ./.cache) keyed as
    // primes-<limit>.bin. Corrupt or mismatched files are rebuilt in place.
    static PrimeTable load_or_build(std::uint64_t limit, int threads = 0);

    static std::filesystem::path cache_dir();
    static std::filesystem::path cache_file(std::uint64_t limit);

private:
    PrimeTable() = default;
    void collect_primes();

    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> bits_;    // odds-only primality bitset
    std::vector<std::uint64_t> primes_;  // ascending
};

// #{n < x : n and n+2 both prime}; requires x + 2 <= table.limit().
std::int64_t count_twins(std::uint64_t x, const PrimeTable& table);

} // namespace pgl
