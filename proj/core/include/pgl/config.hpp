#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgl {

// One experiment run. Every field has a neutral default so a config
// round-trips losslessly through serialize() / parse_config().
struct RunConfig {
    std::string command; // tuples | weights | sums | equidist | mk | verify-appendix

    int k = 0;
    int ell = 0;
    std::int64_t D = 0;
    std::int64_t x = 0;
    std::int64_t N = 0;
    std::int64_t Q = 0;
    std::int64_t window = 0;
    std::int64_t range_lo = 0;
    std::int64_t range_hi = 0;
    int l = 1;
    int degree = 0;
    int threads = 0;
    double theta = 0.0;
    double omega = 0.0;
    double rho = 0.0;
    double Y = 3.0;

    std::string kind;                // weight kind for weights/sums
    std::vector<std::int64_t> tuple; // inline tuple; empty = generated
    std::string tuple_file;
    std::string verify_file;
    std::string spec_file;
    std::string out_dir;
    std::string cache_dir;
    std::string format = "json";

    bool operator==(const RunConfig&) const = default;

    std::string serialize() const; // deterministic key = value text
};

// All violations from one parse, each tagged with its 1-based line number
// (line 0 = document-level).
struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> msgs);
    std::vector<std::string> messages;
};

// Line-oriented "key = value" text: strings quoted or bare, lists projected
// in brackets, # comments. Throws ConfigError listing every violation.
RunConfig parse_config(const std::string& text);

// Re-validation of module-level constraints (0 <= ell < k, omega in (0,1),
// ...). Returns the list of violations; empty means dispatchable.
std::vector<std::string> validate_config(const RunConfig& cfg);

} // namespace pgl
