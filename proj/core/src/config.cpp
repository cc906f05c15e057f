#include "pgl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace pgl {

namespace {

std::string trim(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string join_msgs(const std::vector<std::string>& msgs)
{
    std::string out = "configuration errors:";
    for (const auto& m : msgs) {
        out += "\n  ";
        out += m;
    }
    return out;
}

bool parse_int(const std::string& v, std::int64_t& out)
{
    const char* b = v.data();
    const char* e = v.data() + v.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool parse_real(const std::string& v, double& out)
{
    try {
        std::size_t used = 0;
        out = std::stod(v, &used);
        return used == v.size();
    } catch (...) {
        return false;
    }
}

std::string unquote(const std::string& v)
{
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
        return v.substr(1, v.size() - 2);
    return v;
}

// configs must round-trip losslessly, so serialize with full precision
// (reports use the 12-digit formatter instead)
std::string exact_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> msgs)
    : std::runtime_error(join_msgs(msgs)), messages(std::move(msgs))
{
}

std::string RunConfig::serialize() const
{
    std::ostringstream out;
    out << "D = " << D << '\n';
    out << "N = " << N << '\n';
    out << "Q = " << Q << '\n';
    out << "Y = " << exact_real(Y) << '\n';
    out << "cache_dir = \"" << cache_dir << "\"\n";
    out << "command = " << command << '\n';
    out << "degree = " << degree << '\n';
    out << "ell = " << ell << '\n';
    out << "format = " << format << '\n';
    out << "k = " << k << '\n';
    out << "kind = \"" << kind << "\"\n";
    out << "l = " << l << '\n';
    out << "omega = " << exact_real(omega) << '\n';
    out << "out_dir = \"" << out_dir << "\"\n";
    out << "range_hi = " << range_hi << '\n';
    out << "range_lo = " << range_lo << '\n';
    out << "rho = " << exact_real(rho) << '\n';
    out << "spec_file = \"" << spec_file << "\"\n";
    out << "theta = " << exact_real(theta) << '\n';
    out << "threads = " << threads << '\n';
    out << "tuple = [";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i)
            out << ", ";
        out << tuple[i];
    }
    out << "]\n";
    out << "tuple_file = \"" << tuple_file << "\"\n";
    out << "verify_file = \"" << verify_file << "\"\n";
    out << "window = " << window << '\n';
    out << "x = " << x << '\n';
    return out.str();
}

RunConfig parse_config(const std::string& text)
{
    RunConfig cfg;
    std::vector<std::string> errors;

    using Setter = std::function<bool(const std::string&)>;
    auto int_setter = [&](auto& field) {
        return Setter([&field](const std::string& v) {
            std::int64_t n;
            if (!parse_int(v, n))
                return false;
            field = static_cast<std::decay_t<decltype(field)>>(n);
            return true;
        });
    };
    auto real_setter = [&](double& field) {
        return Setter([&field](const std::string& v) { return parse_real(v, field); });
    };
    auto string_setter = [&](std::string& field) {
        return Setter([&field](const std::string& v) {
            field = unquote(v);
            return true;
        });
    };

    const std::map<std::string, Setter> setters = {
        {"command", string_setter(cfg.command)},
        {"kind", string_setter(cfg.kind)},
        {"tuple_file", string_setter(cfg.tuple_file)},
        {"verify_file", string_setter(cfg.verify_file)},
        {"spec_file", string_setter(cfg.spec_file)},
        {"out_dir", string_setter(cfg.out_dir)},
        {"cache_dir", string_setter(cfg.cache_dir)},
        {"format", string_setter(cfg.format)},
        {"k", int_setter(cfg.k)},
        {"ell", int_setter(cfg.ell)},
        {"D", int_setter(cfg.D)},
        {"x", int_setter(cfg.x)},
        {"N", int_setter(cfg.N)},
        {"Q", int_setter(cfg.Q)},
        {"window", int_setter(cfg.window)},
        {"range_lo", int_setter(cfg.range_lo)},
        {"range_hi", int_setter(cfg.range_hi)},
        {"l", int_setter(cfg.l)},
        {"degree", int_setter(cfg.degree)},
        {"threads", int_setter(cfg.threads)},
        {"theta", real_setter(cfg.theta)},
        {"omega", real_setter(cfg.omega)},
        {"rho", real_setter(cfg.rho)},
        {"Y", real_setter(cfg.Y)},
    };

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "tuple") {
            if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
                errors.push_back("line " + std::to_string(line_no) +
                                 ": tuple must be a bracketed list");
                continue;
            }
            cfg.tuple.clear();
            std::string body = value.substr(1, value.size() - 2);
            std::istringstream items(body);
            std::string item;
            bool ok = true;
            while (std::getline(items, item, ',')) {
                item = trim(item);
                if (item.empty())
                    continue;
                std::int64_t n;
                if (!parse_int(item, n)) {
                    ok = false;
                    break;
                }
                cfg.tuple.push_back(n);
            }
            if (!ok)
                errors.push_back("line " + std::to_string(line_no) +
                                 ": tuple entries must be integers");
            continue;
        }

        auto it = setters.find(key);
        if (it == setters.end()) {
            errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            continue;
        }
        if (!it->second(value))
            errors.push_back("line " + std::to_string(line_no) + ": bad value for '" + key +
                             "': " + value);
    }

    if (cfg.command.empty())
        errors.push_back("line 0: missing 'command'");

    for (const auto& v : validate_config(cfg))
        errors.push_back(v);

    if (!errors.empty())
        throw ConfigError(std::move(errors));
    return cfg;
}

std::vector<std::string> validate_config(const RunConfig& cfg)
{
    std::vector<std::string> errors;
    static const std::vector<std::string> commands = {"tuples", "weights",  "sums",
                                                      "equidist", "mk", "verify-appendix"};
    if (!cfg.command.empty() &&
        std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
        errors.push_back("unknown command '" + cfg.command + "'");

    if (cfg.k < 0)
        errors.push_back("k must be nonnegative");
    if (cfg.k > 0 && cfg.ell != 0 && (cfg.ell < 0 || cfg.ell >= cfg.k))
        errors.push_back("constraint violation: need 0 <= ell < k");
    if (cfg.omega != 0.0 && !(cfg.omega > 0.0 && cfg.omega < 1.0))
        errors.push_back("constraint violation: omega must lie in (0,1)");
    if (cfg.theta != 0.0 && !(cfg.theta > 0.0 && cfg.theta <= 1.0))
        errors.push_back("constraint violation: theta must lie in (0,1]");
    if (cfg.range_hi < cfg.range_lo)
        errors.push_back("range_hi must be at least range_lo");
    if (cfg.D < 0)
        errors.push_back("D must be nonnegative");
    if (cfg.Y < 0)
        errors.push_back("Y must be nonnegative");
    if (cfg.rho < 0)
        errors.push_back("rho must be nonnegative");
    if (cfg.format != "json" && cfg.format != "csv")
        errors.push_back("format must be json or csv");
    if (!cfg.tuple.empty()) {
        for (std::size_t i = 1; i < cfg.tuple.size(); ++i)
            if (cfg.tuple[i] <= cfg.tuple[i - 1]) {
                errors.push_back("tuple offsets must be strictly increasing");
                break;
            }
    }
    return errors;
}

} // namespace pgl
