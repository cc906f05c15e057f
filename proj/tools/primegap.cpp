// primegap: command-line front end for the sieve laboratory.
//
// Subcommands: tuples | weights | sums | equidist | mk | verify-appendix.
// Global: --config <file>, --out <dir>, --threads <n>, --format json|csv.
// Exit codes: 0 success, 1 validation failure, 2 identity/verification
// failure, 3 I/O failure.

#include <CLI11.hpp>
#include <json.hpp>

#include "pgl/appendix.hpp"
#include "pgl/arith.hpp"
#include "pgl/config.hpp"
#include "pgl/equidist.hpp"
#include "pgl/report.hpp"
#include "pgl/sums.hpp"
#include "pgl/tuples.hpp"
#include "pgl/variational.hpp"
#include "pgl/weights.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace pgl;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIdentity = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// report sink: files under out_dir, or stdout when no out_dir was given
void emit(const RunConfig& cfg, const std::string& stem, const Json* json,
          const std::string* csv)
{
    if (cfg.out_dir.empty()) {
        if (cfg.format == "csv" && csv) {
            std::istringstream echo(cfg.serialize());
            std::string line;
            while (std::getline(echo, line))
                std::cout << "# " << line << "\n";
            std::cout << *csv;
        } else if (json) {
            std::cout << json->dump();
        } else if (csv) {
            std::cout << *csv;
        }
        return;
    }
    const std::string base = cfg.out_dir + "/" + stem;
    if (json)
        write_file(base + ".json", json->dump());
    if (csv) {
        std::istringstream echo(cfg.serialize());
        std::string line, head;
        while (std::getline(echo, line))
            head += "# " + line + "\n";
        write_file(base + ".csv", head + *csv);
    }
}

Tuple tuple_from_json_text(const std::string& text)
{
    auto parsed = nlohmann::json::parse(text);
    if (!parsed.is_array() || parsed.empty())
        throw std::runtime_error("tuple file must hold a nonempty JSON array");
    std::vector<std::int64_t> h;
    for (const auto& v : parsed) {
        if (!v.is_number_integer())
            throw std::runtime_error("tuple entries must be integers");
        h.push_back(v.get<std::int64_t>());
    }
    return Tuple(std::move(h));
}

// prime table big enough for the first k primes above k
PrimeTable table_for_tuples(int k, int threads)
{
    std::uint64_t limit = std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(k) * 32);
    for (;;) {
        PrimeTable t = PrimeTable::load_or_build(limit, threads);
        std::size_t above = 0;
        for (std::uint64_t p : t.primes())
            if (p > static_cast<std::uint64_t>(k))
                ++above;
        if (above >= static_cast<std::size_t>(k))
            return t;
        limit *= 2;
    }
}

Tuple resolve_tuple(const RunConfig& cfg, int threads)
{
    if (!cfg.tuple.empty())
        return Tuple(cfg.tuple);
    if (!cfg.tuple_file.empty())
        return tuple_from_json_text(read_file(cfg.tuple_file));
    if (cfg.k >= 1) {
        PrimeTable t = table_for_tuples(cfg.k, threads);
        if (cfg.window > 0)
            return greedy_tuple(cfg.k, cfg.window, t);
        return shifted_primes_tuple(cfg.k, t);
    }
    throw std::invalid_argument("no tuple: give --tuple, --tuple-file, or --k");
}

int run_tuples(const RunConfig& cfg)
{
    Json j = Json::object();
    j["config_echo"] = cfg.serialize();

    if (!cfg.verify_file.empty()) {
        Tuple t = tuple_from_json_text(read_file(cfg.verify_file));
        PrimeTable table = table_for_tuples(t.k(), cfg.threads);
        const bool ok = is_admissible(t, table);
        j["source"] = cfg.verify_file;
        j["k"] = t.k();
        j["diameter"] = t.diameter();
        j["admissible"] = ok;
        j["tuple"] = tuple_json(t);
        emit(cfg, "tuples", &j, nullptr);
        return ok ? kExitOk : kExitIdentity;
    }

    Tuple t = resolve_tuple(cfg, cfg.threads);
    PrimeTable table = table_for_tuples(t.k(), cfg.threads);
    j["source"] = cfg.window > 0 ? "greedy" : (cfg.tuple.empty() ? "shifted-primes" : "inline");
    j["k"] = t.k();
    j["diameter"] = t.diameter();
    j["admissible"] = is_admissible(t, table);
    j["tuple"] = tuple_json(t);
    emit(cfg, "tuples", &j, nullptr);
    return kExitOk;
}

WeightSpec spec_from_config(const RunConfig& cfg, const Factorizer& fac)
{
    WeightSpec spec;
    spec.kind = weight_kind_from_name(cfg.kind.empty() ? "selberg-twin" : cfg.kind);
    if (spec.kind == WeightKind::SelbergTwin && cfg.tuple.empty() && cfg.k == 0)
        spec.tuple = Tuple({0, 2}); // the twin weight has its tuple built in
    else
        spec.tuple = resolve_tuple(cfg, cfg.threads);
    spec.D = cfg.D >= 2 ? cfg.D : 2;
    spec.ell = cfg.ell;
    spec.omega = cfg.omega > 0 ? cfg.omega : 0.5;
    if (spec.kind == WeightKind::Maynard) {
        spec.presift = build_presift(spec.tuple, cfg.Y, fac.table());
        spec.F = SimplexPolynomial::one_minus_sum_pow(spec.tuple.k(), cfg.ell);
    }
    spec.validate();
    return spec;
}

int run_weights(const RunConfig& cfg)
{
    std::uint64_t limit =
        std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(cfg.D) + 1000);
    PrimeTable table = PrimeTable::load_or_build(limit, cfg.threads);
    Factorizer fac(table);
    WeightSpec spec = spec_from_config(cfg, fac);
    LambdaTable lam = build_lambda_table(spec, fac);

    Json j = Json::object();
    j["config_echo"] = cfg.serialize();
    j["kind"] = weight_kind_name(spec.kind);
    j["k"] = lam.k;
    j["D"] = lam.D;
    j["Z"] = lam.Z;
    j["entries"] = static_cast<std::int64_t>(lam.entries.size());
    j["lambda_max"] = lam.max_abs();
    if (spec.kind == WeightKind::SmoothedMp) {
        // reported only; stated without derivation in the source material
        j["smoothing_loss_term"] =
            std::exp(-3.0 * spec.tuple.k() * spec.omega / 8.0);
    }
    std::string csv = csv_of(lam);
    emit(cfg, "weights", &j, &csv);
    return kExitOk;
}

int run_sums(const RunConfig& cfg)
{
    RunConfig effective = cfg;
    if (!cfg.spec_file.empty()) {
        RunConfig file_cfg = parse_config("command = sums\n" + read_file(cfg.spec_file));
        file_cfg.out_dir = cfg.out_dir;
        file_cfg.format = cfg.format;
        file_cfg.threads = cfg.threads;
        file_cfg.theta = cfg.theta != 0 ? cfg.theta : file_cfg.theta;
        file_cfg.rho = cfg.rho != 0 ? cfg.rho : file_cfg.rho;
        if (cfg.x)
            file_cfg.x = cfg.x;
        if (cfg.N)
            file_cfg.N = cfg.N;
        if (cfg.range_hi > cfg.range_lo) {
            file_cfg.range_lo = cfg.range_lo;
            file_cfg.range_hi = cfg.range_hi;
        }
        effective = file_cfg;
    }

    Range range;
    if (effective.range_hi > effective.range_lo)
        range = {effective.range_lo, effective.range_hi};
    else if (effective.N > 0)
        range = {effective.N, 2 * effective.N};
    else if (effective.x > 1)
        range = {1, effective.x};
    else
        throw std::invalid_argument("sums: give --range lo hi, --x, or --N (range [N, 2N))");

    if (effective.kind == "naive") {
        std::uint64_t limit = static_cast<std::uint64_t>(range.hi) + 3;
        PrimeTable table = PrimeTable::load_or_build(limit, effective.threads);
        const std::int64_t s = naive_detector_sum(range.hi, table);
        const std::int64_t pi_x = static_cast<std::int64_t>(table.pi(
            static_cast<std::uint64_t>(range.hi)));
        Json j = Json::object();
        j["config_echo"] = effective.serialize();
        j["kind"] = "naive";
        j["x"] = range.hi;
        j["detector_sum"] = s;
        j["two_pi_minus_x"] = 2 * pi_x - range.hi;
        emit(effective, "sums", &j, nullptr);
        return kExitOk;
    }

    Tuple t = resolve_tuple(effective, effective.threads);
    std::uint64_t limit = static_cast<std::uint64_t>(range.hi + t.h.back()) + 3;
    PrimeTable table = PrimeTable::load_or_build(limit, effective.threads);
    // SPF array capped at 16M entries; beyond that factorization falls back
    // to trial division by tabled primes
    Factorizer fac(table, std::min<std::uint64_t>(limit, 1u << 24));
    WeightSpec spec = spec_from_config(effective, fac);
    LambdaTable lam = build_lambda_table(spec, fac);

    SumReport rep =
        sum_T2(range, spec, lam, fac, effective.theta, effective.rho, effective.threads);

    Json j = json_of(rep);
    j["config_echo"] = effective.serialize();
    if (spec.kind == WeightKind::Maynard) {
        Rational oracle = expansion_oracle_T1(range, lam, spec);
        j["t1_oracle"] = oracle;
        j["t1_matches_oracle"] = rep.t1_exact == oracle;
        AsymptoticTargets targets = asymptotic_targets(spec, effective.theta, effective.rho);
        j["I"] = targets.I;
        j["J_sum"] = targets.J_sum;
        j["t1_scaling_target"] = targets.t1_target;
        j["t2_scaling_target"] = targets.t2_target;
        j["multiplier"] = targets.multiplier;
    }
    std::string csv = csv_of_partials(rep);
    emit(effective, "sums", &j, &csv);
    return kExitOk;
}

int run_equidist(const RunConfig& cfg)
{
    if (cfg.x < 3)
        throw std::invalid_argument("equidist: --x required (>= 3)");
    std::uint64_t limit = static_cast<std::uint64_t>(cfg.x) + 3;
    PrimeTable table = PrimeTable::load_or_build(limit, cfg.threads);
    Factorizer fac(table);

    EquidistReport rep;
    if (cfg.omega > 0) {
        Tuple t = resolve_tuple(cfg, cfg.threads);
        double theta = cfg.theta > 0 ? cfg.theta : 0.3;
        rep = smooth_moduli_scan(cfg.x, theta, cfg.omega, t, fac, cfg.threads);
    } else {
        std::int64_t Q = cfg.Q;
        if (Q < 1 && cfg.theta > 0)
            Q = std::max<std::int64_t>(
                1, static_cast<std::int64_t>(std::pow(static_cast<double>(cfg.x), cfg.theta)));
        if (Q < 1)
            throw std::invalid_argument("equidist: give --Q or --theta");
        rep = error_sum_El(cfg.x, Q, cfg.l, fac, cfg.threads);
    }

    Json j = json_of(rep);
    j["config_echo"] = cfg.serialize();
    if (cfg.l == 3 && cfg.omega == 0)
        j["cauchy_reduction_ratio"] = cauchy_ratio(cfg.x, rep.Q, fac, cfg.threads);
    std::string csv = csv_of(rep);
    emit(cfg, "equidist", &j, &csv);
    return kExitOk;
}

int run_mk(const RunConfig& cfg)
{
    const int k = cfg.k >= 1 ? cfg.k : 105;
    const int degree = cfg.degree >= 0 && cfg.degree != 0 ? cfg.degree : 11;
    MkCertificate cert = mk_lower_bound(k, degree, cfg.threads);

    Json j = json_of(cert);
    j["config_echo"] = cfg.serialize();
    if (k >= 3)
        j["elementary_logk_curve"] = logk_bound(k);
    if (cfg.theta > 0) {
        auto [m, rho] = primes_count_threshold(cfg.theta, cert.bound);
        j["m"] = m;
        j["rho"] = rho;
    }
    emit(cfg, "mk", &j, nullptr);
    return kExitOk;
}

int run_verify_appendix(const RunConfig& cfg)
{
    const std::int64_t D = cfg.D >= 1 ? cfg.D : 30;
    if (D > 200)
        throw std::invalid_argument("verify-appendix: D must be <= 200");
    Tuple t = cfg.tuple.empty() ? Tuple({0, 2}) : Tuple(cfg.tuple);
    std::uint64_t limit = std::max<std::uint64_t>(2048, static_cast<std::uint64_t>(D) * 4);
    PrimeTable table = PrimeTable::load_or_build(limit, cfg.threads);
    Factorizer fac(table);

    AppendixReport rep = verify_appendix(t, D, cfg.Y, fac);
    std::cout << render_text(rep);

    Json j = Json::object();
    j["config_echo"] = cfg.serialize();
    j["D"] = rep.D;
    j["Y"] = rep.Y;
    j["Z"] = rep.Z;
    j["c0"] = rep.c0;
    Json ids = Json::array();
    for (const auto& id : rep.identities) {
        Json e = Json::object();
        e["name"] = id.name;
        e["pass"] = id.pass;
        e["lhs"] = id.lhs;
        e["rhs"] = id.rhs;
        ids.push_back(std::move(e));
    }
    j["identities"] = std::move(ids);
    Json defs = Json::array();
    for (const auto& d : rep.defects) {
        Json e = Json::object();
        e["name"] = d.name;
        e["defect"] = d.defect;
        e["bound"] = d.bound;
        e["shape"] = d.shape;
        e["measured_constant"] = d.measured_constant;
        defs.push_back(std::move(e));
    }
    j["defects"] = std::move(defs);
    if (!cfg.out_dir.empty())
        emit(cfg, "verify-appendix", &j, nullptr);

    return rep.all_exact_pass() ? kExitOk : kExitIdentity;
}

int dispatch(const RunConfig& cfg)
{
    if (!cfg.cache_dir.empty())
        setenv("PRIMEGAP_CACHE", cfg.cache_dir.c_str(), 1);
    if (cfg.command == "tuples")
        return run_tuples(cfg);
    if (cfg.command == "weights")
        return run_weights(cfg);
    if (cfg.command == "sums")
        return run_sums(cfg);
    if (cfg.command == "equidist")
        return run_equidist(cfg);
    if (cfg.command == "mk")
        return run_mk(cfg);
    if (cfg.command == "verify-appendix")
        return run_verify_appendix(cfg);
    throw std::invalid_argument("unknown command: " + cfg.command);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"sieve laboratory for bounded gaps between primes"};
    app.require_subcommand(0, 1);
    app.fallthrough(); // global flags may follow the subcommand

    RunConfig cfg;
    std::string config_file;
    app.add_option("--config", config_file, "run configuration file (key = value lines)");
    app.add_option("--out", cfg.out_dir, "output directory (default: stdout)");
    app.add_option("--threads", cfg.threads, "worker cap (default: hardware)");
    app.add_option("--format", cfg.format, "json|csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* tuples = app.add_subcommand("tuples", "build or verify admissible tuples");
    tuples->add_option("--k", cfg.k, "tuple size");
    tuples->add_option("--window", cfg.window, "greedy sieve window");
    tuples->add_option("--verify", cfg.verify_file, "JSON tuple file to verify");
    tuples->add_option("--tuple", cfg.tuple, "inline offsets");

    auto* weights = app.add_subcommand("weights", "dump sieve weight tables");
    weights->add_option("--kind", cfg.kind, "selberg-twin|gpy|smoothed-mp|maynard");
    weights->add_option("--k", cfg.k, "tuple size");
    weights->add_option("--ell", cfg.ell, "taper exponent");
    weights->add_option("--D", cfg.D, "support bound");
    weights->add_option("--omega", cfg.omega, "smoothness exponent");
    weights->add_option("--tuple", cfg.tuple, "inline offsets");
    weights->add_option("--Y", cfg.Y, "presift threshold");

    auto* sums = app.add_subcommand("sums", "weighted detector sums over a range");
    std::vector<std::int64_t> range_pair;
    sums->add_option("--range", range_pair, "explicit range lo hi (half-open)")
        ->expected(2);
    sums->add_option("--x", cfg.x, "range [1, x)");
    sums->add_option("--N", cfg.N, "range [N, 2N)");
    sums->add_option("--spec-file", cfg.spec_file, "weight spec fragment file");
    sums->add_option("--kind", cfg.kind, "weight kind or 'naive'");
    sums->add_option("--k", cfg.k, "tuple size");
    sums->add_option("--ell", cfg.ell, "taper exponent");
    sums->add_option("--D", cfg.D, "support bound");
    sums->add_option("--omega", cfg.omega, "smoothness exponent");
    sums->add_option("--tuple", cfg.tuple, "inline offsets");
    sums->add_option("--Y", cfg.Y, "presift threshold");
    sums->add_option("--rho", cfg.rho, "detector offset");
    sums->add_option("--theta", cfg.theta, "distribution level for predictions");

    auto* equidist = app.add_subcommand("equidist", "progression error sums");
    equidist->add_option("--x", cfg.x, "prime range bound");
    equidist->add_option("--Q", cfg.Q, "modulus bound");
    equidist->add_option("--theta", cfg.theta, "modulus bound exponent");
    equidist->add_option("--l", cfg.l, "tau_l weight order");
    equidist->add_option("--omega", cfg.omega, "smooth-moduli scan exponent");
    equidist->add_option("--tuple", cfg.tuple, "inline offsets (smooth scan)");
    equidist->add_option("--k", cfg.k, "tuple size (smooth scan)");

    auto* mk = app.add_subcommand("mk", "certified variational lower bounds");
    mk->add_option("--k", cfg.k, "dimension (default 105)");
    mk->add_option("--degree", cfg.degree, "basis degree cap (default 11)");
    mk->add_option("--theta", cfg.theta, "level for the primes-in-tuple threshold");

    auto* verify = app.add_subcommand("verify-appendix", "exact identity suite, k=2 pipeline");
    verify->add_option("--D", cfg.D, "support bound (<= 200, default 30)");
    verify->add_option("--Y", cfg.Y, "presift threshold (default 3)");
    verify->add_option("--tuple", cfg.tuple, "inline offsets (default {0,2})");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_file.empty()) {
            RunConfig file_cfg = parse_config(read_file(config_file));
            if (cfg.out_dir.size())
                file_cfg.out_dir = cfg.out_dir;
            if (cfg.threads)
                file_cfg.threads = cfg.threads;
            if (cfg.format != "json")
                file_cfg.format = cfg.format;
            return dispatch(file_cfg);
        }
        if (range_pair.size() == 2) {
            cfg.range_lo = range_pair[0];
            cfg.range_hi = range_pair[1];
        }
        for (auto* sub : {tuples, weights, sums, equidist, mk, verify})
            if (sub->parsed())
                cfg.command = sub->get_name();
        if (cfg.command.empty()) {
            std::cerr << "error: no subcommand and no --config\n" << app.help();
            return kExitValidation;
        }
        if (auto errors = validate_config(cfg); !errors.empty())
            throw ConfigError(std::move(errors));
        return dispatch(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
}
