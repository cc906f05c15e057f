#include "pgl/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pgl {

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string escape(const std::string& s)
{
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void Json::write(std::string& out, int indent, int depth) const
{
    const std::string pad(static_cast<std::size_t>(indent * depth), ' ');
    const std::string pad_in(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::nullptr_t>) {
                out += "null";
            } else if constexpr (std::is_same_v<T, bool>) {
                out += v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                out += std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                out += format_real(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                out += '"' + escape(v) + '"';
            } else if constexpr (std::is_same_v<T, Array>) {
                if (v.empty()) {
                    out += "[]";
                    return;
                }
                out += "[\n";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    out += pad_in;
                    v[i].write(out, indent, depth + 1);
                    if (i + 1 < v.size())
                        out += ',';
                    out += '\n';
                }
                out += pad + "]";
            } else if constexpr (std::is_same_v<T, Object>) {
                if (v.empty()) {
                    out += "{}";
                    return;
                }
                out += "{\n";
                std::size_t i = 0;
                for (const auto& [key, val] : v) {
                    out += pad_in + '"' + escape(key) + "\": ";
                    val.write(out, indent, depth + 1);
                    if (++i < v.size())
                        out += ',';
                    out += '\n';
                }
                out += pad + "}";
            }
        },
        v_);
}

std::string Json::dump(int indent) const
{
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

Json json_of(const SumReport& rep)
{
    Json j = Json::object();
    j["kind"] = weight_kind_name(rep.kind);
    j["range_lo"] = rep.range.lo;
    j["range_hi"] = rep.range.hi;
    j["exact"] = rep.exact;
    if (rep.exact) {
        j["t1_exact"] = rep.t1_exact;
        j["t2_exact"] = rep.t2_exact;
    }
    j["t1"] = rep.t1;
    j["t2"] = rep.t2;
    j["theta"] = rep.theta;
    j["rho"] = rep.rho;
    j["empirical_ratio"] = rep.empirical_ratio;
    j["predicted_ratio"] = rep.predicted_ratio;
    j["predicted_ratio_note"] =
        "asymptotic trend target only; no error-term rate is asserted";
    return j;
}

Json json_of(const EquidistReport& rep)
{
    Json j = Json::object();
    j["x"] = rep.x;
    j["Q"] = rep.Q;
    j["l"] = rep.l;
    if (rep.omega > 0.0) {
        j["omega"] = rep.omega;
        j["note"] = "smooth-moduli root-weighted sum; hypotheses as displayed, "
                    "exact assumptions in the source text are loose";
    }
    j["E_total"] = rep.E_total;
    j["E_normalized"] = rep.x > 0 ? rep.E_total / static_cast<double>(rep.x) : 0.0;
    j["theta_equivalent"] = rep.theta_equivalent;
    Json arr = Json::array();
    for (const auto& pm : rep.per_q) {
        Json e = Json::object();
        e["q"] = pm.q;
        e["witness_a"] = pm.witness_a;
        e["max_error"] = pm.max_error;
        e["tau_weight"] = pm.tau_weight;
        arr.push_back(std::move(e));
    }
    j["per_q"] = std::move(arr);
    return j;
}

Json json_of(const MkCertificate& cert)
{
    Json j = Json::object();
    j["k"] = cert.k;
    j["degree_cap"] = cert.degree_cap;
    j["basis"] = cert.basis_description;
    j["float_eigen_estimate"] = cert.float_eigen_estimate;
    j["bound"] = cert.bound;
    j["bound_decimal"] = to_double(cert.bound);
    Json basis = Json::array();
    for (std::size_t i = 0; i < cert.basis_powers.size(); ++i) {
        Json e = Json::object();
        e["a"] = cert.basis_powers[i].first;
        e["b"] = cert.basis_powers[i].second;
        e["coefficient"] = cert.coefficients[i];
        basis.push_back(std::move(e));
    }
    j["coefficients"] = std::move(basis);
    return j;
}

std::string csv_of(const EquidistReport& rep)
{
    std::string out = "q,witness_a,max_error,tau_weight\n";
    for (const auto& pm : rep.per_q) {
        out += std::to_string(pm.q);
        out += ',';
        out += std::to_string(pm.witness_a);
        out += ',';
        out += format_real(pm.max_error);
        out += ',';
        out += std::to_string(pm.tau_weight);
        out += '\n';
    }
    return out;
}

std::string csv_of_partials(const SumReport& rep)
{
    std::string out = "lo,hi,t1,t2\n";
    for (const auto& p : rep.partials) {
        out += std::to_string(p.sub.lo);
        out += ',';
        out += std::to_string(p.sub.hi);
        out += ',';
        out += format_real(p.t1);
        out += ',';
        out += format_real(p.t2);
        out += '\n';
    }
    return out;
}

std::string csv_of(const LambdaTable& table)
{
    std::string out = "key,numerator,denominator\n";
    for (const auto& [key, v] : table.entries) {
        std::string k;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (i)
                k += ':';
            k += std::to_string(key[i]);
        }
        out += k;
        out += ',';
        out += v.get_num().get_str();
        out += ',';
        out += v.get_den().get_str();
        out += '\n';
    }
    return out;
}

Json tuple_json(const Tuple& t)
{
    Json arr = Json::array();
    for (std::int64_t h : t.h)
        arr.push_back(h);
    return arr;
}

void write_file(const std::string& path, const std::string& content)
{
    std::filesystem::path p(path);
    if (!p.parent_path().empty())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw std::runtime_error("short write: " + path);
}

} // namespace pgl
