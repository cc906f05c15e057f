#pragma once

#include "pgl/equidist.hpp"
#include "pgl/rational.hpp"
#include "pgl/sums.hpp"
#include "pgl/tuples.hpp"
#include "pgl/variational.hpp"
#include "pgl/weights.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace pgl {

// Minimal ordered JSON value with deterministic serialization: object keys
// sorted, reals printed with 12 significant digits, rationals as "num/den"
// strings. Identical inputs produce byte-identical output.
class Json {
public:
    using Array = std::vector<Json>;
    using Object = std::map<std::string, Json>;

    Json() : v_(nullptr) {}
    Json(std::nullptr_t) : v_(nullptr) {}
    Json(bool b) : v_(b) {}
    Json(int i) : v_(static_cast<std::int64_t>(i)) {}
    Json(std::int64_t i) : v_(i) {}
    Json(std::uint64_t i) : v_(static_cast<std::int64_t>(i)) {}
    Json(double d) : v_(d) {}
    Json(const char* s) : v_(std::string(s)) {}
    Json(std::string s) : v_(std::move(s)) {}
    Json(const Rational& r) : v_(rational_string(r)) {}
    Json(Array a) : v_(std::move(a)) {}
    Json(Object o) : v_(std::move(o)) {}

    static Json object() { return Json(Object{}); }
    static Json array() { return Json(Array{}); }

    Json& operator[](const std::string& key) { return std::get<Object>(v_)[key]; }
    void push_back(Json j) { std::get<Array>(v_).push_back(std::move(j)); }

    std::string dump(int indent = 2) const;

private:
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> v_;
    void write(std::string& out, int indent, int depth) const;
};

// fixed formatting used everywhere: 12 significant digits
std::string format_real(double v);

// ---- report builders ---------------------------------------------------------

Json json_of(const SumReport& rep);
Json json_of(const EquidistReport& rep);
Json json_of(const MkCertificate& cert);

std::string csv_of(const EquidistReport& rep);         // q,witness_a,max_error,tau_weight
std::string csv_of_partials(const SumReport& rep);     // lo,hi,t1,t2
std::string csv_of(const LambdaTable& table);          // key,numerator,denominator

Json tuple_json(const Tuple& t); // plain JSON array of offsets

// Writes content to file, creating parent directories. Throws on I/O error.
void write_file(const std::string& path, const std::string& content);

} // namespace pgl
