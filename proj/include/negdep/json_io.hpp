#pragma once

// JSON interchange: {"d": 3, "probs": {"110": "1/5", ...}}. Keys list
// i_1..i_d left to right; omitted outcomes have probability zero. Values
// may be JSON numbers, decimal strings or "a/b" strings.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "negdep/outcome.hpp"
#include "negdep/pmf.hpp"
#include "negdep/scalar.hpp"

namespace negdep {

using json = nlohmann::json;

namespace detail {

template <Scalar T>
T json_scalar(const json& v) {
  if (v.is_string()) {
    const Rational q = parse_rational(v.get<std::string>());
    return scalar_cast<T>(q);
  }
  if (v.is_number_integer()) return from_int<T>(v.get<long>());
  if (v.is_number_float()) {
    if constexpr (is_exact_v<T>) {
      // Shortest round-trip decimal text, read exactly.
      return parse_rational(v.dump());
    } else {
      return v.get<double>();
    }
  }
  throw invalid_input("probability must be a number or a string");
}

}  // namespace detail

template <Scalar T>
Pmf<T> pmf_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("probs")) throw invalid_input("pmf JSON needs 'd' and 'probs'");
  if (!j["d"].is_number_integer()) throw invalid_input("'d' must be an integer");
  const int d = j["d"].get<int>();
  if (d < 1 || d > kMaxDim) throw dimension_error("'d' out of range");
  const json& probs = j["probs"];
  if (!probs.is_object()) throw invalid_input("'probs' must be an object");
  std::vector<T> v(std::size_t{1} << d, T(0));
  for (const auto& [key, val] : probs.items()) {
    const Outcome o = parse_outcome_key(key, d);
    const T x = detail::json_scalar<T>(val);
    if (x < 0) throw invalid_input("negative probability at '" + key + "'");
    v[o.bits()] = x;
  }
  return Pmf<T>(d, std::move(v));
}

template <Scalar T>
json scalar_to_json(const T& x) {
  if constexpr (is_exact_v<T>) return to_string(x);
  else return x;
}

template <Scalar T>
json pmf_to_json(const Pmf<T>& f) {
  json probs = json::object();
  for (std::uint32_t i = 0; i < f.size(); ++i)
    if (!is_zero(f[i], 0.0)) probs[outcome_key(Outcome(i), f.dim())] = scalar_to_json(f[i]);
  return json{{"d", f.dim()}, {"probs", probs}};
}

template <Scalar T>
json vector_to_json(std::span<const T> v) {
  json a = json::array();
  for (const T& x : v) a.push_back(scalar_to_json(x));
  return a;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw invalid_input("malformed JSON in '" + path + "': " + e.what());
  }
}

template <Scalar T>
Pmf<T> parse_pmf(const std::string& path) {
  return pmf_from_json<T>(read_json_file(path));
}

template <Scalar T>
void emit_pmf(const Pmf<T>& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot write '" + path + "'");
  out << pmf_to_json(f).dump(2) << '\n';
}

/// Comma-separated values such as "7/20,9/20,0.5".
inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw invalid_input("empty list");
  return out;
}

}  // namespace negdep
