// Copyright 2026 The cs-secrecy Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSSECRECY_IO_HPP_
#define CSSECRECY_IO_HPP_

// File formats:
//   key file     {"version":1,"seed":"<decimal u64>","m":<int>,"n":<int>}
//   vector file  {"n":<int>,"entries":[<doubles>]}
//   message list [<vector file object>, ...]
//   matrix/joint CSV, one row per line
// Doubles are always written in shortest round-trip form.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "cssecrecy/codec.hpp"
#include "cssecrecy/errors.hpp"
#include "cssecrecy/keymatrix.hpp"
#include "cssecrecy/recovery.hpp"
#include "cssecrecy/ripcheck.hpp"
#include "cssecrecy/secrecy.hpp"
#include "cssecrecy/vectors.hpp"

namespace cssecrecy::io {

using Json = nlohmann::ordered_json;

// Shortest round-trip form. Negative zero keeps a fraction so JSON readers
// do not take it as the integer 0.
inline std::string format_double(double v) {
  if (v == 0.0 && std::signbit(v)) return "-0.0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

inline Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string(what) + ": invalid JSON (" + e.what() + ")");
  }
}

// --- keys -----------------------------------------------------------------

inline std::string key_to_json(const SecretKey& key) {
  Json j;
  j["version"] = key.version;
  j["seed"] = std::to_string(key.seed);
  j["m"] = key.m;
  j["n"] = key.n;
  return j.dump();
}

namespace detail {
inline std::size_t positive_int_field(const Json& j, const char* name, std::string_view what) {
  if (!j.contains(name)) {
    throw ValidationError(std::string(what) + "." + name + ": missing");
  }
  const auto& v = j.at(name);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    throw ValidationError(std::string(what) + "." + name + ": expected a positive integer");
  }
  return v.get<std::size_t>();
}
}  // namespace detail

inline SecretKey key_from_json(std::string_view text) {
  const Json j = parse_json(text, "key");
  if (!j.is_object()) throw ValidationError("key: expected a JSON object");
  SecretKey key;
  if (!j.contains("version") || !j.at("version").is_number_integer()) {
    throw ValidationError("key.version: missing or not an integer");
  }
  key.version = j.at("version").get<int>();
  if (key.version != kKeyFormatVersion) {
    throw ValidationError("key.version: unsupported version " + std::to_string(key.version));
  }
  if (!j.contains("seed") || !j.at("seed").is_string()) {
    throw ValidationError("key.seed: expected a decimal string");
  }
  const std::string seed = j.at("seed").get<std::string>();
  const auto res = std::from_chars(seed.data(), seed.data() + seed.size(), key.seed);
  if (seed.empty() || res.ec != std::errc{} || res.ptr != seed.data() + seed.size()) {
    throw ValidationError("key.seed: '" + seed + "' is not a decimal 64-bit unsigned integer");
  }
  key.m = detail::positive_int_field(j, "m", "key");
  key.n = detail::positive_int_field(j, "n", "key");
  return key;
}

// --- vectors --------------------------------------------------------------

inline std::string vector_to_json(std::span<const double> v) {
  std::string out = "{\"n\":" + std::to_string(v.size()) + ",\"entries\":[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  out += "]}";
  return out;
}

inline std::vector<double> vector_from_json(const Json& j, std::string_view what) {
  if (!j.is_object()) throw ValidationError(std::string(what) + ": expected a JSON object");
  const std::size_t n = detail::positive_int_field(j, "n", what);
  if (!j.contains("entries") || !j.at("entries").is_array()) {
    throw ValidationError(std::string(what) + ".entries: expected an array");
  }
  const auto& arr = j.at("entries");
  if (arr.size() != n) {
    throw ValidationError(std::string(what) + ".entries: length " + std::to_string(arr.size()) +
                          " does not match n=" + std::to_string(n));
  }
  std::vector<double> out;
  out.reserve(n);
  for (const auto& e : arr) {
    if (!e.is_number()) {
      throw ValidationError(std::string(what) + ".entries: non-numeric entry");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

inline std::vector<double> parse_vector_file(std::string_view text, std::string_view what) {
  return vector_from_json(parse_json(text, what), what);
}

inline std::vector<SparseMessage> messages_from_json(std::string_view text) {
  const Json j = parse_json(text, "messages");
  if (!j.is_array()) throw ValidationError("messages: expected a JSON array");
  std::vector<SparseMessage> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.emplace_back(vector_from_json(j[i], "messages[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::string messages_to_json(const std::vector<SparseMessage>& messages) {
  std::string out = "[";
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (i) out += ',';
    out += vector_to_json(messages[i].entries());
  }
  out += "]";
  return out;
}

// --- CSV ------------------------------------------------------------------

inline std::string rows_to_csv(std::size_t rows, std::size_t cols, std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) out += ',';
      out += format_double(v[i * cols + j]);
    }
    out += '\n';
  }
  return out;
}

inline std::string matrix_to_csv(const MeasurementMatrix& a) {
  return rows_to_csv(a.rows(), a.cols(), a.entries());
}

inline std::string joint_to_csv(const DiscreteJoint& joint) {
  return rows_to_csv(joint.t_x(), joint.t_y(), joint.to_dense());
}

// Parses rows of comma-separated doubles; every row must have equal length.
inline MeasurementMatrix matrix_from_csv(std::string_view text) {
  std::vector<double> entries;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::size_t count = 0;
    std::size_t cpos = 0;
    while (cpos <= line.size()) {
      std::size_t comma = line.find(',', cpos);
      if (comma == std::string_view::npos) comma = line.size();
      std::string_view field = line.substr(cpos, comma - cpos);
      while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
      while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
      double v = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw ValidationError("matrix csv line " + std::to_string(line_no) + ": bad number '" +
                              std::string(field) + "'");
      }
      entries.push_back(v);
      ++count;
      cpos = comma + 1;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw ValidationError("matrix csv line " + std::to_string(line_no) + ": expected " +
                            std::to_string(cols) + " columns, got " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw ValidationError("matrix csv is empty");
  return MeasurementMatrix::from_entries(rows, cols, std::move(entries));
}

// --- reports --------------------------------------------------------------

inline Json to_json(const RipReport& r) {
  Json j;
  j["k"] = r.k;
  j["epsilon_k"] = r.epsilon_k;
  j["satisfied"] = r.satisfied;
  j["supports_checked"] = r.supports_checked;
  j["extremal_support"] = r.extremal_support;
  j["sigma_min"] = r.sigma_min;
  j["sigma_max"] = r.sigma_max;
  return j;
}

inline Json to_json(const SparkReport& r) {
  Json j;
  j["spark"] = r.spark;
  if (r.witness.empty()) {
    j["witness"] = nullptr;
  } else {
    j["witness"] = r.witness;
  }
  j["supports_checked"] = r.supports_checked;
  return j;
}

inline Json to_json(const MiReport& r) {
  Json j;
  j["mi_bits"] = r.mi_bits;
  j["h_x_bits"] = r.h_x_bits;
  j["h_y_bits"] = r.h_y_bits;
  j["h_y_given_x_bits"] = r.h_y_given_x_bits;
  j["model"] = std::string(to_string(r.model));
  return j;
}

inline Json to_json(const RecoveryResult& r) {
  Json j;
  j["solver"] = std::string(to_string(r.solver));
  j["status"] = std::string(to_string(r.status));
  j["coefficients"] = r.coefficients;
  j["support"] = r.support;
  j["residual_l2"] = r.residual_l2;
  j["iterations"] = r.iterations;
  j["warnings"] = r.warnings;
  return j;
}

inline Json to_json(const ProjectionReport& r) {
  Json j;
  j["injective"] = r.injective;
  j["min_pairwise_distance"] =
      std::isfinite(r.min_pairwise_distance) ? Json(r.min_pairwise_distance) : Json(nullptr);
  j["colliding_pair"] = r.colliding_pair
                            ? Json::array({r.colliding_pair->first, r.colliding_pair->second})
                            : Json(nullptr);
  return j;
}

inline Json to_json(const PruneResult& r) {
  Json j;
  j["band"] = Json::array({r.lower, r.upper});
  j["survivors"] = r.survivors;
  j["eliminated"] = r.eliminated;
  return j;
}

inline Json to_json(const PremiseAudit& r) {
  Json j;
  j["consistent"] = r.consistent;
  j["epsilon_k"] = r.epsilon_k;
  j["violators"] = r.violators;
  return j;
}

inline Json to_json(const KeyEntropyCheck& r) {
  Json j;
  j["ok"] = r.ok;
  j["h_k_bits"] = r.h_k_bits;
  j["h_w_bits"] = r.h_w_bits;
  return j;
}

}  // namespace cssecrecy::io

#endif  // CSSECRECY_IO_HPP_
