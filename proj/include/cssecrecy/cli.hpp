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

#ifndef CSSECRECY_CLI_HPP_
#define CSSECRECY_CLI_HPP_

// Command-line front end. Every subcommand is a thin adapter over one library
// call; reports are JSON carrying the tool version and resolved parameters.
//
// Exit codes: 0 success, 1 validation error, 2 solver or budget failure.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cssecrecy/codec.hpp"
#include "cssecrecy/errors.hpp"
#include "cssecrecy/io.hpp"
#include "cssecrecy/keymatrix.hpp"
#include "cssecrecy/recovery.hpp"
#include "cssecrecy/ripcheck.hpp"
#include "cssecrecy/secrecy.hpp"

namespace cssecrecy::cli {

inline constexpr const char* kToolName = "cs-secrecy";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kBudgetEnv = "CS_SECRECY_BUDGET";

enum ExitCode : int { kOk = 0, kValidation = 1, kFailure = 2 };

inline std::uint64_t enumeration_budget() {
  const char* raw = std::getenv(kBudgetEnv);
  if (raw == nullptr || *raw == '\0') return kDefaultEnumerationBudget;
  std::uint64_t v = 0;
  const std::string_view s(raw);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v == 0) {
    throw ValidationError(std::string(kBudgetEnv) + ": '" + std::string(s) +
                          "' is not a positive integer");
  }
  return v;
}

inline io::Json report(const std::string& command, io::Json params, io::Json result) {
  io::Json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["command"] = command;
  j["params"] = std::move(params);
  j["result"] = std::move(result);
  return j;
}

namespace detail {

struct Emitter {
  std::ostream& out;

  void emit(const std::string& path, const std::string& text) const {
    if (path.empty() || path == "-") {
      out << text << '\n';
    } else {
      io::write_text_file(path, text + "\n");
    }
  }
};

inline Dictionary load_dictionary(const std::string& path, std::size_t n) {
  if (path.empty()) return Dictionary::identity(n);
  const MeasurementMatrix m = io::matrix_from_csv(io::read_text_file(path));
  if (m.rows() != m.cols()) throw DimensionError("dictionary csv must be square");
  return Dictionary::from_entries(m.rows(), {m.entries().begin(), m.entries().end()});
}

// Matrix from either --key or --matrix, optionally composed with --psi.
inline MeasurementMatrix load_matrix(const std::string& key_path, const std::string& matrix_path,
                                     const std::string& psi_path, io::Json& params) {
  if (key_path.empty() == matrix_path.empty()) {
    throw ValidationError("exactly one of --key or --matrix is required");
  }
  MeasurementMatrix phi;
  if (!key_path.empty()) {
    const SecretKey key = io::key_from_json(io::read_text_file(key_path));
    params["key"] = io::Json::parse(io::key_to_json(key));
    phi = derive_matrix(key);
  } else {
    phi = io::matrix_from_csv(io::read_text_file(matrix_path));
    params["matrix"] = matrix_path;
  }
  params["psi"] = psi_path.empty() ? io::Json("identity") : io::Json(psi_path);
  return compose(phi, load_dictionary(psi_path, phi.cols()));
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compressed-sensing encryption and secrecy audits", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string output;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Output path (default: stdout)");
  };

  // keygen
  std::uint64_t seed = 0;
  std::size_t m = 0, n = 0;
  auto* keygen = app.add_subcommand("keygen", "Write a key file");
  keygen->add_option("--seed", seed)->required();
  keygen->add_option("--m", m)->required();
  keygen->add_option("--n", n)->required();
  add_output(keygen);

  // encrypt
  std::string key_path, message_path, psi_path;
  auto* enc = app.add_subcommand("encrypt", "Encrypt a message vector");
  enc->add_option("--key", key_path)->required();
  enc->add_option("--message", message_path)->required();
  enc->add_option("--psi", psi_path, "Orthonormal dictionary as CSV");
  add_output(enc);

  // decrypt
  std::string cipher_path, solver_name = "auto", report_path;
  std::size_t k = 0;
  auto* dec = app.add_subcommand("decrypt", "Recover a message from a ciphertext");
  dec->add_option("--key", key_path)->required();
  dec->add_option("--cipher", cipher_path)->required();
  dec->add_option("--k", k)->required();
  dec->add_option("--solver", solver_name)->check(CLI::IsMember({"auto", "omp", "bp", "l0"}));
  dec->add_option("--psi", psi_path);
  dec->add_option("--report", report_path, "Also write a recovery report");
  add_output(dec);

  // rip / spark
  std::string matrix_path;
  auto* rip = app.add_subcommand("rip", "Exact restricted isometry constant");
  rip->add_option("--key", key_path);
  rip->add_option("--matrix", matrix_path, "Matrix as CSV");
  rip->add_option("--psi", psi_path);
  rip->add_option("--k", k)->required();
  add_output(rip);

  auto* spk = app.add_subcommand("spark", "Exact spark");
  spk->add_option("--key", key_path);
  spk->add_option("--matrix", matrix_path);
  spk->add_option("--psi", psi_path);
  add_output(spk);

  // mi-ideal
  std::string model_name;
  std::size_t t = 0;
  bool enumerate = false;
  std::string joint_csv;
  auto* mii = app.add_subcommand("mi-ideal", "Mutual information of an idealized key model");
  mii->add_option("--model", model_name)->required()->check(CLI::IsMember({"t1", "t2"}));
  mii->add_option("--t", t)->required();
  mii->add_flag("--enumerate", enumerate, "Build the joint by running every key");
  mii->add_option("--joint-csv", joint_csv);
  add_output(mii);

  // mi-ensemble
  std::size_t key_count = 0;
  double bin_width = 0.0;
  std::string messages_path;
  seed = 1;
  auto* mie = app.add_subcommand("mi-ensemble", "Mutual information of a seeded matrix ensemble");
  mie->add_option("--seed", seed, "First seed (consecutive seeds follow)");
  mie->add_option("--keys", key_count)->required();
  mie->add_option("--m", m)->required();
  mie->add_option("--n", n)->required();
  mie->add_option("--messages", messages_path)->required();
  mie->add_option("--bin-width", bin_width)->required();
  mie->add_option("--psi", psi_path);
  mie->add_option("--joint-csv", joint_csv);
  add_output(mie);

  // prune
  double epsilon = 0.0;
  std::string candidates_path;
  auto* prn = app.add_subcommand("prune", "Norm-band candidate elimination");
  prn->add_option("--cipher", cipher_path)->required();
  prn->add_option("--epsilon", epsilon)->required();
  prn->add_option("--candidates", candidates_path)->required();
  add_output(prn);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  const detail::Emitter emitter{out};
  try {
    if (*keygen) {
      SecretKey key{seed, m, n};
      key.validate();
      emitter.emit(output, io::key_to_json(key));
    } else if (*enc) {
      const SecretKey key = io::key_from_json(io::read_text_file(key_path));
      const SparseMessage x(io::parse_vector_file(io::read_text_file(message_path), "message"));
      const Dictionary psi = detail::load_dictionary(psi_path, key.n);
      const Ciphertext y = encrypt(compose(derive_matrix(key), psi), x);
      emitter.emit(output, io::vector_to_json(y.entries()));
    } else if (*dec) {
      const SecretKey key = io::key_from_json(io::read_text_file(key_path));
      const Ciphertext y(io::parse_vector_file(io::read_text_file(cipher_path), "cipher"));
      const Dictionary psi = detail::load_dictionary(psi_path, key.n);
      RecoveryOptions opts;
      opts.budget = enumeration_budget();
      const auto solver = *parse_decrypt_solver(solver_name);
      const Decryption d = decrypt_detailed(key, psi, y, k, solver, opts);
      for (const auto& w : d.warnings) err << "warning: " << w << '\n';
      emitter.emit(output, io::vector_to_json(d.message.entries()));
      if (!report_path.empty()) {
        io::Json params;
        params["key"] = io::Json::parse(io::key_to_json(key));
        params["k"] = k;
        params["solver"] = solver_name;
        params["psi"] = psi_path.empty() ? io::Json("identity") : io::Json(psi_path);
        params["budget"] = opts.budget;
        io::write_text_file(report_path,
                            report("decrypt", params, io::to_json(d.recovery)).dump(2) + "\n");
      }
    } else if (*rip) {
      io::Json params;
      const MeasurementMatrix a = detail::load_matrix(key_path, matrix_path, psi_path, params);
      params["k"] = k;
      params["budget"] = enumeration_budget();
      const RipReport r = rip_constant(a, k, params["budget"].get<std::uint64_t>());
      emitter.emit(output, report("rip", params, io::to_json(r)).dump(2));
    } else if (*spk) {
      io::Json params;
      const MeasurementMatrix a = detail::load_matrix(key_path, matrix_path, psi_path, params);
      params["budget"] = enumeration_budget();
      const SparkReport r = spark(a, params["budget"].get<std::uint64_t>());
      emitter.emit(output, report("spark", params, io::to_json(r)).dump(2));
    } else if (*mii) {
      const bool t1 = model_name == "t1";
      const DiscreteJoint joint = t1 ? (enumerate ? ideal_t1_joint_enumerated(t) : ideal_t1_joint(t))
                                     : (enumerate ? ideal_t2_joint_enumerated(t) : ideal_t2_joint(t));
      const MiReport r = exact_mi(joint, t1 ? MiModel::kIdealT1 : MiModel::kIdealT2);
      io::Json params;
      params["model"] = model_name;
      params["t"] = t;
      params["enumerate"] = enumerate;
      io::Json result = io::to_json(r);
      if (t1) result["closed_form_bits"] = t1_closed_form(t);
      if (!t1) {
        const KeyEnsemble shifts =
            KeyEnsemble::labels(std::vector<double>(t, 1.0 / static_cast<double>(t)));
        result["key_entropy"] = io::to_json(key_entropy_check(shifts, t));
      }
      if (!joint_csv.empty()) io::write_text_file(joint_csv, io::joint_to_csv(joint));
      emitter.emit(output, report("mi-ideal", params, result).dump(2));
    } else if (*mie) {
      const auto messages = io::messages_from_json(io::read_text_file(messages_path));
      const KeyEnsemble keys = KeyEnsemble::seeded(seed, key_count, m, n);
      const Dictionary psi = detail::load_dictionary(psi_path, n);
      const EnsembleJoint ej = cs_ensemble_joint_detailed(keys, messages, psi, bin_width);
      const MiReport r = exact_mi(ej.joint, MiModel::kCsEnsemble);
      io::Json params;
      params["seed"] = std::to_string(seed);
      params["keys"] = key_count;
      params["m"] = m;
      params["n"] = n;
      params["messages"] = messages.size();
      params["bin_width"] = bin_width;
      params["psi"] = psi_path.empty() ? io::Json("identity") : io::Json(psi_path);
      io::Json result = io::to_json(r);
      result["cryptogram_cells"] = ej.cells.size();
      if (!joint_csv.empty()) io::write_text_file(joint_csv, io::joint_to_csv(ej.joint));
      emitter.emit(output, report("mi-ensemble", params, result).dump(2));
    } else if (*prn) {
      const Ciphertext y(io::parse_vector_file(io::read_text_file(cipher_path), "cipher"));
      const auto candidates = io::messages_from_json(io::read_text_file(candidates_path));
      const PruneResult r = prune_candidates(y, epsilon, candidates);
      io::Json params;
      params["cipher"] = cipher_path;
      params["epsilon"] = epsilon;
      params["candidates"] = candidates.size();
      emitter.emit(output, report("prune", params, io::to_json(r)).dump(2));
    }
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const RecoveryError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}

}  // namespace cssecrecy::cli

#endif  // CSSECRECY_CLI_HPP_
