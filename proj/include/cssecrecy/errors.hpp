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

#ifndef CSSECRECY_ERRORS_HPP_
#define CSSECRECY_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cssecrecy {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes do not line up (matrix/vector/key dimensions).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input: bad probabilities, unparsable files, missing fields.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An iterative solver did not terminate within its iteration cap.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Decryption could not reproduce the ciphertext from a sparse vector.
class RecoveryError : public Error {
 public:
  RecoveryError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace cssecrecy

#endif  // CSSECRECY_ERRORS_HPP_
