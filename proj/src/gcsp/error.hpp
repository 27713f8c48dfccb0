// Copyright 2026 The gcsp Authors
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

#ifndef GCSP_ERROR_HPP_
#define GCSP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace gcsp {

// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorKind {
  kInput = 2,     // malformed or inconsistent input
  kCapacity = 3,  // problem exceeds a configured size cap
  kNumerical = 4  // numerical breakdown (factorization, drift)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error InputError(const std::string& what) {
  return Error(ErrorKind::kInput, what);
}
inline Error CapacityError(const std::string& what) {
  return Error(ErrorKind::kCapacity, what);
}
inline Error NumericalError(const std::string& what) {
  return Error(ErrorKind::kNumerical, what);
}

}  // namespace gcsp

#endif  // GCSP_ERROR_HPP_
