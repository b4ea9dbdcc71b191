// Copyright 2026 The qregress Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QREGRESS_ERROR_HPP
#define QREGRESS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qregress {

/// Raised when an input breaks an operation's precondition (shape mismatch,
/// non-finite data, invalid configuration, unreadable file).
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Raised when a request would exceed a hard enumeration or memory cap.
class SizeGuardError : public ContractViolation {
 public:
  explicit SizeGuardError(const std::string& what) : ContractViolation(what) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace qregress

#endif  // QREGRESS_ERROR_HPP
