// Copyright 2026 The geophase Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace geophase {

// A caller broke a documented precondition (wrong dimension, non-Hermitian
// generator, non-unitary gate, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input that is well-formed but cannot be processed ("empty schedule",
// "misaligned schedule", "unreachable phase", ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonCyclicTrajectory : public Error {
 public:
  explicit NonCyclicTrajectory(double defect)
      : Error("non-cyclic trajectory"), defect_(defect) {}

  // 1 - |<psi(0)|psi(T)>|
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

}  // namespace geophase
