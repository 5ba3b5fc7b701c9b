// Copyright 2026 The socle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOCLE_ERRORS_HPP
#define SOCLE_ERRORS_HPP

#include <map>
#include <stdexcept>
#include <string>

namespace socle {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// Precondition violations on arguments (bad tolerance, value not in spectrum, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// An iterative method hit its iteration cap. The CLI maps this to exit code 3.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Riesz quadrature failed its idempotency or integrality check.
class ContourError : public Error {
 public:
  ContourError(const std::string& what, double idempotency_defect)
      : Error(what), defect_(idempotency_defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class UncertifiedRank : public Error {
 public:
  using Error::Error;
};

/// Counting votes for m(lambda, a) did not settle.
class UnstableMultiplicity : public Error {
 public:
  UnstableMultiplicity(const std::string& what, std::map<int, int> votes)
      : Error(what), votes_(std::move(votes)) {}
  const std::map<int, int>& votes() const noexcept { return votes_; }

 private:
  std::map<int, int> votes_;
};

class DiagonalizationError : public Error {
 public:
  using Error::Error;
};

/// A random generator could not produce an input satisfying its constraints.
class GeneratorExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace socle

#endif  // SOCLE_ERRORS_HPP
