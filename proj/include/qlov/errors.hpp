// Copyright 2026 The qlov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlov {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructor argument violates the type's invariants.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or command-line value.
class ParseError : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(std::size_t expected, std::size_t actual)
      : Error("arity mismatch: expected " + std::to_string(expected) +
              " coordinates, got " + std::to_string(actual)) {}
};

/// An input tuple leaves the declared domain box.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// The set function is not a capacity. `smaller` ⊆ `larger` is the first
/// covering pair found with v(smaller) > v(larger); when the violation is
/// v(∅) ≠ 0 both are the empty set.
class NotACapacity : public Error {
 public:
  NotACapacity(std::uint32_t smaller, std::uint32_t larger, std::string what)
      : Error(std::move(what)), smaller_(smaller), larger_(larger) {}

  std::uint32_t smaller() const { return smaller_; }
  std::uint32_t larger() const { return larger_; }

 private:
  std::uint32_t smaller_;
  std::uint32_t larger_;
};

/// f₀ vanishes at every vertex tuple of the relevant orthant, so no
/// normalizing coalition exists.
class NoWitnessSubset : public Error {
 public:
  using Error::Error;
};

/// A reconstruction (factorization or separable decomposition) disagrees with
/// the sampled function. Carries the worst witness.
class ReconstructionMismatch : public Error {
 public:
  ReconstructionMismatch(std::string what, std::vector<double> point,
                         double expected, double actual)
      : Error(std::move(what)),
        point_(std::move(point)),
        expected_(expected),
        actual_(actual) {}

  const std::vector<double>& point() const { return point_; }
  double expected() const { return expected_; }
  double actual() const { return actual_; }

 private:
  std::vector<double> point_;
  double expected_;
  double actual_;
};

/// Two factorizations of the same function are not related by a positive
/// scale factor.
class NotProportional : public Error {
 public:
  using Error::Error;
};

class PhiNotOdd : public Error {
 public:
  using Error::Error;
};

/// The operation is only defined for some domain kinds.
class DomainKindUnsupported : public Error {
 public:
  using Error::Error;
};

class DomainNotCentered : public DomainKindUnsupported {
 public:
  using DomainKindUnsupported::DomainKindUnsupported;
};

}  // namespace qlov
