// Copyright 2026 The Twirl Authors
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

namespace twirl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension or shape mismatch between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be Hermitian is not, beyond tolerance.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (negative time, eps >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid distribution specification.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace twirl
