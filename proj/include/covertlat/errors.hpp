// Copyright 2026 The covertlat Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covertlat {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class InvalidVertex : public Error {
   public:
    using Error::Error;
};

class KindMismatch : public Error {
   public:
    using Error::Error;
};

class UnsupportedKind : public Error {
   public:
    using Error::Error;
};

/// A caller-side contract was broken (bad sizes, incompatible sets, ...).
class PreconditionError : public Error {
   public:
    using Error::Error;
};

/// A proven inequality failed at runtime. Always an implementation bug.
class PropertyViolation : public Error {
   public:
    using Error::Error;
};

class SchemaError : public Error {
   public:
    using Error::Error;
};

/// A coupler joins two qubits whose lattice vertices are not adjacent.
class GeometryError : public Error {
   public:
    using Error::Error;
};

class InfeasiblePlacement : public Error {
   public:
    InfeasiblePlacement(const std::string &what, std::size_t largest_feasible_n)
        : Error(what), largest_feasible_n_(largest_feasible_n) {
    }
    std::size_t largest_feasible_n() const noexcept {
        return largest_feasible_n_;
    }

   private:
    std::size_t largest_feasible_n_;
};

}  // namespace covertlat
