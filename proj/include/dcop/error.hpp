// Copyright 2026 The dcopbench Authors
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

#ifndef DCOP_ERROR_HPP_
#define DCOP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dcop {

// Base of every exception thrown by the library. The C API maps each
// subclass onto its own status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (wrong dimension, bad index).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Filesystem or parse failure.
class IoError : public Error {
 public:
  using Error::Error;
};

// Metrics could not be computed from the available records.
class ReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcop

#endif  // DCOP_ERROR_HPP_
