// Copyright 2026 The qgame Authors
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
#include <string_view>

namespace qgame {

enum class ErrorKind {
  NotHermitian,
  DimensionMismatch,
  SizeLimit,
  SingularBasis,
  InvalidChannel,
  InvalidChi,
  IncompletePOVM,
  BasisMismatch,
  NonRealPayoff,
  ValidationError,
  TooManyMoves,
  InvalidDistribution,
  NotEmbeddedForm,
  InvalidArgument,
  ParseError,
  VerificationFailure,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::InvalidChannel: return "InvalidChannel";
    case ErrorKind::InvalidChi: return "InvalidChi";
    case ErrorKind::IncompletePOVM: return "IncompletePOVM";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::NonRealPayoff: return "NonRealPayoff";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::TooManyMoves: return "TooManyMoves";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::NotEmbeddedForm: return "NotEmbeddedForm";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
  }
  return "Unknown";
}

/// Every failure raised by the library. `residual()` carries the offending
/// numeric quantity when there is one (a trace defect, an eigenvalue, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double residual = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        residual_(residual) {}

  ErrorKind kind() const noexcept { return kind_; }
  double residual() const noexcept { return residual_; }

 private:
  ErrorKind kind_;
  double residual_;
};

}  // namespace qgame
