// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace maskit {

enum class ErrorCode {
  Config = 1,
  Usage,
  OracleOverflow,
  WrongShape,
  NestingViolation,
  OutsideT0,
  EnumerationBudget,
  NoCompactFound,
  WitnessFailed,
  NoConvergenceDetected,
  DegenerateMatrix,
  IdentityMap,
  Io,
  Precondition,
};

const char* error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// C API can map it to a stable integer.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace maskit
