// Copyright 2026 The maskitlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "maskitlab/error.hpp"

namespace maskit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Usage: return "UsageError";
    case ErrorCode::OracleOverflow: return "OracleOverflow";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::NestingViolation: return "NestingViolation";
    case ErrorCode::OutsideT0: return "OutsideT0";
    case ErrorCode::EnumerationBudget: return "EnumerationBudget";
    case ErrorCode::NoCompactFound: return "NoCompactFound";
    case ErrorCode::WitnessFailed: return "WitnessFailed";
    case ErrorCode::NoConvergenceDetected: return "NoConvergenceDetected";
    case ErrorCode::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorCode::IdentityMap: return "IdentityMap";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Precondition: return "PreconditionError";
  }
  return "UnknownError";
}

}  // namespace maskit
