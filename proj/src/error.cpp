/*
 * Copyright 2026 The normlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "normlab/error.hpp"

namespace normlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kInvalidParameter: return "invalid parameter";
    case ErrorCode::kDegenerateNorm: return "degenerate norm";
    case ErrorCode::kBracketTooWide: return "bracket too wide";
    case ErrorCode::kPrecondition: return "precondition violated";
    case ErrorCode::kNumericalInstability: return "numerical instability";
    case ErrorCode::kCertificateFailure: return "certificate failure";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace normlab
