// Copyright 2026 The lipdisc Authors
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
//

#include "lipdisc/error.h"

namespace lipdisc {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kSupportTooLarge: return "SupportTooLarge";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kNotAdditive: return "NotAdditive";
    case ErrorKind::kNotMonotone: return "NotMonotone";
    case ErrorKind::kUnstructured: return "Unstructured";
    case ErrorKind::kUnknownKind: return "UnknownKind";
    case ErrorKind::kVerificationFailed: return "VerificationFailed";
    case ErrorKind::kParse: return "Parse";
  }
  return "Unknown";
}

}  // namespace lipdisc
