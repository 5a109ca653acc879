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

#ifndef LIPDISC_ERROR_H_
#define LIPDISC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace lipdisc {

enum class ErrorKind {
  kInvalidArgument,
  kIndexOutOfRange,
  kSupportTooLarge,
  kTooLarge,
  kNotAdditive,
  kNotMonotone,
  kUnstructured,
  kUnknownKind,
  kVerificationFailed,
  kParse,
};

std::string_view error_kind_name(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI, the sweep runner) can report it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lipdisc

#endif  // LIPDISC_ERROR_H_
