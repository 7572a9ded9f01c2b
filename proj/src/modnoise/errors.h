// Copyright 2026 The modnoise Authors
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

#ifndef MODNOISE_ERRORS_H_
#define MODNOISE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace modnoise {

// Parameter combination admits no mechanism with f(0) >= 0.5.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what)
      : std::runtime_error(what) {}
};

// The requested instance falls outside the closed-form regime; the
// caller should fall back to the MILP path.
class UnsupportedClosedFormError : public std::runtime_error {
 public:
  explicit UnsupportedClosedFormError(const std::string& what)
      : std::runtime_error(what) {}
};

// File or stream could not be read or parsed.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace modnoise

#endif  // MODNOISE_ERRORS_H_
