// Copyright 2026 The featgan Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FEATGAN_IO_FORMAT_ERROR_HPP
#define FEATGAN_IO_FORMAT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace featgan::io {

enum class FormatErrorKind {
  kIo,
  kBadMagic,
  kUnsupportedVersion,
  kTruncated,
  kOverflow,
  kEmpty,
  kNonFinite,
  kMalformed,
};

std::string_view to_string(FormatErrorKind kind);

class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  FormatErrorKind kind() const { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const { return detail_; }

 private:
  FormatErrorKind kind_;
  std::string detail_;
};

}  // namespace featgan::io

#endif  // FEATGAN_IO_FORMAT_ERROR_HPP
