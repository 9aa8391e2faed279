// Copyright 2026 The dictlint Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dictlint {

/// Invalid UTF-8 input; byte_offset points at the offending byte.
struct Utf8Error : std::runtime_error {
    Utf8Error(const std::string& what, std::size_t offset)
        : std::runtime_error(what), byte_offset(offset) {}
    std::size_t byte_offset;
};

/// Decodes UTF-8 into Unicode scalar values. Rejects overlong forms,
/// surrogates, and values beyond U+10FFFF.
std::u32string decode_utf8(std::string_view utf8);

std::string encode_utf8(std::u32string_view scalars);

/// Canonical composition normal form (NFC) over scalar values.
std::u32string nfc(std::u32string_view scalars);

/// Per-scalar simple lowercase mapping (no length-changing expansions).
std::u32string to_lower(std::u32string_view scalars);

/// Unicode White_Space property.
bool is_whitespace(char32_t cp);

/// Trims leading/trailing whitespace and collapses interior runs to one space.
std::u32string collapse_whitespace(std::u32string_view scalars);

/// Number of Unicode scalar values in a UTF-8 string.
std::size_t scalar_length(std::string_view utf8);

}  // namespace dictlint
