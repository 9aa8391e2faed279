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
#include <cstdint>

// Lookup tables backing NFC normalization and simple lowercasing.
// Regenerate with tools/gen_unicode_tables.py.
namespace dictlint::unicode_data {

struct DecompEntry {
    char32_t cp;
    char32_t first;
    char32_t second;  // 0 for singleton decompositions
};

struct CccEntry {
    char32_t cp;
    std::uint8_t ccc;
};

struct CompEntry {
    char32_t first;
    char32_t second;
    char32_t composed;
};

struct LowerEntry {
    char32_t cp;
    char32_t lower;
};

extern const DecompEntry kDecompositions[];
extern const std::size_t kDecompositionCount;

extern const CccEntry kCombiningClasses[];
extern const std::size_t kCombiningClassCount;

extern const CompEntry kCompositions[];  // sorted by (first, second)
extern const std::size_t kCompositionCount;

extern const LowerEntry kSimpleLowercase[];
extern const std::size_t kSimpleLowercaseCount;

}  // namespace dictlint::unicode_data
