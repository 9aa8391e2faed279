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

#include "dictlint/unicode.hpp"

#include <algorithm>
#include <cstdint>

#include "unicode_data.hpp"

namespace dictlint {

namespace {

using namespace unicode_data;

constexpr char32_t kHangulSBase = 0xAC00;
constexpr char32_t kHangulLBase = 0x1100;
constexpr char32_t kHangulVBase = 0x1161;
constexpr char32_t kHangulTBase = 0x11A7;
constexpr int kHangulLCount = 19;
constexpr int kHangulVCount = 21;
constexpr int kHangulTCount = 28;
constexpr int kHangulNCount = kHangulVCount * kHangulTCount;
constexpr int kHangulSCount = kHangulLCount * kHangulNCount;

const DecompEntry* find_decomposition(char32_t cp) {
    const DecompEntry* end = kDecompositions + kDecompositionCount;
    const DecompEntry* it = std::lower_bound(
        kDecompositions, end, cp,
        [](const DecompEntry& e, char32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it : nullptr;
}

std::uint8_t combining_class(char32_t cp) {
    const CccEntry* end = kCombiningClasses + kCombiningClassCount;
    const CccEntry* it = std::lower_bound(
        kCombiningClasses, end, cp,
        [](const CccEntry& e, char32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it->ccc : 0;
}

// Returns 0 when the pair does not compose.
char32_t compose_pair(char32_t a, char32_t b) {
    // Hangul L+V and LV+T.
    if (a >= kHangulLBase && a < kHangulLBase + kHangulLCount &&
        b >= kHangulVBase && b < kHangulVBase + kHangulVCount) {
        int l = static_cast<int>(a - kHangulLBase);
        int v = static_cast<int>(b - kHangulVBase);
        return kHangulSBase + static_cast<char32_t>((l * kHangulVCount + v) * kHangulTCount);
    }
    if (a >= kHangulSBase && a < kHangulSBase + kHangulSCount &&
        (a - kHangulSBase) % kHangulTCount == 0 &&
        b > kHangulTBase && b < kHangulTBase + kHangulTCount) {
        return a + (b - kHangulTBase);
    }

    const CompEntry* end = kCompositions + kCompositionCount;
    const CompEntry* it = std::lower_bound(
        kCompositions, end, std::pair<char32_t, char32_t>(a, b),
        [](const CompEntry& e, const std::pair<char32_t, char32_t>& v) {
            return e.first != v.first ? e.first < v.first : e.second < v.second;
        });
    if (it != end && it->first == a && it->second == b) return it->composed;
    return 0;
}

void decompose_into(char32_t cp, std::u32string& out) {
    if (cp >= kHangulSBase && cp < kHangulSBase + kHangulSCount) {
        int index = static_cast<int>(cp - kHangulSBase);
        out.push_back(kHangulLBase + static_cast<char32_t>(index / kHangulNCount));
        out.push_back(kHangulVBase + static_cast<char32_t>((index % kHangulNCount) / kHangulTCount));
        if (index % kHangulTCount != 0) {
            out.push_back(kHangulTBase + static_cast<char32_t>(index % kHangulTCount));
        }
        return;
    }
    if (const DecompEntry* e = find_decomposition(cp)) {
        decompose_into(e->first, out);
        if (e->second != 0) decompose_into(e->second, out);
        return;
    }
    out.push_back(cp);
}

// Canonical ordering: bubble adjacent marks until combining classes are
// non-decreasing within each nonzero-class run.
void canonical_order(std::u32string& s) {
    if (s.size() < 2) return;
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t i = 1; i < s.size(); ++i) {
            std::uint8_t a = combining_class(s[i - 1]);
            std::uint8_t b = combining_class(s[i]);
            if (a > b && b != 0) {
                std::swap(s[i - 1], s[i]);
                swapped = true;
            }
        }
    }
}

std::u32string compose(const std::u32string& d) {
    std::u32string out;
    out.reserve(d.size());
    std::ptrdiff_t last_starter = -1;
    for (char32_t c : d) {
        std::uint8_t cc = combining_class(c);
        if (last_starter >= 0) {
            bool adjacent = static_cast<std::ptrdiff_t>(out.size()) - 1 == last_starter;
            std::uint8_t prev_cc = adjacent ? 0 : combining_class(out.back());
            if (adjacent || prev_cc < cc) {
                if (char32_t composed = compose_pair(out[static_cast<std::size_t>(last_starter)], c)) {
                    out[static_cast<std::size_t>(last_starter)] = composed;
                    continue;
                }
            }
        }
        out.push_back(c);
        if (cc == 0) last_starter = static_cast<std::ptrdiff_t>(out.size()) - 1;
    }
    return out;
}

}  // namespace

std::u32string decode_utf8(std::string_view utf8) {
    std::u32string out;
    out.reserve(utf8.size());
    std::size_t i = 0;
    while (i < utf8.size()) {
        unsigned char b0 = static_cast<unsigned char>(utf8[i]);
        char32_t cp = 0;
        std::size_t len = 0;
        if (b0 < 0x80) {
            cp = b0;
            len = 1;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            len = 2;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            len = 3;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            len = 4;
        } else {
            throw Utf8Error("invalid UTF-8 lead byte", i);
        }
        if (i + len > utf8.size()) throw Utf8Error("truncated UTF-8 sequence", i);
        for (std::size_t k = 1; k < len; ++k) {
            unsigned char b = static_cast<unsigned char>(utf8[i + k]);
            if ((b & 0xC0) != 0x80) throw Utf8Error("invalid UTF-8 continuation byte", i + k);
            cp = (cp << 6) | (b & 0x3F);
        }
        static constexpr char32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (len > 1 && cp < kMinForLen[len]) throw Utf8Error("overlong UTF-8 sequence", i);
        if (cp >= 0xD800 && cp <= 0xDFFF) throw Utf8Error("UTF-8 encodes a surrogate", i);
        if (cp > 0x10FFFF) throw Utf8Error("code point beyond U+10FFFF", i);
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(std::u32string_view scalars) {
    std::string out;
    out.reserve(scalars.size());
    for (char32_t cp : scalars) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::u32string nfc(std::u32string_view scalars) {
    std::u32string decomposed;
    decomposed.reserve(scalars.size());
    for (char32_t cp : scalars) decompose_into(cp, decomposed);
    canonical_order(decomposed);
    return compose(decomposed);
}

std::u32string to_lower(std::u32string_view scalars) {
    std::u32string out(scalars);
    const LowerEntry* end = kSimpleLowercase + kSimpleLowercaseCount;
    for (char32_t& cp : out) {
        const LowerEntry* it = std::lower_bound(
            kSimpleLowercase, end, cp,
            [](const LowerEntry& e, char32_t v) { return e.cp < v; });
        if (it != end && it->cp == cp) cp = it->lower;
    }
    return out;
}

bool is_whitespace(char32_t cp) {
    switch (cp) {
        case 0x0009: case 0x000A: case 0x000B: case 0x000C: case 0x000D:
        case 0x0020: case 0x0085: case 0x00A0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

std::u32string collapse_whitespace(std::u32string_view scalars) {
    std::u32string out;
    out.reserve(scalars.size());
    bool in_space = false;
    for (char32_t cp : scalars) {
        if (is_whitespace(cp)) {
            in_space = !out.empty();
        } else {
            if (in_space) out.push_back(U' ');
            in_space = false;
            out.push_back(cp);
        }
    }
    return out;
}

std::size_t scalar_length(std::string_view utf8) {
    return decode_utf8(utf8).size();
}

}  // namespace dictlint
