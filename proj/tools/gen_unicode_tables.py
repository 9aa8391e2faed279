#!/usr/bin/env python3
"""Regenerates src/unicode_data.cpp from Python's unicodedata module.

Emits sorted lookup tables for canonical decomposition, canonical combining
class, canonical composition pairs, and simple lowercase mappings. Hangul
syllables are handled algorithmically at runtime and are excluded here.

Usage: python3 tools/gen_unicode_tables.py > src/unicode_data.cpp
"""

import sys
import unicodedata

HANGUL_S_BASE = 0xAC00
HANGUL_S_COUNT = 11172


def is_hangul_syllable(cp: int) -> bool:
    return HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT


def main() -> None:
    decomps = []  # (cp, first, second) second == 0 for singletons
    ccc = []  # (cp, class)
    lower = []  # (cp, lower_cp)

    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        ch = chr(cp)

        if not is_hangul_syllable(cp):
            raw = unicodedata.decomposition(ch)
            if raw and not raw.startswith("<"):
                parts = [int(p, 16) for p in raw.split()]
                if len(parts) == 1:
                    decomps.append((cp, parts[0], 0))
                elif len(parts) == 2:
                    decomps.append((cp, parts[0], parts[1]))
                else:
                    raise ValueError(f"canonical decomposition of U+{cp:04X} "
                                     f"has {len(parts)} code points")

        cls = unicodedata.combining(ch)
        if cls:
            ccc.append((cp, cls))

        lc = ch.lower()
        if len(lc) == 1 and lc != ch:
            lower.append((cp, ord(lc)))

    # A pair decomposition recomposes iff NFC maps the pair back to the
    # composed form; this bakes in the composition exclusions.
    comps = []
    for cp, first, second in decomps:
        if second == 0:
            continue
        if unicodedata.normalize("NFC", chr(first) + chr(second)) == chr(cp):
            comps.append((first, second, cp))
    comps.sort()

    out = sys.stdout
    out.write(
        "// Copyright 2026 The dictlint Authors\n"
        "//\n"
        "// Licensed under the Apache License, Version 2.0 (the \"License\");\n"
        "// you may not use this file except in compliance with the License.\n"
        "// You may obtain a copy of the License at\n"
        "//\n"
        "//     http://www.apache.org/licenses/LICENSE-2.0\n"
        "//\n"
        "// Unless required by applicable law or agreed to in writing, software\n"
        "// distributed under the License is distributed on an \"AS IS\" BASIS,\n"
        "// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.\n"
        "// See the License for the specific language governing permissions and\n"
        "// limitations under the License.\n"
        "\n"
        "// Generated by tools/gen_unicode_tables.py from Python unicodedata "
        f"(Unicode {unicodedata.unidata_version}).\n"
        "// Do not edit by hand.\n"
        "\n"
        '#include "unicode_data.hpp"\n'
        "\n"
        "namespace dictlint::unicode_data {\n"
        "\n")

    out.write(f"const DecompEntry kDecompositions[] = {{\n")
    for cp, first, second in decomps:
        out.write(f"    {{0x{cp:04X}, 0x{first:04X}, 0x{second:04X}}},\n")
    out.write("};\n")
    out.write(f"const std::size_t kDecompositionCount = {len(decomps)};\n\n")

    out.write(f"const CccEntry kCombiningClasses[] = {{\n")
    for cp, cls in ccc:
        out.write(f"    {{0x{cp:04X}, {cls}}},\n")
    out.write("};\n")
    out.write(f"const std::size_t kCombiningClassCount = {len(ccc)};\n\n")

    out.write(f"const CompEntry kCompositions[] = {{\n")
    for first, second, cp in comps:
        out.write(f"    {{0x{first:04X}, 0x{second:04X}, 0x{cp:04X}}},\n")
    out.write("};\n")
    out.write(f"const std::size_t kCompositionCount = {len(comps)};\n\n")

    out.write(f"const LowerEntry kSimpleLowercase[] = {{\n")
    for cp, lc in lower:
        out.write(f"    {{0x{cp:04X}, 0x{lc:04X}}},\n")
    out.write("};\n")
    out.write(f"const std::size_t kSimpleLowercaseCount = {len(lower)};\n\n")

    out.write("}  // namespace dictlint::unicode_data\n")


if __name__ == "__main__":
    main()
