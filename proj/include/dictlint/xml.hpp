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

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dictlint::xml {

/// Malformed input. line/column are 1-based and refer to Unicode scalars.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error(msg + " at line " + std::to_string(line) +
                             ", column " + std::to_string(column)),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

struct Element;

/// A child is either a nested element or a run of character data
/// (entity-resolved UTF-8). Document order is preserved.
using Node = std::variant<std::unique_ptr<Element>, std::string>;

struct Element {
    std::string tag;
    std::vector<Node> children;
    std::size_t line = 0;
    std::size_t column = 0;

    /// Concatenation of this element's own text nodes, skipping children.
    std::string own_text() const;

    /// Concatenation of all descendant text in document order.
    std::string deep_text() const;
};

struct Document {
    std::unique_ptr<Element> root;
};

/// Parses a standalone XML document. Tolerates a UTF-8 BOM; honors a
/// declared encoding of UTF-8, US-ASCII, or ISO-8859-1. Resolves the five
/// predefined entities, numeric character references, and general entities
/// declared in the internal DTD subset. Comments and processing
/// instructions are discarded; CDATA sections contribute text.
Document parse(std::string_view bytes);

}  // namespace dictlint::xml
