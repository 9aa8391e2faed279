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

#include "dictlint/xml.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "dictlint/unicode.hpp"

namespace dictlint::xml {

namespace {

bool is_xml_space(char32_t c) {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r';
}

bool is_name_start(char32_t c) {
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') ||
           c == U'_' || c == U':' || c >= 0x80;
}

bool is_name_char(char32_t c) {
    return is_name_start(c) || (c >= U'0' && c <= U'9') || c == U'-' || c == U'.';
}

// ASCII-lowercase for encoding names.
std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

class Parser {
  public:
    explicit Parser(std::u32string text) : text_(std::move(text)) {}

    Document run() {
        skip_prolog();
        if (at_end() || peek() != U'<') fail("expected root element");
        Document doc;
        doc.root = parse_element();
        skip_misc();
        if (!at_end()) fail("content after root element");
        return doc;
    }

  private:
    std::u32string text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::map<std::string, std::u32string> entities_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col_);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char32_t peek() const { return text_[pos_]; }

    char32_t advance() {
        char32_t c = text_[pos_++];
        if (c == U'\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    bool starts_with(std::u32string_view s) const {
        return text_.compare(pos_, s.size(), s) == 0;
    }

    void expect(std::u32string_view s, const char* what) {
        if (!starts_with(s)) fail(std::string("expected ") + what);
        for (std::size_t i = 0; i < s.size(); ++i) advance();
    }

    void skip_spaces() {
        while (!at_end() && is_xml_space(peek())) advance();
    }

    std::string parse_name() {
        if (at_end() || !is_name_start(peek())) fail("expected a name");
        std::u32string name;
        name.push_back(advance());
        while (!at_end() && is_name_char(peek())) name.push_back(advance());
        return encode_utf8(name);
    }

    // &#...;, &#x...;, &name; — returns resolved replacement text.
    std::u32string parse_reference(int depth) {
        expect(U"&", "'&'");
        if (!at_end() && peek() == U'#') {
            advance();
            int base = 10;
            if (!at_end() && (peek() == U'x' || peek() == U'X')) {
                advance();
                base = 16;
            }
            unsigned long value = 0;
            bool any = false;
            while (!at_end() && peek() != U';') {
                char32_t c = advance();
                int digit;
                if (c >= U'0' && c <= U'9') digit = static_cast<int>(c - U'0');
                else if (base == 16 && c >= U'a' && c <= U'f') digit = static_cast<int>(c - U'a' + 10);
                else if (base == 16 && c >= U'A' && c <= U'F') digit = static_cast<int>(c - U'A' + 10);
                else fail("bad digit in character reference");
                value = value * static_cast<unsigned long>(base) + static_cast<unsigned long>(digit);
                if (value > 0x10FFFF) fail("character reference out of range");
                any = true;
            }
            if (!any) fail("empty character reference");
            expect(U";", "';'");
            if (value >= 0xD800 && value <= 0xDFFF) fail("character reference is a surrogate");
            return std::u32string(1, static_cast<char32_t>(value));
        }
        std::string name = parse_name();
        expect(U";", "';'");
        return resolve_entity(name, depth);
    }

    std::u32string resolve_entity(const std::string& name, int depth) {
        if (name == "amp") return U"&";
        if (name == "lt") return U"<";
        if (name == "gt") return U">";
        if (name == "apos") return U"'";
        if (name == "quot") return U"\"";
        auto it = entities_.find(name);
        if (it == entities_.end()) fail("undeclared entity '&" + name + ";'");
        if (depth > 16) fail("entity expansion too deep (cycle in '&" + name + ";'?)");
        // Entity values may themselves contain general entity references.
        return expand_entity_value(it->second, depth + 1);
    }

    std::u32string expand_entity_value(const std::u32string& value, int depth) {
        std::u32string out;
        std::size_t i = 0;
        while (i < value.size()) {
            if (value[i] == U'&') {
                std::size_t semi = value.find(U';', i + 1);
                if (semi == std::u32string::npos) fail("unterminated reference in entity value");
                std::u32string inner = value.substr(i + 1, semi - i - 1);
                if (!inner.empty() && inner[0] == U'#') {
                    // Character references were resolved at declaration time.
                    out.append(value, i, semi - i + 1);
                } else {
                    out += resolve_entity(encode_utf8(inner), depth);
                }
                i = semi + 1;
            } else {
                out.push_back(value[i++]);
            }
        }
        return out;
    }

    void skip_comment() {
        expect(U"<!--", "comment");
        while (!at_end()) {
            if (starts_with(U"-->")) {
                expect(U"-->", "'-->'");
                return;
            }
            advance();
        }
        fail("unterminated comment");
    }

    void skip_pi() {
        expect(U"<?", "processing instruction");
        while (!at_end()) {
            if (starts_with(U"?>")) {
                expect(U"?>", "'?>'");
                return;
            }
            advance();
        }
        fail("unterminated processing instruction");
    }

    // <!ENTITY name "value"> inside the internal subset; character
    // references in the value are included immediately, general entity
    // references are kept for expansion at use.
    void parse_entity_decl() {
        expect(U"<!ENTITY", "'<!ENTITY'");
        skip_spaces();
        if (!at_end() && peek() == U'%') {
            // Parameter entity: skip to '>'.
            while (!at_end() && peek() != U'>') advance();
            expect(U">", "'>'");
            return;
        }
        std::string name = parse_name();
        skip_spaces();
        if (at_end() || (peek() != U'"' && peek() != U'\'')) {
            // SYSTEM/PUBLIC external entity: not loaded; skip declaration.
            while (!at_end() && peek() != U'>') advance();
            expect(U">", "'>'");
            return;
        }
        char32_t quote = advance();
        std::u32string value;
        while (!at_end() && peek() != quote) {
            if (peek() == U'&' && pos_ + 1 < text_.size() && text_[pos_ + 1] == U'#') {
                value += parse_reference(0);
            } else {
                value.push_back(advance());
            }
        }
        expect(std::u32string_view(&quote, 1), "closing quote");
        skip_spaces();
        expect(U">", "'>'");
        entities_.emplace(std::move(name), std::move(value));
    }

    void skip_doctype() {
        expect(U"<!DOCTYPE", "'<!DOCTYPE'");
        while (!at_end() && peek() != U'[' && peek() != U'>') advance();
        if (at_end()) fail("unterminated DOCTYPE");
        if (peek() == U'>') {
            advance();
            return;
        }
        advance();  // '['
        while (!at_end() && peek() != U']') {
            if (starts_with(U"<!ENTITY")) {
                parse_entity_decl();
            } else if (starts_with(U"<!--")) {
                skip_comment();
            } else if (starts_with(U"<?")) {
                skip_pi();
            } else if (peek() == U'<') {
                // Other markup declarations (<!ELEMENT ...>, <!ATTLIST ...>).
                while (!at_end() && peek() != U'>') advance();
                expect(U">", "'>'");
            } else {
                advance();
            }
        }
        expect(U"]", "']'");
        skip_spaces();
        expect(U">", "'>'");
    }

    void skip_prolog() {
        if (starts_with(U"<?xml") && text_.size() > pos_ + 5 && is_xml_space(text_[pos_ + 5])) {
            skip_pi();
        }
        skip_misc();
        if (starts_with(U"<!DOCTYPE")) {
            skip_doctype();
            skip_misc();
        }
    }

    void skip_misc() {
        for (;;) {
            skip_spaces();
            if (starts_with(U"<!--")) {
                skip_comment();
            } else if (starts_with(U"<?")) {
                skip_pi();
            } else {
                return;
            }
        }
    }

    void parse_attributes() {
        for (;;) {
            skip_spaces();
            if (at_end()) fail("unterminated start tag");
            if (peek() == U'>' || peek() == U'/') return;
            parse_name();
            skip_spaces();
            expect(U"=", "'=' after attribute name");
            skip_spaces();
            if (at_end() || (peek() != U'"' && peek() != U'\'')) fail("expected quoted attribute value");
            char32_t quote = advance();
            while (!at_end() && peek() != quote) {
                if (peek() == U'<') fail("'<' in attribute value");
                if (peek() == U'&') {
                    parse_reference(0);  // validated, value discarded
                } else {
                    advance();
                }
            }
            expect(std::u32string_view(&quote, 1), "closing attribute quote");
        }
    }

    std::unique_ptr<Element> parse_element() {
        auto elem = std::make_unique<Element>();
        elem->line = line_;
        elem->column = col_;
        expect(U"<", "'<'");
        elem->tag = parse_name();
        parse_attributes();
        if (peek() == U'/') {
            expect(U"/>", "'/>'");
            return elem;
        }
        expect(U">", "'>'");
        parse_content(*elem);
        std::string end_tag = parse_name();
        if (end_tag != elem->tag) {
            fail("mismatched end tag </" + end_tag + "> for <" + elem->tag + ">");
        }
        skip_spaces();
        expect(U">", "'>'");
        return elem;
    }

    // Consumes up to and including "</", leaving the end-tag name unread.
    void parse_content(Element& elem) {
        std::u32string text;
        auto flush_text = [&] {
            if (!text.empty()) {
                elem.children.emplace_back(encode_utf8(text));
                text.clear();
            }
        };
        while (!at_end()) {
            if (starts_with(U"</")) {
                flush_text();
                expect(U"</", "'</'");
                return;
            }
            if (starts_with(U"<!--")) {
                skip_comment();
            } else if (starts_with(U"<![CDATA[")) {
                expect(U"<![CDATA[", "'<![CDATA['");
                while (!at_end() && !starts_with(U"]]>")) text.push_back(advance());
                expect(U"]]>", "']]>'");
            } else if (starts_with(U"<?")) {
                skip_pi();
            } else if (peek() == U'<') {
                flush_text();
                elem.children.emplace_back(parse_element());
            } else if (peek() == U'&') {
                text += parse_reference(0);
            } else {
                text.push_back(advance());
            }
        }
        fail("unterminated element <" + elem.tag + ">");
    }
};

// Maps the raw bytes to scalars according to the declared encoding.
std::u32string decode_document(std::string_view bytes) {
    if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xEF &&
        static_cast<unsigned char>(bytes[1]) == 0xBB &&
        static_cast<unsigned char>(bytes[2]) == 0xBF) {
        bytes.remove_prefix(3);
    }

    std::string encoding = "utf-8";
    if (bytes.substr(0, 5) == "<?xml") {
        std::size_t close = bytes.find("?>");
        std::string_view decl = bytes.substr(0, close == std::string_view::npos ? bytes.size() : close);
        std::size_t at = decl.find("encoding");
        if (at != std::string_view::npos) {
            std::size_t q = decl.find_first_of("\"'", at);
            if (q != std::string_view::npos) {
                std::size_t q2 = decl.find(decl[q], q + 1);
                if (q2 != std::string_view::npos) {
                    encoding = ascii_lower(decl.substr(q + 1, q2 - q - 1));
                }
            }
        }
    }

    if (encoding == "iso-8859-1" || encoding == "latin-1" || encoding == "latin1") {
        std::u32string out;
        out.reserve(bytes.size());
        for (char b : bytes) out.push_back(static_cast<unsigned char>(b));
        return out;
    }
    if (encoding != "utf-8" && encoding != "utf8" && encoding != "us-ascii" && encoding != "ascii") {
        throw ParseError("unsupported encoding '" + encoding + "'", 1, 1);
    }
    try {
        return decode_utf8(bytes);
    } catch (const Utf8Error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < e.byte_offset && i < bytes.size(); ++i) {
            if (bytes[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(bytes[i]) & 0xC0) != 0x80) {
                ++col;
            }
        }
        throw ParseError(e.what(), line, col);
    }
}

void append_deep_text(const Element& elem, std::string& out) {
    for (const Node& child : elem.children) {
        if (std::holds_alternative<std::string>(child)) {
            out += std::get<std::string>(child);
        } else {
            append_deep_text(*std::get<std::unique_ptr<Element>>(child), out);
        }
    }
}

}  // namespace

std::string Element::own_text() const {
    std::string out;
    for (const Node& child : children) {
        if (std::holds_alternative<std::string>(child)) out += std::get<std::string>(child);
    }
    return out;
}

std::string Element::deep_text() const {
    std::string out;
    append_deep_text(*this, out);
    return out;
}

Document parse(std::string_view bytes) {
    Parser parser(decode_document(bytes));
    return parser.run();
}

}  // namespace dictlint::xml
