/*
 * Copyright 2026 The webspam authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Tolerant single-pass HTML reader. It never rejects input: malformed markup
// degrades to text. Script/style/noscript bodies are excluded from visible
// text, every tag boundary acts as a word separator, and the basic named and
// numeric character references are decoded.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "webspam/text.hpp"

namespace webspam {

struct Anchor {
    std::string href;  // attribute value, entity-decoded, may be empty
    std::string text;  // visible text between <a> and </a>, collapsed
};

struct Image {
    std::string src;
    std::string alt;
    bool has_alt = false;  // alt attribute present with non-blank value
};

struct Token {
    std::string text;
    std::string lower;  // ASCII-lowercased copy
};

struct PageDocument {
    std::size_t html_bytes = 0;  // raw input size, before sanitizing
    std::string title;
    std::string meta_description;
    std::size_t h1_count = 0;
    std::size_t h2_count = 0;
    std::size_t native_video_count = 0;  // <video> elements
    std::vector<Anchor> anchors;         // <a> elements carrying an href
    std::vector<Image> images;
    std::vector<std::string> inline_scripts;  // script bodies without src
    std::vector<std::string> script_sources;  // script src attributes
    std::vector<std::string> embed_sources;   // iframe/embed/source src, object data
    std::string visible_text;                 // whitespace-collapsed
};

namespace detail {

/// Decode &amp; &lt; &gt; &quot; &apos; &nbsp; and numeric (&#d; / &#xh;)
/// references. Unrecognized sequences pass through verbatim; nbsp becomes a
/// plain ASCII space.
inline void append_decoded(std::string& out, std::string_view in) {
    std::size_t i = 0;
    while (i < in.size()) {
        char c = in[i];
        if (c != '&') {
            out.push_back(c);
            ++i;
            continue;
        }
        std::size_t semi = in.find(';', i + 1);
        if (semi == std::string_view::npos || semi == i + 1 || semi - i > 12) {
            out.push_back('&');
            ++i;
            continue;
        }
        std::string_view body = in.substr(i + 1, semi - i - 1);
        bool matched = true;
        if (body == "amp") out.push_back('&');
        else if (body == "lt") out.push_back('<');
        else if (body == "gt") out.push_back('>');
        else if (body == "quot") out.push_back('"');
        else if (body == "apos") out.push_back('\'');
        else if (body == "nbsp") out.push_back(' ');
        else if (body[0] == '#') {
            std::uint32_t cp = 0;
            bool ok = body.size() > 1;
            bool overflow = false;
            if (ok && (body[1] == 'x' || body[1] == 'X')) {
                ok = body.size() > 2;
                for (std::size_t k = 2; ok && k < body.size(); ++k) {
                    char h = body[k];
                    std::uint32_t digit;
                    if (text::is_ascii_digit(h)) digit = static_cast<std::uint32_t>(h - '0');
                    else if (h >= 'a' && h <= 'f') digit = static_cast<std::uint32_t>(h - 'a' + 10);
                    else if (h >= 'A' && h <= 'F') digit = static_cast<std::uint32_t>(h - 'A' + 10);
                    else { ok = false; break; }
                    cp = cp * 16 + digit;
                    if (cp > 0x110000) overflow = true;
                }
            } else {
                for (std::size_t k = 1; ok && k < body.size(); ++k) {
                    if (!text::is_ascii_digit(body[k])) { ok = false; break; }
                    cp = cp * 10 + static_cast<std::uint32_t>(body[k] - '0');
                    if (cp > 0x110000) overflow = true;
                }
            }
            if (!ok) {
                matched = false;
            } else {
                if (overflow || cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
                    cp = 0xFFFD;
                text::append_utf8(out, cp);
            }
        } else {
            matched = false;
        }
        if (matched) {
            i = semi + 1;
        } else {
            out.push_back('&');
            ++i;
        }
    }
}

inline std::string decode_entities(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    append_decoded(out, in);
    return out;
}

struct TagAttr {
    std::string name;   // lowercase
    std::string value;  // entity-decoded
};

inline const std::string* find_attr(const std::vector<TagAttr>& attrs, std::string_view name) {
    for (const auto& a : attrs)
        if (a.name == name) return &a.value;
    return nullptr;
}

/// Case-insensitive search for `needle_lower` (already lowercase ASCII).
inline std::size_t find_ci(const std::string& hay, std::string_view needle_lower, std::size_t from) {
    if (needle_lower.empty() || hay.size() < needle_lower.size()) return std::string::npos;
    for (std::size_t i = from; i + needle_lower.size() <= hay.size(); ++i) {
        std::size_t j = 0;
        while (j < needle_lower.size() && text::ascii_lower(hay[i + j]) == needle_lower[j]) ++j;
        if (j == needle_lower.size()) return i;
    }
    return std::string::npos;
}

class HtmlParser {
public:
    HtmlParser(const std::string& input, PageDocument& doc) : s_(input), doc_(doc) {}

    void run() {
        std::size_t i = 0;
        while (i < s_.size()) {
            std::size_t lt = s_.find('<', i);
            if (lt == std::string::npos) {
                emit_text(std::string_view(s_).substr(i));
                break;
            }
            if (lt > i) emit_text(std::string_view(s_).substr(i, lt - i));
            i = consume_markup(lt);
        }
        finish_anchor();
        doc_.visible_text = text::collapse_whitespace(doc_.visible_text);
    }

private:
    std::size_t consume_markup(std::size_t lt) {
        std::string_view view(s_);
        if (view.compare(lt, 4, "<!--") == 0) {
            std::size_t end = s_.find("-->", lt + 4);
            emit_separator();
            return end == std::string::npos ? s_.size() : end + 3;
        }
        if (view.compare(lt, 9, "<![CDATA[") == 0) {
            std::size_t end = s_.find("]]>", lt + 9);
            emit_separator();
            return end == std::string::npos ? s_.size() : end + 3;
        }
        if (lt + 1 < s_.size() && (s_[lt + 1] == '!' || s_[lt + 1] == '?')) {
            std::size_t end = s_.find('>', lt + 1);
            emit_separator();
            return end == std::string::npos ? s_.size() : end + 1;
        }
        if (lt + 2 < s_.size() && s_[lt + 1] == '/' && text::is_ascii_alpha(s_[lt + 2])) {
            std::size_t j = lt + 2;
            std::string name;
            while (j < s_.size() && (text::is_ascii_alnum(s_[j]) || s_[j] == '-' || s_[j] == ':'))
                name.push_back(text::ascii_lower(s_[j++]));
            std::size_t end = s_.find('>', j);
            handle_close(name);
            emit_separator();
            return end == std::string::npos ? s_.size() : end + 1;
        }
        if (lt + 1 < s_.size() && text::is_ascii_alpha(s_[lt + 1])) {
            std::string name;
            std::vector<TagAttr> attrs;
            bool self_closing = false;
            std::size_t next = parse_open_tag(lt, name, attrs, self_closing);
            emit_separator();
            return handle_open(name, attrs, self_closing, next);
        }
        emit_raw_char('<');
        return lt + 1;
    }

    std::size_t parse_open_tag(std::size_t lt, std::string& name, std::vector<TagAttr>& attrs,
                               bool& self_closing) {
        std::size_t j = lt + 1;
        while (j < s_.size() && (text::is_ascii_alnum(s_[j]) || s_[j] == '-' || s_[j] == ':'))
            name.push_back(text::ascii_lower(s_[j++]));
        while (j < s_.size()) {
            if (text::is_ascii_space(s_[j])) { ++j; continue; }
            if (s_[j] == '>') return j + 1;
            if (s_[j] == '/') {
                if (j + 1 < s_.size() && s_[j + 1] == '>') {
                    self_closing = true;
                    return j + 2;
                }
                ++j;
                continue;
            }
            TagAttr attr;
            while (j < s_.size() && !text::is_ascii_space(s_[j]) && s_[j] != '=' && s_[j] != '>' &&
                   s_[j] != '/')
                attr.name.push_back(text::ascii_lower(s_[j++]));
            if (attr.name.empty()) { ++j; continue; }
            while (j < s_.size() && text::is_ascii_space(s_[j])) ++j;
            if (j < s_.size() && s_[j] == '=') {
                ++j;
                while (j < s_.size() && text::is_ascii_space(s_[j])) ++j;
                if (j < s_.size() && (s_[j] == '"' || s_[j] == '\'')) {
                    char quote = s_[j++];
                    std::size_t close = s_.find(quote, j);
                    std::size_t end = close == std::string::npos ? s_.size() : close;
                    attr.value = decode_entities(std::string_view(s_).substr(j, end - j));
                    j = close == std::string::npos ? s_.size() : close + 1;
                } else {
                    std::size_t start = j;
                    while (j < s_.size() && !text::is_ascii_space(s_[j]) && s_[j] != '>') ++j;
                    attr.value = decode_entities(std::string_view(s_).substr(start, j - start));
                }
            }
            attrs.push_back(std::move(attr));
        }
        return s_.size();
    }

    std::size_t handle_open(const std::string& name, const std::vector<TagAttr>& attrs,
                            bool self_closing, std::size_t next) {
        if (name == "a") {
            finish_anchor();
            if (const std::string* href = find_attr(attrs, "href")) {
                in_anchor_ = true;
                anchor_href_ = *href;
                anchor_text_.clear();
            }
            return next;
        }
        if (name == "img") {
            Image img;
            if (const std::string* src = find_attr(attrs, "src")) img.src = *src;
            if (const std::string* alt = find_attr(attrs, "alt")) {
                img.alt = *alt;
                img.has_alt = !text::trim(*alt).empty();
            }
            doc_.images.push_back(std::move(img));
            return next;
        }
        if (name == "h1") { ++doc_.h1_count; return next; }
        if (name == "h2") { ++doc_.h2_count; return next; }
        if (name == "video") {
            ++doc_.native_video_count;
            if (const std::string* src = find_attr(attrs, "src"); src && !src->empty())
                doc_.embed_sources.push_back(*src);
            return next;
        }
        if (name == "iframe" || name == "embed" || name == "source") {
            if (const std::string* src = find_attr(attrs, "src"); src && !src->empty())
                doc_.embed_sources.push_back(*src);
            return next;
        }
        if (name == "object") {
            if (const std::string* data = find_attr(attrs, "data"); data && !data->empty())
                doc_.embed_sources.push_back(*data);
            return next;
        }
        if (name == "meta") {
            const std::string* meta_name = find_attr(attrs, "name");
            const std::string* content = find_attr(attrs, "content");
            if (meta_name && content && text::to_lower(std::string(text::trim(*meta_name))) == "description")
                doc_.meta_description = text::collapse_whitespace(*content);
            return next;
        }
        if (name == "script") {
            const std::string* src = find_attr(attrs, "src");
            if (src && !src->empty()) doc_.script_sources.push_back(*src);
            if (self_closing) return next;
            std::string_view body;
            std::size_t after = skip_raw_element("script", next, body);
            if (!src || src->empty()) doc_.inline_scripts.emplace_back(body);
            return after;
        }
        if (name == "style" || name == "noscript") {
            if (self_closing) return next;
            std::string_view body;
            return skip_raw_element(name, next, body);
        }
        if (name == "title") {
            if (self_closing) return next;
            std::string_view body;
            std::size_t after = skip_raw_element("title", next, body);
            if (!title_seen_) {
                title_seen_ = true;
                doc_.title = text::collapse_whitespace(decode_entities(body));
            }
            return after;
        }
        return next;
    }

    void handle_close(const std::string& name) {
        if (name == "a") finish_anchor();
    }

    /// Capture everything up to the matching close tag, which markup inside
    /// the body cannot terminate early.
    std::size_t skip_raw_element(std::string_view name, std::size_t from, std::string_view& body) {
        std::string needle = "</" + std::string(name);
        std::size_t pos = from;
        while (true) {
            std::size_t hit = find_ci(s_, needle, pos);
            if (hit == std::string::npos) {
                body = std::string_view(s_).substr(from);
                return s_.size();
            }
            std::size_t after = hit + needle.size();
            char c = after < s_.size() ? s_[after] : '>';
            if (text::is_ascii_space(c) || c == '>' || c == '/') {
                body = std::string_view(s_).substr(from, hit - from);
                std::size_t end = s_.find('>', after);
                emit_separator();
                return end == std::string::npos ? s_.size() : end + 1;
            }
            pos = hit + 1;
        }
    }

    void emit_text(std::string_view segment) {
        std::string decoded = decode_entities(segment);
        doc_.visible_text += decoded;
        if (in_anchor_) anchor_text_ += decoded;
    }

    void emit_separator() {
        doc_.visible_text.push_back(' ');
        if (in_anchor_) anchor_text_.push_back(' ');
    }

    void emit_raw_char(char c) {
        doc_.visible_text.push_back(c);
        if (in_anchor_) anchor_text_.push_back(c);
    }

    void finish_anchor() {
        if (!in_anchor_) return;
        in_anchor_ = false;
        Anchor anchor;
        anchor.href = std::move(anchor_href_);
        anchor.text = text::collapse_whitespace(anchor_text_);
        doc_.anchors.push_back(std::move(anchor));
        anchor_href_.clear();
        anchor_text_.clear();
    }

    const std::string& s_;
    PageDocument& doc_;
    bool in_anchor_ = false;
    bool title_seen_ = false;
    std::string anchor_href_;
    std::string anchor_text_;
};

}  // namespace detail

/// Parse an HTML document. Never throws on malformed markup; the input is
/// sanitized to valid UTF-8 first. html_bytes reflects the raw input size.
inline PageDocument parse_html(std::string_view raw) {
    PageDocument doc;
    doc.html_bytes = raw.size();
    std::string sanitized = text::utf8_sanitize(raw);
    detail::HtmlParser parser(sanitized, doc);
    parser.run();
    return doc;
}

/// Split text into word tokens: maximal runs of ASCII alphanumerics or
/// non-ASCII bytes. Each token carries an ASCII-lowercased copy.
inline std::vector<Token> tokenize(std::string_view input) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < input.size()) {
        if (!text::is_word_byte(input[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < input.size() && text::is_word_byte(input[j])) ++j;
        Token token;
        token.text = std::string(input.substr(i, j - i));
        token.lower = text::to_lower(token.text);
        out.push_back(std::move(token));
        i = j;
    }
    return out;
}

}  // namespace webspam
