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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace webspam::text {

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c; }

/// A byte that belongs inside a word token: ASCII letter/digit, or any
/// non-ASCII byte (keeps multi-byte UTF-8 letters inside tokens).
inline bool is_word_byte(char c) {
    return is_ascii_alnum(c) || static_cast<unsigned char>(c) >= 0x80;
}

inline std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(ascii_lower(c));
    return out;
}

inline std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

/// Number of Unicode code points in a UTF-8 string (continuation bytes not counted).
inline std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0;
    for (char c : s)
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    return n;
}

/// Collapse whitespace runs to a single space and trim both ends.
inline std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (char c : s) {
        if (is_ascii_space(c)) {
            pending = true;
        } else {
            if (pending && !out.empty()) out.push_back(' ');
            out.push_back(c);
            pending = false;
        }
    }
    return out;
}

inline void append_utf8(std::string& out, std::uint32_t cp) {
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

/// Replace every invalid UTF-8 sequence with U+FFFD. The result is valid UTF-8.
inline std::string utf8_sanitize(std::string_view s) {
    static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    while (i < s.size()) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        if (b < 0x80) {
            out.push_back(s[i]);
            ++i;
        } else if (b >= 0xC2 && b <= 0xDF && cont(1)) {
            out.append(s.substr(i, 2));
            i += 2;
        } else if (b == 0xE0 && i + 2 < s.size() &&
                   static_cast<unsigned char>(s[i + 1]) >= 0xA0 &&
                   static_cast<unsigned char>(s[i + 1]) <= 0xBF && cont(2)) {
            out.append(s.substr(i, 3));
            i += 3;
        } else if (((b >= 0xE1 && b <= 0xEC) || b == 0xEE || b == 0xEF) && cont(1) && cont(2)) {
            out.append(s.substr(i, 3));
            i += 3;
        } else if (b == 0xED && i + 2 < s.size() &&
                   static_cast<unsigned char>(s[i + 1]) >= 0x80 &&
                   static_cast<unsigned char>(s[i + 1]) <= 0x9F && cont(2)) {
            // excludes surrogate range
            out.append(s.substr(i, 3));
            i += 3;
        } else if (b == 0xF0 && i + 3 < s.size() &&
                   static_cast<unsigned char>(s[i + 1]) >= 0x90 &&
                   static_cast<unsigned char>(s[i + 1]) <= 0xBF && cont(2) && cont(3)) {
            out.append(s.substr(i, 4));
            i += 4;
        } else if (b >= 0xF1 && b <= 0xF3 && cont(1) && cont(2) && cont(3)) {
            out.append(s.substr(i, 4));
            i += 4;
        } else if (b == 0xF4 && i + 3 < s.size() &&
                   static_cast<unsigned char>(s[i + 1]) >= 0x80 &&
                   static_cast<unsigned char>(s[i + 1]) <= 0x8F && cont(2) && cont(3)) {
            out.append(s.substr(i, 4));
            i += 4;
        } else {
            out.append(kReplacement);
            ++i;
        }
    }
    return out;
}

}  // namespace webspam::text
