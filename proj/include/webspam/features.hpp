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

// The 32 low-cost page quality factors: 10 URL, 17 content, 5 link features,
// assembled in a fixed canonical order. All extractors are pure functions of
// (UrlParts, PageDocument, LexiconSet, SuffixTable).

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <zlib.h>

#include "webspam/errors.hpp"
#include "webspam/html.hpp"
#include "webspam/lexicons.hpp"
#include "webspam/text.hpp"
#include "webspam/url.hpp"

namespace webspam {

enum class Family { URL, CONTENT, LINK };

inline constexpr std::size_t kFeatureCount = 32;
inline constexpr std::size_t kUrlFeatureCount = 10;
inline constexpr std::size_t kContentFeatureCount = 17;
inline constexpr std::size_t kLinkFeatureCount = 5;

struct FeatureVector {
    std::array<double, kFeatureCount> values{};

    static const std::array<std::string_view, kFeatureCount>& names() {
        static const std::array<std::string_view, kFeatureCount> kNames = {
            "url_ssl",
            "url_length",
            "url_subdomain",
            "url_authoritative_tld",
            "url_triple_letter",
            "url_deep_subdomain",
            "url_digit_special",
            "url_ip_host",
            "url_top500",
            "url_domain_length",
            "content_html_length",
            "content_word_count",
            "content_text_length",
            "content_text_html_ratio",
            "content_avg_word_length",
            "content_has_h2",
            "content_has_h1",
            "content_has_video",
            "content_ad_count",
            "content_title_length",
            "content_compression_ratio",
            "content_obfuscated_script",
            "content_description_length",
            "content_image_count",
            "content_alt_ratio",
            "content_cta_count",
            "content_stop_word_pct",
            "link_internal_count",
            "link_self_ref_count",
            "link_external_count",
            "link_anchor_text_pct",
            "link_avg_anchor_words",
        };
        return kNames;
    }

    static const std::array<Family, kFeatureCount>& families() {
        static const std::array<Family, kFeatureCount> kFamilies = [] {
            std::array<Family, kFeatureCount> fams{};
            for (std::size_t i = 0; i < kFeatureCount; ++i) {
                if (i < kUrlFeatureCount) fams[i] = Family::URL;
                else if (i < kUrlFeatureCount + kContentFeatureCount) fams[i] = Family::CONTENT;
                else fams[i] = Family::LINK;
            }
            return fams;
        }();
        return kFamilies;
    }
};

struct FamilySelection {
    bool url = false;
    bool content = false;
    bool link = false;

    bool any() const { return url || content || link; }
};

/// Canonical-order indices of the features belonging to the selected families.
inline std::vector<std::size_t> selected_indices(FamilySelection sel) {
    std::vector<std::size_t> out;
    const auto& fams = FeatureVector::families();
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        Family f = fams[i];
        if ((f == Family::URL && sel.url) || (f == Family::CONTENT && sel.content) ||
            (f == Family::LINK && sel.link))
            out.push_back(i);
    }
    return out;
}

/// Byte length of `input` divided by the byte length of its raw-DEFLATE form
/// at default settings. Empty input is 1.0 by convention.
inline double compression_ratio(std::string_view input) {
    if (input.empty()) return 1.0;
    z_stream strm{};
    if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("deflate initialization failed");
    std::vector<unsigned char> out(deflateBound(&strm, static_cast<uLong>(input.size())));
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(input.data()));
    strm.avail_in = static_cast<uInt>(input.size());
    strm.next_out = out.data();
    strm.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&strm, Z_FINISH);
    std::size_t compressed = strm.total_out;
    deflateEnd(&strm);
    if (rc != Z_STREAM_END || compressed == 0) throw std::runtime_error("deflate stream failed");
    return static_cast<double>(input.size()) / static_cast<double>(compressed);
}

namespace detail {

inline bool is_ident_char(char c) {
    return text::is_ascii_alnum(c) || c == '_' || c == '$';
}

}  // namespace detail

/// True iff some script body contains a suspicious encode/decode call whose
/// still-open argument region contains another suspicious call. Matching is a
/// flat scan with parenthesis-depth tracking; string literals are not
/// interpreted.
inline bool detect_obfuscated_script(const std::vector<std::string>& scripts) {
    static constexpr std::array<std::string_view, 8> kSuspicious = {
        "String.fromCharCode", "decodeURIComponent", "encodeURIComponent",
        "decodeURI",           "encodeURI",          "unescape",
        "escape",              "eval",
    };
    for (const auto& body : scripts) {
        std::vector<char> stack;  // 1 = suspicious call frame, 0 = plain paren
        int suspicious_open = 0;
        std::size_t i = 0;
        while (i < body.size()) {
            char c = body[i];
            if (c == '(') {
                stack.push_back(0);
                ++i;
                continue;
            }
            if (c == ')') {
                if (!stack.empty()) {
                    if (stack.back()) --suspicious_open;
                    stack.pop_back();
                }
                ++i;
                continue;
            }
            if (i > 0 && detail::is_ident_char(body[i - 1])) {
                ++i;
                continue;
            }
            bool advanced = false;
            for (std::string_view name : kSuspicious) {  // longest first
                if (body.size() - i < name.size()) continue;
                if (body.compare(i, name.size(), name) != 0) continue;
                std::size_t j = i + name.size();
                while (j < body.size() && text::is_ascii_space(body[j])) ++j;
                if (j >= body.size() || body[j] != '(') break;  // matched name, not a call
                if (suspicious_open > 0) return true;
                stack.push_back(1);
                ++suspicious_open;
                i = j + 1;
                advanced = true;
                break;
            }
            if (!advanced) ++i;
        }
    }
    return false;
}

/// Non-overlapping, case-insensitive phrase occurrences over the token
/// sequence of `input`. Each phrase is counted independently.
inline std::size_t count_cta(std::string_view input, const std::vector<std::string>& phrases) {
    std::vector<Token> tokens = tokenize(input);
    if (tokens.empty()) return 0;
    std::size_t total = 0;
    for (const auto& phrase : phrases) {
        std::vector<Token> needle = tokenize(phrase);
        if (needle.empty() || needle.size() > tokens.size()) continue;
        std::size_t i = 0;
        while (i + needle.size() <= tokens.size()) {
            bool hit = true;
            for (std::size_t k = 0; k < needle.size(); ++k) {
                if (tokens[i + k].lower != needle[k].lower) {
                    hit = false;
                    break;
                }
            }
            if (hit) {
                ++total;
                i += needle.size();
            } else {
                ++i;
            }
        }
    }
    return total;
}

/// 100 x stop-word tokens / total tokens; 0 for an empty stream.
inline double stop_word_percentage(const std::vector<Token>& tokens,
                                   const std::unordered_set<std::string>& stop_words) {
    if (tokens.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& token : tokens)
        if (stop_words.count(token.lower)) ++hits;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(tokens.size());
}

namespace detail {

/// Registered domain of an embed/script source URL. Relative sources and
/// unparseable values yield nothing; protocol-relative sources borrow http.
inline std::optional<std::string> source_registered_domain(std::string_view src,
                                                           const SuffixTable& suffixes) {
    std::string_view s = text::trim(src);
    if (s.empty()) return std::nullopt;
    std::string absolute;
    if (s.size() >= 2 && s[0] == '/' && s[1] == '/') {
        absolute = "http:" + std::string(s);
    } else if (s.find("://") != std::string_view::npos) {
        absolute = std::string(s);
    } else {
        return std::nullopt;
    }
    try {
        UrlParts parts = parse_url(absolute, suffixes);
        return parts.registered_domain;
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

}  // namespace detail

inline std::array<double, kUrlFeatureCount> extract_url_features(const UrlParts& url,
                                                                 std::string_view raw_url,
                                                                 const LexiconSet& lex) {
    std::array<double, kUrlFeatureCount> f{};

    f[0] = url.scheme == "https" ? 1.0 : 0.0;
    f[1] = static_cast<double>(text::codepoint_count(text::trim(raw_url)));

    // Subdomain presence ignores a leading "www".
    std::size_t sub_count = url.subdomain_labels.size();
    if (sub_count > 0 && url.subdomain_labels.front() == "www") --sub_count;
    f[2] = sub_count > 0 ? 1.0 : 0.0;

    std::string_view suffix = url.public_suffix;
    std::string_view first_label = suffix.substr(0, suffix.find('.'));
    f[3] = (lex.authoritative_tlds.count(std::string(first_label)) ||
            lex.authoritative_tlds.count(std::string(suffix)))
               ? 1.0
               : 0.0;

    std::string_view label = registrable_label(url);
    bool triple = false;
    for (std::size_t i = 0; i + 2 < label.size(); ++i) {
        char c = label[i];
        if (text::is_ascii_alpha(c) && label[i + 1] == c && label[i + 2] == c) {
            triple = true;
            break;
        }
    }
    f[4] = triple ? 1.0 : 0.0;

    f[5] = (url.host_labels.size() >= 4 && !url.is_ip_host) ? 1.0 : 0.0;

    std::size_t digit_special = 0;
    for (char c : url.host)
        if (text::is_ascii_digit(c) || (!text::is_ascii_alnum(c) && c != '.')) ++digit_special;
    f[6] = static_cast<double>(digit_special);

    f[7] = url.is_ip_host ? 1.0 : 0.0;
    f[8] = lex.top500.count(url.registered_domain) ? 1.0 : 0.0;
    f[9] = static_cast<double>(text::codepoint_count(url.registered_domain));
    return f;
}

inline std::array<double, kContentFeatureCount> extract_content_features(const PageDocument& doc,
                                                                         const LexiconSet& lex,
                                                                         const SuffixTable& suffixes) {
    std::array<double, kContentFeatureCount> f{};
    std::vector<Token> tokens = tokenize(doc.visible_text);

    f[0] = static_cast<double>(doc.html_bytes);
    f[1] = static_cast<double>(tokens.size());
    f[2] = static_cast<double>(text::codepoint_count(doc.visible_text));
    f[3] = doc.html_bytes == 0
               ? 0.0
               : 100.0 * static_cast<double>(doc.visible_text.size()) / static_cast<double>(doc.html_bytes);

    if (!tokens.empty()) {
        std::size_t chars = 0;
        for (const auto& token : tokens) chars += text::codepoint_count(token.text);
        f[4] = static_cast<double>(chars) / static_cast<double>(tokens.size());
    }

    f[5] = doc.h2_count > 0 ? 1.0 : 0.0;
    f[6] = doc.h1_count > 0 ? 1.0 : 0.0;

    bool has_video = doc.native_video_count > 0;
    for (const auto& src : doc.embed_sources) {
        if (has_video) break;
        if (auto domain = detail::source_registered_domain(src, suffixes))
            has_video = lex.video_hosts.count(*domain) > 0;
    }
    f[7] = has_video ? 1.0 : 0.0;

    std::size_t ads = 0;
    for (const auto& src : doc.embed_sources)
        if (auto domain = detail::source_registered_domain(src, suffixes))
            if (lex.ad_hosts.count(*domain)) ++ads;
    for (const auto& src : doc.script_sources)
        if (auto domain = detail::source_registered_domain(src, suffixes))
            if (lex.ad_hosts.count(*domain)) ++ads;
    f[8] = static_cast<double>(ads);

    f[9] = static_cast<double>(text::codepoint_count(doc.title));
    f[10] = compression_ratio(doc.visible_text);
    f[11] = detect_obfuscated_script(doc.inline_scripts) ? 1.0 : 0.0;
    f[12] = static_cast<double>(text::codepoint_count(doc.meta_description));
    f[13] = static_cast<double>(doc.images.size());

    if (!doc.images.empty()) {
        std::size_t with_alt = 0;
        for (const auto& img : doc.images)
            if (img.has_alt) ++with_alt;
        f[14] = static_cast<double>(with_alt) / static_cast<double>(doc.images.size());
    }

    f[15] = static_cast<double>(count_cta(doc.visible_text, lex.cta_phrases));
    f[16] = stop_word_percentage(tokens, lex.stop_words);
    return f;
}

namespace detail {

/// RFC 3986 section 5.2.4.
inline std::string remove_dot_segments(std::string_view path) {
    std::string in(path);
    std::string out;
    while (!in.empty()) {
        if (in.rfind("../", 0) == 0) {
            in.erase(0, 3);
        } else if (in.rfind("./", 0) == 0) {
            in.erase(0, 2);
        } else if (in.rfind("/./", 0) == 0) {
            in.replace(0, 3, "/");
        } else if (in == "/.") {
            in = "/";
        } else if (in.rfind("/../", 0) == 0) {
            in.replace(0, 4, "/");
            std::size_t cut = out.rfind('/');
            out.erase(cut == std::string::npos ? 0 : cut);
        } else if (in == "/..") {
            in = "/";
            std::size_t cut = out.rfind('/');
            out.erase(cut == std::string::npos ? 0 : cut);
        } else if (in == "." || in == "..") {
            in.clear();
        } else {
            std::size_t next = in.find('/', in[0] == '/' ? 1 : 0);
            if (next == std::string::npos) {
                out += in;
                in.clear();
            } else {
                out += in.substr(0, next);
                in.erase(0, next);
            }
        }
    }
    return out;
}

inline std::string_view strip_fragment(std::string_view s) {
    return s.substr(0, s.find('#'));
}

/// Path-plus-query with "" normalized to "/" so that a bare host equals the
/// same host with a root path.
inline std::string normalize_pq(std::string_view pq) {
    return pq.empty() ? "/" : std::string(pq);
}

struct ResolvedLink {
    std::string registered_domain;
    std::string scheme;
    std::string host;
    std::string path_query;  // fragment stripped
};

/// Resolve an anchor href against the page URL. Returns nothing for hrefs the
/// link features must skip: empty values, non-http(s) schemes, malformed URLs.
inline std::optional<ResolvedLink> resolve_href(std::string_view href, const UrlParts& page,
                                                const SuffixTable& suffixes) {
    std::string_view h = text::trim(href);
    if (h.empty()) return std::nullopt;

    std::string_view page_pq = strip_fragment(page.path);
    std::string_view page_path_only = page_pq.substr(0, page_pq.find('?'));

    auto from_parts = [&](const UrlParts& parts) {
        ResolvedLink link;
        link.registered_domain = parts.registered_domain;
        link.scheme = parts.scheme;
        link.host = parts.host;
        link.path_query = std::string(strip_fragment(parts.path));
        return link;
    };
    auto same_host = [&](std::string pq) {
        ResolvedLink link;
        link.registered_domain = page.registered_domain;
        link.scheme = page.scheme;
        link.host = page.host;
        link.path_query = std::move(pq);
        return link;
    };

    if (h[0] == '#') return same_host(std::string(page_pq));

    // Absolute URL with an explicit scheme?
    if (text::is_ascii_alpha(h[0])) {
        std::size_t colon = h.find(':');
        if (colon != std::string_view::npos) {
            bool scheme_like = true;
            for (std::size_t i = 1; i < colon; ++i) {
                char c = h[i];
                if (!text::is_ascii_alnum(c) && c != '+' && c != '-' && c != '.') {
                    scheme_like = false;
                    break;
                }
            }
            if (scheme_like) {
                std::string scheme = text::to_lower(h.substr(0, colon));
                if (scheme != "http" && scheme != "https") return std::nullopt;
                try {
                    return from_parts(parse_url(h, suffixes));
                } catch (const ParseError&) {
                    return std::nullopt;
                }
            }
        }
    }

    if (h.size() >= 2 && h[0] == '/' && h[1] == '/') {
        try {
            return from_parts(parse_url(page.scheme + ":" + std::string(h), suffixes));
        } catch (const ParseError&) {
            return std::nullopt;
        }
    }
    if (h[0] == '/') return same_host(std::string(strip_fragment(h)));
    if (h[0] == '?') return same_host(std::string(page_path_only) + std::string(strip_fragment(h)));

    // Relative reference: merge with the base directory, then normalize.
    std::string_view rel = strip_fragment(h);
    std::string_view rel_path = rel.substr(0, rel.find('?'));
    std::string_view rel_query = rel.size() > rel_path.size() ? rel.substr(rel_path.size()) : std::string_view{};
    std::size_t last_slash = page_path_only.rfind('/');
    std::string merged = last_slash == std::string_view::npos
                             ? "/" + std::string(rel_path)
                             : std::string(page_path_only.substr(0, last_slash + 1)) + std::string(rel_path);
    return same_host(remove_dot_segments(merged) + std::string(rel_query));
}

}  // namespace detail

inline std::array<double, kLinkFeatureCount> extract_link_features(const PageDocument& doc,
                                                                   const UrlParts& page_url,
                                                                   const SuffixTable& suffixes) {
    std::array<double, kLinkFeatureCount> f{};
    std::size_t internal = 0, self_ref = 0, external = 0;
    std::size_t anchor_tokens = 0, anchors_with_text = 0, anchors_with_text_tokens = 0;

    std::string page_pq = detail::normalize_pq(detail::strip_fragment(page_url.path));

    for (const auto& anchor : doc.anchors) {
        auto link = detail::resolve_href(anchor.href, page_url, suffixes);
        if (!link) continue;

        bool same_domain = link->registered_domain == page_url.registered_domain;
        if (same_domain) {
            ++internal;
            if (link->scheme == page_url.scheme && link->host == page_url.host &&
                detail::normalize_pq(link->path_query) == page_pq)
                ++self_ref;
        } else {
            ++external;
        }

        std::size_t words = tokenize(anchor.text).size();
        anchor_tokens += words;
        if (words > 0) {
            ++anchors_with_text;
            anchors_with_text_tokens += words;
        }
    }

    f[0] = static_cast<double>(internal);
    f[1] = static_cast<double>(self_ref);
    f[2] = static_cast<double>(external);

    std::size_t text_tokens = tokenize(doc.visible_text).size();
    f[3] = text_tokens == 0 ? 0.0
                            : 100.0 * static_cast<double>(anchor_tokens) / static_cast<double>(text_tokens);
    f[4] = anchors_with_text == 0 ? 0.0
                                  : static_cast<double>(anchors_with_text_tokens) /
                                        static_cast<double>(anchors_with_text);
    return f;
}

inline FeatureVector assemble(const std::array<double, kUrlFeatureCount>& url_f,
                              const std::array<double, kContentFeatureCount>& content_f,
                              const std::array<double, kLinkFeatureCount>& link_f) {
    FeatureVector vec;
    std::size_t k = 0;
    for (double v : url_f) vec.values[k++] = v;
    for (double v : content_f) vec.values[k++] = v;
    for (double v : link_f) vec.values[k++] = v;
    return vec;
}

/// Full per-page pipeline: parse, extract all three families, assemble.
inline FeatureVector extract_features(std::string_view raw_url, std::string_view html,
                                      const LexiconSet& lex, const SuffixTable& suffixes) {
    UrlParts url = parse_url(raw_url, suffixes);
    PageDocument doc = parse_html(html);
    return assemble(extract_url_features(url, raw_url, lex),
                    extract_content_features(doc, lex, suffixes),
                    extract_link_features(doc, url, suffixes));
}

}  // namespace webspam
