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

// Minimal HTTP(S) GET for scoring live pages: bounded time, bounded body,
// manual redirect following so the final URL (and its scheme) is known.

#pragma once

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <httplib.h>

#include "webspam/features.hpp"
#include "webspam/text.hpp"

namespace webspam {

enum class FetchErrorKind {
    BadUrl,
    Connection,
    Timeout,
    TooManyRedirects,
    HttpStatus,
    Oversized,
};

class FetchError : public std::runtime_error {
public:
    FetchError(FetchErrorKind kind, std::string message, int status = 0)
        : std::runtime_error(std::move(message)), kind_(kind), status_(status) {}

    FetchErrorKind kind() const { return kind_; }
    int status() const { return status_; }  // only meaningful for HttpStatus

private:
    FetchErrorKind kind_;
    int status_;
};

struct FetchOptions {
    std::int64_t timeout_ms = 10000;
    std::size_t max_redirects = 5;
    std::size_t max_bytes = 5 * 1024 * 1024;
    std::string user_agent = "webspam-scanner/1.0";
    bool verify_tls = true;
};

struct FetchResult {
    std::string url;   // final URL after redirects
    std::string html;  // body, possibly truncated at max_bytes
    int status = 0;
    std::int64_t elapsed_ms = 0;
};

namespace detail {

struct FetchUrl {
    std::string scheme;     // http | https
    std::string host_port;  // host[:port] as given, host lowercased
    std::string path_query; // begins with '/', fragment stripped
};

inline FetchUrl split_fetch_url(std::string_view raw) {
    std::string_view s = text::trim(raw);
    std::size_t scheme_end = s.find("://");
    if (scheme_end == std::string_view::npos)
        throw FetchError(FetchErrorKind::BadUrl, "not an absolute URL: " + std::string(raw));
    FetchUrl u;
    u.scheme = text::to_lower(s.substr(0, scheme_end));
    if (u.scheme != "http" && u.scheme != "https")
        throw FetchError(FetchErrorKind::BadUrl, "unsupported scheme in " + std::string(raw));
    std::string_view rest = s.substr(scheme_end + 3);
    std::size_t auth_end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, auth_end);
    if (std::size_t at = authority.rfind('@'); at != std::string_view::npos)
        authority = authority.substr(at + 1);
    if (authority.empty())
        throw FetchError(FetchErrorKind::BadUrl, "empty host in " + std::string(raw));
    u.host_port = text::to_lower(authority);
    if (auth_end == std::string_view::npos) {
        u.path_query = "/";
    } else {
        std::string_view tail = rest.substr(auth_end);
        tail = tail.substr(0, tail.find('#'));
        u.path_query = tail.empty() || tail[0] == '?' ? "/" + std::string(tail) : std::string(tail);
    }
    return u;
}

inline std::string resolve_location(const FetchUrl& base, std::string_view location) {
    std::string_view loc = text::trim(location);
    if (loc.find("://") != std::string_view::npos) return std::string(loc);
    if (loc.size() >= 2 && loc[0] == '/' && loc[1] == '/') return base.scheme + ":" + std::string(loc);
    std::string origin = base.scheme + "://" + base.host_port;
    if (!loc.empty() && loc[0] == '/') return origin + std::string(loc);
    std::string_view base_path = std::string_view(base.path_query);
    base_path = base_path.substr(0, base_path.find('?'));
    std::size_t dir = base_path.rfind('/');
    std::string merged = std::string(base_path.substr(0, dir + 1)) + std::string(loc);
    return origin + remove_dot_segments(merged);
}

inline bool is_redirect(int status) {
    return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

}  // namespace detail

/// GET a page, following up to max_redirects redirects by hand. A declared
/// Content-Length beyond max_bytes is an Oversized error; bodies of unknown
/// length are truncated at max_bytes and still count as success.
inline FetchResult fetch(const std::string& url, const FetchOptions& opts = {}) {
    auto started = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                     started)
            .count();
    };

    std::string current = url;
    for (std::size_t hop = 0; hop <= opts.max_redirects; ++hop) {
        detail::FetchUrl parts = detail::split_fetch_url(current);

        httplib::Client client(parts.scheme + "://" + parts.host_port);
        client.set_follow_location(false);
        client.set_connection_timeout(std::chrono::milliseconds(opts.timeout_ms));
        client.set_read_timeout(std::chrono::milliseconds(opts.timeout_ms));
        client.set_write_timeout(std::chrono::milliseconds(opts.timeout_ms));
        client.enable_server_certificate_verification(opts.verify_tls);

        httplib::Headers headers{{"User-Agent", opts.user_agent}};

        int status = 0;
        std::string location;
        std::string body;
        bool oversized = false;
        bool truncated = false;

        auto on_response = [&](const httplib::Response& response) {
            status = response.status;
            location = response.get_header_value("Location");
            if (response.has_header("Content-Length")) {
                auto declared = response.get_header_value_u64("Content-Length");
                if (declared > opts.max_bytes) {
                    oversized = true;
                    return false;
                }
            }
            return true;
        };
        auto on_content = [&](const char* data, std::size_t len) {
            std::size_t room = opts.max_bytes - body.size();
            if (len >= room) {
                body.append(data, room);
                truncated = true;
                return false;
            }
            body.append(data, len);
            return true;
        };

        httplib::Result result = client.Get(parts.path_query, headers, on_response, on_content);

        if (oversized)
            throw FetchError(FetchErrorKind::Oversized,
                             "response for " + current + " exceeds " + std::to_string(opts.max_bytes) +
                                 " bytes");
        if (!result && !(truncated && status != 0)) {
            switch (result.error()) {
                case httplib::Error::ConnectionTimeout:
                case httplib::Error::Read:
                case httplib::Error::Write:
                    throw FetchError(FetchErrorKind::Timeout,
                                     "timed out fetching " + current + " after " +
                                         std::to_string(opts.timeout_ms) + " ms");
                default:
                    throw FetchError(FetchErrorKind::Connection,
                                     "connection failed for " + current + ": " +
                                         httplib::to_string(result.error()));
            }
        }

        if (detail::is_redirect(status)) {
            if (location.empty())
                throw FetchError(FetchErrorKind::HttpStatus,
                                 "redirect without Location from " + current, status);
            if (hop == opts.max_redirects)
                throw FetchError(FetchErrorKind::TooManyRedirects,
                                 "more than " + std::to_string(opts.max_redirects) +
                                     " redirects from " + url);
            current = detail::resolve_location(parts, location);
            continue;
        }
        if (status < 200 || status >= 300)
            throw FetchError(FetchErrorKind::HttpStatus,
                             "HTTP " + std::to_string(status) + " from " + current, status);

        FetchResult out;
        out.url = current;
        out.html = std::move(body);
        out.status = status;
        out.elapsed_ms = elapsed_ms();
        return out;
    }
    throw FetchError(FetchErrorKind::TooManyRedirects,
                     "more than " + std::to_string(opts.max_redirects) + " redirects from " + url);
}

}  // namespace webspam
