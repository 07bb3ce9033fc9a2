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

// Absolute-URL decomposition: scheme, host labels, public suffix, registered
// domain, subdomains. The suffix table is a plain snapshot file (one suffix
// per line); the embedded default can be overridden at load time.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "webspam/errors.hpp"
#include "webspam/text.hpp"

namespace webspam {

class SuffixTable {
public:
    /// Parse "one suffix per line" text. '#' starts a comment, blank lines are
    /// skipped. Entries must be lowercase with no leading/trailing dots.
    static SuffixTable from_lines(std::string_view body, std::string_view origin = "<memory>") {
        SuffixTable table;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t nl = body.find('\n', pos);
            std::string_view line = body.substr(pos, nl == std::string_view::npos ? body.size() - pos : nl - pos);
            pos = (nl == std::string_view::npos) ? body.size() + 1 : nl + 1;
            ++line_no;
            if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            std::string_view entry = text::trim(line);
            if (entry.empty()) continue;
            validate_entry(entry, origin, line_no);
            table.entries_.emplace(entry);
        }
        if (table.entries_.empty())
            throw ParseError("suffix table " + std::string(origin) + " has no entries");
        return table;
    }

    static SuffixTable from_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open suffix file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_lines(buf.str(), path);
    }

    /// Embedded snapshot covering common generic and country-code suffixes.
    static const SuffixTable& builtin();

    bool contains(std::string_view suffix) const {
        return entries_.find(std::string(suffix)) != entries_.end();
    }

    std::size_t size() const { return entries_.size(); }

private:
    static void validate_entry(std::string_view entry, std::string_view origin, std::size_t line_no) {
        auto fail = [&](const char* why) {
            throw ParseError("suffix table " + std::string(origin) + " line " +
                             std::to_string(line_no) + ": " + why + ": '" + std::string(entry) + "'");
        };
        if (entry.front() == '.' || entry.back() == '.') fail("leading/trailing dot");
        for (char c : entry) {
            if (c >= 'A' && c <= 'Z') fail("uppercase not allowed");
            if (text::is_ascii_space(c)) fail("embedded whitespace");
        }
    }

    std::unordered_set<std::string> entries_;
};

struct UrlParts {
    std::string scheme;                       // lowercase, e.g. "https"
    std::string host;                         // lowercase, no port/userinfo
    std::vector<std::string> host_labels;     // host split on '.'
    std::string public_suffix;                // "" for IP hosts
    std::string registered_domain;            // registrable label + public suffix
    std::vector<std::string> subdomain_labels;// labels left of registered_domain
    std::string path;                         // verbatim, includes query/fragment
    bool is_ip_host = false;
};

/// True iff host is a dotted-quad IPv4 address or a bracketed IPv6 literal.
inline bool is_ip_literal(std::string_view host) {
    auto valid_ipv4 = [](std::string_view s) {
        int octets = 0;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t dot = s.find('.', pos);
            std::string_view part = s.substr(pos, dot == std::string_view::npos ? s.size() - pos : dot - pos);
            if (part.empty() || part.size() > 3) return false;
            for (char c : part)
                if (!text::is_ascii_digit(c)) return false;
            if (part.size() > 1 && part[0] == '0') return false;  // no leading zeros
            int value = 0;
            for (char c : part) value = value * 10 + (c - '0');
            if (value > 255) return false;
            ++octets;
            if (dot == std::string_view::npos) break;
            pos = dot + 1;
            if (pos > s.size()) return false;
        }
        return octets == 4;
    };

    auto valid_group = [](std::string_view g) {
        if (g.empty() || g.size() > 4) return false;
        for (char c : g) {
            bool hex = text::is_ascii_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
            if (!hex) return false;
        }
        return true;
    };

    auto count_groups = [&](std::string_view part, bool allow_ipv4_tail, int& groups) {
        groups = 0;
        if (part.empty()) return true;
        std::size_t pos = 0;
        while (true) {
            std::size_t colon = part.find(':', pos);
            std::string_view g = part.substr(pos, colon == std::string_view::npos ? part.size() - pos : colon - pos);
            bool last = colon == std::string_view::npos;
            if (last && allow_ipv4_tail && g.find('.') != std::string_view::npos) {
                if (!valid_ipv4(g)) return false;
                groups += 2;
                return true;
            }
            if (!valid_group(g)) return false;
            ++groups;
            if (last) return true;
            pos = colon + 1;
        }
    };

    if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
        std::string_view inner = host.substr(1, host.size() - 2);
        std::size_t dc = inner.find("::");
        if (dc != std::string_view::npos) {
            if (inner.find("::", dc + 1) != std::string_view::npos) return false;
            int left = 0, right = 0;
            if (!count_groups(inner.substr(0, dc), false, left)) return false;
            if (!count_groups(inner.substr(dc + 2), true, right)) return false;
            return left + right <= 7;
        }
        int groups = 0;
        if (!count_groups(inner, true, groups)) return false;
        return groups == 8;
    }
    return valid_ipv4(host);
}

namespace detail {

inline bool valid_scheme(std::string_view s) {
    if (s.empty() || !text::is_ascii_alpha(s[0])) return false;
    for (char c : s)
        if (!text::is_ascii_alnum(c) && c != '+' && c != '-' && c != '.') return false;
    return true;
}

inline std::vector<std::string> split_labels(std::string_view host) {
    std::vector<std::string> labels;
    std::size_t pos = 0;
    while (pos <= host.size()) {
        std::size_t dot = host.find('.', pos);
        if (dot == std::string_view::npos) {
            labels.emplace_back(host.substr(pos));
            break;
        }
        labels.emplace_back(host.substr(pos, dot - pos));
        pos = dot + 1;
        if (pos > host.size()) labels.emplace_back("");
    }
    return labels;
}

inline std::string join_labels(const std::vector<std::string>& labels, std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < labels.size(); ++i) {
        if (i > from) out.push_back('.');
        out += labels[i];
    }
    return out;
}

}  // namespace detail

/// Decompose an absolute URL. Throws ParseError on inputs without a scheme or
/// host. The host is lowercased; the path (query and fragment included) is
/// kept verbatim. Userinfo and port are accepted and dropped from the host.
inline UrlParts parse_url(std::string_view raw,
                          const SuffixTable& suffixes = SuffixTable::builtin()) {
    std::string_view s = text::trim(raw);
    auto fail = [&raw](const std::string& why) {
        throw ParseError("cannot parse URL '" + std::string(raw) + "': " + why);
    };

    std::size_t scheme_end = s.find("://");
    if (scheme_end == std::string_view::npos) fail("missing scheme");
    std::string_view scheme_part = s.substr(0, scheme_end);
    if (!detail::valid_scheme(scheme_part)) fail("malformed scheme");

    std::string_view rest = s.substr(scheme_end + 3);
    std::size_t authority_end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, authority_end);
    std::string_view path = authority_end == std::string_view::npos ? std::string_view{} : rest.substr(authority_end);

    if (std::size_t at = authority.rfind('@'); at != std::string_view::npos)
        authority = authority.substr(at + 1);

    std::string_view host_part;
    if (!authority.empty() && authority.front() == '[') {
        std::size_t close = authority.find(']');
        if (close == std::string_view::npos) fail("unterminated IPv6 bracket");
        host_part = authority.substr(0, close + 1);
    } else if (std::size_t colon = authority.find(':'); colon != std::string_view::npos) {
        host_part = authority.substr(0, colon);
    } else {
        host_part = authority;
    }
    if (host_part.empty()) fail("empty host");

    UrlParts parts;
    parts.scheme = text::to_lower(scheme_part);
    parts.host = text::to_lower(host_part);
    parts.path = std::string(path);
    if (parts.host.size() > 1 && parts.host.back() == '.') parts.host.pop_back();

    parts.host_labels = detail::split_labels(parts.host);
    for (const auto& label : parts.host_labels)
        if (label.empty()) fail("empty host label");

    parts.is_ip_host = is_ip_literal(parts.host);
    if (parts.is_ip_host) {
        parts.registered_domain = parts.host;
        return parts;
    }

    // Longest table suffix that still leaves one registrable label. Hosts
    // matching nothing fall back to the implicit "last label is the suffix"
    // rule.
    const auto& labels = parts.host_labels;
    std::size_t suffix_start = labels.size();  // index of the first suffix label
    for (std::size_t i = 1; i < labels.size(); ++i) {
        if (suffixes.contains(detail::join_labels(labels, i))) {
            suffix_start = i;
            break;  // smallest i == longest suffix
        }
    }
    if (suffix_start == labels.size() && labels.size() > 1)
        suffix_start = labels.size() - 1;

    if (suffix_start >= labels.size()) {
        // single-label host ("localhost"): degenerate, host is its own domain
        parts.public_suffix = parts.host;
        parts.registered_domain = parts.host;
        return parts;
    }

    parts.public_suffix = detail::join_labels(labels, suffix_start);
    std::size_t reg_start = suffix_start - 1;
    parts.registered_domain = detail::join_labels(labels, reg_start);
    parts.subdomain_labels.assign(labels.begin(), labels.begin() + reg_start);
    return parts;
}

/// The registrable label of a parsed URL: the part of registered_domain left
/// of the public suffix ("" when the host degenerates to a bare suffix or IP).
inline std::string_view registrable_label(const UrlParts& parts) {
    if (parts.is_ip_host || parts.registered_domain == parts.public_suffix) return {};
    std::size_t dot = parts.registered_domain.find('.');
    return std::string_view(parts.registered_domain).substr(0, dot);
}

inline const SuffixTable& SuffixTable::builtin() {
    static const SuffixTable table = SuffixTable::from_lines(R"(# Embedded public-suffix snapshot (overridable via --suffix-file).
# Generic TLDs
com
net
org
info
biz
name
pro
mobi
tel
asia
cat
jobs
travel
museum
aero
coop
post
xxx
edu
gov
mil
int
io
ai
app
dev
xyz
online
site
club
shop
store
top
icu
vip
work
live
tech
fun
space
website
press
news
blog
cloud
art
page
link
click
buzz
loan
win
bid
men
date
stream
download
review
trade
science
party
faith
accountant
racing
cricket
us
me
tv
cc
ws
co
# Country codes and their second-level registries
uk
co.uk
org.uk
net.uk
ac.uk
gov.uk
me.uk
sch.uk
de
fr
nl
it
es
pt
se
no
fi
dk
pl
cz
ch
at
be
eu
ie
gr
hu
ro
sk
lt
lv
ee
ru
su
ua
by
jp
co.jp
ne.jp
or.jp
ac.jp
go.jp
cn
com.cn
net.cn
org.cn
gov.cn
edu.cn
hk
com.hk
in
co.in
net.in
org.in
ac.in
gov.in
nic.in
au
com.au
net.au
org.au
edu.au
gov.au
nz
co.nz
net.nz
org.nz
br
com.br
net.br
org.br
gov.br
mx
com.mx
gob.mx
ca
kr
co.kr
tw
com.tw
sg
com.sg
za
co.za
tr
com.tr
il
co.il
ar
com.ar
cl
id
co.id
my
com.my
th
co.th
vn
com.vn
ph
pk
sa
ae
eg
ng
ke
co.ke
)");
    return table;
}

}  // namespace webspam
