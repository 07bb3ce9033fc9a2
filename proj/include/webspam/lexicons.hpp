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

// Word and host lists the content/URL features match against. Embedded
// defaults ship with the library; any list can be replaced by a file in a
// lexicon directory (one entry per line, lowercase, '#' comments).

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "webspam/errors.hpp"
#include "webspam/text.hpp"

namespace webspam {

struct LexiconSet {
    std::unordered_set<std::string> stop_words;
    std::vector<std::string> cta_phrases;  // ordered; multi-word entries allowed
    std::unordered_set<std::string> ad_hosts;
    std::unordered_set<std::string> video_hosts;
    std::unordered_set<std::string> top500;
    std::unordered_set<std::string> authoritative_tlds;

    static const LexiconSet& builtin();

    /// Overlay files from `dir` on top of the embedded defaults. Only the
    /// files present there replace their list; the rest keep the defaults.
    static LexiconSet from_dir(const std::string& dir);
};

namespace detail {

inline std::vector<std::string> parse_lexicon_lines(std::string_view body, std::string_view origin,
                                                    bool allow_spaces) {
    std::vector<std::string> out;
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
        for (char c : entry) {
            if (c >= 'A' && c <= 'Z')
                throw ParseError("lexicon " + std::string(origin) + " line " + std::to_string(line_no) +
                                 ": entries must be lowercase: '" + std::string(entry) + "'");
            if (!allow_spaces && text::is_ascii_space(c))
                throw ParseError("lexicon " + std::string(origin) + " line " + std::to_string(line_no) +
                                 ": entry contains whitespace: '" + std::string(entry) + "'");
        }
        out.emplace_back(entry);
    }
    return out;
}

inline std::vector<std::string> load_lexicon_file(const std::filesystem::path& path, bool allow_spaces) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_lexicon_lines(buf.str(), path.string(), allow_spaces);
}

inline std::unordered_set<std::string> to_set(std::vector<std::string> entries) {
    return std::unordered_set<std::string>(std::make_move_iterator(entries.begin()),
                                           std::make_move_iterator(entries.end()));
}

inline constexpr std::string_view kStopWords = R"(a about above after again against all am an and
any are aren as at be because been before being below between both but by can
cannot could couldn d did didn do does doesn doing don down during each few
for from further had hadn has hasn have haven having he her here hers herself
him himself his how i if in into is isn it its itself just ll m ma me mightn
more most mustn my myself needn no nor not now o of off on once only or other
our ours ourselves out over own re s same shan she should shouldn so some
such t than that the their theirs them themselves then there these they this
those through to too under until up upon ve very was wasn we were weren what
when where which while who whom why will with won would wouldn you your yours
yourself yourselves)";

inline constexpr std::string_view kCtaPhrases = R"(act now
buy now
register immediately
limited offer
last chance)";

inline constexpr std::string_view kAdHosts = R"(doubleclick.net
googlesyndication.com
googleadservices.com
adnxs.com
adsrvr.org
rubiconproject.com
pubmatic.com
openx.net
criteo.com
criteo.net
taboola.com
outbrain.com
revcontent.com
mgid.com
propellerads.com
popads.net
popcash.net
adcash.com
adsterra.com
zedo.com
advertising.com
yieldmanager.com
casalemedia.com
contextweb.com
lijit.com
sharethrough.com
smartadserver.com
adform.net
bidswitch.net
amazon-adsystem.com
moatads.com
exoclick.com
juicyads.com)";

inline constexpr std::string_view kVideoHosts = R"(youtube.com
youtu.be
vimeo.com
dailymotion.com
twitch.tv
wistia.com
wistia.net
brightcove.com
brightcove.net
jwplatform.com
metacafe.com
veoh.com
rutube.ru
youku.com
bilibili.com
streamable.com
vevo.com)";

inline constexpr std::string_view kTop500 = R"(google.com
youtube.com
facebook.com
twitter.com
instagram.com
baidu.com
wikipedia.org
yandex.ru
yahoo.com
amazon.com
tiktok.com
whatsapp.com
reddit.com
linkedin.com
netflix.com
bing.com
microsoft.com
office.com
live.com
pinterest.com
ebay.com
apple.com
aliexpress.com
alibaba.com
taobao.com
qq.com
sohu.com
weibo.com
jd.com
vk.com
mail.ru
duckduckgo.com
twitch.tv
roblox.com
github.com
stackoverflow.com
wordpress.com
blogspot.com
tumblr.com
paypal.com
walmart.com
target.com
bestbuy.com
imdb.com
fandom.com
quora.com
medium.com
nytimes.com
cnn.com
bbc.co.uk
theguardian.com
foxnews.com
washingtonpost.com
espn.com
booking.com
airbnb.com
tripadvisor.com
zoom.us
canva.com
spotify.com
soundcloud.com
dropbox.com
adobe.com
salesforce.com
samsung.com
naver.com
daum.net
rakuten.co.jp
amazon.co.jp
amazon.de
amazon.co.uk
google.co.in
google.de
google.co.uk
flipkart.com
indiatimes.com
etsy.com
craigslist.org
zillow.com
accuweather.com
weather.com
chase.com
instructure.com
coursera.org
udemy.com
archive.org
mozilla.org
cloudflare.com)";

inline constexpr std::string_view kAuthoritativeTlds = R"(gov
edu
mil
int
ac.uk
gov.uk
ac.in
gov.in
edu.au
gov.au
ac.jp
go.jp
gov.cn
edu.cn
gov.br
gob.mx)";

}  // namespace detail

inline const LexiconSet& LexiconSet::builtin() {
    static const LexiconSet set = [] {
        LexiconSet lex;
        // The stop-word block is whitespace-separated rather than line-based.
        std::size_t i = 0;
        while (i < detail::kStopWords.size()) {
            if (text::is_ascii_space(detail::kStopWords[i])) { ++i; continue; }
            std::size_t j = i;
            while (j < detail::kStopWords.size() && !text::is_ascii_space(detail::kStopWords[j])) ++j;
            lex.stop_words.emplace(detail::kStopWords.substr(i, j - i));
            i = j;
        }
        lex.cta_phrases = detail::parse_lexicon_lines(detail::kCtaPhrases, "<cta_phrases>", true);
        lex.ad_hosts = detail::to_set(detail::parse_lexicon_lines(detail::kAdHosts, "<ad_hosts>", false));
        lex.video_hosts = detail::to_set(detail::parse_lexicon_lines(detail::kVideoHosts, "<video_hosts>", false));
        lex.top500 = detail::to_set(detail::parse_lexicon_lines(detail::kTop500, "<top500>", false));
        lex.authoritative_tlds =
            detail::to_set(detail::parse_lexicon_lines(detail::kAuthoritativeTlds, "<authoritative_tlds>", false));
        return lex;
    }();
    return set;
}

inline LexiconSet LexiconSet::from_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    LexiconSet lex = builtin();
    fs::path base(dir);
    if (!fs::is_directory(base)) throw IoError("lexicon directory not found: " + dir);
    auto maybe = [&](const char* file) -> std::vector<std::string> {
        fs::path p = base / file;
        if (!fs::exists(p)) return {};
        return detail::load_lexicon_file(p, true);
    };
    if (auto v = maybe("stop_words.txt"); !v.empty()) lex.stop_words = detail::to_set(std::move(v));
    if (auto v = maybe("cta_phrases.txt"); !v.empty()) lex.cta_phrases = std::move(v);
    if (auto v = maybe("ad_hosts.txt"); !v.empty()) lex.ad_hosts = detail::to_set(std::move(v));
    if (auto v = maybe("video_hosts.txt"); !v.empty()) lex.video_hosts = detail::to_set(std::move(v));
    if (auto v = maybe("top500.txt"); !v.empty()) lex.top500 = detail::to_set(std::move(v));
    if (auto v = maybe("authoritative_tlds.txt"); !v.empty())
        lex.authoritative_tlds = detail::to_set(std::move(v));
    return lex;
}

}  // namespace webspam
