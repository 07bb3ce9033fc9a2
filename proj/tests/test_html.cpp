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

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include <webspam/html.hpp>

using webspam::PageDocument;
using webspam::parse_html;
using webspam::tokenize;

TEST_CASE("visible text is collapsed and tag boundaries separate words") {
    const PageDocument d = parse_html("<p>hello</p><p>world</p>");
    CHECK(d.visible_text == "hello world");

    // No space in the source, but the tag boundary still separates tokens.
    const PageDocument e = parse_html("a<b>b</b>c");
    CHECK(e.visible_text == "a b c");
}

TEST_CASE("script style noscript and comments are excluded from text") {
    const PageDocument d = parse_html(
        "<body>before"
        "<script>var hidden = 'nope';</script>"
        "<style>.x { color: red }</style>"
        "<noscript>fallback</noscript>"
        "<!-- comment words -->"
        "after</body>");
    CHECK(d.visible_text == "before after");
    REQUIRE(d.inline_scripts.size() == 1);
    CHECK(d.inline_scripts[0] == "var hidden = 'nope';");
}

TEST_CASE("raw text scanning is not fooled by lookalike closers") {
    const PageDocument d = parse_html(
        "<script>if (a </scriptx) {} </script>visible");
    CHECK(d.visible_text == "visible");

    // Case-insensitive close tag, attributes/whitespace tolerated.
    const PageDocument e = parse_html("<STYLE>x</StYlE >ok");
    CHECK(e.visible_text == "ok");
}

TEST_CASE("title is captured separately and first title wins") {
    const PageDocument d = parse_html(
        "<title>  First   Title </title><title>second</title><p>body</p>");
    CHECK(d.title == "First Title");
    CHECK(d.visible_text == "body");
}

TEST_CASE("meta description is extracted case-insensitively") {
    const PageDocument d = parse_html(
        "<meta NAME=\"Description\" CONTENT=\"A short page summary.\">");
    CHECK(d.meta_description == "A short page summary.");

    const PageDocument e = parse_html("<meta name=keywords content=spam>");
    CHECK(e.meta_description.empty());
}

TEST_CASE("headings videos and embeds are counted") {
    const PageDocument d = parse_html(
        "<h1>One</h1><h2>Two</h2><H2>Three</H2>"
        "<video src=\"/v.mp4\"></video>"
        "<iframe src=\"https://www.youtube.com/embed/x\"></iframe>"
        "<embed src=\"http://ads.example.com/e.swf\">"
        "<object data=\"http://other.example.org/o\"></object>"
        "<source src=\"/alt.webm\">");
    CHECK(d.h1_count == 1);
    CHECK(d.h2_count == 2);
    CHECK(d.native_video_count == 1);
    // iframe + embed + object + source src/data, plus the video's own src.
    CHECK(d.embed_sources.size() == 5);
}

TEST_CASE("img tags collect src and alt presence") {
    const PageDocument d = parse_html(
        "<img src=\"a.png\" alt=\"a picture\">"
        "<img src=\"b.png\" alt=\"\">"
        "<img src=\"c.png\" alt=\"   \">"
        "<img src=\"d.png\">");
    REQUIRE(d.images.size() == 4);
    CHECK(d.images[0].has_alt);
    CHECK_FALSE(d.images[1].has_alt);  // empty alt counts as absent
    CHECK_FALSE(d.images[2].has_alt);  // whitespace-only alt counts as absent
    CHECK_FALSE(d.images[3].has_alt);
    CHECK(d.images[0].alt == "a picture");
}

TEST_CASE("anchors capture href and collapsed inner text") {
    const PageDocument d = parse_html(
        "<a href=\"/x\">  go <b>here</b> now </a>"
        "<a href=\"http://e.com\"></a>"
        "<a>no href is skipped</a>");
    REQUIRE(d.anchors.size() == 2);
    CHECK(d.anchors[0].href == "/x");
    CHECK(d.anchors[0].text == "go here now");
    CHECK(d.anchors[1].href == "http://e.com");
    CHECK(d.anchors[1].text.empty());
    // Anchor text still appears in the page's visible text.
    CHECK(d.visible_text.find("go here now") != std::string::npos);
}

TEST_CASE("a nested open anchor finalizes the previous one") {
    const PageDocument d = parse_html(
        "<a href=\"/one\">first <a href=\"/two\">second</a>");
    REQUIRE(d.anchors.size() == 2);
    CHECK(d.anchors[0].text == "first");
    CHECK(d.anchors[1].text == "second");
}

TEST_CASE("script src attribute is collected separately from inline bodies") {
    const PageDocument d = parse_html(
        "<script src=\"http://pagead2.googlesyndication.com/show_ads.js\"></script>"
        "<script>inline();</script>");
    REQUIRE(d.script_sources.size() == 1);
    CHECK(d.script_sources[0] == "http://pagead2.googlesyndication.com/show_ads.js");
    // A script with src ignores its body, as a browser would.
    REQUIRE(d.inline_scripts.size() == 1);
    CHECK(d.inline_scripts[0] == "inline();");
}

TEST_CASE("entities are decoded, nbsp becomes plain space") {
    const PageDocument d = parse_html("a&amp;b &lt;tag&gt; &quot;q&quot; &apos;s&apos;");
    CHECK(d.visible_text == "a&b <tag> \"q\" 's'");

    const PageDocument e = parse_html("one&nbsp;two");
    CHECK(e.visible_text == "one two");

    const PageDocument n = parse_html("&#65;&#x42;&#67;");
    CHECK(n.visible_text == "ABC");

    // Unknown or unterminated entities pass through verbatim.
    const PageDocument u = parse_html("&bogus; &amp tail");
    CHECK(u.visible_text == "&bogus; &amp tail");

    // Out-of-range numeric references decode to U+FFFD.
    const PageDocument o = parse_html("&#1114112;");
    CHECK(o.visible_text == "\xEF\xBF\xBD");
}

TEST_CASE("tag soup does not crash and keeps sensible text") {
    const PageDocument d = parse_html(
        "<b><i>bold italic</b></i> stray > bracket <notatag attr &=\"1\"> "
        "<p unclosed <div>deep</p>");
    CHECK(d.visible_text.find("bold italic") != std::string::npos);
    CHECK(d.visible_text.find("deep") != std::string::npos);

    // Unterminated markup at end of input.
    CHECK(parse_html("text <a href=").visible_text == "text");
    CHECK(parse_html("x <!-- never closed").visible_text == "x");
    CHECK(parse_html("<script>never closed").visible_text.empty());
}

TEST_CASE("cdata and doctype are skipped") {
    const PageDocument d = parse_html(
        "<!DOCTYPE html><![CDATA[ not text ]]><p>real</p>");
    CHECK(d.visible_text == "real");
}

TEST_CASE("html_bytes is the raw input length") {
    const std::string html = "<p>caf\xC3\xA9</p>";
    CHECK(parse_html(html).html_bytes == html.size());
    CHECK(parse_html("").html_bytes == 0);
}

TEST_CASE("malformed utf8 in markup is sanitized not fatal") {
    const PageDocument d = parse_html("<p>ok\x80\xFEndash</p>");
    CHECK(d.visible_text.find("ok") != std::string::npos);
    CHECK(d.visible_text.find("\xEF\xBF\xBD") != std::string::npos);
}

TEST_CASE("attribute parsing handles quoting styles") {
    const PageDocument d = parse_html(
        "<a href='/single'>s</a>"
        "<a href=/bare>b</a>"
        "<a href=\"/with space\">w</a>"
        "<a href = \"/spaced\" >sp</a>");
    REQUIRE(d.anchors.size() == 4);
    CHECK(d.anchors[0].href == "/single");
    CHECK(d.anchors[1].href == "/bare");
    CHECK(d.anchors[2].href == "/with space");
    CHECK(d.anchors[3].href == "/spaced");
}

TEST_CASE("self closing and void tags do not break structure") {
    const PageDocument d = parse_html("<br/>a<img src=\"x.png\"/><hr>b");
    CHECK(d.visible_text == "a b");
    CHECK(d.images.size() == 1);
}

TEST_CASE("tokenize splits on non-word bytes and lowercases") {
    const std::vector<webspam::Token> toks = tokenize("It's a Test-Case, 42!");
    std::vector<std::string> lower;
    for (const auto& t : toks) lower.push_back(t.lower);
    CHECK(lower == std::vector<std::string>{"it", "s", "a", "test", "case", "42"});

    CHECK(tokenize("").empty());
    CHECK(tokenize("  .,;  ").empty());

    // Multi-byte letters stay inside one token.
    const auto caf = tokenize("caf\xC3\xA9 bar");
    REQUIRE(caf.size() == 2);
    CHECK(caf[0].text == "caf\xC3\xA9");
}
