#include <doctest.h>

#include <regex>
#include <set>

#include "obl/catalog.hpp"
#include "obl/io.hpp"

using namespace obl;

TEST_CASE("every catalog stanza round-trips") {
  for (const CatalogEntry& e : catalog()) {
    CAPTURE(e.name);
    const AugmentedOpenBook book = parse_book(e.stanza);
    CHECK(format_book(book) == e.stanza);
    CHECK(parse_book(format_book(book)) == book);
  }
}

TEST_CASE("hand-written stanzas") {
  const AugmentedOpenBook b = parse_book(R"(# a comment
surface g=0 b=2
ring * h0+ * h0-
curve core word +0
phi = T(core)^-1 T(core) T(core)^-1
arc across from b0.0 to b1.0 word
gamma = [across]
L = [core]
)");
  CHECK(b.surface.genus() == 0);
  CHECK(b.monodromy.word().size() == 3);
  CHECK(b.monodromy.word()[0].power == -1);
  CHECK(b.gamma.size() == 1);
  CHECK(b.l_system.closed.size() == 1);
  CHECK(parse_book(format_book(b)) == b);
  const AugmentedOpenBook plain = parse_book("surface g=1 b=1\nphi = id\n");
  CHECK(plain.surface == CombSurface::build(1, 1));
  CHECK(plain.monodromy.is_identity_word());
}

TEST_CASE("malformed stanzas name the offending line") {
  const auto line_of = [](const std::string& text) {
    try {
      parse_book(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("garbage") == 1);
  CHECK(line_of("surface g=0 b=2\nphi = T(x)\n") == 2);
  CHECK(line_of("surface g=0 b=2\nring h0+ h0- *\nphi = id\narc a from b0.0 to b0.3 word\n") == 4);
  CHECK(line_of("surface g=1 b=1\nring h0+ h0-\nphi = id\n") == 2);
  CHECK(line_of("surface g=0 b=1\n") == 1);
  CHECK(line_of("surface g=0 b=2\nphi = id\nbogus line\n") == 3);
  CHECK(line_of("surface g=0 b=2\ncurve c word +7\nphi = id\n") == 2);
  CHECK(line_of("surface g=0 b=2\nring * * h0+ h0-\narc a from b0.0 to b0.1 word\narc b from b0.0 to b0.1 word\n"
                "phi = id\ngamma = [a, b]\n") > 0);
}

TEST_CASE("certificates round-trip and verify after parsing") {
  const AugmentedOpenBook neg = parse_book(catalog_entry("annulus-tau-inverse").stanza);
  const SearchInput in = search_input(neg);
  const Certificate planted = negative_stab_bigon(in.book, in.basis.front(), CurveSystem{{}, {ClosedCurve{{{0, 1}}}}});
  const std::string text = format_certificate(planted);
  const Certificate back = parse_certificate(text);
  CHECK(back == planted);
  CHECK(format_certificate(back) == text);
  CHECK(verify(in.book, back).ok);
  CHECK(verify(neg, back).ok);
}

TEST_CASE("damaged certificates are rejected structurally") {
  const AugmentedOpenBook neg = parse_book(catalog_entry("annulus-tau-inverse").stanza);
  const SearchInput in = search_input(neg);
  const std::string text = format_certificate(negative_stab_bigon(in.book, in.basis.front()));
  for (std::size_t cut = 0; cut + 1 < text.size(); cut += 7)
    CHECK_THROWS_AS(parse_certificate(text.substr(0, cut)), ParseError);
  CHECK_THROWS_AS(parse_certificate(std::regex_replace(text, std::regex("v1"), "v9")), ParseError);
  CHECK_THROWS_AS(parse_certificate(std::regex_replace(text, std::regex("mask 000"), "mask 00")), ParseError);
  CHECK_THROWS_AS(parse_certificate(std::regex_replace(text, std::regex("x0\\.0\\.0"), "q0.0.0")), ParseError);
}

TEST_CASE("json carries the stanza and verdict") {
  const AugmentedOpenBook book = parse_book(catalog_entry("annulus-neg-stabilized-3x").stanza);
  const auto j = to_json(book);
  CHECK(j["stanza"] == format_book(book));
  CHECK(j["genus"] == 2);
  const auto v = to_json(find_overtwisted_region(book));
  CHECK(v["found"] == true);
  CHECK(v["region"]["sides"] == 2);
}

TEST_CASE("svg uses three stroke weights and is deterministic") {
  const AugmentedOpenBook disc = parse_book(catalog_entry("disc-id").stanza);
  const std::string svg = render_svg(disc);
  CHECK(svg == render_svg(disc));
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::set<std::string> widths;
  const std::regex w("stroke-width=\"([0-9.]+)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), w); it != std::sregex_iterator(); ++it)
    widths.insert((*it)[1]);
  CHECK(widths.size() == 3);
}

TEST_CASE("svg labels crossings with their signs") {
  const AugmentedOpenBook book = parse_book(catalog_entry("annulus-neg-stabilized-3x").stanza);
  const std::string svg = render_svg(book);
  CHECK(svg.find(">&#8722;</text>") != std::string::npos);
  CHECK(svg.find(">+</text>") != std::string::npos);
  CHECK(svg.find(">h0+</text>") != std::string::npos);
  RenderOptions bare;
  bare.labels = false;
  CHECK(render_svg(book, bare).find(">&#8722;</text>") == std::string::npos);
}
