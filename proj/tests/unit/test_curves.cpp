#include <doctest.h>

#include <random>

#include "obl/curves.hpp"

using namespace obl;

namespace {

Word random_word(std::mt19937& rng, int bands, int len) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back({static_cast<int>(rng() % bands), rng() % 2 ? 1 : -1});
  return w;
}

// Reference free reduction: repeatedly delete the first cancelling pair.
Word naive_reduce(Word w) {
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i + 1] == w[i].inverse()) {
        w.erase(w.begin() + i, w.begin() + i + 2);
        again = true;
        break;
      }
  }
  return w;
}

}  // namespace

TEST_CASE("free reduction agrees with the naive reference") {
  std::mt19937 rng(3);
  for (int t = 0; t < 2000; ++t) {
    const Word w = random_word(rng, 3, static_cast<int>(rng() % 10));
    const Word r = reduce(w);
    CHECK(r == naive_reduce(w));
    CHECK(is_reduced(r));
    CHECK(reduce(r) == r);
    CHECK(inverse(inverse(w)) == w);
    CHECK(reduce(inverse(w)) == inverse(r));
  }
}

TEST_CASE("cyclic reduction and least rotation") {
  CHECK(cyclic_reduce(parse_word("+0,+1,-0")) == parse_word("+1"));
  CHECK(cyclic_reduce(parse_word("+0,-0")).empty());
  std::mt19937 rng(5);
  for (int t = 0; t < 1000; ++t) {
    const Word w = cyclic_reduce(random_word(rng, 3, 1 + static_cast<int>(rng() % 8)));
    if (w.empty()) continue;
    CHECK(cyclic_reduce(w) == w);
    CHECK(w.front() != w.back().inverse());
    Word rot = w;
    std::rotate(rot.begin(), rot.begin() + static_cast<long>(rng() % w.size()), rot.end());
    CHECK(least_rotation(rot) == least_rotation(w));
    CHECK(least_rotation(w) <= w);
  }
}

TEST_CASE("canonical forms are idempotent and decide isotopy") {
  std::mt19937 rng(9);
  for (int t = 0; t < 1000; ++t) {
    const Word w = random_word(rng, 4, static_cast<int>(rng() % 8));
    const Arc a{0, 1, w};
    const Arc ca = canonicalize(a);
    CHECK(canonicalize(ca) == ca);
    CHECK(isotopic(a, ca));
    CHECK(ca.word == reduce(w));
    const ClosedCurve c{w};
    const ClosedCurve cc = canonicalize(c);
    CHECK(canonicalize(cc) == cc);
    CHECK(isotopic(c, cc));
    CHECK(isotopic(c, ClosedCurve{inverse(w)}));
  }
  CHECK_FALSE(isotopic(Arc{0, 1, {}}, Arc{1, 0, {}}));
  CHECK(isotopic_oriented(ClosedCurve{parse_word("+0,+1")}, ClosedCurve{parse_word("+1,+0")}));
  CHECK_FALSE(isotopic_oriented(ClosedCurve{parse_word("+0")}, ClosedCurve{parse_word("-0")}));
  CHECK(isotopic(ClosedCurve{parse_word("+0")}, ClosedCurve{parse_word("-0")}));
}

TEST_CASE("arc reversal inverts the word") {
  const Arc a{2, 5, parse_word("+0,-1,+2")};
  const Arc r = a.reversed();
  CHECK(r.start == 5);
  CHECK(r.end == 2);
  CHECK(r.word == inverse(a.word));
  CHECK(r.reversed() == a);
}

TEST_CASE("essential curves and proper powers") {
  CHECK(is_essential(ClosedCurve{parse_word("+0")}));
  CHECK_FALSE(is_essential(ClosedCurve{}));
  CHECK_FALSE(is_essential(ClosedCurve{parse_word("+0,-0")}));
  CHECK(is_proper_power(parse_word("+0,+1,+0,+1")));
  CHECK(is_proper_power(parse_word("+0,+0")));
  CHECK_FALSE(is_proper_power(parse_word("+0,+1")));
  CHECK_FALSE(is_proper_power(parse_word("+0,+0,+1")));
}

TEST_CASE("word text round-trips") {
  std::mt19937 rng(13);
  for (int t = 0; t < 500; ++t) {
    const Word w = random_word(rng, 12, static_cast<int>(rng() % 6));
    CHECK(parse_word(word_text(w)) == w);
  }
  CHECK(word_text(parse_word("+3, -10")) == "+3,-10");
  CHECK(parse_word("2") == parse_word("+2"));
  CHECK_THROWS_AS(parse_word("+x"), Error);
}

TEST_CASE("curves are checked against the surface") {
  std::vector<int> ms;
  const CombSurface s = CombSurface::build(0, 2).with_marks_on_component(0, 2, &ms);
  CHECK_NOTHROW(validate_on(s, Arc{ms[0], ms[1], parse_word("+0")}));
  CHECK_THROWS_AS(validate_on(s, Arc{ms[0], 99, {}}), Error);
  CHECK_THROWS_AS(validate_on(s, Arc{ms[0], ms[1], parse_word("+1")}), Error);
  CHECK_THROWS_AS(validate_on(s, ClosedCurve{parse_word("+4")}), Error);
}
