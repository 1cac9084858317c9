#include <doctest.h>

#include <random>

#include "obl/drawing.hpp"
#include "oracle.hpp"

using namespace obl;

namespace {

CombSurface marked(int g, int b, int per_component) {
  CombSurface s = CombSurface::build(g, b);
  for (int c = 0; c < b; ++c) s = s.with_marks_on_component(c, per_component, nullptr);
  return s;
}

}  // namespace

TEST_CASE("annulus co-core and core cross once") {
  CombSurface s = marked(0, 2, 1);
  const auto bm = s.boundary_marks();
  Arc cocore{bm[0][0], bm[1][0], {}};
  // the co-core of the single band is the arc between the two circles
  ClosedCurve core{{{0, 1}}};
  Drawing d(s, {strand_of(cocore), strand_of(core)});
  CHECK(d.crossing_count(0, 1) == 1);
}

TEST_CASE("random arc pairs match the brute-force oracle") {
  std::mt19937 rng(7);
  int checked = 0, mismatches = 0;
  for (auto [g, b] : std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 1}, {1, 2}, {0, 4}, {2, 1}}) {
    CombSurface s = marked(g, b, 2);
    const auto marks = s.marks();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(marks.size()) - 1), len(0, 6);
    for (int trial = 0; trial < 4000; ++trial) {
      Arc a{marks[pick(rng)], marks[pick(rng)], oracle::random_word(rng, s.band_count(), len(rng))};
      Arc c{marks[pick(rng)], marks[pick(rng)], oracle::random_word(rng, s.band_count(), len(rng))};
      if (a.start == a.end || c.start == c.end) continue;
      if (oracle::min_self_crossings(s, oracle::path(a)) != 0 || oracle::min_self_crossings(s, oracle::path(c)) != 0)
        continue;
      const int want = oracle::min_crossings(s, oracle::path(a), oracle::path(c));
      if (want < 0) continue;
      Drawing d(s, {strand_of(a), strand_of(c)});
      const int got = d.crossing_count(0, 1);
      ++checked;
      if (got != want || d.self_crossings(0) != 0 || d.self_crossings(1) != 0) {
        ++mismatches;
        if (mismatches < 5)
          MESSAGE("g=" << g << " b=" << b << " a=" << a.start << "->" << a.end << " [" << word_text(a.word) << "] c="
                       << c.start << "->" << c.end << " [" << word_text(c.word) << "] got " << got << " want " << want);
      }
    }
  }
  MESSAGE("checked " << checked);
  CHECK(mismatches == 0);
}

TEST_CASE("closed curves against arcs and each other match the oracle") {
  std::mt19937 rng(11);
  int checked = 0, mismatches = 0;
  for (auto [g, b] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 2}, {0, 4}}) {
    CombSurface s = marked(g, b, 1);
    const auto marks = s.marks();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(marks.size()) - 1), len(1, 5);
    for (int trial = 0; trial < 3000; ++trial) {
      ClosedCurve x{cyclic_reduce(oracle::random_word(rng, s.band_count(), len(rng)))};
      if (x.word.empty() || is_proper_power(x.word)) continue;
      if (oracle::min_self_crossings(s, oracle::path(x)) != 0) continue;
      Strand other;
      oracle::Path op;
      if (trial % 2) {
        Arc a{marks[pick(rng)], marks[pick(rng)], oracle::random_word(rng, s.band_count(), len(rng))};
        if (a.start == a.end || oracle::min_self_crossings(s, oracle::path(a)) != 0) continue;
        other = strand_of(a);
        op = oracle::path(a);
      } else {
        ClosedCurve y{cyclic_reduce(oracle::random_word(rng, s.band_count(), len(rng)))};
        if (y.word.empty() || is_proper_power(y.word) || oracle::min_self_crossings(s, oracle::path(y)) != 0) continue;
        other = strand_of(y);
        op = oracle::path(y);
      }
      const int want = oracle::min_crossings(s, oracle::path(x), op);
      if (want < 0) continue;
      Drawing d(s, {strand_of(x), other});
      ++checked;
      if (d.crossing_count(0, 1) != want || d.self_crossings(0) != 0 || d.self_crossings(1) != 0) {
        ++mismatches;
        if (mismatches < 5)
          MESSAGE("g=" << g << " b=" << b << " x=[" << word_text(x.word) << "] other=[" << word_text(other.word)
                       << "] got " << d.crossing_count(0, 1) << " want " << want);
      }
    }
  }
  MESSAGE("checked " << checked);
  CHECK(checked > 200);
  CHECK(mismatches == 0);
}

TEST_CASE("faces add up to the Euler characteristic of the cut surface") {
  std::mt19937 rng(5);
  int checked = 0;
  for (auto [g, b] : std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 1}, {1, 2}}) {
    CombSurface s = marked(g, b, 2);
    const auto marks = s.marks();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(marks.size()) - 1), len(0, 4);
    for (int trial = 0; trial < 400; ++trial) {
      std::vector<Strand> strands;
      int arcs = 0;
      for (int k = 0; k < 3; ++k) {
        Arc a{marks[pick(rng)], marks[pick(rng)], oracle::random_word(rng, s.band_count(), len(rng))};
        if (a.start == a.end || oracle::min_self_crossings(s, oracle::path(a)) != 0) continue;
        strands.push_back(strand_of(a));
        ++arcs;
      }
      if (strands.empty()) continue;
      Drawing d(s, strands);
      int chi = 0;
      for (const Face& f : d.faces()) chi += f.euler_characteristic();
      CHECK(chi == s.euler_characteristic() + arcs + static_cast<int>(d.crossings().size()));
      ++checked;
    }
  }
  CHECK(checked > 100);
}
