#pragma once

// Brute-force reference computations on the band model, written without the
// drawing engine: every ordering of passages inside each band (and of strand
// ends at shared marks) is tried and the crossings of straight chords in the
// central disc are counted directly.

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "obl/curves.hpp"
#include "obl/surface.hpp"

namespace oracle {

struct Path {
  bool closed = false;
  int start = -1, end = -1;
  obl::Word word;
};

inline Path path(const obl::Arc& a) { return {false, a.start, a.end, a.word}; }
inline Path path(const obl::ClosedCurve& c) { return {true, -1, -1, c.word}; }

// Minimum number of crossings between p and q over all passage orders.
// Returns -1 if the number of orders exceeds `limit`.
// With p == q (same object) and `self` set, counts self-crossings instead.
inline int min_crossings(const obl::CombSurface& s, const Path& p, const Path& q, long limit = 200000,
                         bool self = false) {
  const int npaths = self ? 1 : 2;
  const Path* paths[2] = {&p, &q};
  const int nbands = s.band_count();
  // slots[band] = list of (path, letter)
  std::vector<std::vector<std::pair<int, int>>> slots(nbands);
  for (int k = 0; k < npaths; ++k)
    for (int j = 0; j < static_cast<int>(paths[k]->word.size()); ++j) slots[paths[k]->word[j].band].push_back({k, j});
  std::map<int, std::vector<std::pair<int, int>>> ends;  // mark -> (path, side)
  for (int k = 0; k < npaths; ++k)
    if (!paths[k]->closed) {
      ends[paths[k]->start].push_back({k, 0});
      ends[paths[k]->end].push_back({k, 1});
    }
  long total = 1;
  auto fact = [](int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  for (auto& sl : slots) {
    total *= fact(static_cast<int>(sl.size()));
    if (total > limit) return -1;
    std::sort(sl.begin(), sl.end());
  }
  for (auto& [m, e] : ends) {
    total *= fact(static_cast<int>(e.size()));
    if (total > limit) return -1;
    std::sort(e.begin(), e.end());
  }

  const auto& ring = s.ring();
  int best = INT_MAX;
  while (true) {
    // Boundary point key: (ring position, sub-position).
    using Key = std::pair<int, int>;
    std::vector<std::vector<Key>> leave(2), ret(2);
    std::vector<std::array<Key, 2>> endk(2);
    for (int k = 0; k < 2; ++k) {
      leave[k].resize(paths[k]->word.size());
      ret[k].resize(paths[k]->word.size());
    }
    for (int b = 0; b < nbands; ++b) {
      const int n = static_cast<int>(slots[b].size());
      const int pm = s.foot_position(b, -1), pp = s.foot_position(b, +1);
      for (int r = 0; r < n; ++r) {
        auto [k, j] = slots[b][r];
        const int d = paths[k]->word[j].dir;
        const Key at_minus{pm, r}, at_plus{pp, n - 1 - r};
        // direction +1 leaves through the minus foot
        leave[k][j] = d > 0 ? at_minus : at_plus;
        ret[k][j] = d > 0 ? at_plus : at_minus;
      }
    }
    for (auto& [m, e] : ends) {
      const int pos = s.mark_position(m);
      for (int r = 0; r < static_cast<int>(e.size()); ++r) endk[e[r].first][e[r].second] = {pos, r};
    }
    (void)ring;
    std::vector<std::array<Key, 2>> chords[2];
    for (int k = 0; k < npaths; ++k) {
      const int n = static_cast<int>(paths[k]->word.size());
      if (!paths[k]->closed) {
        for (int j = 0; j <= n; ++j)
          chords[k].push_back({j == 0 ? endk[k][0] : ret[k][j - 1], j == n ? endk[k][1] : leave[k][j]});
      } else {
        for (int j = 0; j < n; ++j) chords[k].push_back({ret[k][(j + n - 1) % n], leave[k][j]});
      }
    }
    int count = 0;
    const auto& other = chords[self ? 0 : 1];
    for (std::size_t i = 0; i < chords[0].size(); ++i) {
      const auto& a = chords[0][i];
      const Key lo = std::min(a[0], a[1]), hi = std::max(a[0], a[1]);
      for (std::size_t j = self ? i + 1 : 0; j < other.size(); ++j) {
        const auto& c = other[j];
        const bool in0 = lo < c[0] && c[0] < hi;
        const bool in1 = lo < c[1] && c[1] < hi;
        if (in0 != in1) ++count;
      }
    }
    best = std::min(best, count);

    // advance the mixed-radix permutation counter
    bool carried = true;
    for (auto& sl : slots) {
      if (std::next_permutation(sl.begin(), sl.end())) {
        carried = false;
        break;
      }
    }
    if (carried) {
      for (auto& [m, e] : ends) {
        if (std::next_permutation(e.begin(), e.end())) {
          carried = false;
          break;
        }
      }
    }
    if (carried) break;
  }
  return best;
}

inline int min_self_crossings(const obl::CombSurface& s, const Path& p, long limit = 200000) {
  return min_crossings(s, p, p, limit, true);
}

// Random reduced word of the given length.
inline obl::Word random_word(std::mt19937& rng, int bands, int len) {
  obl::Word w;
  std::uniform_int_distribution<int> band(0, bands - 1), coin(0, 1);
  while (static_cast<int>(w.size()) < len) {
    obl::Letter l{band(rng), coin(rng) ? 1 : -1};
    if (!w.empty() && w.back() == l.inverse()) continue;
    w.push_back(l);
  }
  return w;
}

}  // namespace oracle
