#include "obl/curves.hpp"

#include <algorithm>
#include <sstream>

namespace obl {

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word cyclic_reduce(Word w) {
  w = reduce(std::move(w));
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(w.begin() + lo, w.begin() + hi);
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1].inverse()) return false;
  return true;
}

Word least_rotation(const Word& w) {
  if (w.empty()) return w;
  Word best = w;
  Word rot = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

Arc Arc::reversed() const { return Arc{end, start, obl::inverse(word)}; }

Arc canonicalize(Arc a) {
  a.word = reduce(std::move(a.word));
  return a;
}

ClosedCurve canonicalize(ClosedCurve c) {
  c.word = cyclic_reduce(std::move(c.word));
  return c;
}

bool isotopic(const Arc& a, const Arc& b) {
  return a.start == b.start && a.end == b.end && reduce(a.word) == reduce(b.word);
}

bool isotopic_oriented(const ClosedCurve& a, const ClosedCurve& b) {
  return least_rotation(cyclic_reduce(a.word)) == least_rotation(cyclic_reduce(b.word));
}

bool isotopic(const ClosedCurve& a, const ClosedCurve& b) {
  if (isotopic_oriented(a, b)) return true;
  return least_rotation(cyclic_reduce(a.word)) == least_rotation(cyclic_reduce(inverse(b.word)));
}

bool is_essential(const ClosedCurve& c) { return !cyclic_reduce(c.word).empty(); }

bool is_proper_power(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return true;
  }
  return false;
}

void validate_on(const CombSurface& s, const Arc& a) {
  if (!s.has_mark(a.start) || !s.has_mark(a.end)) throw Error("arc endpoint is not a mark of the surface");
  if (a.start == a.end) throw Error("arc endpoints must be distinct marks");
  for (const Letter& l : a.word)
    if (l.band < 0 || l.band >= s.band_count() || (l.dir != 1 && l.dir != -1)) throw Error("arc crosses unknown band");
}

void validate_on(const CombSurface& s, const ClosedCurve& c) {
  for (const Letter& l : c.word)
    if (l.band < 0 || l.band >= s.band_count() || (l.dir != 1 && l.dir != -1)) throw Error("curve crosses unknown band");
}

std::string word_text(const Word& w) {
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ',';
    out += (l.dir > 0 ? '+' : '-');
    out += std::to_string(l.band);
  }
  return out;
}

Word parse_word(const std::string& text) {
  Word w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    int dir = 1;
    if (tok[0] == '+' || tok[0] == '-') {
      dir = tok[0] == '-' ? -1 : 1;
      tok = tok.substr(1);
    }
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) throw Error("bad word letter '" + tok + "'");
    w.push_back({std::stoi(tok), dir});
  }
  return w;
}

}  // namespace obl
