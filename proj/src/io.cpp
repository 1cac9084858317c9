#include "obl/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

namespace obl {

ParseError::ParseError(int line, const std::string& what)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace io_detail {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

std::vector<Line> lines_of(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  int n = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++n;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tokens = split(raw);
    if (!tokens.empty()) out.push_back({n, std::move(tokens)});
  }
  return out;
}

int to_int(const std::string& s, int line) {
  int v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (!s.empty() && *b == '+') ++b;
  const auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || b == e) throw ParseError(line, "expected an integer, got '" + s + "'");
  return v;
}

// "key=value" with the given key.
int keyed(const std::string& tok, const std::string& key, int line) {
  if (tok.rfind(key + "=", 0) != 0) throw ParseError(line, "expected " + key + "=<int>, got '" + tok + "'");
  return to_int(tok.substr(key.size() + 1), line);
}

Word word_of(const std::string& s, int line) {
  try {
    return parse_word(s);
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

// Names inside "[a, b]" spread over the tokens after '='.
std::vector<std::string> list_of(const Line& l, std::size_t from) {
  std::string joined;
  for (std::size_t i = from; i < l.tokens.size(); ++i) joined += l.tokens[i] + ' ';
  const auto open = joined.find('[');
  const auto close = joined.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ParseError(l.number, "expected a bracketed list");
  if (joined.find_first_not_of(' ', close + 1) != std::string::npos || joined.find_first_not_of(' ') != open)
    throw ParseError(l.number, "unexpected text around the list");
  std::string inner = joined.substr(open + 1, close - open - 1);
  std::replace(inner.begin(), inner.end(), ',', ' ');
  return split(inner);
}

void expect_assignment(const Line& l) {
  if (l.tokens.size() < 2 || l.tokens[1] != "=") throw ParseError(l.number, "expected '" + l.tokens[0] + " = ...'");
}

RingItem ring_item(const std::string& t, int line, int* fresh) {
  if (t == "*") return RingItem::mark((*fresh)++);
  if (t.size() >= 2 && t[0] == 'm') {
    const int id = to_int(t.substr(1), line);
    if (id < 0) throw ParseError(line, "mark ids must be non-negative");
    return RingItem::mark(id);
  }
  if (t.size() >= 3 && t[0] == 'h' && (t.back() == '+' || t.back() == '-'))
    return RingItem::foot(to_int(t.substr(1, t.size() - 2), line), t.back() == '+' ? 1 : -1);
  throw ParseError(line, "bad ring item '" + t + "'");
}

struct Stanza {
  AugmentedOpenBook book;
  std::map<std::string, Arc> arcs;
  std::map<std::string, ClosedCurve> curves;

  CurveSystem system(const std::vector<std::string>& names, int line) const {
    CurveSystem out;
    for (const std::string& n : names) {
      if (const auto a = arcs.find(n); a != arcs.end())
        out.arcs.push_back(a->second);
      else if (const auto c = curves.find(n); c != curves.end())
        out.closed.push_back(c->second);
      else
        throw ParseError(line, "unknown name '" + n + "'");
    }
    return out;
  }
};

int mark_at(const CombSurface& s, const std::string& t, int line) {
  const auto dot = t.find('.');
  if (t.size() < 4 || t[0] != 'b' || dot == std::string::npos)
    throw ParseError(line, "expected b<component>.<slot>, got '" + t + "'");
  const int comp = to_int(t.substr(1, dot - 1), line);
  const int slot = to_int(t.substr(dot + 1), line);
  const auto marks = s.boundary_marks();
  if (comp < 0 || comp >= static_cast<int>(marks.size())) throw ParseError(line, "no boundary component " + t);
  if (slot < 0 || slot >= static_cast<int>(marks[comp].size())) throw ParseError(line, "no mark at " + t);
  return marks[comp][slot];
}

std::string slot_text(const CombSurface& s, int mark) {
  const auto marks = s.boundary_marks();
  for (std::size_t c = 0; c < marks.size(); ++c)
    for (std::size_t k = 0; k < marks[c].size(); ++k)
      if (marks[c][k] == mark) return "b" + std::to_string(c) + "." + std::to_string(k);
  throw Error("mark " + std::to_string(mark) + " is not on the surface");
}


// Token after `key` in the line, or "" when the value is empty.
std::string value_after(const Line& l, const std::string& key, const std::vector<std::string>& keys) {
  const auto it = std::find(l.tokens.begin(), l.tokens.end(), key);
  if (it == l.tokens.end()) throw ParseError(l.number, "missing '" + key + "'");
  const auto next = it + 1;
  if (next == l.tokens.end() || std::find(keys.begin(), keys.end(), *next) != keys.end()) return "";
  return *next;
}

Stanza parse_stanza(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(0, "empty book stanza");
  const Line& head = lines.front();
  if (head.tokens[0] != "surface" || head.tokens.size() != 3)
    throw ParseError(head.number, "book stanza must start with 'surface g=<int> b=<int>'");
  const int genus = keyed(head.tokens[1], "g", head.number);
  const int boundary = keyed(head.tokens[2], "b", head.number);
  if (genus < 0 || boundary < 1) throw ParseError(head.number, "need g >= 0 and b >= 1");

  Stanza st;
  CombSurface surface;
  std::size_t i = 1;
  if (i < lines.size() && lines[i].tokens[0] == "ring") {
    const Line& l = lines[i++];
    std::vector<RingItem> ring;
    int explicit_max = -1;
    std::optional<int> next;
    for (std::size_t k = 1; k < l.tokens.size(); ++k)
      if (l.tokens[k].size() >= 2 && l.tokens[k][0] == 'm')
        explicit_max = std::max(explicit_max, to_int(l.tokens[k].substr(1), l.number));
    int fresh = explicit_max + 1;
    for (std::size_t k = 1; k < l.tokens.size(); ++k) {
      if (l.tokens[k].rfind("next=", 0) == 0)
        next = keyed(l.tokens[k], "next", l.number);
      else
        ring.push_back(ring_item(l.tokens[k], l.number, &fresh));
    }
    try {
      surface = CombSurface::from_ring(ring, next.value_or(fresh));
    } catch (const Error& e) {
      throw ParseError(l.number, e.what());
    }
    if (surface.genus() != genus || surface.boundary_components() != boundary)
      throw ParseError(l.number, "ring has genus " + std::to_string(surface.genus()) + " and " +
                                     std::to_string(surface.boundary_components()) + " boundary components");
  } else {
    surface = CombSurface::build(genus, boundary);
  }

  // Definitions first, so uses may come in any order.
  for (std::size_t k = i; k < lines.size(); ++k) {
    const Line& l = lines[k];
    const std::string& kind = l.tokens[0];
    if (kind == "curve") {
      if (l.tokens.size() < 3 || l.tokens.size() > 4 || l.tokens[2] != "word")
        throw ParseError(l.number, "expected 'curve <name> word <word>'");
      ClosedCurve c{word_of(l.tokens.size() == 4 ? l.tokens[3] : "", l.number)};
      try {
        validate_on(surface, c);
      } catch (const Error& e) {
        throw ParseError(l.number, e.what());
      }
      if (st.curves.count(l.tokens[1]) || st.arcs.count(l.tokens[1]))
        throw ParseError(l.number, "name '" + l.tokens[1] + "' defined twice");
      st.curves[l.tokens[1]] = c;
    } else if (kind == "arc") {
      if (l.tokens.size() < 7 || l.tokens.size() > 8 || l.tokens[2] != "from" || l.tokens[4] != "to" ||
          l.tokens[6] != "word")
        throw ParseError(l.number, "expected 'arc <name> from b<i>.<slot> to b<j>.<slot> word <word>'");
      Arc a{mark_at(surface, l.tokens[3], l.number), mark_at(surface, l.tokens[5], l.number),
            word_of(l.tokens.size() == 8 ? l.tokens[7] : "", l.number)};
      try {
        validate_on(surface, a);
      } catch (const Error& e) {
        throw ParseError(l.number, e.what());
      }
      if (st.curves.count(l.tokens[1]) || st.arcs.count(l.tokens[1]))
        throw ParseError(l.number, "name '" + l.tokens[1] + "' defined twice");
      st.arcs[l.tokens[1]] = a;
    }
  }

  std::vector<TwistGenerator> phi;
  std::vector<Arc> gamma;
  CurveSystem L;
  std::vector<StabilizationMove> history;
  bool saw_phi = false;
  for (std::size_t k = i; k < lines.size(); ++k) {
    const Line& l = lines[k];
    const std::string& kind = l.tokens[0];
    if (kind == "curve" || kind == "arc") continue;
    if (kind == "phi") {
      expect_assignment(l);
      if (saw_phi) throw ParseError(l.number, "phi given twice");
      saw_phi = true;
      if (l.tokens.size() == 3 && l.tokens[2] == "id") continue;
      for (std::size_t t = 2; t < l.tokens.size(); ++t) {
        const std::string& g = l.tokens[t];
        const auto close = g.find(')');
        if (g.rfind("T(", 0) != 0 || close == std::string::npos)
          throw ParseError(l.number, "expected T(<curve>) or T(<curve>)^<int>, got '" + g + "'");
        const std::string name = g.substr(2, close - 2);
        int power = 1;
        const std::string rest = g.substr(close + 1);
        if (!rest.empty()) {
          if (rest[0] != '^') throw ParseError(l.number, "bad twist power in '" + g + "'");
          power = to_int(rest.substr(1), l.number);
        }
        const auto c = st.curves.find(name);
        if (c == st.curves.end()) throw ParseError(l.number, "unknown curve '" + name + "'");
        phi.push_back({c->second, power});
      }
    } else if (kind == "gamma") {
      expect_assignment(l);
      for (const std::string& n : list_of(l, 2)) {
        const auto a = st.arcs.find(n);
        if (a == st.arcs.end()) throw ParseError(l.number, "unknown arc '" + n + "'");
        gamma.push_back(a->second);
      }
    } else if (kind == "L") {
      expect_assignment(l);
      L = st.system(list_of(l, 2), l.number);
    } else if (kind == "stabilization") {
      const std::vector<std::string> keys{"band", "sign", "sigma", "word", "feet", "curve"};
      StabilizationMove m;
      m.handle.core = to_int(value_after(l, "band", keys), l.number);
      m.sign = to_int(value_after(l, "sign", keys), l.number);
      const auto sg = std::find(l.tokens.begin(), l.tokens.end(), "sigma");
      const auto ft = std::find(l.tokens.begin(), l.tokens.end(), "feet");
      if (sg == l.tokens.end() || l.tokens.end() - sg < 3 || ft == l.tokens.end() || l.tokens.end() - ft < 3)
        throw ParseError(l.number, "expected 'sigma <a> <b>' and 'feet <a> <b>'");
      m.sigma.start = to_int(sg[1], l.number);
      m.sigma.end = to_int(sg[2], l.number);
      m.sigma.word = word_of(value_after(l, "word", keys), l.number);
      m.handle.foot_a = to_int(ft[1], l.number);
      m.handle.foot_b = to_int(ft[2], l.number);
      m.s_curve.word = word_of(value_after(l, "curve", keys), l.number);
      if (m.sign != 1 && m.sign != -1) throw ParseError(l.number, "sign must be +1 or -1");
      if (m.handle.core < 0 || m.handle.core >= surface.band_count())
        throw ParseError(l.number, "no band " + std::to_string(m.handle.core));
      history.push_back(m);
    } else if (kind != "proper") {
      throw ParseError(l.number, "unknown keyword '" + kind + "'");
    }
  }
  if (!saw_phi) throw ParseError(lines.back().number, "missing 'phi = ...'");
  try {
    st.book = AugmentedOpenBook(surface, MappingClass(surface, std::move(phi)), std::move(gamma), std::move(L));
    st.book.history = std::move(history);
    st.book.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(head.number, e.what());
  }
  return st;
}

class Namer {
public:
  std::string curve(const ClosedCurve& c) {
    for (std::size_t i = 0; i < curves_.size(); ++i)
      if (curves_[i] == c) return "c" + std::to_string(i);
    curves_.push_back(c);
    return "c" + std::to_string(curves_.size() - 1);
  }
  std::string arc(const Arc& a, const std::string& prefix) {
    for (const auto& [p, x, name] : arcs_)
      if (p == prefix && x == a) return name;
    int n = 0;
    for (const auto& e : arcs_) n += std::get<0>(e) == prefix;
    const std::string name = prefix + std::to_string(n);
    arcs_.emplace_back(prefix, a, name);
    return name;
  }
  std::string list(const CurveSystem& L) {
    std::string out = "[";
    for (const Arc& a : L.arcs) out += (out.size() > 1 ? ", " : "") + arc(a, "l");
    for (const ClosedCurve& c : L.closed) out += (out.size() > 1 ? ", " : "") + curve(c);
    return out + "]";
  }
  std::string definitions(const CombSurface& s) const {
    std::string out;
    for (std::size_t i = 0; i < curves_.size(); ++i)
      out += "curve c" + std::to_string(i) + " word" + spaced(curves_[i].word) + "\n";
    for (const auto& [p, a, name] : arcs_)
      out += "arc " + name + " from " + slot_text(s, a.start) + " to " + slot_text(s, a.end) + " word" +
             spaced(a.word) + "\n";
    return out;
  }
  static std::string spaced(const Word& w) { return w.empty() ? "" : " " + word_text(w); }

private:
  std::vector<ClosedCurve> curves_;
  std::vector<std::tuple<std::string, Arc, std::string>> arcs_;
};

int max_mark(const CombSurface& s) {
  int m = -1;
  for (int id : s.marks()) m = std::max(m, id);
  return m;
}

// Stanza text; `extra`, when given, is named too and its list returned.
std::string stanza_text(const AugmentedOpenBook& book, const CurveSystem* extra, std::string* extra_list) {
  const CombSurface& s = book.surface;
  Namer names;
  std::string phi = "phi =";
  for (const TwistGenerator& t : book.monodromy.word()) {
    phi += " T(" + names.curve(t.curve) + ")";
    if (t.power != 1) phi += "^" + std::to_string(t.power);
  }
  if (book.monodromy.word().empty()) phi += " id";
  std::string gamma = "gamma = [";
  for (std::size_t i = 0; i < book.gamma.size(); ++i) gamma += (i ? ", " : "") + names.arc(book.gamma[i], "g");
  gamma += "]";
  const std::string L = book.l_system.empty() ? "" : "L = " + names.list(book.l_system) + "\n";
  if (extra) *extra_list = names.list(*extra);

  std::string ring = "ring";
  for (const RingItem& it : s.ring())
    ring += it.is_foot() ? " h" + std::to_string(it.id) + (it.sign > 0 ? "+" : "-") : " m" + std::to_string(it.id);
  if (s.next_mark_id() != max_mark(s) + 1) ring += " next=" + std::to_string(s.next_mark_id());

  std::string out = "surface g=" + std::to_string(s.genus()) + " b=" + std::to_string(s.boundary_components()) + "\n";
  out += ring + "\n" + names.definitions(s) + phi + "\n" + gamma + "\n" + L;
  for (const StabilizationMove& m : book.history) {
    out += "stabilization band " + std::to_string(m.handle.core) + " sign " + (m.sign > 0 ? "+1" : "-1") +
           " sigma " + std::to_string(m.sigma.start) + " " + std::to_string(m.sigma.end) + " word" +
           Namer::spaced(m.sigma.word) + " feet " + std::to_string(m.handle.foot_a) + " " +
           std::to_string(m.handle.foot_b) + " curve" + Namer::spaced(m.s_curve.word) + "\n";
  }
  return out;
}

}  // namespace io_detail
}  // namespace obl

namespace obl {

using namespace io_detail;

AugmentedOpenBook parse_book(const std::string& text) {
  const auto lines = lines_of(text);
  for (const Line& l : lines)
    if (l.tokens[0] == "proper") throw ParseError(l.number, "'proper' belongs in a certificate");
  return parse_stanza(lines).book;
}

std::string format_book(const AugmentedOpenBook& book) { return stanza_text(book, nullptr, nullptr); }

namespace {

SignedPoint point_of(const std::string& t, int line) {
  const auto bad = [&] { return ParseError(line, "bad region corner '" + t + "'"); };
  if (t.size() < 5 || t[t.size() - 3] != '(' || t.back() != ')') throw bad();
  SignedPoint p;
  const char sign = t[t.size() - 2];
  if (sign != '+' && sign != '-') throw bad();
  p.sign = sign == '+' ? 1 : -1;
  const std::string body = t.substr(1, t.size() - 4);
  if (t[0] == 'x') {
    p.kind = SignedPoint::Kind::Interior;
    const auto d1 = body.find('.');
    const auto d2 = body.find('.', d1 == std::string::npos ? d1 : d1 + 1);
    if (d1 == std::string::npos || d2 == std::string::npos) throw bad();
    p.gamma = to_int(body.substr(0, d1), line);
    p.image = to_int(body.substr(d1 + 1, d2 - d1 - 1), line);
    p.ordinal = to_int(body.substr(d2 + 1), line);
  } else if (t[0] == 'b') {
    p.kind = SignedPoint::Kind::Boundary;
    if (body.empty() || (body.back() != '+' && body.back() != '-')) throw bad();
    p.gamma = p.image = to_int(body.substr(0, body.size() - 1), line);
    p.ordinal = body.back() == '-' ? 0 : 1;
  } else {
    throw bad();
  }
  if (point_text(p) != t) throw bad();
  return p;
}

}  // namespace

Certificate parse_certificate(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != "certificate")
    throw ParseError(lines.empty() ? 0 : lines[0].number, "expected 'certificate v1'");
  if (lines[0].tokens[1] != "v1")
    throw ParseError(lines[0].number, "unsupported certificate version '" + lines[0].tokens[1] + "'");
  std::size_t i = 1;
  if (i >= lines.size() || lines[i].tokens != std::vector<std::string>{"book"})
    throw ParseError(i < lines.size() ? lines[i].number : lines.back().number, "expected 'book'");
  const std::size_t book_from = ++i;
  while (i < lines.size() && lines[i].tokens != std::vector<std::string>{"end", "book"}) ++i;
  if (i >= lines.size()) throw ParseError(lines.back().number, "certificate truncated: missing 'end book'");
  const std::vector<Line> book_lines(lines.begin() + book_from, lines.begin() + i);
  for (const Line& l : book_lines)
    if (l.tokens[0] == "proper") throw ParseError(l.number, "'proper' belongs after 'end book'");
  const Stanza st = parse_stanza(book_lines);

  Certificate cert;
  cert.start = st.book;
  bool saw_mask = false, saw_region = false, saw_end = false;
  for (++i; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& kind = l.tokens[0];
    if (saw_end) throw ParseError(l.number, "text after 'end certificate'");
    if (kind == "step") {
      if (saw_mask || saw_region) throw ParseError(l.number, "steps must come before the mask and region");
      const std::vector<std::string> keys{"word", "sign"};
      if (l.tokens.size() < 6 || l.tokens[3] != "word") throw ParseError(l.number, "expected 'step <gap> <gap> word <word> sign <+1|-1>'");
      StabStep step;
      step.gap_a = to_int(l.tokens[1], l.number);
      step.gap_b = to_int(l.tokens[2], l.number);
      step.word = word_of(value_after(l, "word", keys), l.number);
      step.sign = to_int(value_after(l, "sign", keys), l.number);
      if (step.sign != 1 && step.sign != -1) throw ParseError(l.number, "sign must be +1 or -1");
      if (l.tokens.size() != (step.word.empty() ? 6u : 7u)) throw ParseError(l.number, "trailing text after step");
      cert.steps.push_back(step);
    } else if (kind == "mask") {
      if (saw_mask) throw ParseError(l.number, "mask given twice");
      saw_mask = true;
      const std::string bits = l.tokens.size() == 2 ? l.tokens[1] : "";
      if (l.tokens.size() > 2 || (bits != "-" && bits.find_first_not_of("01") != std::string::npos))
        throw ParseError(l.number, "mask must be a string of 0 and 1, or '-' when there are no steps");
      if (bits != "-")
        for (char c : bits) cert.mask.push_back(c == '1');
      if (cert.mask.size() != cert.steps.size())
        throw ParseError(l.number, "mask has " + std::to_string(cert.mask.size()) + " entries for " +
                                       std::to_string(cert.steps.size()) + " steps");
    } else if (kind == "proper") {
      expect_assignment(l);
      cert.proper_for = st.system(list_of(l, 2), l.number);
    } else if (kind == "region") {
      if (saw_region) throw ParseError(l.number, "region given twice");
      saw_region = true;
      for (std::size_t k = 1; k < l.tokens.size(); ++k) cert.region.push_back(point_of(l.tokens[k], l.number));
      if (cert.region.empty()) throw ParseError(l.number, "region has no corners");
    } else if (l.tokens == std::vector<std::string>{"end", "certificate"}) {
      saw_end = true;
    } else {
      throw ParseError(l.number, "unknown keyword '" + kind + "'");
    }
  }
  const int last = lines.back().number;
  if (!saw_mask) throw ParseError(last, "certificate truncated: missing mask");
  if (!saw_region) throw ParseError(last, "certificate truncated: missing region");
  if (!saw_end) throw ParseError(last, "certificate truncated: missing 'end certificate'");
  return cert;
}

std::string format_certificate(const Certificate& cert) {
  std::string proper;
  std::string out = "certificate v1\nbook\n";
  out += stanza_text(cert.start, cert.proper_for ? &*cert.proper_for : nullptr, &proper);
  out += "end book\n";
  for (const StabStep& st : cert.steps)
    out += "step " + std::to_string(st.gap_a) + " " + std::to_string(st.gap_b) + " word" + Namer::spaced(st.word) +
           " sign " + (st.sign > 0 ? "+1" : "-1") + "\n";
  std::string bits;
  for (bool b : cert.mask) bits += b ? '1' : '0';
  out += "mask " + (bits.empty() ? std::string("-") : bits) + "\n";
  if (cert.proper_for) out += "proper = " + proper + "\n";
  out += "region";
  for (const SignedPoint& p : cert.region) out += " " + point_text(p);
  out += "\nend certificate\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace obl
