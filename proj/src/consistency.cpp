#include "obl/consistency.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "obl/drawing.hpp"

namespace obl {

std::string veering_text(Veering v) {
  switch (v) {
    case Veering::Left: return "left";
    case Veering::Right: return "right";
    case Veering::Neither: return "neither";
  }
  return "?";
}

Veering right_veering_at(const AugmentedOpenBook& book, const Arc& gamma) {
  const Arc g = canonicalize(gamma);
  validate_on(book.surface, g);
  const Arc image = book.monodromy.apply(g);
  if (isotopic(image, g)) return Veering::Neither;
  AugmentedOpenBook single(book.surface, book.monodromy, {g});
  const RegionContext ctx(single, {image.reversed()}, {}, Placement::Minimal);
  for (const SignedPoint& p : ctx.boundary_points())
    if (p.sign < 0) return Veering::Left;
  return Veering::Right;
}

int gap_before(const CombSurface& s, int mark, int depth) {
  const int n = static_cast<int>(s.ring().size());
  return ((s.mark_position(mark) - depth) % n + n) % n;
}

int gap_after(const CombSurface& s, int mark, int depth) {
  const int n = static_cast<int>(s.ring().size());
  return (s.mark_position(mark) + depth - 1) % n;
}

std::pair<CombSurface, std::pair<int, int>> insert_step_marks(const CombSurface& s, const StabStep& step) {
  const int n = static_cast<int>(s.ring().size());
  if (step.gap_a < 0 || step.gap_a >= n || step.gap_b < 0 || step.gap_b >= n)
    throw Error("stabilization gap out of range");
  int a = -1, b = -1;
  CombSurface t;
  if (step.gap_a == step.gap_b) {
    t = s.with_mark_after(step.gap_a, &a);
    t = t.with_mark_after(t.mark_position(a), &b);
  } else if (step.gap_a > step.gap_b) {
    t = s.with_mark_after(step.gap_a, &a);
    t = t.with_mark_after(step.gap_b, &b);
  } else {
    t = s.with_mark_after(step.gap_b, &b);
    t = t.with_mark_after(step.gap_a, &a);
  }
  return {t, {a, b}};
}

std::pair<AugmentedOpenBook, StabilizationMove> apply_step(const AugmentedOpenBook& book, const StabStep& step) {
  auto [surface, marks] = insert_step_marks(book.surface, step);
  AugmentedOpenBook widened = book;
  widened.surface = surface;
  widened.monodromy = book.monodromy.on(surface);
  return stabilize(widened, Arc{marks.first, marks.second, step.word}, step.sign);
}

Replay replay(const Certificate& cert) {
  Replay r{cert.start, {}};
  for (const StabStep& step : cert.steps) {
    auto [next, move] = apply_step(r.book, step);
    r.book = std::move(next);
    r.moves.push_back(std::move(move));
  }
  return r;
}

CurveSystem transport_curve_system(const CurveSystem& L, const std::vector<StabilizationMove>& moves,
                                   const std::vector<bool>& mask, const CombSurface& surface) {
  if (mask.size() != moves.size()) throw Error("subsequence mask length differs from the move list");
  CurveSystem out = L;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!mask[i]) continue;
    for (Arc& a : out.arcs) a = twist(surface, moves[i].s_curve, moves[i].sign, a);
    for (ClosedCurve& c : out.closed) c = twist(surface, moves[i].s_curve, moves[i].sign, c);
  }
  return out;
}

bool compatible_start(const AugmentedOpenBook& book, const AugmentedOpenBook& start) {
  std::vector<RingItem> kept;
  for (const RingItem& it : start.surface.ring())
    if (it.is_foot() || book.surface.has_mark(it.id)) kept.push_back(it);
  if (kept != book.surface.ring()) return false;
  for (int m : book.surface.marks())
    if (!start.surface.has_mark(m)) return false;
  return book.monodromy.on(start.surface).word() == start.monodromy.word();
}

std::optional<std::vector<bool>> proper_mask(const Region& region, const AugmentedOpenBook& final_book,
                                             const std::vector<StabilizationMove>& moves, const CurveSystem& L) {
  const std::size_t k = moves.size();
  if (k > 20) throw Error("too many moves to scan subsequences");
  std::vector<unsigned> subsets(1u << k);
  for (unsigned m = 0; m < subsets.size(); ++m) subsets[m] = m;
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
  const auto images = monodromy_images(final_book);
  for (unsigned m : subsets) {
    std::vector<bool> mask(k);
    for (std::size_t i = 0; i < k; ++i) mask[i] = (m >> i) & 1u;
    const CurveSystem moved = transport_curve_system(L, moves, mask, final_book.surface);
    if (proper_corner(region, final_book, images, moved)) return mask;
  }
  return std::nullopt;
}

VerifyResult verify(const AugmentedOpenBook& book, const Certificate& cert) {
  if (cert.mask.size() != cert.steps.size()) throw Error("certificate mask length differs from its move list");
  if (cert.region.empty()) throw Error("certificate has no region corners");
  if (!compatible_start(book, cert.start)) return {false, "certificate does not start from this book"};
  Replay r;
  try {
    r = replay(cert);
  } catch (const Error& e) {
    return {false, std::string("replay failed: ") + e.what()};
  }
  RegionVerdict v;
  try {
    v = find_overtwisted_region(r.book);
  } catch (const Error& e) {
    return {false, e.what()};
  }
  if (!v.found) return {false, "no overtwisted region after replay"};
  if (v.region->canonical_corners() != cert.region) return {false, "region corner cycle differs"};
  if (cert.proper_for) {
    const CurveSystem moved = transport_curve_system(*cert.proper_for, r.moves, cert.mask, r.book.surface);
    if (!is_proper(*v.region, r.book, moved)) return {false, "region is not proper with respect to S'(L)"};
  }
  return {true, ""};
}

Certificate negative_stab_bigon(const AugmentedOpenBook& book, const Arc& gamma, const CurveSystem& L) {
  const Arc g = canonicalize(gamma);
  bool negative = false;
  if (const auto j = cocore_move(book, g)) negative = book.history[*j].sign < 0;
  if (!negative) {
    const auto m = recognize_stabilization(book);
    negative = m && m->sign < 0 && is_cocore(book.surface, g, m->handle.core);
  }
  if (!negative) throw Error("arc is not the co-core of a negative stabilization");

  Certificate cert;
  cert.start = AugmentedOpenBook(book.surface, book.monodromy, {g}, L);
  cert.start.history = book.history;
  const Word image = book.monodromy.apply(g).word;

  AugmentedOpenBook cur = cert.start;
  auto push = [&](StabStep step) {
    cur = apply_step(cur, step).first;
    cert.steps.push_back(std::move(step));
  };
  push({gap_before(cur.surface, g.start), gap_after(cur.surface, g.start), {}, 1});
  push({gap_after(cur.surface, g.start, 2), gap_before(cur.surface, g.end), g.word, 1});
  push({gap_before(cur.surface, g.start), gap_before(cur.surface, g.end), image, 1});

  const Replay r = replay(cert);
  const RegionVerdict v = find_overtwisted_region(r.book);
  if (!v.found || v.region->sides() != 2) throw Error("the three stabilizations did not isolate a bigon");
  cert.region = v.region->canonical_corners();
  cert.mask.assign(cert.steps.size(), false);
  if (!L.empty()) {
    const auto mask = proper_mask(*v.region, r.book, r.moves, L);
    if (!mask) throw Error("bigon is not proper with respect to L");
    cert.mask = *mask;
    cert.proper_for = L;
  }
  return cert;
}

}  // namespace obl

namespace obl {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::vector<int>> orientation_sequences(int copies) {
  return {std::vector<int>(copies, 1), std::vector<int>(copies, -1)};
}

}  // namespace

std::vector<AugmentedOpenBook> gamma_choices(const AugmentedOpenBook& book, const std::vector<Arc>& basis, int m) {
  if (basis.empty()) throw Error("empty basis");
  // Per basis arc: list of orientation sequences (empty = unused).
  std::vector<std::vector<std::vector<int>>> options(basis.size());
  for (auto& o : options) {
    o.push_back({});
    for (int c = 1; c <= m; ++c)
      for (auto& seq : orientation_sequences(c)) o.push_back(seq);
  }
  struct Choice {
    int multiplicity;
    int size;
    std::size_t order;
    AugmentedOpenBook book;
  };
  std::vector<Choice> found;
  std::vector<std::size_t> idx(basis.size(), 0);
  std::size_t order = 0;
  while (true) {
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == options[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
    CombSurface s = book.surface;
    std::vector<Arc> gamma;
    int mult = 0, size = 0;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const auto& seq = options[b][idx[b]];
      Arc prev = basis[b];
      for (std::size_t k = 0; k < seq.size(); ++k) {
        Arc copy = prev;
        if (k > 0) {
          int a = -1, e = -1;
          s = s.with_mark_after(gap_after(s, prev.start), &a);
          s = s.with_mark_after(gap_before(s, prev.end), &e);
          copy = Arc{a, e, prev.word};
        }
        gamma.push_back(seq[k] > 0 ? copy : copy.reversed());
        prev = copy;
      }
      mult = std::max<int>(mult, static_cast<int>(seq.size()));
      size += static_cast<int>(seq.size());
    }
    try {
      AugmentedOpenBook b(s, book.monodromy.on(s), gamma, book.l_system);
      b.history = book.history;
      found.push_back({mult, size, order++, std::move(b)});
    } catch (const Error&) {
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const Choice& a, const Choice& b) {
    return std::tie(a.multiplicity, a.size, a.order) < std::tie(b.multiplicity, b.size, b.order);
  });
  std::vector<AugmentedOpenBook> out;
  for (Choice& c : found) out.push_back(std::move(c.book));
  return out;
}

std::vector<StabStep> candidate_steps(const AugmentedOpenBook& book, const std::vector<Arc>& images,
                                      const std::vector<Arc>& base_images, int positions) {
  const CombSurface& s = book.surface;
  std::vector<StabStep> out;
  auto add = [&](StabStep st) {
    if (std::find(out.begin(), out.end(), st) == out.end()) out.push_back(std::move(st));
  };
  for (std::size_t i = 0; i < book.gamma.size(); ++i) {
    const Arc& g = book.gamma[i];
    for (int d = 1; d <= positions; ++d)
      for (int e = 1; e <= positions; ++e) {
        // Boundary-parallel around either end.
        add({gap_before(s, g.start, d), gap_after(s, g.start, e), {}, 1});
        add({gap_before(s, g.end, d), gap_after(s, g.end, e), {}, 1});
        // γ pushed off to its right.
        add({gap_after(s, g.start, d), gap_before(s, g.end, e), g.word, 1});
        // φ(γ) with both ends pushed against the boundary orientation.
        add({gap_before(s, g.start, d), gap_before(s, g.end, e), inverse(images[i].word), 1});
        if (i < base_images.size())
          add({gap_before(s, g.start, d), gap_before(s, g.end, e), inverse(base_images[i].word), 1});
      }
  }
  return out;
}

}  // namespace obl

namespace obl {

namespace {

struct Node {
  AugmentedOpenBook book;
  std::vector<Arc> images;
  std::vector<StabStep> steps;
  std::vector<StabilizationMove> moves;
};

// Encoding of a book that forgets band and mark numbering.
std::string state_key(const Node& n, bool with_moves) {
  const CombSurface& s = n.book.surface;
  const auto& ring = s.ring();
  const int len = static_cast<int>(ring.size());
  const int origin = n.book.gamma.empty() ? 0 : s.mark_position(n.book.gamma.front().start);
  std::vector<int> band_label(s.band_count(), -1);
  std::vector<int> mark_label(s.next_mark_id() + 1, -1);
  int bands = 0, marks = 0;
  std::string key;
  for (int k = 0; k < len; ++k) {
    const RingItem& it = ring[(origin + k) % len];
    if (it.is_foot()) {
      if (band_label[it.id] < 0) band_label[it.id] = bands++;
      key += (it.sign > 0 ? 'P' : 'M') + std::to_string(band_label[it.id]);
    } else {
      mark_label[it.id] = marks++;
      key += 'o';
    }
  }
  auto word = [&](const Word& w) {
    std::string t = "[";
    for (const Letter& l : w) t += (l.dir > 0 ? '+' : '-') + std::to_string(band_label[l.band]) + ',';
    return t + ']';
  };
  auto arc = [&](const Arc& a) {
    return std::to_string(mark_label[a.start]) + ">" + std::to_string(mark_label[a.end]) + word(a.word);
  };
  key += '|';
  for (const Arc& a : n.book.gamma) key += arc(a);
  key += '|';
  for (const Arc& a : n.images) key += word(a.word);
  key += '|';
  for (const Arc& a : n.book.l_system.arcs) key += arc(a);
  for (const ClosedCurve& c : n.book.l_system.closed) key += word(canonicalize(c).word);
  if (with_moves) {
    key += '|';
    for (const StabilizationMove& m : n.moves) key += word(m.s_curve.word) + std::to_string(m.sign);
  }
  return key;
}

int worker_count() {
  if (const char* env = std::getenv("OPENBOOK_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

// Certificate for a node if its book has an overtwisted region that is
// proper for L under some subsequence.
std::optional<Certificate> certify(const Node& n, const AugmentedOpenBook& start) {
  if (n.book.gamma.empty()) return std::nullopt;
  const RegionContext ctx(n.book, n.images, {});
  // Every interior point must be a negative corner.
  const auto points = ctx.interior_points();
  if (points.empty() || std::any_of(points.begin(), points.end(), [](const SignedPoint& p) { return p.sign > 0; }))
    return std::nullopt;
  const RegionVerdict v = find_overtwisted_region(ctx);
  if (!v.found) return std::nullopt;
  Certificate cert;
  cert.start = start;
  cert.steps = n.steps;
  cert.region = v.region->canonical_corners();
  cert.mask.assign(n.steps.size(), false);
  if (!start.l_system.empty()) {
    const auto mask = proper_mask(*v.region, n.book, n.moves, start.l_system);
    if (!mask) return std::nullopt;
    cert.mask = *mask;
    cert.proper_for = start.l_system;
  }
  return cert;
}

// Child of a node under one candidate step, or nothing if the step leaves
// φ(Γ) unchanged or its arc is not embedded.
std::optional<Node> child(const Node& n, const StabStep& step) {
  if (!is_reduced(step.word)) return std::nullopt;
  auto [surface, marks] = insert_step_marks(n.book.surface, step);
  const Arc sigma{marks.first, marks.second, step.word};
  if (!sigma.word.empty() && Drawing(surface, {strand_of(sigma)}).self_crossings(0) != 0) return std::nullopt;

  AugmentedOpenBook widened = n.book;
  widened.surface = surface;
  widened.monodromy = n.book.monodromy.on(surface);
  auto [book, move] = stabilize(widened, sigma, step.sign);
  Node out{std::move(book), {}, n.steps, n.moves};
  bool changed = false;
  for (const Arc& img : n.images) {
    out.images.push_back(twist(out.book.surface, move.s_curve, move.sign, img));
    changed = changed || !(out.images.back().word == img.word);
  }
  if (!changed) return std::nullopt;
  out.steps.push_back(step);
  out.moves.push_back(std::move(move));
  return out;
}

}  // namespace

std::string SearchResult::report(const SearchBudget& budget) const {
  std::string b = "depth " + std::to_string(budget.max_stabilizations) + ", multiplicity " +
                  std::to_string(budget.max_multiplicity) + ", handle positions " +
                  std::to_string(budget.max_handle_positions);
  if (certificate)
    return "certificate found: " + std::to_string(certificate->steps.size()) + " stabilizations, region with " +
           std::to_string(certificate->region.size()) + " corners (" + std::to_string(states) + " books)";
  if (timed_out)
    return "time cap reached; no certificate up to depth " + std::to_string(depth_completed) + " (budget " + b +
           ", " + std::to_string(states) + " books)";
  return "no certificate up to budget (" + b + ", " + std::to_string(states) + " books)";
}

}  // namespace obl

namespace obl {

SearchResult search(const AugmentedOpenBook& book, const std::vector<Arc>& basis, const SearchBudget& budget) {
  if (budget.max_stabilizations < 0 || budget.max_multiplicity < 1 || budget.max_handle_positions < 1)
    throw Error("search budget values must be positive");
  const auto t0 = Clock::now();
  const auto deadline = t0 + budget.time_cap;
  SearchResult result;
  const bool with_moves = !book.l_system.empty();

  const auto starts = gamma_choices(book, basis, budget.max_multiplicity);
  std::vector<std::vector<Arc>> base_images;
  std::vector<std::vector<Node>> frontier;
  std::unordered_set<std::string> seen;
  std::mutex seen_mutex;
  for (const AugmentedOpenBook& s : starts) {
    base_images.push_back(monodromy_images(s));
    frontier.push_back({Node{s, base_images.back(), {}, {}}});
  }

  auto finish = [&]() {
    result.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return result;
  };

  // Depth zero.
  for (std::size_t c = 0; c < starts.size(); ++c) {
    Node& n = frontier[c].front();
    seen.insert(state_key(n, with_moves));
    ++result.states;
    if (auto cert = certify(n, starts[c])) {
      result.certificate = std::move(cert);
      return finish();
    }
  }
  result.depth_completed = 0;

  const int workers = worker_count();
  for (int depth = 1; depth <= budget.max_stabilizations; ++depth) {
    for (std::size_t c = 0; c < starts.size(); ++c) {
      const std::vector<Node>& parents = frontier[c];
      std::vector<std::vector<Node>> children(parents.size());
      std::vector<std::optional<Certificate>> found(parents.size());
      std::atomic<std::size_t> next{0};
      std::atomic<std::size_t> latch{parents.size()};
      std::atomic<bool> late{false};
      std::atomic<long long> states{0};
      auto work = [&]() {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= parents.size() || i > latch.load()) return;
          if (Clock::now() > deadline) {
            late = true;
            return;
          }
          for (const StabStep& step : candidate_steps(parents[i].book, parents[i].images, base_images[c],
                                                      budget.max_handle_positions)) {
            std::optional<Node> kid;
            try {
              kid = child(parents[i], step);
            } catch (const Error&) {
              continue;
            }
            if (!kid) continue;
            {
              const std::string key = state_key(*kid, with_moves);
              std::lock_guard lock(seen_mutex);
              if (!seen.insert(key).second) continue;
            }
            ++states;
            if (auto cert = certify(*kid, starts[c])) {
              found[i] = std::move(cert);
              std::size_t cur = latch.load();
              while (i < cur && !latch.compare_exchange_weak(cur, i)) {
              }
              return;
            }
            children[i].push_back(std::move(*kid));
          }
        }
      };
      if (workers <= 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
      }
      result.states += states.load();
      for (auto& f : found)
        if (f) {
          result.certificate = std::move(f);
          return finish();
        }
      if (late) {
        result.timed_out = true;
        return finish();
      }
      std::vector<Node> level;
      for (auto& v : children)
        for (Node& n : v) level.push_back(std::move(n));
      frontier[c] = std::move(level);
    }
    result.depth_completed = depth;
  }
  return finish();
}

}  // namespace obl

namespace obl {

Certificate certificate_of(const AugmentedOpenBook& book) {
  const RegionVerdict v = find_overtwisted_region(book);
  if (!v.found) throw Error("book has no overtwisted region");
  Certificate cert;
  cert.start = book;
  cert.region = v.region->canonical_corners();
  if (!book.l_system.empty()) {
    if (!is_proper(*v.region, book, book.l_system)) throw Error("region is not proper with respect to L");
    cert.proper_for = book.l_system;
  }
  return cert;
}

namespace {

// Arc of Γ on the boundary path arriving at corner k (the nearest Γ edge before it).
int gamma_before_corner(const Region& r, int k, int n) {
  const int m = r.sides();
  for (int back = 1; back <= m; ++back) {
    const int e = r.edges[((k - back) % m + m) % m];
    if (e < n) return e;
  }
  return -1;
}

std::optional<RegionStep> try_destabilize(const AugmentedOpenBook& F, const Region& A, const CurveSystem& L, int k) {
  const int n = static_cast<int>(F.gamma.size());
  const int gi = gamma_before_corner(A, k, n);
  if (gi < 0 || !cocore_move(F, F.gamma[gi])) return std::nullopt;
  AugmentedOpenBook with_l = F;
  with_l.l_system = L;
  AugmentedOpenBook next;
  try {
    next = destabilize(with_l, F.gamma[gi]);
  } catch (const Error&) {
    return std::nullopt;
  }
  RegionVerdict v;
  try {
    v = find_overtwisted_region(next);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!v.found || v.region->sides() != A.sides() - 2) return std::nullopt;
  if (!L.empty() && !is_proper(*v.region, next, next.l_system)) return std::nullopt;
  return RegionStep{next, certificate_of(next), gi};
}

}  // namespace

RegionStep destabilize_region(const Certificate& cert, const AugmentedOpenBook& book) {
  if (const VerifyResult ok = verify(book, cert); !ok) throw Error("certificate does not verify: " + ok.reason);
  const Replay r = replay(cert);
  const Region A = *find_overtwisted_region(r.book).region;
  if (A.sides() <= 2) throw Error("region is already a bigon");
  const CurveSystem L = cert.proper_for
                            ? transport_curve_system(*cert.proper_for, r.moves, cert.mask, r.book.surface)
                            : CurveSystem{};
  for (int k : proper_corners(A, r.book, monodromy_images(r.book), L))
    if (auto step = try_destabilize(r.book, A, L, k)) return *step;
  throw Error("no arc of Γ next to a usable corner destabilizes the region");
}

std::optional<RegionStep> inverse_destabilization(const AugmentedOpenBook& book) {
  const RegionVerdict v0 = find_overtwisted_region(book);
  if (!v0.found) throw Error("book has no overtwisted region");
  const int sides = v0.region->sides();
  const int ring = static_cast<int>(book.surface.ring().size());

  std::vector<Word> words{{}};
  for (int b = 0; b < book.surface.band_count(); ++b) {
    words.push_back({Letter{b, 1}});
    words.push_back({Letter{b, -1}});
  }
  for (const Arc& g : book.gamma) words.push_back(g.word);
  for (const Arc& g : monodromy_images(book)) words.push_back(inverse(g.word));

  for (int ga = 0; ga < ring; ++ga)
    for (int gb = 0; gb < ring; ++gb)
      for (const Word& w : words) {
        AugmentedOpenBook stab;
        try {
          stab = apply_step(book, {ga, gb, w, 1}).first;
        } catch (const Error&) {
          continue;
        }
        const int band = stab.history.back().handle.core;
        for (int side : {1, -1}) {
          const int foot = stab.surface.foot_position(band, side);
          int a = -1, b = -1;
          CombSurface s = stab.surface.with_mark_after(foot, &b);
          const int size = static_cast<int>(s.ring().size());
          s = s.with_mark_after((s.foot_position(band, side) + size - 1) % size, &a);
          for (bool flip : {false, true}) {
            Arc co{a, b, {}};
            if (flip) co = co.reversed();
            AugmentedOpenBook cand = stab;
            cand.surface = s;
            cand.monodromy = stab.monodromy.on(s);
            cand.gamma.push_back(canonicalize(co));
            try {
              cand.validate();
              if (!is_cocore(s, cand.gamma.back(), band)) continue;
              const RegionVerdict v = find_overtwisted_region(cand);
              if (!v.found || v.region->sides() != sides + 2) continue;
              const Certificate cert = certificate_of(cand);
              const RegionStep back = destabilize_region(cert, cand);
              if (back.removed != static_cast<int>(cand.gamma.size()) - 1) continue;
              return RegionStep{cand, cert, back.removed};
            } catch (const Error&) {
              continue;
            }
          }
        }
      }
  return std::nullopt;
}

}  // namespace obl
