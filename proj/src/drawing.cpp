#include "obl/drawing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace obl {

Strand strand_of(const Arc& a, int family) { return Strand{false, a.start, a.end, a.word, family}; }

Strand strand_of(const ClosedCurve& c, int family) { return Strand{true, -1, -1, c.word, family}; }

namespace {

constexpr double kPi = 3.14159265358979323846;

int mod(int a, int n) { return ((a % n) + n) % n; }

// Deterministic jitter in [-0.3, 0.3] so that no three chords are concurrent.
double jitter(std::uint64_t i) {
  std::uint64_t z = i * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  return (static_cast<double>(z >> 11) / 9007199254740992.0 - 0.5) * 0.6;
}

// Cursor along a strand used to read off successive exit ports.
struct Walker {
  const Strand* s = nullptr;
  int idx = 0;
  int step = 1;
};

struct Ctx {
  const CombSurface* surface;
  std::vector<int> mark_pos;             // by mark id
  std::vector<std::array<int, 2>> foot;  // [band][sign>0]
  int ring_size = 0;

  int foot_pos(int band, int sign) const { return foot[band][sign > 0 ? 1 : 0]; }
};

struct Port {
  int pos = -1;
  bool mark = false;
  int next_entry = -1;
};

Port advance(Walker& w, const Ctx& c) {
  const int n = static_cast<int>(w.s->word.size());
  int k = w.idx + w.step;
  if (!w.s->closed) {
    if (k >= n) return {c.mark_pos[w.s->end], true, -1};
    if (k < 0) return {c.mark_pos[w.s->start], true, -1};
  } else {
    k = mod(k, n);
  }
  w.idx = k;
  Letter l = w.s->word[k];
  if (w.step < 0) l = l.inverse();
  return {c.foot_pos(l.band, -l.dir), false, c.foot_pos(l.band, l.dir)};
}

// Counterclockwise order at the entry port `entry` of two strands entering
// the disc there: -1 if a comes first, +1 if b does, 0 if their continuations
// never separate.
int compare_from(int entry, Walker a, Walker b, const Ctx& c) {
  const int limit = static_cast<int>(a.s->word.size() + b.s->word.size()) + 4;
  for (int step = 0; step < limit; ++step) {
    const Port pa = advance(a, c);
    const Port pb = advance(b, c);
    if (pa.pos != pb.pos) {
      const int ra = mod(pa.pos - entry, c.ring_size);
      const int rb = mod(pb.pos - entry, c.ring_size);
      return ra > rb ? -1 : 1;
    }
    if (pa.mark) return 0;
    entry = pa.next_entry;
  }
  return 0;
}

int canonical_direction(const Strand& s) {
  if (!s.closed) return s.start < s.end ? 1 : -1;
  return least_rotation(s.word) <= least_rotation(inverse(s.word)) ? 1 : -1;
}

}  // namespace

Drawing::Drawing(const CombSurface& surface, std::vector<Strand> strands)
    : surface_(surface), strands_(std::move(strands)) {
  for (const Strand& s : strands_) {
    for (const Letter& l : s.word)
      if (l.band < 0 || l.band >= surface_.band_count()) throw Error("strand crosses unknown band");
    if (!s.closed && (!surface_.has_mark(s.start) || !surface_.has_mark(s.end)))
      throw Error("strand endpoint is not a mark");
    if (s.closed && s.word.empty()) throw Error("closed strand must be essential");
    if (!is_reduced(s.word)) throw Error("strand word is not reduced");
    if (s.closed && s.word.size() > 1 && s.word.front() == s.word.back().inverse())
      throw Error("closed strand word is not cyclically reduced");
  }
  order_passages();
  layout_points();
  build_chords();
  find_crossings();
}

void Drawing::order_passages() {
  Ctx c;
  c.surface = &surface_;
  c.ring_size = static_cast<int>(surface_.ring().size());
  c.mark_pos.assign(surface_.next_mark_id() + 1, -1);
  c.foot.assign(surface_.band_count(), {-1, -1});
  for (int p = 0; p < c.ring_size; ++p) {
    const RingItem& it = surface_.ring()[p];
    if (it.is_mark())
      c.mark_pos[it.id] = p;
    else
      c.foot[it.id][it.sign > 0 ? 1 : 0] = p;
  }

  std::vector<int> canon(strands_.size()), geo(strands_.size());
  for (std::size_t i = 0; i < strands_.size(); ++i) {
    canon[i] = canonical_direction(strands_[i]);
    geo[i] = strands_[i].closed || strands_[i].word.empty() ? canon[i]
                                                            : (strands_[i].word < inverse(strands_[i].word) ? 1 : -1);
  }

  // A forced crossing along a shared stretch is placed at the back end of
  // the stretch as seen by a lead strand. The lead and the direction it is
  // read in are tried in a few fixed ways, keeping the first that orders
  // every band consistently.
  std::vector<std::vector<std::pair<int, int>>> passages(surface_.band_count());
  for (int s = 0; s < static_cast<int>(strands_.size()); ++s)
    for (int j = 0; j < static_cast<int>(strands_[s].word.size()); ++j)
      passages[strands_[s].word[j].band].push_back({s, j});

  bool consistent = false;
  for (int rule = 0; rule < 4 && !consistent; ++rule) {
    band_order_ = passages;
    consistent = true;
    for (int b = 0; b < surface_.band_count() && consistent; ++b) {
      const int plus = c.foot_pos(b, +1);
      const int minus = c.foot_pos(b, -1);
      auto key = [&](const std::pair<int, int>& p, const std::pair<int, int>& q) {
        const Strand& sp = strands_[p.first];
        const Strand& sq = strands_[q.first];
        const int dp = sp.word[p.second].dir;
        const int dq = sq.word[q.second].dir;
        // Forward rays leave through foot (b,+1); its order is the reverse of
        // the order at foot (b,-1).
        const int kf = -compare_from(plus, Walker{&sp, p.second, dp}, Walker{&sq, q.second, dq}, c);
        const int kb = compare_from(minus, Walker{&sp, p.second, -dp}, Walker{&sq, q.second, -dq}, c);
        int k = kf != 0 ? kf : kb;
        if (kf != 0 && kb != 0 && kf != kb) {
          const bool p_leads = (p < q) != (rule >= 2);
          const auto& lead = p_leads ? p : q;
          int lead_dir = p_leads ? dp : dq;
          if (rule % 2 == 1) lead_dir *= geo[lead.first];
          k = lead_dir > 0 ? kf : kb;
        }
        if (k == 0) {
          if (p.first == q.first) return p.second < q.second;
          const bool plus_travel = dp * canon[p.first] > 0;
          return plus_travel ? p.first > q.first : p.first < q.first;
        }
        return k < 0;
      };
      auto& order = band_order_[b];
      std::sort(order.begin(), order.end(), key);
      for (std::size_t i = 0; i < order.size() && consistent; ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
          if (key(order[j], order[i])) {
            consistent = false;
            break;
          }
    }
  }
  if (!consistent) throw Error("strands could not be put in minimal position simultaneously");

  mark_order_.assign(c.ring_size, {});
  for (int s = 0; s < static_cast<int>(strands_.size()); ++s) {
    if (strands_[s].closed) continue;
    mark_order_[c.mark_pos[strands_[s].start]].push_back({s, 0});
    mark_order_[c.mark_pos[strands_[s].end]].push_back({s, 1});
  }
  for (int p = 0; p < c.ring_size; ++p) {
    if (mark_order_[p].size() < 2) continue;
    const int mark = surface_.ring()[p].id;
    auto walker = [&](const std::pair<int, int>& e) {
      const Strand& s = strands_[e.first];
      return e.second == 0 ? Walker{&s, -1, 1} : Walker{&s, static_cast<int>(s.word.size()), -1};
    };
    auto key = [&](const std::pair<int, int>& e, const std::pair<int, int>& f) {
      int k = compare_from(p, walker(e), walker(f), c);
      if (k == 0) {
        if (e.first == f.first) return e.second < f.second;
        const Strand& se = strands_[e.first];
        const bool leaving_canonically = std::min(se.start, se.end) == mark;
        return leaving_canonically ? e.first < f.first : e.first > f.first;
      }
      return k < 0;
    };
    std::sort(mark_order_[p].begin(), mark_order_[p].end(), key);
    auto& order = mark_order_[p];
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j)
        if (key(order[j], order[i])) throw Error("strand ends could not be ordered at a mark");
    auto pin_of = [&](const std::pair<int, int>& e) {
      return e.second == 0 ? strands_[e.first].pin_start : strands_[e.first].pin_end;
    };
    std::vector<std::pair<int, int>> pinned;
    std::erase_if(order, [&](const auto& e) {
      if (pin_of(e) < 0) return false;
      pinned.push_back(e);
      return true;
    });
    for (const auto& e : pinned) {
      const int pin = pin_of(e);
      auto anchor = std::find_if(order.begin(), order.end(), [&](const auto& f) {
        return f.first == pin && (f.second == 0 ? strands_[pin].start : strands_[pin].end) == mark;
      });
      if (anchor == order.end()) throw Error("pinned strand end has no anchor at its mark");
      order.insert(anchor + 1, e);
    }
  }
}

void Drawing::layout_points() {
  passage_point_.assign(strands_.size(), {});
  end_point_.assign(strands_.size(), {-1, -1});
  for (std::size_t s = 0; s < strands_.size(); ++s) passage_point_[s].assign(strands_[s].word.size() * 2, -1);

  const auto& ring = surface_.ring();
  for (int p = 0; p < static_cast<int>(ring.size()); ++p) {
    const RingItem& it = ring[p];
    if (it.is_foot()) {
      BoundaryPoint start;
      start.kind = BoundaryPoint::Kind::FootStart;
      start.ring_pos = p;
      points_.push_back(start);
      const auto& order = band_order_[it.id];
      const int n = static_cast<int>(order.size());
      for (int r = 0; r < n; ++r) {
        const auto& pass = it.sign < 0 ? order[r] : order[n - 1 - r];
        BoundaryPoint bp;
        bp.kind = BoundaryPoint::Kind::Passage;
        bp.ring_pos = p;
        bp.strand = pass.first;
        bp.letter = pass.second;
        const int d = strands_[pass.first].word[pass.second].dir;
        const bool leaving = it.sign == -d;
        passage_point_[pass.first][pass.second * 2 + (leaving ? 0 : 1)] = static_cast<int>(points_.size());
        points_.push_back(bp);
      }
      BoundaryPoint end;
      end.kind = BoundaryPoint::Kind::FootEnd;
      end.ring_pos = p;
      points_.push_back(end);
    } else {
      for (const auto& e : mark_order_[p]) {
        BoundaryPoint bp;
        bp.kind = BoundaryPoint::Kind::End;
        bp.ring_pos = p;
        bp.strand = e.first;
        bp.side = e.second;
        end_point_[e.first][e.second] = static_cast<int>(points_.size());
        points_.push_back(bp);
      }
    }
  }
  const int nb = static_cast<int>(points_.size());
  for (int i = 0; i < nb; ++i) {
    const double angle = 2.0 * kPi * (i + 0.5 + jitter(static_cast<std::uint64_t>(i) + 17ull * nb)) / nb;
    points_[i].x = std::cos(angle);
    points_[i].y = std::sin(angle);
  }
}

void Drawing::build_chords() {
  chord_begin_.assign(strands_.size() + 1, 0);
  for (int s = 0; s < static_cast<int>(strands_.size()); ++s) {
    chord_begin_[s] = static_cast<int>(chords_.size());
    const Strand& st = strands_[s];
    const int n = static_cast<int>(st.word.size());
    auto leave = [&](int j) { return passage_point_[s][j * 2]; };
    auto ret = [&](int j) { return passage_point_[s][j * 2 + 1]; };
    if (!st.closed) {
      for (int j = 0; j <= n; ++j) {
        const int from = j == 0 ? end_point_[s][0] : ret(j - 1);
        const int to = j == n ? end_point_[s][1] : leave(j);
        chords_.push_back({s, j, from, to, {}});
      }
    } else {
      for (int j = 0; j < n; ++j) chords_.push_back({s, j, ret(mod(j - 1, n)), leave(j), {}});
    }
  }
  chord_begin_[strands_.size()] = static_cast<int>(chords_.size());
}

void Drawing::find_crossings() {
  const int nb = static_cast<int>(points_.size());
  auto between = [&](int x, int a1, int a2) { return x != a1 && mod(x - a1, nb) < mod(a2 - a1, nb); };
  for (int i = 0; i < static_cast<int>(chords_.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(chords_.size()); ++j) {
      const Chord& a = chords_[i];
      const Chord& b = chords_[j];
      const bool in1 = between(b.from, a.from, a.to);
      const bool in2 = between(b.to, a.from, a.to);
      if (in1 == in2) continue;
      const BoundaryPoint& p1 = points_[a.from];
      const BoundaryPoint& p2 = points_[a.to];
      const BoundaryPoint& q1 = points_[b.from];
      const BoundaryPoint& q2 = points_[b.to];
      const double ux = p2.x - p1.x, uy = p2.y - p1.y;
      const double vx = q2.x - q1.x, vy = q2.y - q1.y;
      const double den = ux * vy - uy * vx;
      const double wx = q1.x - p1.x, wy = q1.y - p1.y;
      Crossing x;
      x.chord_a = i;
      x.chord_b = j;
      x.sign = in1 ? 1 : -1;
      x.ta = (wx * vy - wy * vx) / den;
      x.tb = (wx * uy - wy * ux) / den;
      crossings_.push_back(x);
    }
  }
  for (int k = 0; k < static_cast<int>(crossings_.size()); ++k) {
    chords_[crossings_[k].chord_a].crossings.push_back(k);
    chords_[crossings_[k].chord_b].crossings.push_back(k);
  }
  for (int i = 0; i < static_cast<int>(chords_.size()); ++i) {
    auto t_of = [&](int k) { return crossings_[k].chord_a == i ? crossings_[k].ta : crossings_[k].tb; };
    std::sort(chords_[i].crossings.begin(), chords_[i].crossings.end(),
              [&](int p, int q) { return t_of(p) < t_of(q); });
  }
}

int Drawing::strand_of_crossing_side(int crossing, int which) const {
  const Crossing& x = crossings_[crossing];
  return chords_[which == 0 ? x.chord_a : x.chord_b].strand;
}

std::vector<int> Drawing::crossings_between(int s, int t) const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(crossings_.size()); ++k) {
    const int a = strand_of_crossing_side(k, 0), b = strand_of_crossing_side(k, 1);
    if ((a == s && b == t) || (a == t && b == s)) out.push_back(k);
  }
  return out;
}

int Drawing::self_crossings(int s) const { return crossing_count(s, s); }

int Drawing::sign_for(int crossing, int first) const {
  const Crossing& x = crossings_[crossing];
  return chords_[x.chord_a].strand == first ? x.sign : -x.sign;
}

std::vector<std::pair<int, int>> Drawing::ends_at(int mark) const {
  return mark_order_[surface_.mark_position(mark)];
}

std::vector<int> Drawing::crossings_along(int strand) const {
  std::vector<int> out;
  for (int c = first_chord(strand); c < first_chord(strand) + chord_count(strand); ++c)
    out.insert(out.end(), chords_[c].crossings.begin(), chords_[c].crossings.end());
  return out;
}

std::vector<Face> Drawing::faces() const {
  const int nb = static_cast<int>(points_.size());
  const int nx = static_cast<int>(crossings_.size());
  if (nb == 0) {
    Face f;
    f.disc_pieces = 1;
    f.cycles.push_back({});
    return {f};
  }

  // Half-edges of the planar map in the disc.
  struct HalfEdge {
    int tail, head, twin;
    int circle = -1;  // circle edge index j (edge from point j to j+1)
    bool ccw = false;
    int chord = -1;
  };
  std::vector<HalfEdge> he;
  std::vector<std::vector<int>> rot(nb + nx);  // counterclockwise outgoing half-edges
  auto add_pair = [&](HalfEdge a, HalfEdge b) {
    const int ia = static_cast<int>(he.size());
    a.twin = ia + 1;
    b.twin = ia;
    he.push_back(a);
    he.push_back(b);
    return ia;
  };

  std::vector<int> circle_fwd(nb), circle_bwd(nb);
  for (int j = 0; j < nb; ++j) {
    const int k = (j + 1) % nb;
    const int ia = add_pair({j, k, -1, j, true, -1}, {k, j, -1, j, false, -1});
    circle_fwd[j] = ia;
    circle_bwd[j] = ia + 1;
  }
  std::vector<int> chord_out_at(nb, -1);
  // Crossing (in, out) half-edges per chord side: fwd_out[k][0/1], back_out.
  std::vector<std::array<int, 2>> x_fwd(nx, {-1, -1}), x_back(nx, {-1, -1});
  for (int i = 0; i < static_cast<int>(chords_.size()); ++i) {
    const Chord& ch = chords_[i];
    std::vector<int> nodes;
    nodes.push_back(ch.from);
    for (int k : ch.crossings) nodes.push_back(nb + k);
    nodes.push_back(ch.to);
    for (std::size_t q = 0; q + 1 < nodes.size(); ++q) {
      const int ia = add_pair({nodes[q], nodes[q + 1], -1, -1, false, i}, {nodes[q + 1], nodes[q], -1, -1, false, i});
      if (q == 0)
        chord_out_at[ch.from] = ia;
      else {
        const int k = nodes[q] - nb;
        x_fwd[k][crossings_[k].chord_a == i ? 0 : 1] = ia;
      }
      if (q + 2 == nodes.size())
        chord_out_at[ch.to] = ia + 1;
      else {
        const int k = nodes[q + 1] - nb;
        x_back[k][crossings_[k].chord_a == i ? 0 : 1] = ia + 1;
      }
    }
  }
  for (int j = 0; j < nb; ++j) {
    rot[j].push_back(circle_fwd[j]);
    if (chord_out_at[j] >= 0) rot[j].push_back(chord_out_at[j]);
    rot[j].push_back(circle_bwd[mod(j - 1, nb)]);
  }
  for (int k = 0; k < nx; ++k) {
    if (crossings_[k].sign > 0)
      rot[nb + k] = {x_fwd[k][0], x_fwd[k][1], x_back[k][0], x_back[k][1]};
    else
      rot[nb + k] = {x_fwd[k][0], x_back[k][1], x_back[k][0], x_fwd[k][1]};
  }
  std::vector<int> rot_index(he.size(), -1);
  for (int v = 0; v < nb + nx; ++v)
    for (int q = 0; q < static_cast<int>(rot[v].size()); ++q) rot_index[rot[v][q]] = q;
  auto next = [&](int h) {
    const int v = he[h].head;
    const int q = rot_index[he[h].twin];
    const int deg = static_cast<int>(rot[v].size());
    return rot[v][mod(q - 1, deg)];
  };

  // Disc pieces: faces of the planar map other than the outer one.
  std::vector<int> dface(he.size(), -1);
  int ndf = 0;
  for (int h = 0; h < static_cast<int>(he.size()); ++h) {
    if (dface[h] >= 0) continue;
    if (he[h].circle >= 0 && !he[h].ccw) continue;
    for (int g = h; dface[g] < 0; g = next(g)) dface[g] = ndf;
    ++ndf;
  }

  // Foot pieces and their partners across bands.
  std::vector<int> partner(nb, -1);  // circle edge j -> partner circle edge
  {
    int j = 0;
    while (j < nb) {
      if (points_[j].kind != BoundaryPoint::Kind::FootStart) {
        ++j;
        continue;
      }
      int e = j;
      while (points_[e].kind != BoundaryPoint::Kind::FootEnd) ++e;
      const RingItem& it = surface_.ring()[points_[j].ring_pos];
      const int other_pos = surface_.foot_position(it.id, -it.sign);
      int oj = 0;
      while (!(points_[oj].kind == BoundaryPoint::Kind::FootStart && points_[oj].ring_pos == other_pos)) ++oj;
      const int n = e - j - 1;
      for (int t = 0; t <= n; ++t) partner[j + t] = oj + (n - t);
      j = e + 1;
    }
  }

  std::vector<int> parent(ndf);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> strips_of(ndf, 0);
  int total_strips = 0;
  for (int j = 0; j < nb; ++j) {
    if (partner[j] < 0 || partner[j] < j) continue;
    ++total_strips;
    const int fa = dface[circle_fwd[j]], fb = dface[circle_fwd[partner[j]]];
    parent[find(fa)] = find(fb);
  }
  for (int j = 0; j < nb; ++j) {
    if (partner[j] < 0 || partner[j] < j) continue;
    ++strips_of[find(dface[circle_fwd[j]])];
  }

  auto is_foot_piece = [&](int h) { return he[h].circle >= 0 && he[h].ccw && partner[he[h].circle] >= 0; };
  auto succ = [&](int h) {
    int g = next(h);
    while (is_foot_piece(g)) g = next(circle_fwd[partner[he[g].circle]]);
    return g;
  };

  std::vector<int> root_to_face(ndf, -1);
  std::vector<Face> out;
  for (int r = 0; r < ndf; ++r) {
    const int root = find(r);
    if (root_to_face[root] < 0) {
      root_to_face[root] = static_cast<int>(out.size());
      out.push_back({});
      out.back().strips = strips_of[root];
    }
    ++out[root_to_face[root]].disc_pieces;
  }

  std::vector<bool> seen(he.size(), false);
  for (int h = 0; h < static_cast<int>(he.size()); ++h) {
    if (seen[h] || dface[h] < 0 || is_foot_piece(h)) continue;
    if (he[h].circle >= 0 && !he[h].ccw) continue;
    std::vector<int> cyc;
    for (int g = h; !seen[g]; g = succ(g)) {
      seen[g] = true;
      cyc.push_back(g);
    }
    FaceCycle fc;
    const int m = static_cast<int>(cyc.size());
    // Rotate so that processing starts right after a corner or boundary stretch.
    for (int q = 0; q < m; ++q) {
      const HalfEdge& a = he[cyc[q]];
      const HalfEdge& b = he[cyc[(q + 1) % m]];
      if (a.chord >= 0 && b.chord >= 0) {
        const int sa = chords_[a.chord].strand, sb = chords_[b.chord].strand;
        if (a.head >= nb) {
          FaceCorner c;
          c.kind = FaceCorner::Kind::Interior;
          c.crossing = a.head - nb;
          c.strand_in = sa;
          c.strand_out = sb;
          fc.corners.push_back(c);
          fc.strands.push_back(sb);
        }
      } else if (a.chord >= 0 && b.circle >= 0) {
        // Strand end reached; look at the boundary stretch that follows.
        const int j = b.circle;
        const BoundaryPoint& p = points_[j];
        const BoundaryPoint& pn = points_[(j + 1) % nb];
        const HalfEdge& c2 = he[cyc[(q + 2) % m]];
        const bool gap = p.kind == BoundaryPoint::Kind::End && pn.kind == BoundaryPoint::Kind::End &&
                         p.ring_pos == pn.ring_pos && c2.chord >= 0;
        if (gap) {
          FaceCorner c;
          c.kind = FaceCorner::Kind::Boundary;
          c.mark = surface_.ring()[p.ring_pos].id;
          c.strand_in = chords_[a.chord].strand;
          c.strand_out = chords_[c2.chord].strand;
          fc.corners.push_back(c);
          fc.strands.push_back(c.strand_out);
        } else {
          fc.touches_boundary = true;
        }
      } else if (a.circle >= 0 && b.circle >= 0) {
        fc.touches_boundary = true;
      } else if (a.circle >= 0 && b.chord >= 0) {
        const int j = a.circle;
        const BoundaryPoint& p = points_[j];
        const BoundaryPoint& pn = points_[(j + 1) % nb];
        if (!(p.kind == BoundaryPoint::Kind::End && pn.kind == BoundaryPoint::Kind::End && p.ring_pos == pn.ring_pos))
          fc.strands.push_back(chords_[b.chord].strand);
      }
    }
    out[root_to_face[find(dface[h])]].cycles.push_back(std::move(fc));
  }
  return out;
}

}  // namespace obl
