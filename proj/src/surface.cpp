#include "obl/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace obl {

namespace {

// Positions of feet in the ring, in ring order.
std::vector<int> foot_positions(const std::vector<RingItem>& ring) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(ring.size()); ++i)
    if (ring[i].is_foot()) out.push_back(i);
  return out;
}

// Gap successor permutation: leaving gap g counterclockwise we hit foot
// F[g+1], run along the band side and come out behind the partner foot.
std::vector<int> gap_successor(const std::vector<RingItem>& ring, const std::vector<int>& feet) {
  const int n = static_cast<int>(feet.size());
  std::map<std::pair<int, int>, int> index_of;
  for (int g = 0; g < n; ++g) index_of[{ring[feet[g]].id, ring[feet[g]].sign}] = g;
  std::vector<int> next(n);
  for (int g = 0; g < n; ++g) {
    const RingItem& f = ring[feet[(g + 1) % n]];
    next[g] = index_of.at({f.id, -f.sign});
  }
  return next;
}

// Component label per gap, components numbered by their smallest gap.
std::vector<int> gap_components(const std::vector<int>& next, int* count) {
  const int n = static_cast<int>(next.size());
  std::vector<int> comp(n, -1);
  int c = 0;
  for (int g = 0; g < n; ++g) {
    if (comp[g] >= 0) continue;
    for (int h = g; comp[h] < 0; h = next[h]) comp[h] = c;
    ++c;
  }
  *count = c;
  return comp;
}

}  // namespace

CombSurface CombSurface::build(int genus, int boundary) {
  if (genus < 0) throw Error("genus must be non-negative");
  if (boundary < 1) throw Error("surfaces must have nonempty boundary");
  std::vector<RingItem> ring;
  int band = 0;
  for (int h = 0; h < genus; ++h) {
    const int a = band++, b = band++;
    ring.push_back(RingItem::foot(a, +1));
    ring.push_back(RingItem::foot(b, +1));
    ring.push_back(RingItem::foot(a, -1));
    ring.push_back(RingItem::foot(b, -1));
  }
  for (int j = 1; j < boundary; ++j) {
    const int c = band++;
    ring.push_back(RingItem::foot(c, +1));
    ring.push_back(RingItem::foot(c, -1));
  }
  return from_ring(std::move(ring), 0);
}

CombSurface CombSurface::from_ring(std::vector<RingItem> ring, int next_mark) {
  CombSurface s;
  s.ring_ = std::move(ring);
  s.next_mark_ = next_mark;
  s.recompute();
  return s;
}

void CombSurface::recompute() {
  std::map<int, int> feet_seen;
  std::vector<int> mark_ids;
  int max_band = -1;
  for (const RingItem& it : ring_) {
    if (it.is_foot()) {
      if (it.sign != 1 && it.sign != -1) throw Error("foot sign must be +1 or -1");
      feet_seen[it.id] += it.sign > 0 ? 1 : 16;
      max_band = std::max(max_band, it.id);
    } else {
      mark_ids.push_back(it.id);
      next_mark_ = std::max(next_mark_, it.id + 1);
    }
  }
  bands_ = max_band + 1;
  for (int b = 0; b < bands_; ++b)
    if (feet_seen[b] != 17) throw Error("band " + std::to_string(b) + " must have exactly one foot of each sign");
  std::sort(mark_ids.begin(), mark_ids.end());
  if (std::adjacent_find(mark_ids.begin(), mark_ids.end()) != mark_ids.end()) throw Error("duplicate mark id");

  const auto feet = foot_positions(ring_);
  if (feet.empty()) {
    boundary_ = 1;
  } else {
    gap_components(gap_successor(ring_, feet), &boundary_);
  }
  const int twice_genus = 2 - euler_characteristic() - boundary_;
  if (twice_genus < 0 || twice_genus % 2 != 0) throw Error("inconsistent band data");
  genus_ = twice_genus / 2;
}

std::vector<int> CombSurface::cut_system() const {
  std::vector<int> out(bands_);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

int CombSurface::foot_position(int band, int sign) const {
  for (int i = 0; i < static_cast<int>(ring_.size()); ++i)
    if (ring_[i].is_foot() && ring_[i].id == band && ring_[i].sign == sign) return i;
  throw Error("no foot for band " + std::to_string(band));
}

int CombSurface::mark_position(int mark) const {
  for (int i = 0; i < static_cast<int>(ring_.size()); ++i)
    if (ring_[i].is_mark() && ring_[i].id == mark) return i;
  throw Error("unknown mark " + std::to_string(mark));
}

bool CombSurface::has_mark(int mark) const {
  return std::any_of(ring_.begin(), ring_.end(), [&](const RingItem& it) { return it.is_mark() && it.id == mark; });
}

std::vector<int> CombSurface::marks() const {
  std::vector<int> out;
  for (const RingItem& it : ring_)
    if (it.is_mark()) out.push_back(it.id);
  return out;
}

int CombSurface::component_of_position(int pos) const {
  const auto feet = foot_positions(ring_);
  if (feet.empty()) return 0;
  int count = 0;
  const auto comp = gap_components(gap_successor(ring_, feet), &count);
  // Gap g runs from feet[g] to feet[g+1]; positions before feet[0] wrap
  // into the last gap.
  int gap = static_cast<int>(feet.size()) - 1;
  for (int g = 0; g < static_cast<int>(feet.size()); ++g)
    if (feet[g] <= pos) gap = g;
  return comp[gap];
}

std::vector<std::vector<int>> CombSurface::boundary_marks() const {
  std::vector<std::vector<int>> out(boundary_);
  const auto feet = foot_positions(ring_);
  if (feet.empty()) {
    out[0] = marks();
    return out;
  }
  const int n = static_cast<int>(feet.size());
  int count = 0;
  const auto next = gap_successor(ring_, feet);
  const auto comp = gap_components(next, &count);
  const int len = static_cast<int>(ring_.size());
  std::vector<bool> done(count, false);
  for (int g = 0; g < n; ++g) {
    if (done[comp[g]]) continue;
    done[comp[g]] = true;
    int h = g;
    do {
      for (int p = (feet[h] + 1) % len; p != feet[(h + 1) % n]; p = (p + 1) % len)
        if (ring_[p].is_mark()) out[comp[g]].push_back(ring_[p].id);
      h = next[h];
    } while (h != g);
  }
  return out;
}

bool CombSurface::single_disc_complement() const {
  // Every band contributes two feet and the boundary walk visits every gap
  // exactly once; chi computed from the walk must match 1 - |cut system|.
  const auto feet = foot_positions(ring_);
  if (static_cast<int>(feet.size()) != 2 * bands_) return false;
  if (feet.empty()) return boundary_ == 1 && genus_ == 0;
  const auto next = gap_successor(ring_, feet);
  std::vector<int> seen(next.size(), 0);
  for (int g : next) ++seen[g];
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) return false;
  return 2 - 2 * genus_ - boundary_ == 1 - static_cast<int>(cut_system().size());
}

CombSurface CombSurface::with_mark_after(int pos, int* new_mark) const {
  CombSurface s = *this;
  const int id = s.next_mark_++;
  s.ring_.insert(s.ring_.begin() + (pos + 1), RingItem::mark(id));
  if (new_mark) *new_mark = id;
  return s;
}

CombSurface CombSurface::with_marks_on_component(int component, int count, std::vector<int>* created) const {
  CombSurface s = *this;
  const auto feet = foot_positions(s.ring_);
  // Insert right before the foot that closes the component's first gap.
  int insert_at = static_cast<int>(s.ring_.size());
  if (!feet.empty()) {
    int c = 0;
    const auto next = gap_successor(s.ring_, feet);
    const auto comp = gap_components(next, &c);
    if (component < 0 || component >= c) throw Error("no boundary component " + std::to_string(component));
    const int n = static_cast<int>(feet.size());
    for (int g = 0; g < n; ++g) {
      if (comp[g] == component) {
        insert_at = g + 1 < n ? feet[g + 1] : static_cast<int>(s.ring_.size());
        break;
      }
    }
  } else if (component != 0) {
    throw Error("no boundary component " + std::to_string(component));
  }
  for (int i = 0; i < count; ++i) {
    const int id = s.next_mark_++;
    s.ring_.insert(s.ring_.begin() + insert_at + i, RingItem::mark(id));
    if (created) created->push_back(id);
  }
  return s;
}

CombSurface CombSurface::without_mark(int mark) const {
  CombSurface s = *this;
  s.ring_.erase(s.ring_.begin() + mark_position(mark));
  return s;
}

CombSurface CombSurface::without_band(int band) const {
  std::vector<RingItem> ring;
  for (RingItem it : ring_) {
    if (it.is_foot() && it.id == band) continue;
    if (it.is_foot() && it.id > band) --it.id;
    ring.push_back(it);
  }
  return from_ring(std::move(ring), next_mark_);
}

std::string CombSurface::ring_text() const {
  std::string out;
  for (const RingItem& it : ring_) {
    if (!out.empty()) out += ' ';
    if (it.is_foot())
      out += "h" + std::to_string(it.id) + (it.sign > 0 ? "+" : "-");
    else
      out += "*";
  }
  return out;
}

std::pair<CombSurface, HandleAttachment> attach_handle(const CombSurface& surface, int a, int b) {
  if (a == b) throw Error("handle feet must be distinct marks");
  const int pa = surface.mark_position(a);
  const int pb = surface.mark_position(b);
  const int core = surface.band_count();
  std::vector<RingItem> ring = surface.ring();
  ring[pa] = RingItem::foot(core, +1);
  ring[pb] = RingItem::foot(core, -1);
  CombSurface out = CombSurface::from_ring(std::move(ring), surface.next_mark_id());
  return {out, HandleAttachment{a, b, core}};
}

}  // namespace obl
