#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace obl {

/// Thrown for malformed or out-of-contract input anywhere in the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One item on the boundary circle of the central disc: either a band foot
/// or a marked point of the surface boundary.
struct RingItem {
  enum class Kind : std::uint8_t { Foot, Mark };
  Kind kind = Kind::Mark;
  int id = 0;    // band index for feet, mark id for marks
  int sign = 0;  // +1 / -1 for the two feet of a band, 0 for marks

  static RingItem foot(int band, int sign) { return {Kind::Foot, band, sign}; }
  static RingItem mark(int id) { return {Kind::Mark, id, 0}; }
  bool is_foot() const { return kind == Kind::Foot; }
  bool is_mark() const { return kind == Kind::Mark; }
  friend bool operator==(const RingItem&, const RingItem&) = default;
};

/// Compact oriented surface with nonempty boundary, encoded as a disc with
/// untwisted bands attached ("one-vertex ribbon graph").
///
/// The co-cores of the bands are the cut system: cutting along them leaves the
/// central disc. The ring lists, in counterclockwise order, band feet and
/// boundary marks; counterclockwise on the disc agrees with the boundary
/// orientation of the surface on every stretch between feet. A strand crossing
/// band b in direction +1 leaves the disc through foot (b,-1) and re-enters
/// through foot (b,+1); positions across a band read counterclockwise at one
/// foot are reversed at the other.
///
/// Values are immutable after construction; every modifier returns a copy.
class CombSurface {
public:
  CombSurface() = default;

  /// Canonical surface: genus handles first (feet a+ b+ a- b-), then one band
  /// with adjacent feet per extra boundary circle.
  static CombSurface build(int genus, int boundary);

  /// Surface from an explicit ring; validates that band feet are paired.
  static CombSurface from_ring(std::vector<RingItem> ring, int next_mark);

  int band_count() const { return bands_; }
  int genus() const { return genus_; }
  int boundary_components() const { return boundary_; }
  int euler_characteristic() const { return 1 - bands_; }
  const std::vector<RingItem>& ring() const { return ring_; }
  int next_mark_id() const { return next_mark_; }

  /// Band indices in cut-system order.
  std::vector<int> cut_system() const;

  int foot_position(int band, int sign) const;
  int mark_position(int mark) const;
  bool has_mark(int mark) const;
  std::vector<int> marks() const;

  /// Boundary component (0-based) containing the given ring position.
  int component_of_position(int pos) const;
  int component_of_mark(int mark) const { return component_of_position(mark_position(mark)); }

  /// Marks on each boundary component, in boundary-orientation order starting
  /// from the component's first gap in the ring.
  std::vector<std::vector<int>> boundary_marks() const;

  /// Walks the boundary of the disc-with-bands and confirms that the counted
  /// boundary circles and the band count are consistent with a single disc
  /// complement of the cut system.
  bool single_disc_complement() const;

  /// Returns a copy with a fresh mark inserted immediately counterclockwise
  /// after ring position `pos` (pos = -1 inserts at the front).
  CombSurface with_mark_after(int pos, int* new_mark) const;

  /// Returns a copy with `count` fresh marks appended to the first gap of the
  /// given boundary component.
  CombSurface with_marks_on_component(int component, int count, std::vector<int>* created) const;

  /// Returns a copy without the given mark.
  CombSurface without_mark(int mark) const;

  /// Returns a copy without band `band`; higher band indices shift down by one.
  CombSurface without_band(int band) const;

  /// Canonical text of the ring ("h0+ * h0- *"), marks written as '*'.
  std::string ring_text() const;

  friend bool operator==(const CombSurface&, const CombSurface&) = default;

private:
  void recompute();

  std::vector<RingItem> ring_;
  int bands_ = 0;
  int genus_ = 0;
  int boundary_ = 1;
  int next_mark_ = 0;
};

/// Record of a 1-handle attached at two marks. The marks are consumed: foot
/// (core,+1) replaces `foot_a` and foot (core,-1) replaces `foot_b`, so the
/// core read from b to a crosses the new band in direction +1. Encodings of
/// arcs and curves on the base surface are unchanged by the inclusion.
struct HandleAttachment {
  int foot_a = -1;
  int foot_b = -1;
  int core = -1;
  friend bool operator==(const HandleAttachment&, const HandleAttachment&) = default;
};

/// Attaches a band whose feet replace marks `a` and `b`.
std::pair<CombSurface, HandleAttachment> attach_handle(const CombSurface& surface, int a, int b);

inline int euler_characteristic(const CombSurface& s) { return s.euler_characteristic(); }

}  // namespace obl
