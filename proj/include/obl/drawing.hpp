#pragma once

#include <array>
#include <utility>
#include <vector>

#include "obl/curves.hpp"
#include "obl/surface.hpp"

namespace obl {

/// Input strand for a drawing: an arc (start/end marks) or a closed curve.
struct Strand {
  bool closed = false;
  int start = -1;
  int end = -1;
  Word word;
  int family = 0;
  /// Pins an end of this arc immediately after (counterclockwise) the end
  /// of arc strand `pin_start` / `pin_end` at the same mark.
  int pin_start = -1;
  int pin_end = -1;
};

Strand strand_of(const Arc& a, int family = 0);
Strand strand_of(const ClosedCurve& c, int family = 0);

/// Corner of a face of a drawing, met while walking the face boundary with
/// the face on the left.
struct FaceCorner {
  enum class Kind { Interior, Boundary };
  Kind kind = Kind::Interior;
  int crossing = -1;  // interior corners
  int mark = -1;      // boundary corners
  int strand_in = -1;
  int strand_out = -1;
};

struct FaceCycle {
  std::vector<FaceCorner> corners;
  /// True if the cycle runs along a stretch of the surface boundary that is
  /// not the gap between two strand ends at one mark.
  bool touches_boundary = false;
  /// Strands met along the cycle in order (one entry per maximal edge run).
  std::vector<int> strands;
};

struct Face {
  std::vector<FaceCycle> cycles;
  int disc_pieces = 0;
  int strips = 0;
  int euler_characteristic() const { return disc_pieces - strips; }
  bool is_disc() const { return euler_characteristic() == 1 && cycles.size() == 1; }
};

/// Simultaneous minimal-position realization of a set of strands.
///
/// Strand passages through each band are ordered by comparing their forward
/// continuations in the universal cover, then backward ones, then a fixed
/// parallel-copy rule; chords in the central disc are straight segments
/// between the resulting boundary points. Two chords cross iff their
/// endpoints interleave, so every pair of reduced strands ends up with the
/// minimal number of interior crossings.
class Drawing {
public:
  struct BoundaryPoint {
    enum class Kind { FootStart, FootEnd, Passage, End };
    Kind kind = Kind::End;
    int ring_pos = -1;
    int strand = -1;
    int letter = -1;  // passage: index of the letter in the strand word
    int side = 0;     // end: 0 = start of the arc, 1 = end of the arc
    double x = 0, y = 0;
  };
  struct Chord {
    int strand = -1;
    int index = -1;
    int from = -1;  // boundary point indices, oriented along the strand
    int to = -1;
    std::vector<int> crossings;  // sorted along the chord
  };
  struct Crossing {
    int chord_a = -1;
    int chord_b = -1;
    int sign = 0;  // orientation of (tangent of a, tangent of b)
    double ta = 0, tb = 0;
  };

  Drawing(const CombSurface& surface, std::vector<Strand> strands);

  const CombSurface& surface() const { return surface_; }
  const std::vector<Strand>& strands() const { return strands_; }
  const std::vector<BoundaryPoint>& points() const { return points_; }
  const std::vector<Chord>& chords() const { return chords_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }

  int first_chord(int strand) const { return chord_begin_[strand]; }
  int chord_count(int strand) const { return chord_begin_[strand + 1] - chord_begin_[strand]; }
  int strand_of_crossing_side(int crossing, int which) const;

  /// Crossings between two distinct strands (interior points only).
  std::vector<int> crossings_between(int s, int t) const;
  int crossing_count(int s, int t) const { return static_cast<int>(crossings_between(s, t).size()); }
  int self_crossings(int s) const;
  /// Sign of the crossing with the tangent of `first` taken first.
  int sign_for(int crossing, int first) const;

  /// Strand ends at a mark, in counterclockwise order: (strand, side).
  std::vector<std::pair<int, int>> ends_at(int mark) const;

  /// Strand order inside band `band`, counterclockwise at foot (band,-1):
  /// (strand, letter index).
  const std::vector<std::pair<int, int>>& band_order(int band) const { return band_order_[band]; }

  /// Crossings met along a strand, in traversal order.
  std::vector<int> crossings_along(int strand) const;

  /// Faces of the surface cut along all strands.
  std::vector<Face> faces() const;

private:
  void order_passages();
  void layout_points();
  void build_chords();
  void find_crossings();

  CombSurface surface_;
  std::vector<Strand> strands_;
  std::vector<std::vector<std::pair<int, int>>> band_order_;
  std::vector<std::vector<std::pair<int, int>>> mark_order_;  // by ring position
  std::vector<BoundaryPoint> points_;
  std::vector<std::vector<int>> passage_point_;  // [strand][letter*2 + (0 leave, 1 return)]
  std::vector<std::array<int, 2>> end_point_;    // [strand][side]
  std::vector<Chord> chords_;
  std::vector<int> chord_begin_;
  std::vector<Crossing> crossings_;
};

}  // namespace obl
