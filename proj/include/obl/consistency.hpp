#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "obl/openbook.hpp"
#include "obl/regions.hpp"

namespace obl {

enum class Veering { Left, Right, Neither };
std::string veering_text(Veering v);

/// Side on which φ(γ) leaves γ at its endpoints, in minimal position. Left
/// at either endpoint gives Left; an arc fixed by φ gives Neither.
Veering right_veering_at(const AugmentedOpenBook& book, const Arc& gamma);

/// A stabilization given by where its arc ends: two new marks are put in
/// the gaps after ring items gap_a and gap_b (a before b when the gaps
/// coincide) and the arc runs from a to b along `word`.
struct StabStep {
  int gap_a = 0;
  int gap_b = 0;
  Word word;
  int sign = 1;
  friend bool operator==(const StabStep&, const StabStep&) = default;
};

/// Gap just before / just after a mark, `depth` ring items away.
int gap_before(const CombSurface& s, int mark, int depth = 1);
int gap_after(const CombSurface& s, int mark, int depth = 1);

/// Surface with the two marks of the step inserted, and their ids.
std::pair<CombSurface, std::pair<int, int>> insert_step_marks(const CombSurface& s, const StabStep& step);
std::pair<AugmentedOpenBook, StabilizationMove> apply_step(const AugmentedOpenBook& book, const StabStep& step);

struct Certificate {
  AugmentedOpenBook start;  // base book with Γ (and any marks Γ needs)
  std::vector<StabStep> steps;
  std::vector<bool> mask;  // subsequence S′ of the steps
  std::vector<SignedPoint> region;  // canonical corner cycle
  std::optional<CurveSystem> proper_for;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct Replay {
  AugmentedOpenBook book;
  std::vector<StabilizationMove> moves;
};
Replay replay(const Certificate& cert);

/// S′(L): the twists of the masked moves applied to L in order, on the
/// surface of the last move.
CurveSystem transport_curve_system(const CurveSystem& L, const std::vector<StabilizationMove>& moves,
                                   const std::vector<bool>& mask, const CombSurface& surface);

struct VerifyResult {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// True if `start` is `book` with possibly extra marks and some Γ.
bool compatible_start(const AugmentedOpenBook& book, const AugmentedOpenBook& start);
VerifyResult verify(const AugmentedOpenBook& book, const Certificate& cert);

/// Finds a subsequence of the moves for which the region is proper with
/// respect to S′(L); tries every subset, smallest first.
std::optional<std::vector<bool>> proper_mask(const Region& region, const AugmentedOpenBook& final_book,
                                             const std::vector<StabilizationMove>& moves, const CurveSystem& L);

/// Three positive stabilizations around the co-core γ of a negative
/// stabilization, giving a proper bigon.
Certificate negative_stab_bigon(const AugmentedOpenBook& book, const Arc& gamma, const CurveSystem& L = {});

/// Certificate with no stabilizations for a book that already carries an
/// overtwisted region (proper for the book's L when L is non-empty).
Certificate certificate_of(const AugmentedOpenBook& book);

struct RegionStep {
  AugmentedOpenBook book;
  Certificate cert;
  int removed = -1;  // index in the old Γ of the arc destabilized or added
};

/// Destabilizes along an arc of Γ next to a usable negative corner of the
/// certified region, carrying S′(L) along; the region loses two sides.
RegionStep destabilize_region(const Certificate& cert, const AugmentedOpenBook& book);

/// Stabilization plus its co-core added to Γ, chosen so the region gains two
/// sides and destabilize_region undoes it. Nothing if no such move is found
/// among stabilizing arcs from gaps of the ring with short words.
std::optional<RegionStep> inverse_destabilization(const AugmentedOpenBook& book);

/// True if the arcs are disjoint and simple and cut the surface into one disc.
bool is_basis(const CombSurface& s, const std::vector<Arc>& arcs);

/// Replace `slid` by `added`, where `slid`, `along` and `added` bound a disc
/// component of the surface cut along the collection plus `added`.
struct ArcSlideMove {
  Arc slid;
  Arc along;
  Arc added;
  friend bool operator==(const ArcSlideMove&, const ArcSlideMove&) = default;
};

/// True if some disc face of the surface cut along `arcs` ∪ {added} has
/// exactly the three arcs of the move on its boundary, once each.
bool is_arc_slide_domain(const CombSurface& s, const std::vector<Arc>& arcs, const ArcSlideMove& move);

/// Basis with move.slid replaced by move.added.
std::vector<Arc> arc_slide(const CombSurface& s, const std::vector<Arc>& basis, const ArcSlideMove& move);

/// Slides of arcs[slid] along the other arcs: each comes with the surface
/// carrying the marks of the new arc.
std::vector<std::pair<CombSurface, ArcSlideMove>> arc_slide_moves(const CombSurface& s, const std::vector<Arc>& arcs,
                                                                   int slid);

/// Steps of a certificate re-expressed on a start surface with extra marks.
/// With `past_new` a gap after an item moves past any new marks that follow it.
/// Marks consumed by a handle in the new start are matched to the feet that
/// replaced them.
std::vector<StabStep> rebase_steps(const AugmentedOpenBook& old_start, const AugmentedOpenBook& new_start,
                                   const std::vector<StabStep>& steps, bool past_new);

/// Same certificate on a start surface carrying extra marks.
Certificate rebase_certificate(const Certificate& cert, const CombSurface& wider);

/// Certificate for Γ with move.slid replaced by copies of move.along and
/// move.added, extended by two stabilizations: one isotopic to the added
/// arc and one isotopic to the image of the along arc, each crossing the
/// two new arcs (respectively their images) once. `depth` bounds how far
/// the stabilizing arcs' ends may sit from the ends they follow.
Certificate transport_certificate_across_slide(const Certificate& cert, const ArcSlideMove& move,
                                               const AugmentedOpenBook& book, int depth = 2);

/// Stabilizing arcs on the start book of a certificate that miss Γ, φ(Γ)
/// and L, with words of length at most `max_length`.
std::vector<StabStep> stabilizations_avoiding(const Certificate& cert, int max_length = 1);

struct StabilizedCertificate {
  AugmentedOpenBook book;  // the stabilized open book, without Γ or L
  Certificate cert;
};

/// Certificate for the start book stabilized by `sigma`: the same
/// stabilizations re-indexed, then if needed up to `extra` more from
/// candidate_steps.
StabilizedCertificate transport_certificate_across_stabilization(const Certificate& cert, const StabStep& sigma,
                                                                 int extra = 2);

struct SearchBudget {
  int max_stabilizations = 3;
  int max_multiplicity = 1;
  int max_handle_positions = 1;
  std::chrono::milliseconds time_cap{60000};
};

struct SearchResult {
  std::optional<Certificate> certificate;
  long long states = 0;           // distinct books evaluated
  int depth_completed = -1;       // deepest level explored in full
  bool timed_out = false;
  double seconds = 0;
  std::string report(const SearchBudget& budget) const;
};

/// Oriented collections built from the basis: each arc used up to `m`
/// times as parallel copies, all copies of an arc oriented alike. Returns, for
/// every collection, the book carrying it (extra marks added for copies).
std::vector<AugmentedOpenBook> gamma_choices(const AugmentedOpenBook& book, const std::vector<Arc>& basis, int m);

/// Stabilizations offered at a book, for each γ in Γ and each pair of gap
/// depths up to `positions`: boundary-parallel arcs around either end of γ,
/// γ pushed off to its right, and φ(γ) (current, or as in `base_images`)
/// with both ends pushed against the boundary orientation.
std::vector<StabStep> candidate_steps(const AugmentedOpenBook& book, const std::vector<Arc>& images,
                                      const std::vector<Arc>& base_images, int positions);

/// Breadth-first search for a certificate: over stabilization count, then
/// multiplicity, then choice of Γ. Worker count comes from
/// OPENBOOK_LAB_THREADS (default 1).
SearchResult search(const AugmentedOpenBook& book, const std::vector<Arc>& basis, const SearchBudget& budget);

/// One stabilization of the sequence seen from the pre-surgery side:
/// τ⁻¹_{L_j} S_j φ = τ_{curve} τ⁻¹_{L_{j-1}} S_{j-1} φ, where L_j is the
/// curve transported by the masked moves so far.
struct FactorStep {
  int move = -1;
  bool masked = false;       // L_j = τ_{s_j}(L_{j-1}) and curve = s_j
  ClosedCurve curve;         // otherwise curve = τ⁻¹_{L_{j-1}}(s_j)
  int handle_crossings = 0;  // crossings of the curve with the move's band
  bool acts_equal = false;
};

struct SurgeryReport {
  AugmentedOpenBook pre;
  AugmentedOpenBook post;
  SearchResult search;
  /// Books after each region-shrinking destabilization, ending at the bigon.
  std::vector<AugmentedOpenBook> destabilizations;
  std::optional<Arc> left_arc;         // γ of the bigon
  std::optional<AugmentedOpenBook> left_book;  // (Σ″, τ⁻¹_{S′(L)} φ″)
  Veering left_verdict = Veering::Neither;
  std::vector<FactorStep> factorization;
  bool degenerate = false;  // S′ empty and L misses Γ ∪ φ(Γ)
  bool chain_complete = false;
  std::string conclusion;

  std::string text() const;
};

/// Surgery pipeline: searches the surgered book (Σ, τ_L φ) for a
/// certificate proper for L, and if one is found reduces it to a bigon,
/// checks that its arc is mapped to the left once the twist about S′(L) is
/// undone, and checks that the stabilized surgered book is a stabilization
/// of the pre-surgery one.
SurgeryReport surgery_tightness_check(const AugmentedOpenBook& pre, const std::vector<Arc>& basis,
                                      const SearchBudget& budget);

}  // namespace obl
