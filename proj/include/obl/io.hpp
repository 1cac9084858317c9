#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "obl/consistency.hpp"

namespace obl {

/// Malformed stanza or certificate text; `line` is 1-based, 0 if unknown.
class ParseError : public Error {
public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

private:
  int line_;
};

/// Book stanza:
///
///   surface g=1 b=1
///   ring h0+ m0 h1+ h0- m1 h1-        (optional; marks as m<id> or *)
///   curve c0 word +0
///   phi = T(c0) T(c1)^-1              (or phi = id; leftmost acts last)
///   arc a0 from b0.0 to b0.1 word +0,-1
///   gamma = [a0]
///   L = [c0]                          (optional)
///   stabilization band 1 sign -1 sigma 2 3 word +0 feet 2 3 curve +0,+1
///
/// Arc ends are b<component>.<slot>, the slot counting marks on that
/// boundary component in boundary order. Lines starting with '#' are
/// comments.
AugmentedOpenBook parse_book(const std::string& text);
std::string format_book(const AugmentedOpenBook& book);

/// Versioned certificate:
///
///   certificate v1
///   book
///   <book stanza of the start>
///   end book
///   step 3 5 word +0 sign +1
///   mask 1
///   proper = [c0]                     (optional; names from the stanza)
///   region x0.0.0(-) b0+(+)
///   end certificate
Certificate parse_certificate(const std::string& text);
std::string format_certificate(const Certificate& cert);

nlohmann::json to_json(const Word& w);
nlohmann::json to_json(const Arc& a);
nlohmann::json to_json(const ClosedCurve& c);
nlohmann::json to_json(const AugmentedOpenBook& book);
nlohmann::json to_json(const SignedPoint& p);
nlohmann::json to_json(const Region& r);
nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const RegionVerdict& v);
nlohmann::json to_json(const SearchResult& r, const SearchBudget& budget);
nlohmann::json to_json(const SurgeryReport& r);

struct RenderOptions {
  int size = 480;
  bool images = true;  // draw φ(Γ)
  bool labels = true;  // signs of the points of Γ ∩ φ(Γ)
  bool system = true;  // draw L
};

/// SVG of the polygon model: feet as dashed sides labelled h<band>±, the
/// boundary of the surface thickest, Γ straight, φ(Γ) bowed, L dashed.
/// Output depends only on the book and the options.
std::string render_svg(const AugmentedOpenBook& book, const RenderOptions& options = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace obl
