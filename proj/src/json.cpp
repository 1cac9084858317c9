#include "obl/io.hpp"

namespace obl {

using nlohmann::json;

json to_json(const Word& w) {
  json out = json::array();
  for (const Letter& l : w) out.push_back(l.dir * (l.band + 1));
  return out;
}

json to_json(const Arc& a) { return {{"start", a.start}, {"end", a.end}, {"word", word_text(a.word)}}; }

json to_json(const ClosedCurve& c) { return {{"word", word_text(c.word)}}; }

namespace {

json system_json(const CurveSystem& L) {
  json arcs = json::array(), closed = json::array();
  for (const Arc& a : L.arcs) arcs.push_back(to_json(a));
  for (const ClosedCurve& c : L.closed) closed.push_back(to_json(c));
  return {{"arcs", arcs}, {"closed", closed}};
}

}  // namespace

json to_json(const AugmentedOpenBook& book) {
  json phi = json::array();
  for (const TwistGenerator& t : book.monodromy.word())
    phi.push_back({{"curve", word_text(t.curve.word)}, {"power", t.power}});
  json gamma = json::array();
  for (const Arc& a : book.gamma) gamma.push_back(to_json(a));
  return {{"genus", book.surface.genus()},
          {"boundary", book.surface.boundary_components()},
          {"ring", book.surface.ring_text()},
          {"phi", phi},
          {"gamma", gamma},
          {"L", system_json(book.l_system)},
          {"stabilizations", book.history.size()},
          {"stanza", format_book(book)}};
}

json to_json(const SignedPoint& p) {
  return {{"kind", p.kind == SignedPoint::Kind::Interior ? "interior" : "boundary"},
          {"gamma", p.gamma},
          {"image", p.image},
          {"ordinal", p.ordinal},
          {"sign", p.sign},
          {"text", point_text(p)}};
}

json to_json(const Region& r) {
  json corners = json::array();
  for (const SignedPoint& p : r.canonical_corners()) corners.push_back(to_json(p));
  return {{"sides", r.sides()}, {"disc", r.disc}, {"corners", corners}};
}

json to_json(const Certificate& cert) {
  json steps = json::array();
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const StabStep& s = cert.steps[i];
    steps.push_back({{"gap_a", s.gap_a},
                     {"gap_b", s.gap_b},
                     {"word", word_text(s.word)},
                     {"sign", s.sign},
                     {"masked", static_cast<bool>(cert.mask[i])}});
  }
  json region = json::array();
  for (const SignedPoint& p : cert.region) region.push_back(to_json(p));
  json out = {{"start", to_json(cert.start)}, {"steps", steps}, {"region", region}, {"text", format_certificate(cert)}};
  out["proper_for"] = cert.proper_for ? system_json(*cert.proper_for) : json(nullptr);
  return out;
}

json to_json(const RegionVerdict& v) {
  json out = {{"found", v.found},
              {"boundary_based", v.boundary_based},
              {"isolated", v.isolated},
              {"unique", v.unique},
              {"fixed_arc", v.fixed_arc}};
  out["region"] = v.region ? to_json(*v.region) : json(nullptr);
  out["stray_point"] = v.stray_point ? json(point_text(*v.stray_point)) : json(nullptr);
  return out;
}

json to_json(const SearchResult& r, const SearchBudget& budget) {
  json out = {{"found", r.certificate.has_value()},
              {"states", r.states},
              {"depth_completed", r.depth_completed},
              {"timed_out", r.timed_out},
              {"seconds", r.seconds},
              {"budget",
               {{"depth", budget.max_stabilizations},
                {"multiplicity", budget.max_multiplicity},
                {"handle_positions", budget.max_handle_positions},
                {"time_cap_ms", budget.time_cap.count()}}},
              {"report", r.report(budget)}};
  out["certificate"] = r.certificate ? to_json(*r.certificate) : json(nullptr);
  return out;
}

json to_json(const SurgeryReport& r) {
  json factors = json::array();
  for (const FactorStep& f : r.factorization)
    factors.push_back({{"move", f.move},
                       {"masked", f.masked},
                       {"curve", word_text(f.curve.word)},
                       {"handle_crossings", f.handle_crossings},
                       {"acts_equal", f.acts_equal}});
  json chain = json::array();
  for (const AugmentedOpenBook& b : r.destabilizations) chain.push_back(format_book(b));
  json out = {{"certificate_found", r.search.certificate.has_value()},
              {"destabilizations", chain},
              {"left_verdict", veering_text(r.left_verdict)},
              {"factorization", factors},
              {"degenerate", r.degenerate},
              {"chain_complete", r.chain_complete},
              {"conclusion", r.conclusion}};
  out["certificate"] = r.search.certificate ? to_json(*r.search.certificate) : json(nullptr);
  out["left_arc"] = r.left_arc ? to_json(*r.left_arc) : json(nullptr);
  return out;
}

}  // namespace obl
