#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "obl/catalog.hpp"
#include "obl/io.hpp"

namespace {

using namespace obl;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kParse = 2;
constexpr int kFound = 10;
constexpr int kUsage = 64;

struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::string book_path, cert_path, out, format = "text", entry;
  int depth = 3, multiplicity = 1, positions = 1, size = 480;
  double time_cap = 60;
  bool no_images = false, no_labels = false;
};

SearchBudget budget_of(const Options& o) {
  SearchBudget b;
  b.max_stabilizations = o.depth;
  b.max_multiplicity = o.multiplicity;
  b.max_handle_positions = o.positions;
  b.time_cap = std::chrono::milliseconds(static_cast<long long>(o.time_cap * 1000));
  return b;
}

AugmentedOpenBook load_book(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
  return parse_book(text);
}

void emit(const Options& o, const std::string& text, const json& j) {
  const std::string body = o.format == "json" ? j.dump(2) + "\n" : text;
  if (o.out.empty())
    std::cout << body;
  else
    write_file(o.out, body);
}

int cmd_check(const Options& o) {
  const AugmentedOpenBook book = load_book(o.book_path);
  const RegionVerdict v = find_overtwisted_region(book);
  std::string text;
  if (v.found) {
    text = "overtwisted region found: " + std::to_string(v.region->sides()) + " sides, corners";
    for (const SignedPoint& p : v.region->canonical_corners()) text += " " + point_text(p);
    text += "\n";
  } else {
    text = "no overtwisted region";
    if (v.fixed_arc) text += " (an arc of Γ is fixed by the monodromy)";
    else if (v.stray_point) text += " (interior point " + point_text(*v.stray_point) + " off every candidate)";
    text += "\n";
  }
  emit(o, text, to_json(v));
  return v.found ? kFound : kOk;
}

int cmd_search(const Options& o) {
  const AugmentedOpenBook book = load_book(o.book_path);
  const SearchInput in = search_input(book);
  const SearchBudget b = budget_of(o);
  const SearchResult r = search(in.book, in.basis, b);
  if (r.certificate) {
    const std::string cert = format_certificate(*r.certificate);
    if (!o.out.empty()) {
      write_file(o.out, cert);
      std::cerr << r.report(b) << "\n";
    } else if (o.format == "json") {
      std::cout << to_json(r, b).dump(2) << "\n";
    } else {
      std::cout << cert;
    }
    return kFound;
  }
  Options report = o;
  emit(report, r.report(b) + "\n", to_json(r, b));
  return kOk;
}

int cmd_verify(const Options& o) {
  const AugmentedOpenBook book = load_book(o.book_path);
  std::string text;
  try {
    text = read_file(o.cert_path);
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
  const Certificate cert = parse_certificate(text);
  VerifyResult v;
  try {
    v = verify(book, cert);
  } catch (const Error& e) {
    v = {false, e.what()};
  }
  emit(o, v.ok ? "certificate verified\n" : "certificate rejected: " + v.reason + "\n",
       json{{"ok", v.ok}, {"reason", v.reason}});
  return v.ok ? kOk : kFailed;
}

int cmd_surgery(const Options& o) {
  const AugmentedOpenBook book = load_book(o.book_path);
  if (book.l_system.closed.size() != 1 || !book.l_system.arcs.empty())
    throw UsageError("surgery needs a book with L = [one closed curve]");
  const SearchInput in = search_input(book);
  const SurgeryReport r = surgery_tightness_check(in.book, in.basis, budget_of(o));
  std::string text = r.text();
  if (r.search.certificate) {
    text += "certificate:\n" + format_certificate(*r.search.certificate);
    for (std::size_t i = 0; i < r.destabilizations.size(); ++i)
      text += "destabilization " + std::to_string(i + 1) + ":\n" + format_book(r.destabilizations[i]);
    if (r.left_book) text += "left-veering witness book:\n" + format_book(*r.left_book);
  }
  emit(o, text, to_json(r));
  return r.search.certificate ? kFound : kOk;
}

int cmd_render(const Options& o) {
  const AugmentedOpenBook book = load_book(o.book_path);
  RenderOptions ro;
  ro.size = o.size;
  ro.images = !o.no_images;
  ro.labels = !o.no_labels;
  const std::string svg = render_svg(book, ro);
  if (o.out.empty())
    std::cout << svg;
  else
    write_file(o.out, svg);
  return kOk;
}

int cmd_catalog(const Options& o) {
  if (!o.entry.empty()) {
    const CatalogEntry& e = catalog_entry(o.entry);
    emit(o, e.stanza, json{{"name", e.name}, {"stanza", e.stanza}, {"expected", expected_text(e.expected)},
                           {"depth", e.budget.max_stabilizations}, {"multiplicity", e.budget.max_multiplicity},
                           {"surgery", e.surgery}, {"note", e.note}});
    return kOk;
  }
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    for (const CatalogEntry& e : catalog()) write_file((std::filesystem::path(o.out) / (e.name + ".book")).string(), e.stanza);
    return kOk;
  }
  json all = json::array();
  std::string text;
  for (const CatalogEntry& e : catalog()) {
    text += e.name + "  " + expected_text(e.expected) + (e.surgery ? " after surgery" : "") + " at depth " +
            std::to_string(e.budget.max_stabilizations) + ", multiplicity " +
            std::to_string(e.budget.max_multiplicity) + "  " + e.note + "\n";
    all.push_back({{"name", e.name}, {"expected", expected_text(e.expected)}, {"surgery", e.surgery},
                   {"depth", e.budget.max_stabilizations}, {"multiplicity", e.budget.max_multiplicity},
                   {"note", e.note}});
  }
  std::cout << (o.format == "json" ? all.dump(2) + "\n" : text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for abstract open books: overtwisted regions, certificates, surgery."};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--out", o.out, "Write output to this file");
  };
  auto budget = [&](CLI::App* c) {
    c->add_option("--depth", o.depth, "Maximum number of stabilizations")->check(CLI::NonNegativeNumber);
    c->add_option("--multiplicity", o.multiplicity, "Parallel copies per basis arc")->check(CLI::PositiveNumber);
    c->add_option("--handle-positions", o.positions, "Gap depths tried beside each arc end")
        ->check(CLI::PositiveNumber);
    c->add_option("--time-cap", o.time_cap, "Seconds before the search gives up")->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "Look for an overtwisted region (exit 10 if found, 0 if not)");
  check->add_option("book", o.book_path)->required();
  common(check);
  auto* srch = app.add_subcommand("search", "Search for a certificate (exit 10 if found, 0 if not)");
  srch->add_option("book", o.book_path)->required();
  common(srch);
  budget(srch);
  auto* ver = app.add_subcommand("verify", "Replay a certificate against a book (exit 0 if it verifies)");
  ver->add_option("book", o.book_path)->required();
  ver->add_option("certificate", o.cert_path)->required();
  common(ver);
  auto* surg = app.add_subcommand("surgery", "Legendrian surgery tightness check (exit 10 if a certificate is found)");
  surg->add_option("book", o.book_path)->required();
  common(surg);
  budget(surg);
  auto* rend = app.add_subcommand("render", "Draw a book as SVG");
  rend->add_option("book", o.book_path)->required();
  rend->add_option("--out", o.out, "SVG file");
  rend->add_option("--size", o.size, "Width and height in pixels")->check(CLI::Range(64, 4096));
  rend->add_flag("--no-images", o.no_images, "Leave out φ(Γ)");
  rend->add_flag("--no-labels", o.no_labels, "Leave out intersection signs");
  auto* cat = app.add_subcommand("catalog", "List the example catalog, print one entry, or write all with --out DIR");
  cat->add_option("name", o.entry);
  common(cat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(o);
    if (*srch) return cmd_search(o);
    if (*ver) return cmd_verify(o);
    if (*surg) return cmd_surgery(o);
    if (*rend) return cmd_render(o);
    if (*cat) return cmd_catalog(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
