#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "obl/catalog.hpp"
#include "obl/io.hpp"

namespace py = pybind11;
using namespace obl;

namespace {

SearchBudget budget_of(int depth, int multiplicity, int positions, double time_cap) {
  SearchBudget b;
  b.max_stabilizations = depth;
  b.max_multiplicity = multiplicity;
  b.max_handle_positions = positions;
  b.time_cap = std::chrono::milliseconds(static_cast<long long>(time_cap * 1000));
  return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Abstract open books: overtwisted regions, certificates and Legendrian surgery";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<AugmentedOpenBook>(m, "Book")
      .def(py::init(&parse_book), py::arg("text"))
      .def_property_readonly("genus", [](const AugmentedOpenBook& b) { return b.surface.genus(); })
      .def_property_readonly("boundary_components",
                             [](const AugmentedOpenBook& b) { return b.surface.boundary_components(); })
      .def_property_readonly("bands", [](const AugmentedOpenBook& b) { return b.surface.band_count(); })
      .def_property_readonly("gamma_size", [](const AugmentedOpenBook& b) { return b.gamma.size(); })
      .def("text", &format_book)
      .def("json", [](const AugmentedOpenBook& b) { return to_json(b).dump(); })
      .def("__eq__", [](const AugmentedOpenBook& a, const AugmentedOpenBook& b) { return a == b; })
      .def("__repr__", [](const AugmentedOpenBook& b) {
        return "<Book g=" + std::to_string(b.surface.genus()) + " b=" +
               std::to_string(b.surface.boundary_components()) + ">";
      });

  py::class_<Certificate>(m, "Certificate")
      .def(py::init(&parse_certificate), py::arg("text"))
      .def_property_readonly("steps", [](const Certificate& c) { return c.steps.size(); })
      .def_property_readonly("start", [](const Certificate& c) { return c.start; })
      .def("text", &format_certificate)
      .def("json", [](const Certificate& c) { return to_json(c).dump(); });

  m.def("check", [](const AugmentedOpenBook& b) { return to_json(find_overtwisted_region(b)).dump(); },
        py::arg("book"), "Region verdict as a JSON string");

  m.def(
      "search",
      [](const AugmentedOpenBook& book, int depth, int multiplicity, int positions, double time_cap) {
        const SearchInput in = search_input(book);
        const SearchBudget b = budget_of(depth, multiplicity, positions, time_cap);
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = search(in.book, in.basis, b);
        }
        return py::make_tuple(r.certificate ? py::cast(*r.certificate) : py::none(), to_json(r, b).dump());
      },
      py::arg("book"), py::arg("depth") = 3, py::arg("multiplicity") = 1, py::arg("handle_positions") = 1,
      py::arg("time_cap") = 60.0, "Returns (certificate or None, report JSON)");

  m.def(
      "verify",
      [](const AugmentedOpenBook& book, const Certificate& cert) {
        const VerifyResult v = verify(book, cert);
        return py::make_tuple(v.ok, v.reason);
      },
      py::arg("book"), py::arg("certificate"));

  m.def(
      "surgery",
      [](const AugmentedOpenBook& book, int depth, int multiplicity, double time_cap) {
        const SearchInput in = search_input(book);
        py::gil_scoped_release release;
        return to_json(surgery_tightness_check(in.book, in.basis, budget_of(depth, multiplicity, 1, time_cap)))
            .dump();
      },
      py::arg("book"), py::arg("depth") = 3, py::arg("multiplicity") = 1, py::arg("time_cap") = 60.0);

  m.def(
      "render_svg",
      [](const AugmentedOpenBook& book, int size, bool images, bool labels) {
        RenderOptions o;
        o.size = size;
        o.images = images;
        o.labels = labels;
        return render_svg(book, o);
      },
      py::arg("book"), py::arg("size") = 480, py::arg("images") = true, py::arg("labels") = true);

  m.def("catalog_names", [] {
    std::vector<std::string> out;
    for (const CatalogEntry& e : catalog()) out.push_back(e.name);
    return out;
  });
  m.def(
      "catalog_entry",
      [](const std::string& name) {
        const CatalogEntry& e = catalog_entry(name);
        py::dict d;
        d["name"] = e.name;
        d["stanza"] = e.stanza;
        d["expected"] = expected_text(e.expected);
        d["depth"] = e.budget.max_stabilizations;
        d["multiplicity"] = e.budget.max_multiplicity;
        d["surgery"] = e.surgery;
        d["note"] = e.note;
        return d;
      },
      py::arg("name"));
}
