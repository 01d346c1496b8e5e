#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ainf/error.hpp"
#include "ainf/report.hpp"

namespace py = pybind11;
using namespace ainf;

namespace {

// Reports cross the boundary as JSON text; the Python package decodes them.
std::string dump(const io::Json& j) { return j.dump(); }

io::InputDocument document_from(const py::object& source) {
  if (py::isinstance<io::InputDocument>(source)) return source.cast<io::InputDocument>();
  return io::load_input(source.cast<std::string>());
}

std::vector<std::string> snf_diagonal(const std::vector<std::vector<std::string>>& rows, const std::string& ring_kind) {
  io::Json rj;
  rj["kind"] = ring_kind;
  auto ring = io::ring_from_json(rj);
  std::vector<std::vector<Scalar>> dense;
  for (const auto& r : rows) {
    std::vector<Scalar> row;
    for (const auto& x : r) row.push_back(ring.parse(x));
    dense.push_back(std::move(row));
  }
  std::vector<std::string> out;
  for (const auto& d : coeff::smith_diagonal(coeff::ExactMatrix::from_dense(dense), ring)) out.push_back(ring.format(d));
  return out;
}

}  // namespace

PYBIND11_MODULE(_ainf, m) {
  m.doc() = "Exact computations with finite A-infinity categories";

  // translators run in reverse registration order, so the base goes first
  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  py::register_exception<UnsupportedRing>(m, "UnsupportedRing", base.ptr());
  py::register_exception<PreconditionFailed>(m, "PreconditionFailed", base.ptr());

  py::class_<io::InputDocument>(m, "Document")
      .def_readonly("name", &io::InputDocument::name)
      .def_property_readonly("ring", [](const io::InputDocument& d) { return d.structure.cat.ring.name(); })
      .def_property_readonly("objects", [](const io::InputDocument& d) { return d.structure.cat.objects; })
      .def_property_readonly("dim", [](const io::InputDocument& d) { return d.structure.cat.dim(); })
      .def_property_readonly("minimal", [](const io::InputDocument& d) { return d.structure.m.is_minimal(); })
      .def("to_json", [](const io::InputDocument& d) { return dump(io::export_document(d)); })
      .def("__repr__", [](const io::InputDocument& d) {
        return "<Document " + (d.name.empty() ? std::string("<unnamed>") : d.name) + " over " +
               d.structure.cat.ring.name() + ", dim " + std::to_string(d.structure.cat.dim()) + ">";
      });

  m.def("load", [](const std::string& source) { return io::load_input(source); },
        "Read an input document from a file, or catalogue:NAME.");
  m.def("parse", [](const std::string& text) { return io::parse_document_text(text); });
  m.def("catalogue_names", &catalogue_names);

  m.def("check", [](const py::object& d, int w) { return dump(report::check(document_from(d), w)); },
        py::arg("document"), py::arg("max_weight") = 4);
  m.def("transfer", [](const py::object& d, int w) { return dump(report::transfer(document_from(d), w)); },
        py::arg("document"), py::arg("max_weight") = 4);
  m.def(
      "hochschild",
      [](const py::object& d, int lo, int hi, int w, const std::string& variant) {
        return dump(report::hochschild(document_from(d), lo, hi, w, report::parse_variant(variant)));
      },
      py::arg("document"), py::arg("min_degree") = 0, py::arg("max_degree") = 2, py::arg("max_weight") = 4,
      py::arg("variant") = "full");
  m.def("kaledin", [](const py::object& d, int w) { return dump(report::kaledin(document_from(d), w)); },
        py::arg("document"), py::arg("truncation") = 4);
  m.def("certify", [](const py::object& d, int w) { return dump(report::certify(document_from(d), w)); },
        py::arg("document"), py::arg("max_weight") = 4);
  m.def(
      "family",
      [](const py::object& d, const std::string& p, int w) {
        return dump(report::family(document_from(d), report::parse_pipeline(p), w));
      },
      py::arg("document"), py::arg("pipeline") = "generic", py::arg("max_weight") = 4);
  m.def("catalogue", [](const std::string& name) { return dump(report::catalogue(name)); }, py::arg("name") = "");
  m.def("smith_diagonal", &snf_diagonal, py::arg("rows"), py::arg("ring") = "integers",
        "Invariant factors of a matrix of exact strings.");
}
