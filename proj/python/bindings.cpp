#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "splitsync/classes.hpp"
#include "splitsync/cli.hpp"
#include "splitsync/critical.hpp"
#include "splitsync/directing.hpp"
#include "splitsync/format.hpp"
#include "splitsync/result.hpp"
#include "splitsync/split.hpp"

namespace py = pybind11;
using namespace splitsync;

namespace {

// Images as 1-based state lists, one list per state.
std::vector<std::vector<std::vector<std::size_t>>> images_of(const AutomatonFile& f) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  for (const auto& s : f.automaton.symbols()) {
    std::vector<std::vector<std::size_t>> sym;
    for (auto img : s.images()) {
      std::vector<std::size_t> states;
      for (State q : img) states.push_back(std::size_t(q) + 1);
      sym.push_back(std::move(states));
    }
    out.push_back(std::move(sym));
  }
  return out;
}

// Result documents cross the boundary as JSON text; the Python side decodes.
std::string d3_json(const AutomatonFile& f, const std::string& engine) {
  DirectingReport r;
  if (engine == "implicit") r = d3_implicit(f.automaton);
  else if (engine == "split") r = d3_via_split(f.automaton);
  else if (engine == "oracle") r = d3_oracle(f.automaton);
  else throw InvalidArgument("unknown engine '" + engine + "'");
  return to_json(directing_document(r, f, true));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Directing words of complete nondeterministic automata";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<CatalogError>(m, "CatalogError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<AutomatonFile>(m, "Automaton")
      .def_property_readonly("n", [](const AutomatonFile& f) { return f.automaton.n(); })
      .def_property_readonly("names", [](const AutomatonFile& f) { return f.names; })
      .def_property_readonly("symbols", &images_of)
      .def_property_readonly("is_dfa", [](const AutomatonFile& f) { return f.automaton.is_dfa(); })
      .def("to_text", [](const AutomatonFile& f) { return serialize(f); })
      .def("__eq__", [](const AutomatonFile& x, const AutomatonFile& y) {
        return x.automaton == y.automaton;
      })
      .def("__len__", [](const AutomatonFile& f) { return f.automaton.size(); })
      .def("__repr__", [](const AutomatonFile& f) {
        return "<Automaton n=" + std::to_string(f.automaton.n()) + " symbols=" +
               std::to_string(f.automaton.size()) + ">";
      });

  m.def("parse", [](const std::string& text) { return parse_automaton(text); }, py::arg("text"));
  m.def("cerny", [](std::size_t n) { return with_default_names(cerny(n)); }, py::arg("n"));
  m.def("cerny_cnfa", [](std::size_t n) { return with_default_names(cerny_cnfa(n)); },
        py::arg("n"));
  m.def("default_catalog_dir", &default_catalog_dir);
  m.def("catalog",
        [](const std::string& name, std::optional<std::size_t> n, const std::string& dir) {
          return catalog(name, n, CatalogOptions{dir}).file;
        },
        py::arg("name"), py::arg("n") = py::none(), py::arg("dir"));

  m.def("_d3", &d3_json, py::arg("automaton"), py::arg("engine"));
  m.def("_verify",
        [](const AutomatonFile& f, const std::string& word) {
          return to_json(verify_document(verify_d3(f.automaton, parse_word(f, word))));
        },
        py::arg("automaton"), py::arg("word"));
  m.def("_classify",
        [](const AutomatonFile& f) { return to_json(classify_document(classify(f.automaton))); },
        py::arg("automaton"));
  m.def("_census",
        [](std::size_t n, std::size_t jobs, const std::string& dir) {
          CensusOptions o;
          o.jobs = jobs;
          o.catalog.dir = dir;
          py::gil_scoped_release release;
          return to_json(census_document(census(n, o)));
        },
        py::arg("n"), py::arg("jobs"), py::arg("dir"));

  m.def("full_split",
        [](const AutomatonFile& f) { return with_default_names(full_split(f.automaton).automaton); },
        py::arg("automaton"));
  m.def("symbol_graph",
        [](const AutomatonFile& f) {
          std::vector<std::tuple<std::string, std::string, std::size_t>> out;
          for (const auto& e : symbol_graph(f.automaton).edges) {
            out.emplace_back(f.names[e.first], f.names[e.second], std::size_t(e.differing) + 1);
          }
          return out;
        },
        py::arg("automaton"));
  m.def("inverse_split",
        [](const AutomatonFile& f) {
          std::vector<AutomatonFile> out;
          for (const auto& a : inverse_split_enumerate(f.automaton).automata) {
            out.push_back(with_default_names(a));
          }
          return out;
        },
        py::arg("automaton"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
