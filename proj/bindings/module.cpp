#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "reosem/bisim.hpp"
#include "reosem/io.hpp"
#include "reosem/primitives.hpp"
#include "reosem/transform.hpp"

namespace py = pybind11;
using namespace reosem;

namespace {

DataUniverse make_universe(const std::vector<std::string>& items) {
  return DataUniverse{std::set<std::string>(items.begin(), items.end())};
}

std::vector<Node> make_nodes(const std::vector<std::string>& names) {
  std::vector<Node> nodes;
  nodes.reserve(names.size());
  for (const std::string& name : names) nodes.emplace_back(name);
  return nodes;
}

MatchMode parse_mode(const std::string& mode) {
  if (mode == "syntactic") return MatchMode::Syntactic;
  if (mode == "semantic") return MatchMode::Semantic;
  throw Error("unknown match mode '" + mode + "' (use syntactic or semantic)");
}

std::vector<std::string> node_names(const std::set<Node>& nodes) {
  std::vector<std::string> out;
  for (const Node& n : nodes) out.push_back(n.name());
  return out;
}

}  // namespace

PYBIND11_MODULE(_reosem, m) {
  m.doc() = "connector semantics: coloring models, constraint automata and"
            " the transformations between them";

  // Translators run newest first, so the base class goes in first.
  auto base = py::register_exception<Error>(m, "ReosemError");
  py::register_exception<ParseError>(m, "ModelParseError", base.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimitError", base.ptr());

  py::class_<EpsilonConnector>(m, "EpsilonConnector")
      .def_property_readonly(
          "nodes", [](const EpsilonConnector& e) { return node_names(e.structure.nodes); })
      .def_property_readonly("indexes",
                             [](const EpsilonConnector& e) {
                               std::vector<std::string> out;
                               for (const Index& i : e.behavior.ctm.indexes)
                                 out.push_back(i.display());
                               return out;
                             })
      .def_property_readonly("initial",
                             [](const EpsilonConnector& e) { return e.behavior.initial.display(); })
      .def_property_readonly("next_count",
                             [](const EpsilonConnector& e) { return e.behavior.next.size(); })
      .def("__eq__", [](const EpsilonConnector& a, const EpsilonConnector& b) { return a == b; })
      .def("__repr__", [](const EpsilonConnector& e) {
        return "<EpsilonConnector nodes=" + std::to_string(e.structure.nodes.size()) +
               " indexes=" + std::to_string(e.behavior.ctm.indexes.size()) + ">";
      });

  py::class_<AlphaConnector>(m, "AlphaConnector")
      .def_property_readonly(
          "nodes", [](const AlphaConnector& a) { return node_names(a.structure.nodes); })
      .def_property_readonly("states",
                             [](const AlphaConnector& a) {
                               std::vector<std::string> out;
                               for (const Index& q : a.automaton.states)
                                 out.push_back(q.display());
                               return out;
                             })
      .def_property_readonly("initial",
                             [](const AlphaConnector& a) { return a.automaton.initial.display(); })
      .def_property_readonly(
          "transition_count",
          [](const AlphaConnector& a) { return a.automaton.transitions.size(); })
      .def("__eq__", [](const AlphaConnector& a, const AlphaConnector& b) { return a == b; })
      .def("__repr__", [](const AlphaConnector& a) {
        return "<AlphaConnector nodes=" + std::to_string(a.structure.nodes.size()) +
               " states=" + std::to_string(a.automaton.states.size()) + ">";
      });

  m.def(
      "instantiate",
      [](const std::string& kind, const std::vector<std::string>& nodes,
         const std::string& instance, const std::vector<std::string>& universe) {
        auto k = primitive_kind_from_name(kind);
        if (!k) throw Error("unknown primitive kind '" + kind + "'");
        PrimitiveModels models = instantiate(*k, make_nodes(nodes), instance,
                                             make_universe(universe));
        return py::make_tuple(models.eps, models.alpha);
      },
      py::arg("kind"), py::arg("nodes"), py::arg("instance"), py::arg("universe"),
      "Build one primitive; returns (coloring model, automaton).");

  m.def("compose", &compose_epsilon_connectors, py::arg("e1"), py::arg("e2"));
  m.def("compose", &compose_alpha_connectors, py::arg("a1"), py::arg("a2"));
  m.def("l_transform", &l_transform, py::arg("e"));
  m.def("inv_l_transform", &inv_l_transform, py::arg("a"));

  m.def(
      "check_bisim",
      [](const AlphaConnector& a, const EpsilonConnector& e, const std::string& mode,
         const std::vector<std::string>& universe, std::uint64_t max_assignments) {
        BisimVerdict v =
            check_bisim(a, e, parse_mode(mode), make_universe(universe), max_assignments);
        py::dict out;
        out["bisimilar"] = v.bisimilar;
        py::list witness;
        for (const auto& [q, i] : v.witness.pairs)
          witness.append(py::make_tuple(q.display(), i.display()));
        out["witness"] = witness;
        out["culprit"] = v.culprit ? py::object(py::make_tuple(v.culprit->first.display(),
                                                               v.culprit->second.display()))
                                   : py::object(py::none());
        out["reason"] = v.reason;
        return out;
      },
      py::arg("automaton"), py::arg("model"), py::arg("mode") = "semantic",
      py::arg("universe"), py::arg("max_assignments") = kDefaultMaxAssignments);

  m.def(
      "elaborate_circuit",
      [](const std::string& text) {
        ElaboratedCircuit circuit = elaborate(parse_circuit(text));
        std::vector<std::string> items(circuit.universe.items().begin(),
                                       circuit.universe.items().end());
        return py::make_tuple(items, circuit.eps, circuit.alpha);
      },
      py::arg("text"), "Parse and elaborate a circuit; returns (universe, eps, alpha).");

  m.def(
      "serialize",
      [](const EpsilonConnector& e, const std::vector<std::string>& universe) {
        return serialize({make_universe(universe), e});
      },
      py::arg("model"), py::arg("universe"));
  m.def(
      "serialize",
      [](const AlphaConnector& a, const std::vector<std::string>& universe) {
        return serialize({make_universe(universe), a});
      },
      py::arg("model"), py::arg("universe"));

  m.def(
      "deserialize",
      [](const std::string& text) {
        ModelFile m = deserialize(text);
        std::vector<std::string> items(m.universe.items().begin(), m.universe.items().end());
        if (const auto* eps = std::get_if<EpsilonConnector>(&m.model))
          return py::make_tuple(items, py::cast(*eps));
        return py::make_tuple(items, py::cast(std::get<AlphaConnector>(m.model)));
      },
      py::arg("text"), "Returns (universe, model).");

  m.def(
      "export_dot",
      [](const EpsilonConnector& e, bool simplify) { return export_dot(e, simplify); },
      py::arg("model"), py::arg("simplify") = false);
  m.def(
      "export_dot",
      [](const AlphaConnector& a, bool simplify) { return export_dot(a, simplify); },
      py::arg("model"), py::arg("simplify") = false);
}
