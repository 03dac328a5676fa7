#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bnet/compiler.hpp"
#include "bnet/document.hpp"
#include "bnet/engine.hpp"
#include "bnet/generate.hpp"
#include "bnet/json_io.hpp"
#include "bnet/oracle.hpp"

namespace py = pybind11;
using namespace bnet;

namespace {

py::object to_python(const Json& value) {
  switch (value.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(value.get<bool>());
    case Json::value_t::number_integer: return py::int_(value.get<std::int64_t>());
    case Json::value_t::number_unsigned: return py::int_(value.get<std::uint64_t>());
    case Json::value_t::number_float: return py::float_(value.get<double>());
    case Json::value_t::string: return py::str(value.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& item : value) out.append(to_python(item));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [key, item] : value.items()) out[py::str(key)] = to_python(item);
      return out;
    }
    default: return py::none();
  }
}

EvidenceSet to_evidence(const BeliefNetwork& net, const std::map<std::string, std::string>& labels) {
  return evidence_from_labels(net, {labels.begin(), labels.end()});
}

AbsorptionMode to_mode(const std::string& name) {
  if (name == "removal") return AbsorptionMode::Removal;
  if (name == "zeroing") return AbsorptionMode::Zeroing;
  throw py::value_error("mode must be 'removal' or 'zeroing'");
}

// Compiled template held by Python.
struct PyCompiled {
  std::shared_ptr<const CompiledNetwork> compiled;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact junction-tree inference for discrete belief networks";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<EvidenceError>(m, "EvidenceError", base);
  py::register_exception<ImpossibleEvidence>(m, "ImpossibleEvidence", base);
  py::register_exception<CapExceeded>(m, "CapExceeded", base);
  py::register_exception<CycleError>(m, "CycleError", base);

  py::class_<BeliefNetwork>(m, "Network")
      .def_readonly("name", &BeliefNetwork::name)
      .def_property_readonly("ids",
                             [](const BeliefNetwork& n) {
                               std::vector<std::string> ids;
                               for (const auto& v : n.variables) ids.push_back(v.id);
                               return ids;
                             })
      .def("values", [](const BeliefNetwork& n, const std::string& id) {
        return n.variables[n.index_of(id)].values;
      })
      .def("parents", [](const BeliefNetwork& n, const std::string& id) {
        return n.cpts[n.index_of(id)].parents;
      })
      .def("cpt", [](const BeliefNetwork& n, const std::string& id) {
        return n.cpts[n.index_of(id)].table;
      })
      .def_property_readonly("arc_count", &BeliefNetwork::arc_count)
      .def("__len__", &BeliefNetwork::size)
      .def("__eq__", [](const BeliefNetwork& a, const BeliefNetwork& b) { return a == b; })
      .def("to_json", &serialize_network)
      .def("to_dot", &network_to_dot)
      .def("topological_order", &topological_order)
      .def("validate", [](const BeliefNetwork& n) { return to_python(issues_to_json(validate(n))); });

  m.def("parse_network", &parse_network, py::arg("document"));
  m.def("load_network", &load_network, py::arg("path"));
  m.def("serialize_network", &serialize_network, py::arg("network"));
  m.def("merge_networks", &merge_networks, py::arg("base"), py::arg("addition"));
  m.def("generate_network",
        [](std::size_t nodes, std::size_t arcs, std::size_t max_card, std::uint64_t seed,
           std::size_t min_card, std::size_t max_parents) {
          return generate_network({nodes, arcs, min_card, max_card, max_parents, seed});
        },
        py::arg("nodes"), py::arg("arcs"), py::arg("max_card") = 3, py::arg("seed") = 1,
        py::arg("min_card") = 2, py::arg("max_parents") = 0);

  py::class_<PyCompiled>(m, "CompiledNetwork")
      .def_property_readonly("network", [](const PyCompiled& c) { return c.compiled->network; })
      .def("stats", [](const PyCompiled& c) {
        return to_python(stats_to_json(forest_stats(c.compiled->forest)));
      })
      .def("cliques",
           [](const PyCompiled& c) {
             std::vector<std::vector<std::string>> out;
             for (const auto& clique : c.compiled->forest.cliques) {
               auto& ids = out.emplace_back();
               for (std::size_t v : clique.vars) ids.push_back(c.compiled->network.variables[v].id);
             }
             return out;
           })
      .def("fill_ins",
           [](const PyCompiled& c) {
             std::vector<std::pair<std::string, std::string>> out;
             const auto& vars = c.compiled->network.variables;
             for (auto [a, b] : c.compiled->triangulation.fill_ins)
               out.emplace_back(vars[a].id, vars[b].id);
             return out;
           })
      .def("to_dot", [](const PyCompiled& c) { return forest_to_dot(*c.compiled); })
      .def("query",
           [](const PyCompiled& c, const std::map<std::string, std::string>& evidence,
              const std::string& mode) {
             auto report = query(c.compiled, to_evidence(c.compiled->network, evidence), to_mode(mode));
             return to_python(report_to_json(c.compiled->network, report));
           },
           py::arg("evidence") = std::map<std::string, std::string>{},
           py::arg("mode") = "removal");

  m.def("compile", [](const BeliefNetwork& net) { return PyCompiled{compile(net)}; },
        py::arg("network"));

  py::class_<InferenceSession>(m, "Session")
      .def(py::init([](const PyCompiled& c, const std::string& mode) {
             return InferenceSession(c.compiled, to_mode(mode));
           }),
           py::arg("compiled"), py::arg("mode") = "removal")
      .def("absorb",
           [](InferenceSession& s, const std::map<std::string, std::string>& evidence) {
             s.absorb_evidence(to_evidence(s.compiled().network, evidence));
           })
      .def("propagate", &InferenceSession::propagate)
      .def("add_evidence",
           [](InferenceSession& s, const std::map<std::string, std::string>& evidence) {
             s.add_evidence_incremental(to_evidence(s.compiled().network, evidence));
           })
      .def("retract_all", &InferenceSession::retract_all)
      .def("marginal", py::overload_cast<std::string_view>(&InferenceSession::marginal, py::const_))
      .def_property_readonly("p_evidence", &InferenceSession::evidence_probability)
      .def_property_readonly("calibrated", &InferenceSession::calibrated)
      .def_property_readonly("working_cells", &InferenceSession::working_cells)
      .def_property_readonly("counters",
                             [](const InferenceSession& s) {
                               const auto& c = s.counters();
                               py::dict out;
                               out["checks"] = c.checks;
                               out["cells_sent"] = c.cells_sent;
                               out["template_copies"] = c.template_copies;
                               return out;
                             })
      .def("report", [](const InferenceSession& s) {
        return to_python(report_to_json(s.compiled().network, s.report()));
      });

  m.def("oracle_posteriors",
        [](const BeliefNetwork& net, const std::map<std::string, std::string>& evidence) {
          auto report = oracle_posteriors(net, to_evidence(net, evidence));
          py::dict posteriors;
          for (std::size_t v = 0; v < net.size(); ++v)
            posteriors[py::str(net.variables[v].id)] = report.posteriors[v];
          py::dict out;
          out["p_evidence"] = report.p_evidence;
          out["posteriors"] = posteriors;
          return out;
        },
        py::arg("network"), py::arg("evidence") = std::map<std::string, std::string>{});

  m.def("count_update_operations",
        [](const std::vector<std::size_t>& cards, std::size_t observed, std::size_t children,
           const std::string& mode) {
          if (observed >= cards.size()) throw py::index_error("observed position out of range");
          return count_update_operations(cards, observed, children, to_mode(mode));
        },
        py::arg("cardinalities"), py::arg("observed"), py::arg("children"),
        py::arg("mode") = "removal");
}
