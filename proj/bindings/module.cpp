// Python bindings over the core: parsing, matching, rewriting, exploration
// and the termination toolkit.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grw/engine.hpp"
#include "grw/error.hpp"
#include "grw/io.hpp"
#include "grw/termination.hpp"

namespace py = pybind11;

namespace {

grw::Matching matching_from_dict(const py::dict& d) {
  grw::Matching mu;
  for (const auto& item : d)
    mu.assignment.emplace_back(py::cast<std::string>(item.first),
                               py::cast<std::string>(item.second));
  std::sort(mu.assignment.begin(), mu.assignment.end());
  return mu;
}

py::dict matching_to_dict(const grw::Matching& mu) {
  py::dict d;
  for (const auto& [p, g] : mu.assignment) d[py::str(p)] = g;
  return d;
}

const grw::Rule& rule_by_name(const grw::GRS& grs, const std::string& name) {
  const grw::Rule* r = grs.find_rule(name);
  if (!r) grw::fail(grw::ErrorKind::BadRule, "no rule named '" + name + "'");
  return *r;
}

py::dict report_to_dict(const grw::CompatibilityReport& report) {
  py::dict out;
  out["compatible"] = report.compatible();
  py::list rules;
  for (const grw::RuleVerdict& v : report.rules) {
    py::dict entry;
    entry["rule"] = v.rule;
    entry["compatible"] = v.compatible;
    if (v.compatible)
      entry["clause"] = grw::clause_name(v.clause);
    else {
      entry["failed_condition"] = v.failed_condition;
      entry["witness"] = v.witness;
    }
    rules.append(entry);
  }
  out["rules"] = rules;
  out["rendered"] = report.render(false);
  return out;
}

}  // namespace

PYBIND11_MODULE(_grw, m) {
  m.doc() = "graph rewriting workbench";

  py::register_exception<grw::Error>(m, "GrwError");

  py::class_<grw::Graph>(m, "Graph")
      .def_property_readonly("node_count", &grw::Graph::node_count)
      .def_property_readonly("edge_count", &grw::Graph::edge_count)
      .def("nodes",
           [](const grw::Graph& g) {
             py::list out;
             for (const auto& [id, label] : g.nodes())
               out.append(py::make_tuple(id, g.alphabets()->node_label(label)));
             return out;
           })
      .def("edges",
           [](const grw::Graph& g) {
             py::list out;
             for (const auto& e : g.edges())
               out.append(py::make_tuple(
                   e.src, g.alphabets()->edge_label(e.label), e.tgt));
             return out;
           })
      .def("canonical_key", &grw::Graph::canonical_key)
      .def("key_digest", &grw::Graph::key_digest)
      .def("render", &grw::render_graph)
      .def("__eq__",
           [](const grw::Graph& a, const grw::Graph& b) { return a == b; })
      .def("__repr__", [](const grw::Graph& g) {
        return "<Graph " + std::to_string(g.node_count()) + " nodes, " +
               std::to_string(g.edge_count()) + " edges>";
      });

  py::class_<grw::GRS>(m, "GRS")
      .def_property_readonly("rule_names",
                             [](const grw::GRS& grs) {
                               std::vector<std::string> names;
                               for (const auto& r : grs.rules)
                                 names.push_back(r.name());
                               return names;
                             })
      .def("render", &grw::render_grs)
      .def("__repr__", [](const grw::GRS& grs) {
        return "<GRS " + std::to_string(grs.rules.size()) + " rules>";
      });

  py::class_<grw::Pipeline>(m, "Pipeline")
      .def_property_readonly("module_names", [](const grw::Pipeline& p) {
        std::vector<std::string> names;
        for (const auto& module : p.modules) names.push_back(module.name);
        return names;
      });

  py::class_<grw::WeightsFile>(m, "Weights")
      .def_property_readonly("pi_count", [](const grw::WeightsFile& wf) {
        return wf.pis.size();
      });

  m.def("parse_grs", [](const std::string& text) { return grw::parse_grs(text); });
  m.def("load_grs", &grw::load_grs);
  m.def(
      "parse_graph",
      [](const std::string& text, const grw::GRS* grs) {
        return grs ? grw::parse_graph(text, grs->alphabets)
                   : grw::parse_graph(text);
      },
      py::arg("text"), py::arg("grs") = nullptr);
  m.def("load_pipeline", &grw::load_pipeline);
  m.def(
      "parse_weights",
      [](const std::string& text, const grw::GRS& grs) {
        return grw::parse_weights(text, grs.alphabets);
      },
      py::arg("text"), py::arg("grs"));

  m.def("find_matchings",
        [](const grw::GRS& grs, const std::string& rule, const grw::Graph& g) {
          py::list out;
          for (const auto& mu :
               grw::find_matchings(rule_by_name(grs, rule).pattern(), g))
            out.append(matching_to_dict(mu));
          return out;
        });
  m.def("is_matching",
        [](const grw::GRS& grs, const std::string& rule, const grw::Graph& g,
           const py::dict& candidate) {
          return grw::is_matching(rule_by_name(grs, rule).pattern(), g,
                                  matching_from_dict(candidate));
        });
  m.def("apply_rule",
        [](const grw::GRS& grs, const std::string& rule, const grw::Graph& g,
           const py::dict& matching) {
          return grw::apply_commands(g, matching_from_dict(matching),
                                     rule_by_name(grs, rule).commands());
        });
  m.def("step_all", [](const grw::GRS& grs, const grw::Graph& g) {
    py::list out;
    for (const auto& step : grw::step_all(grs, g))
      out.append(py::make_tuple(grs.rules[step.rule_index].name(),
                                matching_to_dict(step.matching), step.result));
    return out;
  });
  m.def(
      "normalize",
      [](const grw::GRS& grs, const grw::Graph& g, std::size_t fuel) {
        grw::NormalizeResult r = grw::normalize(grs, g, fuel);
        return py::make_tuple(r.graph, r.steps, r.fuel_exhausted);
      },
      py::arg("grs"), py::arg("graph"), py::arg("fuel") = 1000);
  m.def(
      "run_pipeline",
      [](const grw::Pipeline& p, const grw::Graph& g, std::size_t fuel) {
        grw::PipelineResult r = grw::run_pipeline(p, g, fuel);
        return py::make_tuple(r.graph, r.module_steps, r.exhausted_module);
      },
      py::arg("pipeline"), py::arg("graph"), py::arg("fuel") = 1000);

  m.def(
      "explore",
      [](const grw::GRS& grs, const grw::Graph& g, std::size_t limit) {
        grw::DerivationSpace space = grw::explore(grs, g, limit);
        std::size_t transitions = 0;
        for (const auto& t : space.transitions) transitions += t.size();
        py::dict out;
        out["states"] = space.states_explored();
        out["complete"] = space.complete;
        out["transitions"] = transitions;
        return out;
      },
      py::arg("grs"), py::arg("graph"),
      py::arg("limit") = grw::kDefaultStateLimit);
  m.def(
      "decide_termination",
      [](const grw::GRS& grs, const grw::Graph& g, std::size_t limit) {
        grw::DerivationSpace space = grw::explore(grs, g, limit);
        grw::TerminationVerdict v = grw::decide_termination(space);
        py::dict out;
        out["states"] = v.states_explored;
        switch (v.kind) {
          case grw::TerminationVerdict::Kind::Terminates:
            out["kind"] = "terminates";
            out["height"] = v.height;
            break;
          case grw::TerminationVerdict::Kind::Loops: {
            out["kind"] = "loops";
            py::list cycle;
            if (!v.cycle.empty()) cycle.append(space.keys[v.cycle.front().from]);
            for (const auto& step : v.cycle) cycle.append(space.keys[step.to]);
            out["cycle"] = cycle;
            break;
          }
          case grw::TerminationVerdict::Kind::LimitExceeded:
            out["kind"] = "limit-exceeded";
            break;
        }
        return out;
      },
      py::arg("grs"), py::arg("graph"),
      py::arg("limit") = grw::kDefaultStateLimit);
  m.def(
      "derivation_height",
      [](const grw::GRS& grs, const grw::Graph& g, std::size_t limit) {
        return grw::derivation_height_of(grs, g, limit);
      },
      py::arg("grs"), py::arg("graph"),
      py::arg("limit") = grw::kDefaultStateLimit);

  m.def("check_compatible",
        [](const grw::GRS& grs, const grw::WeightsFile& wf) {
          return report_to_dict(grw::check_compatible(grs, wf.w));
        });
  m.def("check_lexicographic",
        [](const grw::GRS& grs, const grw::WeightsFile& wf) {
          return report_to_dict(grw::check_lexicographic(
              grs, grw::LexicographicWeight{wf.w, wf.pis}));
        });
  m.def("synthesize_weight",
        [](const grw::GRS& grs) -> py::object {
          std::optional<grw::EdgeWeight> w = grw::synthesize_weight(grs);
          if (!w) return py::none();
          py::dict out;
          for (grw::LabelIx e = 0; e < w->values().size(); ++e)
            out[py::str(w->alphabets()->edge_label(e))] = w->of(e);
          return out;
        });
  m.def("evaluate_w", [](const grw::WeightsFile& wf, const grw::Graph& g) {
    return grw::evaluate_w(wf.w, g);
  });
  m.def("evaluate_eta", [](const grw::WeightsFile& wf, const grw::Graph& g) {
    return grw::evaluate_eta(wf.eta, g);
  });
  m.def("evaluate_pi",
        [](const grw::WeightsFile& wf, std::size_t index, const grw::Graph& g) {
          return grw::evaluate_pi(wf.pis.at(index), g);
        });

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
