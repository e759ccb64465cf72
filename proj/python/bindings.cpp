#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symq/errors.hpp"
#include "symq/pipeline.hpp"

namespace py = pybind11;
using namespace symq;

namespace {

// Owns the built scenario and constructs the quantum context on demand.
struct Scenario {
  BuiltScenario scn;
  std::optional<QuantumContext> ctx;

  explicit Scenario(const std::string& path) : scn(load_and_build(path)) {}

  QuantumContext& context() {
    if (!ctx) ctx = build_context(scn, Tolerances::defaults());
    if (!ctx->states) throw AssumptionViolation(ctx->failure);
    return *ctx;
  }

  std::vector<std::string> experiments() const {
    std::vector<std::string> out;
    for (const auto& p : scn.file.parameters) out.push_back(p.name);
    return out;
  }

  py::dict assumptions() {
    if (scn.file.parameters.empty()) throw ValidationError("scenario declares no experiments");
    const auto rep =
        check_assumptions(scn.file.parameters, scn.group, scn.file.base_index());
    py::dict d;
    d["a"] = rep.a;
    d["b"] = rep.b;
    d["c"] = rep.c;
    d["d"] = rep.d;
    d["group_order"] = rep.group_order;
    py::dict per;
    for (const auto& ex : rep.experiments) {
      py::dict e;
      e["subgroup_order"] = ex.subgroup_order;
      e["induced_orbits"] = ex.induced_orbits.blocks.size();
      e["single_orbit"] = ex.single_induced_orbit;
      per[py::str(ex.name)] = e;
    }
    d["experiments"] = per;
    return d;
  }

  RealMatrix transitions(const std::string& a, const std::string& b) {
    const int ia = scn.file.parameter_index(a), ib = scn.file.parameter_index(b);
    if (ia < 0 || ib < 0) throw UnknownExperiment("unknown experiment name");
    return transition_matrix(ia, ib, *context().states).entries;
  }

  Vector state(const std::string& a, const std::string& value) {
    const int ia = scn.file.parameter_index(a);
    if (ia < 0) throw UnknownExperiment("unknown experiment name");
    const auto& vals = scn.file.parameters[ia].values;
    const auto it = std::find(vals.begin(), vals.end(), value);
    if (it == vals.end()) throw UnknownValue("unknown value label");
    return context().states->at(ia, static_cast<int>(it - vals.begin())).vector;
  }

  std::string exact_outcome(const std::string& channel, const std::string& hypothesis) {
    const int c = scn.file.channel_index(channel);
    if (c < 0) throw UnknownExperiment("unknown channel name");
    const int b = scn.file.base_index();
    const auto& labels = scn.file.parameters[b].values;
    const auto it = std::find(labels.begin(), labels.end(), hypothesis);
    if (it == labels.end()) throw UnknownValue("unknown hypothesis label");
    return to_string(outcome_one_probability(scn.file, c,
                                             static_cast<int>(it - labels.begin())));
  }

  std::vector<int> run(const std::string& channel, const std::string& hypothesis, long n,
                       std::uint64_t seed, long lifetime) {
    SimulateOptions opt;
    opt.channel = channel;
    opt.hypothesis = hypothesis;
    opt.n = n;
    opt.seed = seed;
    opt.lifetime = lifetime;
    const int c = channel.empty() ? 0 : scn.file.channel_index(channel);
    if (c < 0) throw UnknownExperiment("unknown channel name");
    std::optional<int> hyp;
    if (!hypothesis.empty()) {
      const auto& labels = scn.file.parameters[scn.file.base_index()].values;
      const auto it = std::find(labels.begin(), labels.end(), hypothesis);
      if (it == labels.end()) throw UnknownValue("unknown hypothesis label");
      hyp = static_cast<int>(it - labels.begin());
    }
    const auto sim = simulate(scn.file, c, hyp, n, seed, lifetime);
    return std::vector<int>(sim.bits.begin(), sim.bits.end());
  }

  py::dict posterior(const std::string& channel, const std::vector<int>& bits) {
    const int c = scn.file.channel_index(channel);
    if (c < 0) throw UnknownExperiment("unknown channel name");
    const auto& labels = scn.file.parameters[scn.file.base_index()].values;
    std::vector<std::uint8_t> raw(bits.begin(), bits.end());
    const auto post = bayes_update(uniform_prior(labels), scn.file, c, raw);
    py::dict d;
    for (std::size_t h = 0; h < post.labels.size(); ++h)
      d[py::str(post.labels[h])] = post.probabilities[h];
    return d;
  }

  std::vector<int> strata_dimensions() {
    if (!scn.file.design) throw ValidationError("scenario has no design section");
    const auto rep = randomization_strata(scn.file.design->units, scn.file.design->blocks);
    std::vector<int> dims;
    for (const auto& s : rep.strata) dims.push_back(s.dimension);
    return dims;
  }

  py::tuple validate() {
    const auto res = run_validate(scn, Tolerances::defaults());
    return py::make_tuple(res.exit_code, res.report);
  }
};

}  // namespace

PYBIND11_MODULE(symq, m) {
  m.doc() = "finite symmetry scenarios: group checks, state construction, transition "
            "probabilities, inference simulation, design strata";

  py::register_exception<Error>(m, "SymqError");

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<const std::string&>(), py::arg("path"))
      .def_property_readonly("name", [](const Scenario& s) { return s.scn.file.name; })
      .def_property_readonly("configurations",
                             [](const Scenario& s) { return s.scn.file.phi; })
      .def_property_readonly("group_order",
                             [](const Scenario& s) { return s.scn.group.order(); })
      .def_property_readonly("experiments", &Scenario::experiments)
      .def("assumptions", &Scenario::assumptions)
      .def("transitions", &Scenario::transitions, py::arg("a"), py::arg("b"))
      .def("state", &Scenario::state, py::arg("experiment"), py::arg("value"))
      .def("exact_outcome", &Scenario::exact_outcome, py::arg("channel"), py::arg("hypothesis"))
      .def("simulate", &Scenario::run, py::arg("channel") = std::string(),
           py::arg("hypothesis") = std::string(), py::arg("n") = 1000, py::arg("seed") = 1,
           py::arg("lifetime") = 0)
      .def("posterior", &Scenario::posterior, py::arg("channel"), py::arg("bits"))
      .def("strata_dimensions", &Scenario::strata_dimensions)
      .def("validate", &Scenario::validate);

  m.def("load", [](const std::string& path) { return Scenario(path); }, py::arg("path"));
}
