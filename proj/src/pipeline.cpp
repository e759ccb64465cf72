#include "symq/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "symq/errors.hpp"

namespace symq {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

struct Report {
  std::ostringstream os;
  bool failed = false;

  void line(const std::string& s) { os << s << "\n"; }
  void check(const std::string& label, bool pass, const std::string& detail = "") {
    os << label << ": " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) os << " (" << detail << ")";
    os << "\n";
    failed = failed || !pass;
  }
  void advisory(const std::string& label, bool pass, const std::string& detail = "") {
    os << label << " [advisory]: " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) os << " (" << detail << ")";
    os << "\n";
  }
  PipelineResult finish(std::vector<std::pair<std::string, std::string>> files = {}) {
    os << "result: " << (failed ? "FAIL" : "PASS") << "\n";
    PipelineResult r;
    r.exit_code = failed ? 1 : 0;
    r.report = os.str();
    r.files = std::move(files);
    return r;
  }
};

std::string perm_set_text(const std::vector<Perm>& perms) {
  std::string out;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (i) out += ", ";
    out += cycle_notation(perms[i]);
  }
  return out;
}

bool same_perm_set(std::vector<Perm> a, std::vector<Perm> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string scenario_header(const BuiltScenario& scn) {
  std::string names;
  for (const auto& p : scn.file.parameters) names += " " + p.name;
  return "scenario " + scn.file.name + ": |phi|=" + std::to_string(scn.file.phi.size()) +
         ", group order " + std::to_string(scn.group.order()) +
         (names.empty() ? std::string(", no experiments") : ", experiments:" + names);
}

int require_experiment(const BuiltScenario& scn, const std::string& name) {
  const int i = scn.file.parameter_index(name);
  if (i < 0) throw UnknownExperiment("scenario has no experiment '" + name + "'");
  return i;
}

// outcome table plus declared-value comparison for likelihood scenarios
void outcome_section(Report& rep, const ScenarioFile& scn) {
  if (scn.channels.empty()) return;
  const int b = scn.base_index();
  if (b < 0) return;
  rep.line("channel outcome-1 probabilities (exact):");
  for (std::size_t c = 0; c < scn.channels.size(); ++c) {
    std::string row = "  " + scn.channels[c].name + ":";
    for (std::size_t h = 0; h < scn.parameters[b].values.size(); ++h)
      row += " " + scn.parameters[b].values[h] + "=" +
             to_string(outcome_one_probability(scn, static_cast<int>(c), static_cast<int>(h)));
    rep.line(row);
  }
  for (const auto& [ch_name, per_hyp] : scn.expect.outcome) {
    const int c = scn.channel_index(ch_name);
    for (const auto& [hyp, declared] : per_hyp) {
      const auto hi = std::find(scn.parameters[b].values.begin(), scn.parameters[b].values.end(),
                                hyp);
      if (c < 0 || hi == scn.parameters[b].values.end()) {
        rep.line("declared outcome " + ch_name + " " + hyp + ": UNRESOLVED reference");
        continue;
      }
      const Rational computed = outcome_one_probability(
          scn, c, static_cast<int>(hi - scn.parameters[b].values.begin()));
      const bool match = computed == declared;
      rep.line("declared outcome " + ch_name + " " + hyp + " = " + to_string(declared) + ": " +
               (match ? "MATCH" : "MISMATCH (enumeration gives " + to_string(computed) + ")"));
    }
  }
}

void expected_subgroup_section(Report& rep, const BuiltScenario& scn) {
  for (const auto& [param, declared] : scn.file.expect.subgroup) {
    const int a = scn.file.parameter_index(param);
    if (a < 0) {
      rep.line("declared subgroup for " + param + ": UNRESOLVED reference");
      continue;
    }
    const FiniteGroup sub = maximal_permissible_subgroup(scn.file.parameters[a], scn.group);
    std::vector<Perm> computed;
    for (const auto& e : sub.elements) computed.push_back(e);
    const bool match = same_perm_set(computed, declared);
    rep.line("declared subgroup for " + param + ": " +
             (match ? "MATCH"
                    : "MISMATCH (computed {" + perm_set_text(computed) + "}, declared {" +
                          perm_set_text(declared) + "})"));
  }
}

std::string csv_trace(const SimulationResult& sim, const std::string& channel,
                      std::uint64_t seed) {
  std::string out = "run_id,experiment,trial_index,bit\n";
  for (std::size_t t = 0; t < sim.bits.size(); ++t)
    out += std::to_string(seed) + "," + channel + "," + std::to_string(t) + "," +
           std::to_string(static_cast<int>(sim.bits[t])) + "\n";
  return out;
}

std::string csv_posterior(const Posterior& post) {
  std::string out = "hypothesis,probability\n";
  for (std::size_t h = 0; h < post.labels.size(); ++h)
    out += post.labels[h] + "," + fmt(post.probabilities[h]) + "\n";
  return out;
}

}  // namespace

QuantumContext build_context(const BuiltScenario& scn, const Tolerances& tol) {
  QuantumContext ctx;
  const auto& file = scn.file;
  if (file.parameters.empty()) {
    ctx.failure = "scenario declares no experiments";
    return ctx;
  }
  ctx.base_index = file.base_index();
  ctx.assumptions = check_assumptions(file.parameters, scn.group, ctx.base_index);
  if (!ctx.assumptions->family_search.family) {
    ctx.failure = "no transition family exists";
    return ctx;
  }
  ctx.family = ctx.assumptions->family_search.family;
  try {
    if (file.explicit_rep) {
      ctx.w = build_w_explicit(file.explicit_rep->generator_images, file.generators, scn.group,
                               file.explicit_rep->projective, tol);
    } else {
      ctx.w = build_w_derived(file.parameters, scn.group, *ctx.family, ctx.base_index, tol);
    }
  } catch (const Error& e) {
    ctx.failure = e.what();
    return ctx;
  }
  ctx.base = base_structure(file.parameters, scn.group, ctx.base_index);
  ctx.states = build_states(file.parameters, *ctx.w, *ctx.family, ctx.base_index);
  ctx.operators.resize(file.parameters.size());
  if (file.parameters[ctx.base_index].numeric) {
    const Matrix t_c = build_S(file.parameters[ctx.base_index]);
    for (std::size_t a = 0; a < file.parameters.size(); ++a)
      ctx.operators[a] = build_T(static_cast<int>(a), *ctx.w, t_c, *ctx.family);
  }
  return ctx;
}

PipelineResult run_validate(const BuiltScenario& scn, const Tolerances& tol) {
  Report rep;
  rep.line(scenario_header(scn));
  const auto& file = scn.file;
  if (file.parameters.empty()) {
    outcome_section(rep, file);
    expected_subgroup_section(rep, scn);
    return rep.finish();
  }
  QuantumContext ctx = build_context(scn, tol);
  const auto& as = *ctx.assumptions;
  for (const auto& ex : as.experiments) {
    std::string detail = "subgroup order " + std::to_string(ex.subgroup_order) + ", " +
                         std::to_string(ex.induced_orbits.blocks.size()) + " induced orbit(s) on " +
                         std::to_string(ex.value_count) + " values";
    rep.line("experiment " + ex.name + ": " + detail);
    if (!ex.permissible_under_group && ex.witness) {
      const auto& w = *ex.witness;
      rep.line("  not preserved by the full group: configurations " + file.phi[w.phi1] + ", " +
               file.phi[w.phi2] + " split under element " +
               cycle_notation(scn.group.elements[w.element]));
    }
  }
  rep.check("check A (each value list is a single orbit of its induced action)", as.a);
  rep.check("check B (the per-experiment subgroups generate the whole group)", as.b,
            "generated order " + std::to_string(as.generated_by_subgroups_order) + " of " +
                std::to_string(as.group_order));
  std::string c_detail;
  if (as.family_search.family) {
    c_detail = "elements";
    for (int e : as.family_search.family->member_elements)
      c_detail += " " + cycle_notation(scn.group.elements[e]);
    c_detail += as.family_search.subgroup_closed ? "; closed" : "; NOT subgroup-closed";
  } else if (as.family_search.pair_missing) {
    c_detail = "no element links experiments " + file.parameters[as.family_search.missing_a].name +
               " and " + file.parameters[as.family_search.missing_b].name;
  } else if (as.family_search.budget_exhausted) {
    c_detail = "search budget exhausted after " +
               std::to_string(as.family_search.combinations_tried) + " combinations";
  }
  rep.check("check C (transition family with matching composition, subgroup-closed)", as.c,
            c_detail);
  rep.check("check D (finite value lists)", as.d);

  if (!ctx.w) {
    rep.check("representation construction", false, ctx.failure);
    outcome_section(rep, file);
    expected_subgroup_section(rep, scn);
    return rep.finish();
  }
  const auto& table = *ctx.states;
  const Vector v0 = table.at(ctx.base_index, 0).vector;
  const auto sa = check_state_assumptions(*ctx.w, v0, table);
  rep.advisory("check E (orbit of the first base state covers every eigenstate)",
               sa.covers_eigenbasis,
               sa.covers_eigenbasis
                   ? "orbit size " + std::to_string(sa.orbit_size)
                   : "missing " + file.parameters[sa.missing_a].name + " value " +
                         file.parameters[sa.missing_a].values[sa.missing_k]);
  rep.advisory("check F (distinct elements give distinct states)", sa.injective,
               sa.injective ? "" : "elements " + std::to_string(sa.collide_g) + " and " +
                                       std::to_string(sa.collide_h) + " collide");
  const auto gi = check_probability_invariance(*ctx.w, table, tol.stochastic);
  rep.check("check G (transition probabilities invariant under the group)", gi.pass,
            "worst deviation " + fmt(gi.worst));
  outcome_section(rep, file);
  expected_subgroup_section(rep, scn);
  return rep.finish();
}

PipelineResult run_build(const BuiltScenario& scn, const Tolerances& tol) {
  Report rep;
  rep.line(scenario_header(scn));
  const auto& file = scn.file;

  const RegularRep reg = regular_rep(scn.group, scn.action);
  const ExactCheck exact = verify_regular_exact(reg);
  rep.check("regular representation product table (exact integers)", exact.pass,
            exact.pass ? std::to_string(scn.group.order()) + " matrices of size " +
                             std::to_string(scn.action.domain_size)
                       : "first failure at pair (" + std::to_string(exact.g) + ", " +
                             std::to_string(exact.h) + ")");

  if (file.parameters.empty()) return rep.finish();

  std::vector<InvariantSubspace> subs;
  for (const auto& p : file.parameters) subs.push_back(indicator_basis(p));
  for (std::size_t a = 0; a < subs.size(); ++a) {
    const FiniteGroup sub = maximal_permissible_subgroup(file.parameters[a], scn.group);
    const auto inv = verify_subspace_invariance(subs[a], reg, sub, tol.subspace);
    rep.check("subspace " + file.parameters[a].name + " (dim " + std::to_string(subs[a].dim()) +
                  ") invariant under its subgroup",
              inv.pass, "worst residual " + fmt(inv.worst));
  }

  QuantumContext ctx = build_context(scn, tol);
  if (!ctx.w) {
    rep.check("representation construction", false, ctx.failure);
    return rep.finish();
  }
  if (ctx.family) {
    double worst = 0.0;
    for (std::size_t a = 0; a < subs.size(); ++a)
      for (std::size_t b = 0; b < subs.size(); ++b)
        worst = std::max(worst, transport_distance(subs[a], subs[b], reg,
                                                   (*ctx.family)(static_cast<int>(a),
                                                                 static_cast<int>(b))));
    rep.check("subspace transport along the transition family", worst <= tol.transport,
              "worst residual " + fmt(worst));
  }
  const auto rv = verify_rep(*ctx.w);
  const bool projective = ctx.w->projective;
  rep.line(std::string("representation: ") +
           (ctx.w->origin == AbstractRep::Origin::derived ? "derived" : "supplied") + ", dim " +
           std::to_string(ctx.w->dim) + (projective ? ", compared up to phase" : ""));
  rep.check("representation product table", rv.worst_homomorphism <=
                                                (projective ? tol.hom_explicit : tol.hom_derived),
            "worst residual " + fmt(rv.worst_homomorphism));
  rep.check("representation unitarity", rv.worst_unitarity <= tol.unitarity,
            "worst residual " + fmt(rv.worst_unitarity));

  if (file.parameters[ctx.base_index].numeric) {
    double worst_eig = 0.0, worst_agree = 0.0;
    for (std::size_t a = 0; a < file.parameters.size(); ++a) {
      const Matrix& t = *ctx.operators[a];
      const auto& vals = *file.parameters[a].numeric;
      for (int k = 0; k < file.parameters[a].value_count(); ++k) {
        const Vector& v = ctx.states->at(static_cast<int>(a), k).vector;
        worst_eig = std::max(worst_eig, (t * v - vals[k] * v).norm());
      }
      worst_agree = std::max(
          worst_agree,
          frobenius(t - parameter_operator(static_cast<int>(a), file.parameters, *ctx.states)));
    }
    rep.check("operator eigenstates (T v = lambda v)", worst_eig <= tol.eigen_residual,
              "worst residual " + fmt(worst_eig));
    rep.check("operator forms agree (transported diagonal vs weighted projectors)",
              worst_agree <= tol.eigen_residual, "worst distance " + fmt(worst_agree));
  }
  return rep.finish();
}

PipelineResult run_born(const BuiltScenario& scn, const std::string& a, const std::string& b,
                        const Tolerances& tol) {
  const int ia = require_experiment(scn, a);
  const int ib = require_experiment(scn, b);
  QuantumContext ctx = build_context(scn, tol);
  if (!ctx.states) throw AssumptionViolation(ctx.failure);
  Report rep;
  rep.line(scenario_header(scn));

  const TransitionMatrix m = transition_matrix(ia, ib, *ctx.states, tol);
  const auto ds = check_doubly_stochastic(m, tol.stochastic);
  rep.check("transition matrix " + a + " -> " + b + " doubly stochastic", ds.pass,
            "worst row " + fmt(ds.worst_row) + ", worst column " + fmt(ds.worst_col));
  const TransitionMatrix back = transition_matrix(ib, ia, *ctx.states, tol);
  const double sym = (m.entries - back.entries.transpose()).norm();
  rep.check("transition matrix transpose symmetry", sym <= tol.symmetry,
            "distance " + fmt(sym));

  std::string csv = "row_value,col_value,probability\n";
  for (Eigen::Index k = 0; k < m.entries.rows(); ++k)
    for (Eigen::Index i = 0; i < m.entries.cols(); ++i)
      csv += scn.file.parameters[ia].values[k] + "," + scn.file.parameters[ib].values[i] + "," +
             fmt(m.entries(k, i)) + "\n";
  return rep.finish({{"born_" + a + "_" + b + ".csv", csv}});
}

PipelineResult run_states(const BuiltScenario& scn, const Tolerances& tol) {
  QuantumContext ctx = build_context(scn, tol);
  if (!ctx.states) throw AssumptionViolation(ctx.failure);
  Report rep;
  rep.line(scenario_header(scn));
  const auto& file = scn.file;
  const auto& table = *ctx.states;

  const Vector v0 = table.at(ctx.base_index, 0).vector;
  const auto orbit = gcs_orbit(v0, *ctx.w);
  rep.line("orbit of the first base state: " + std::to_string(orbit.size()) +
           " distinct states from " + std::to_string(scn.group.order()) + " elements");
  const auto sa = check_state_assumptions(*ctx.w, v0, table);
  rep.advisory("orbit covers every eigenstate", sa.covers_eigenbasis);
  rep.advisory("distinct elements give distinct states", sa.injective);

  bool round_trip = true;
  for (std::size_t a = 0; a < file.parameters.size(); ++a)
    for (int k = 0; k < file.parameters[a].value_count(); ++k) {
      const auto matches = question_from_state(table.at(static_cast<int>(a), k).vector, table);
      const bool hit = std::find(matches.begin(), matches.end(),
                                 std::make_pair(static_cast<int>(a), k)) != matches.end();
      round_trip = round_trip && hit;
      std::string row = "state " + file.parameters[a].name + "=" + file.parameters[a].values[k] +
                        " matches:";
      for (const auto& [ma, mk] : matches)
        row += " " + file.parameters[ma].name + "=" + file.parameters[ma].values[mk];
      rep.line(row);
    }
  rep.check("round trip question -> state -> question", round_trip);
  return rep.finish();
}

PipelineResult run_simulate(const BuiltScenario& scn, const SimulateOptions& opt) {
  const auto& file = scn.file;
  if (file.channels.empty()) throw ValidationError("scenario declares no channels");
  const int channel =
      opt.channel.empty() ? 0 : [&] {
        const int c = file.channel_index(opt.channel);
        if (c < 0) throw UnknownExperiment("scenario has no channel '" + opt.channel + "'");
        return c;
      }();
  const int base = file.base_index();
  if (base < 0) throw ValidationError("scenario declares no hypothesis parameter");
  const auto& labels = file.parameters[base].values;
  std::optional<int> hyp;
  if (!opt.hypothesis.empty()) {
    const auto it = std::find(labels.begin(), labels.end(), opt.hypothesis);
    if (it == labels.end())
      throw UnknownValue("scenario has no hypothesis '" + opt.hypothesis + "'");
    hyp = static_cast<int>(it - labels.begin());
  }

  const SimulationResult sim =
      simulate(file, channel, hyp, opt.n, opt.seed, opt.lifetime);
  const Posterior post = bayes_update(uniform_prior(labels), file, channel, sim.bits);

  Report rep;
  rep.line(scenario_header(scn));
  rep.line("channel " + file.channels[channel].name + ", n=" + std::to_string(opt.n) + ", seed=" +
           std::to_string(opt.seed) +
           (hyp ? ", hypothesis " + labels[*hyp] : ", hypothesis drawn per lifetime"));
  rep.line("empirical outcome-1 frequency: " + fmt(sim.frequency));
  for (std::size_t h = 0; h < labels.size(); ++h) {
    const Rational p = outcome_one_probability(file, channel, static_cast<int>(h));
    const double pd = to_double(p);
    const double sigma = std::sqrt(pd * (1.0 - pd) / static_cast<double>(opt.n));
    std::string row = "  " + labels[h] + ": exact " + to_string(p) + " = " + fmt(pd) +
                      ", posterior " + fmt(post.probabilities[h]);
    if (hyp && static_cast<int>(h) == *hyp)
      row += ", |freq - exact| = " + fmt(std::abs(sim.frequency - pd)) + " (sigma " + fmt(sigma) +
             ")";
    rep.line(row);
  }
  outcome_section(rep, file);
  return rep.finish({{"trace.csv", csv_trace(sim, file.channels[channel].name, opt.seed)},
                     {"posterior.csv", csv_posterior(post)}});
}

PipelineResult run_reduce(const BuiltScenario& scn, const ReduceOptions& opt,
                          const Tolerances& tol) {
  Report rep;
  rep.line(scenario_header(scn));
  std::vector<std::pair<std::string, std::string>> files;
  bool did_anything = false;

  if (opt.subset) {
    did_anything = true;
    const auto verdict = orbit_closure_check(*opt.subset, scn.action);
    rep.check("subset closed under every generator", verdict.closed,
              verdict.closed
                  ? std::to_string(opt.subset->size()) + " points"
                  : "point " + scn.file.phi[verdict.point] + " leaves under generator " +
                        scn.file.generators[verdict.generator].first);
  }
  if (opt.zero_patterns) {
    did_anything = true;
    const auto census = zero_pattern_census(*opt.zero_patterns);
    rep.check("zero-pattern census: every pattern closed under componentwise scaling",
              census.all_closed,
              std::to_string(census.patterns) + " patterns over " +
                  std::to_string(census.coordinates) + " coordinates");
  }
  if (!opt.pattern.empty()) {
    did_anything = true;
    const auto constraints = parse_zero_pattern(opt.pattern);  // throws when out of scope
    std::string text;
    for (const auto& [name, zero] : constraints)
      text += (text.empty() ? "" : ", ") + name + (zero ? "=0" : "!=0");
    rep.check("pattern is a certified zero pattern", true, text);
  }
  if (scn.file.design) {
    did_anything = true;
    const auto& d = *scn.file.design;
    const StrataReport strata = randomization_strata(d.units, d.blocks, tol);
    rep.line("design: " + std::to_string(strata.units) + " units, " +
             std::to_string(strata.blocks.size()) + " block(s), relabeling group order " +
             std::to_string(strata.symmetry_group_order) +
             (strata.transitive ? "" : " (not transitive: unequal block sizes)"));
    std::string dims;
    for (const auto& s : strata.strata)
      dims += (dims.empty() ? "" : ", ") + std::to_string(s.dimension);
    rep.line("strata dimensions (descending eigenvalue): " + dims);
    rep.check("pair-class pattern invariant under block-respecting relabelings",
              strata.pattern_invariant,
              strata.checked_every_element ? "checked every element" : "checked generators");
    rep.check("instantiated pattern matrix invariant", strata.numeric_invariance_worst == 0.0,
              "worst " + fmt(strata.numeric_invariance_worst));
    rep.check("strata projectors resolve the identity",
              strata.projector_sum_residual <= tol.stochastic,
              "residual " + fmt(strata.projector_sum_residual));
    rep.check("strata invariant under the relabeling group",
              strata.strata_invariance_worst <= tol.stochastic,
              "worst commutator " + fmt(strata.strata_invariance_worst));
    std::string csv = "stratum_index,dimension\n";
    for (std::size_t i = 0; i < strata.strata.size(); ++i)
      csv += std::to_string(i) + "," + std::to_string(strata.strata[i].dimension) + "\n";
    files.emplace_back("strata.csv", csv);
  }
  if (!did_anything)
    throw ValidationError(
        "nothing to reduce: pass a subset, a zero-pattern request, or a scenario with a design");
  return rep.finish(std::move(files));
}

}  // namespace symq
