#include "symq/params.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "symq/errors.hpp"

namespace symq {

std::vector<std::vector<int>> ParameterMap::level_sets() const {
  std::vector<std::vector<int>> out(values.size());
  for (int phi = 0; phi < domain_size(); ++phi) out[table[phi]].push_back(phi);
  return out;
}

void ParameterMap::validate() const {
  for (int v : table)
    if (v < 0 || v >= value_count())
      throw ValidationError("parameter " + name + ": value index out of range");
  const auto ls = level_sets();
  for (int k = 0; k < value_count(); ++k)
    if (ls[k].empty())
      throw EmptyLevelSet("parameter " + name + ": value '" + values[k] + "' is never attained");
  if (numeric) {
    if (static_cast<int>(numeric->size()) != value_count())
      throw ValidationError("parameter " + name + ": eigenvalue count mismatch");
    if (maximal) {
      for (int i = 0; i < value_count(); ++i)
        for (int j = i + 1; j < value_count(); ++j)
          if ((*numeric)[i] == (*numeric)[j])
            throw ValidationError("parameter " + name +
                                  ": duplicate eigenvalues on a map marked maximal");
    }
  }
}

namespace {

// Single-element permissibility via level sets: g passes iff the map is
// constant on the image of every level set.
std::optional<PermissibilityWitness> check_element(const ParameterMap& map,
                                                   const std::vector<std::vector<int>>& levels,
                                                   const Perm& p, int element_index) {
  for (const auto& level : levels) {
    const int first = level.front();
    const int want = map.table[p[first]];
    for (std::size_t i = 1; i < level.size(); ++i) {
      if (map.table[p[level[i]]] != want)
        return PermissibilityWitness{first, level[i], element_index};
    }
  }
  return std::nullopt;
}

}  // namespace

PermissibilityResult is_permissible(const ParameterMap& map, const FiniteGroup& h) {
  if (h.degree() != map.domain_size())
    throw DimensionMismatch("is_permissible: degree mismatch");
  const auto levels = map.level_sets();
  for (int g = 0; g < h.order(); ++g) {
    if (auto w = check_element(map, levels, h.elements[g], g))
      return PermissibilityResult{false, w};
  }
  return PermissibilityResult{true, std::nullopt};
}

FiniteGroup maximal_permissible_subgroup(const ParameterMap& map, const FiniteGroup& parent) {
  const auto levels = map.level_sets();
  std::vector<int> good;
  for (int g = 0; g < parent.order(); ++g)
    if (!check_element(map, levels, parent.elements[g], g)) good.push_back(g);
  // The passing set is closed under composition and inverse; building the
  // generated subgroup from it must reproduce exactly the same set.
  FiniteGroup sub = subgroup_from(parent, good);
  if (sub.order() != static_cast<int>(good.size()))
    throw AssumptionViolation("permissible element set failed to close into a subgroup");
  return sub;
}

GroupAction induced_action(const ParameterMap& map, const FiniteGroup& h) {
  const auto res = is_permissible(map, h);
  if (!res.permissible) {
    std::ostringstream os;
    os << "parameter " << map.name << " is not permissible under the given group"
       << " (witness: phi" << res.witness->phi1 << ", phi" << res.witness->phi2
       << ", element " << res.witness->element << ")";
    throw NotPermissible(os.str());
  }
  const auto levels = map.level_sets();
  GroupAction a;
  a.group = &h;
  a.domain_size = map.value_count();
  a.table.assign(h.order(), std::vector<int>(map.value_count(), -1));
  for (int g = 0; g < h.order(); ++g)
    for (int k = 0; k < map.value_count(); ++k)
      a.table[g][k] = map.table[h.act(g, levels[k].front())];
  return a;
}

std::optional<int> find_transition_element(const ParameterMap& a, const ParameterMap& b,
                                           const FiniteGroup& g) {
  if (a.domain_size() != b.domain_size() || g.degree() != a.domain_size())
    throw DimensionMismatch("find_transition_element: degree mismatch");
  if (a.values != b.values) return std::nullopt;  // value lists must match label-for-label
  for (int e = 0; e < g.order(); ++e) {
    bool ok = true;
    for (int phi = 0; phi < a.domain_size(); ++phi)
      if (b.table[phi] != a.table[g.act(e, phi)]) {
        ok = false;
        break;
      }
    if (ok) return e;
  }
  return std::nullopt;
}

namespace {

std::vector<int> transition_candidates(const ParameterMap& a, const ParameterMap& b,
                                       const FiniteGroup& g) {
  std::vector<int> out;
  if (a.values != b.values) return out;
  for (int e = 0; e < g.order(); ++e) {
    bool ok = true;
    for (int phi = 0; phi < a.domain_size(); ++phi)
      if (b.table[phi] != a.table[g.act(e, phi)]) {
        ok = false;
        break;
      }
    if (ok) out.push_back(e);
  }
  return out;
}

bool set_is_subgroup(const std::vector<int>& els, const FiniteGroup& g) {
  const std::set<int> s(els.begin(), els.end());
  if (!s.count(g.identity_index)) return false;
  for (int x : els) {
    if (!s.count(g.inverse[x])) return false;
    for (int y : els)
      if (!s.count(g.cayley[x][y])) return false;
  }
  return true;
}

}  // namespace

FamilySearchResult build_transition_family(const std::vector<ParameterMap>& params,
                                           const FiniteGroup& g, int base, int budget) {
  FamilySearchResult res;
  const int k = static_cast<int>(params.size());
  if (k == 0) {
    res.family = TransitionFamily{base, {}, {}};
    res.subgroup_closed = true;
    return res;
  }
  if (base < 0 || base >= k) throw UnknownExperiment("family base out of range");

  // Candidate elements for every ordered pair; a single empty list settles C.
  std::vector<std::vector<std::vector<int>>> cand(k, std::vector<std::vector<int>>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      cand[a][b] = transition_candidates(params[a], params[b], g);
      if (cand[a][b].empty()) {
        res.pair_missing = true;
        res.missing_a = a;
        res.missing_b = b;
        return res;
      }
    }

  // A family is determined by the base row: g_ab := inv(g_{base,a}) * g_{base,b}
  // makes the cocycle identity hold automatically; what remains is that every
  // derived element is itself a valid transition element and that the element
  // set closes into a subgroup. Search the base row lexicographically.
  std::vector<int> others;
  for (int a = 0; a < k; ++a)
    if (a != base) others.push_back(a);
  std::vector<std::size_t> pick(others.size(), 0);

  auto attempt = [&](const std::vector<std::size_t>& sel) -> std::optional<TransitionFamily> {
    std::vector<int> base_row(k, g.identity_index);
    for (std::size_t i = 0; i < others.size(); ++i)
      base_row[others[i]] = cand[base][others[i]][sel[i]];
    TransitionFamily fam;
    fam.base = base;
    fam.element.assign(k, std::vector<int>(k, -1));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const int e = g.cayley[g.inverse[base_row[a]]][base_row[b]];
        if (!std::binary_search(cand[a][b].begin(), cand[a][b].end(), e)) return std::nullopt;
        fam.element[a][b] = e;
      }
    std::set<int> members;
    for (const auto& row : fam.element) members.insert(row.begin(), row.end());
    fam.member_elements.assign(members.begin(), members.end());
    return fam;
  };

  bool done = false;
  while (!done) {
    if (res.combinations_tried >= budget) {
      res.budget_exhausted = true;
      return res;
    }
    ++res.combinations_tried;
    if (auto fam = attempt(pick)) {
      if (set_is_subgroup(fam->member_elements, g)) {
        res.family = std::move(fam);
        res.subgroup_closed = true;
        return res;
      }
      if (!res.family) res.family = std::move(fam);  // keep first cocycle-only family
    }
    // lexicographic increment
    done = true;
    for (std::size_t i = pick.size(); i-- > 0;) {
      if (++pick[i] < cand[base][others[i]].size()) {
        done = false;
        break;
      }
      pick[i] = 0;
    }
    if (others.empty()) break;
  }
  res.subgroup_closed = false;
  return res;
}

AssumptionReport check_assumptions(const std::vector<ParameterMap>& params,
                                   const FiniteGroup& g, int base_experiment) {
  AssumptionReport rep;
  rep.group_order = g.order();
  std::vector<int> union_elements;
  rep.a = true;
  for (const auto& p : params) {
    p.validate();
    AssumptionReport::PerExperiment pe;
    pe.name = p.name;
    pe.value_count = p.value_count();
    const auto perm = is_permissible(p, g);
    pe.permissible_under_group = perm.permissible;
    pe.witness = perm.witness;
    FiniteGroup sub = maximal_permissible_subgroup(p, g);
    pe.subgroup_order = sub.order();
    pe.subgroup_elements = sub.parent_index;
    std::sort(pe.subgroup_elements.begin(), pe.subgroup_elements.end());
    union_elements.insert(union_elements.end(), pe.subgroup_elements.begin(),
                          pe.subgroup_elements.end());
    const GroupAction ind = induced_action(p, sub);
    pe.induced_orbits = orbit_partition(ind);
    pe.single_induced_orbit = pe.induced_orbits.blocks.size() == 1;
    rep.a = rep.a && pe.single_induced_orbit;
    rep.experiments.push_back(std::move(pe));
  }
  if (params.empty()) {
    rep.a = true;
  }
  std::sort(union_elements.begin(), union_elements.end());
  union_elements.erase(std::unique(union_elements.begin(), union_elements.end()),
                       union_elements.end());
  const FiniteGroup generated = subgroup_from(g, union_elements);
  rep.generated_by_subgroups_order = generated.order();
  rep.b = generated.order() == g.order();
  rep.family_search = build_transition_family(params, g, params.empty() ? 0 : base_experiment);
  rep.c = rep.family_search.family.has_value() && rep.family_search.subgroup_closed;
  rep.d = true;  // value lists are finite by representation
  return rep;
}

}  // namespace symq
