#include "symq/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "symq/errors.hpp"

namespace symq {

Perm identity_perm(int degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Perm compose_perms(const Perm& f, const Perm& s) {
  if (f.size() != s.size()) throw DimensionMismatch("compose: degree mismatch");
  Perm r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = s[f[i]];
  return r;
}

Perm invert_perm(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::int32_t>(i);
  return r;
}

std::string cycle_notation(const Perm& p) {
  std::ostringstream os;
  std::vector<bool> seen(p.size(), false);
  bool wrote = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) {
      seen[i] = true;
      continue;
    }
    os << '(' << i;
    seen[i] = true;
    for (int j = p[i]; j != static_cast<int>(i); j = p[j]) {
      os << ' ' << j;
      seen[j] = true;
    }
    os << ')';
    wrote = true;
  }
  if (!wrote) return "()";
  return os.str();
}

int FiniteGroup::index_of(const Perm& p) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == p) return static_cast<int>(i);
  return -1;
}

namespace {

void finish_tables(FiniteGroup& g) {
  const int n = g.order();
  std::map<Perm, int> index;
  for (int i = 0; i < n; ++i) index[g.elements[i]] = i;
  g.cayley.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto it = index.find(compose_perms(g.elements[i], g.elements[j]));
      if (it == index.end())
        throw AssumptionViolation("element set is not closed under composition");
      g.cayley[i][j] = it->second;
    }
  g.inverse.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.cayley[i][j] == g.identity_index) {
        g.inverse[i] = j;
        break;
      }
}

}  // namespace

FiniteGroup generate_group(const std::vector<Perm>& generators, int degree, int cap) {
  for (std::size_t k = 0; k < generators.size(); ++k) {
    if (static_cast<int>(generators[k].size()) != degree)
      throw DimensionMismatch("generator " + std::to_string(k) + " has wrong degree");
    if (!is_permutation(generators[k]))
      throw NotBijective("generator " + std::to_string(k) + " is not a permutation");
  }
  FiniteGroup g;
  g.identity_index = 0;
  std::map<Perm, int> index;
  const Perm id = identity_perm(degree);
  g.elements.push_back(id);
  index[id] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (const Perm& gen : generators) {
      Perm next = compose_perms(g.elements[cur], gen);
      if (index.count(next)) continue;
      if (static_cast<int>(g.elements.size()) >= cap)
        throw CapExceeded("group closure exceeded cap " + std::to_string(cap));
      index[next] = static_cast<int>(g.elements.size());
      g.elements.push_back(std::move(next));
      queue.push_back(static_cast<int>(g.elements.size()) - 1);
    }
  }
  for (const Perm& gen : generators) g.generator_indices.push_back(index.at(gen));
  finish_tables(g);
  return g;
}

FiniteGroup subgroup_from(const FiniteGroup& parent, const std::vector<int>& generator_indices) {
  for (int gi : generator_indices)
    if (gi < 0 || gi >= parent.order())
      throw Error("subgroup_from: generator index out of range");
  FiniteGroup g;
  g.identity_index = 0;
  std::vector<int> chosen{parent.identity_index};
  std::vector<int> where(parent.order(), -1);
  where[parent.identity_index] = 0;
  std::deque<int> queue{parent.identity_index};
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int gi : generator_indices) {
      const int next = parent.cayley[cur][gi];
      if (where[next] != -1) continue;
      where[next] = static_cast<int>(chosen.size());
      chosen.push_back(next);
      queue.push_back(next);
    }
  }
  for (int pi : chosen) {
    g.elements.push_back(parent.elements[pi]);
    g.parent_index.push_back(pi);
  }
  for (int gi : generator_indices) g.generator_indices.push_back(where[gi]);
  finish_tables(g);
  return g;
}

GroupAction defining_action(const FiniteGroup& g) {
  GroupAction a;
  a.group = &g;
  a.domain_size = g.degree();
  a.table.reserve(g.order());
  for (const Perm& p : g.elements) a.table.emplace_back(p.begin(), p.end());
  return a;
}

int Partition::block_of(int x) const {
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int v : blocks[b])
      if (v == x) return static_cast<int>(b);
  return -1;
}

Partition canonical_partition(std::vector<std::vector<int>> blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return Partition{std::move(blocks)};
}

Partition orbit_partition(const GroupAction& action) {
  std::vector<int> block(action.domain_size, -1);
  std::vector<std::vector<int>> blocks;
  for (int seed = 0; seed < action.domain_size; ++seed) {
    if (block[seed] != -1) continue;
    const int b = static_cast<int>(blocks.size());
    blocks.emplace_back();
    std::deque<int> queue{seed};
    block[seed] = b;
    blocks[b].push_back(seed);
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int g = 0; g < action.group->order(); ++g) {
        const int y = action.act(g, x);
        if (block[y] == -1) {
          block[y] = b;
          blocks[b].push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  return canonical_partition(std::move(blocks));
}

}  // namespace symq
