#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symq {

// Permutation of {0..m-1} as an image array: x maps to p[x].
using Perm = std::vector<std::int32_t>;

Perm identity_perm(int degree);
bool is_permutation(const Perm& p);
// Applies f first, then s.
Perm compose_perms(const Perm& f, const Perm& s);
Perm invert_perm(const Perm& p);
// "(0 3 4)(1 5 2)" with fixed points omitted; identity prints as "()".
std::string cycle_notation(const Perm& p);

// Finite permutation group with the right-action convention
//   act(gh, x) = act(h, act(g, x)).
// elements[0] is the identity; enumeration order is breadth-first from the
// identity, right-multiplying by the generators in input order, so it is a
// pure function of the generator list.
struct FiniteGroup {
  std::vector<Perm> elements;
  std::vector<std::vector<int>> cayley;  // cayley[i][j] = index of (elements[i] then elements[j])
  std::vector<int> inverse;
  std::vector<int> generator_indices;
  int identity_index = 0;
  // When this group was carved out of a parent, parent_index[i] is the index
  // of elements[i] in that parent. Empty otherwise.
  std::vector<int> parent_index;

  int order() const { return static_cast<int>(elements.size()); }
  int degree() const { return elements.empty() ? 0 : static_cast<int>(elements[0].size()); }
  int compose(int i, int j) const { return cayley[i][j]; }
  int act(int g, int x) const { return elements[g][x]; }
  int index_of(const Perm& p) const;  // -1 if absent
};

inline constexpr int kDefaultGroupCap = 10000;

// Closure of the generators under composition. Throws NotBijective for a bad
// generator, CapExceeded past `cap`. Empty generator list gives the trivial
// group; `degree` is then required to size the identity.
FiniteGroup generate_group(const std::vector<Perm>& generators, int degree,
                           int cap = kDefaultGroupCap);

// Subgroup generated inside `parent` by the elements at `generator_indices`.
// Element set is closed via the parent's Cayley table only.
FiniteGroup subgroup_from(const FiniteGroup& parent, const std::vector<int>& generator_indices);

// A group acting on {0..domain_size-1}; table[g][x] = x acted on by element g.
struct GroupAction {
  const FiniteGroup* group = nullptr;
  int domain_size = 0;
  std::vector<std::vector<int>> table;

  int act(int g, int x) const { return table[g][x]; }
};

// The defining action of a permutation group on its own domain.
GroupAction defining_action(const FiniteGroup& g);

// Set partition of {0..n-1}; blocks sorted internally and by first element.
struct Partition {
  std::vector<std::vector<int>> blocks;
  int block_of(int x) const;
};

Partition canonical_partition(std::vector<std::vector<int>> blocks);

// Orbit partition of the action's domain.
Partition orbit_partition(const GroupAction& action);

}  // namespace symq
