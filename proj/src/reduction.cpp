#include "symq/reduction.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "symq/errors.hpp"

namespace symq {

ClosureVerdict orbit_closure_check(const std::vector<int>& subset, const GroupAction& action) {
  std::vector<char> member(action.domain_size, 0);
  for (int p : subset) {
    if (p < 0 || p >= action.domain_size) throw ValidationError("subset index out of range");
    member[p] = 1;
  }
  const auto& g = *action.group;
  for (int p : subset)
    for (std::size_t gi = 0; gi < g.generator_indices.size(); ++gi)
      if (!member[action.act(g.generator_indices[gi], p)])
        return {false, p, static_cast<int>(gi)};
  return {};
}

ZeroPatternCensus zero_pattern_census(int p) {
  if (p < 1) throw ValidationError("need at least one coordinate");
  if (p > 20) throw TooLarge("zero-pattern census capped at 20 coordinates");
  ZeroPatternCensus census;
  census.coordinates = p;
  for (long long pattern = 0; pattern < (1LL << p); ++pattern) {
    // scale a representative point by several positive factor vectors and
    // confirm the zero/nonzero pattern survives
    bool closed = true;
    for (int trial = 0; trial < 3 && closed; ++trial) {
      for (int i = 0; i < p; ++i) {
        const bool zero = (pattern >> i) & 1;
        const double x = zero ? 0.0 : 1.0;
        const double scale = (trial == 0 ? 2.0 : trial == 1 ? 0.5 : 3.0) + i;
        closed = closed && ((x * scale == 0.0) == zero);
      }
    }
    census.all_closed = census.all_closed && closed;
    ++census.patterns;
  }
  return census;
}

std::vector<std::pair<std::string, bool>> parse_zero_pattern(const std::string& text) {
  std::vector<std::pair<std::string, bool>> out;
  std::string item;
  auto flush = [&]() {
    std::string s = item;
    item.clear();
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) return;
    const auto neq = s.find("!=");
    const auto eq = s.find('=');
    std::string name, rhs;
    bool zero;
    if (neq != std::string::npos) {
      name = s.substr(0, neq);
      rhs = s.substr(neq + 2);
      zero = false;
    } else if (eq != std::string::npos) {
      name = s.substr(0, eq);
      rhs = s.substr(eq + 1);
      zero = true;
    } else {
      throw ValidationError("constraint '" + s + "' is not of the form name=0 or name!=0");
    }
    if (rhs != "0")
      throw ValidationError(
          "constraint '" + s +
          "' ties coordinates together; only zero patterns (name=0 / name!=0) are closed under "
          "componentwise scaling, so this checker cannot certify it");
    out.emplace_back(name, zero);
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      item += c;
    }
  }
  flush();
  if (out.empty()) throw ValidationError("empty pattern description");
  return out;
}

namespace {

// generating set of all unit permutations fixing the block partition:
// neighbor swaps inside each block, plus pointwise swaps of equal-size
// blocks that are adjacent in a fixed order
std::vector<Perm> block_respecting_generators(int units, const std::vector<std::vector<int>>& blocks) {
  std::vector<Perm> gens;
  for (const auto& blk : blocks)
    for (std::size_t i = 0; i + 1 < blk.size(); ++i) {
      Perm p = identity_perm(units);
      std::swap(p[blk[i]], p[blk[i + 1]]);
      gens.push_back(std::move(p));
    }
  std::vector<int> order(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (blocks[a].size() != blocks[b].size()) return blocks[a].size() < blocks[b].size();
    return blocks[a].front() < blocks[b].front();
  });
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const auto& a = blocks[order[i]];
    const auto& b = blocks[order[i + 1]];
    if (a.size() != b.size()) continue;
    Perm p = identity_perm(units);
    for (std::size_t j = 0; j < a.size(); ++j) {
      p[a[j]] = b[j];
      p[b[j]] = a[j];
    }
    gens.push_back(std::move(p));
  }
  return gens;
}

long long factorial(long long n) {
  long long f = 1;
  for (long long i = 2; i <= n; ++i) f *= i;
  return f;
}

const int kClassPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

StrataReport randomization_strata(int units, std::vector<std::vector<int>> blocks,
                                  const Tolerances& tol) {
  if (units < 1) throw ValidationError("need at least one unit");
  if (units > 64) throw TooLarge("strata computation capped at 64 units");
  if (blocks.empty()) {
    blocks.emplace_back(units);
    for (int u = 0; u < units; ++u) blocks.back()[u] = u;
  }
  std::vector<int> block_of(units, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int u : blocks[b]) {
      if (u < 0 || u >= units || block_of[u] != -1)
        throw ValidationError("blocks must partition the units");
      block_of[u] = static_cast<int>(b);
    }
  for (int u = 0; u < units; ++u)
    if (block_of[u] < 0) throw ValidationError("blocks must cover every unit");

  StrataReport rep;
  rep.units = units;
  rep.blocks = blocks;

  // pair classes: the orbit of (z1, z2) under block-respecting relabelings
  // is determined by diagonal/same-block/cross-block membership and the
  // block sizes involved; transposed pairs are tied so the pattern stays
  // symmetric
  std::map<std::tuple<int, int, int>, int> class_id;
  rep.class_of.assign(units, std::vector<int>(units, -1));
  for (int z1 = 0; z1 < units; ++z1)
    for (int z2 = 0; z2 < units; ++z2) {
      const int s1 = static_cast<int>(blocks[block_of[z1]].size());
      const int s2 = static_cast<int>(blocks[block_of[z2]].size());
      std::tuple<int, int, int> key;
      if (z1 == z2)
        key = {0, s1, s1};
      else if (block_of[z1] == block_of[z2])
        key = {1, s1, s1};
      else
        key = {2, std::min(s1, s2), std::max(s1, s2)};
      auto [it, fresh] = class_id.emplace(key, static_cast<int>(class_id.size()));
      rep.class_of[z1][z2] = it->second;
    }
  rep.pair_classes = static_cast<int>(class_id.size());
  if (rep.pair_classes > static_cast<int>(std::size(kClassPrimes)))
    throw TooLarge("more pair classes than available instantiation primes");
  for (int c = 0; c < rep.pair_classes; ++c) rep.instantiation.push_back(kClassPrimes[c]);

  // expected order of the block-respecting group: permutations inside each
  // block times permutations of equal-size blocks
  std::map<std::size_t, int> size_counts;
  rep.symmetry_group_order = 1;
  for (const auto& blk : blocks) {
    rep.symmetry_group_order *= factorial(static_cast<long long>(blk.size()));
    ++size_counts[blk.size()];
  }
  for (const auto& [sz, count] : size_counts) rep.symmetry_group_order *= factorial(count);
  rep.transitive = size_counts.size() == 1;

  const auto gens = block_respecting_generators(units, blocks);
  auto pattern_ok = [&](const Perm& p) {
    for (int z1 = 0; z1 < units; ++z1)
      for (int z2 = 0; z2 < units; ++z2)
        if (rep.class_of[p[z1]][p[z2]] != rep.class_of[z1][z2]) return false;
    return true;
  };

  // full enumeration when affordable, otherwise the generators certify the
  // whole group because the class function is constant on generator products
  if (gens.empty()) {
    rep.checked_every_element = true;  // only the identity relabeling exists
  } else if (rep.symmetry_group_order <= 200'000) {
    std::set<Perm> seen{identity_perm(units)};
    std::vector<Perm> queue{identity_perm(units)};
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const auto& g : gens) {
        Perm nxt = compose_perms(queue[head], g);
        if (seen.insert(nxt).second) queue.push_back(std::move(nxt));
      }
    if (static_cast<long long>(seen.size()) != rep.symmetry_group_order)
      throw ValidationError("block-respecting group closure does not match its expected order");
    for (const auto& g : seen) rep.pattern_invariant = rep.pattern_invariant && pattern_ok(g);
    rep.checked_every_element = true;
  } else {
    for (const auto& g : gens) rep.pattern_invariant = rep.pattern_invariant && pattern_ok(g);
  }

  RealMatrix c(units, units);
  for (int z1 = 0; z1 < units; ++z1)
    for (int z2 = 0; z2 < units; ++z2)
      c(z1, z2) = static_cast<double>(rep.instantiation[rep.class_of[z1][z2]]);

  for (const auto& g : gens) {
    RealMatrix moved(units, units);
    for (int z1 = 0; z1 < units; ++z1)
      for (int z2 = 0; z2 < units; ++z2) moved(g[z1], g[z2]) = c(z1, z2);
    rep.numeric_invariance_worst = std::max(rep.numeric_invariance_worst, (moved - c).norm());
  }

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(c);
  const RealVector vals = es.eigenvalues();
  std::vector<std::pair<double, std::vector<int>>> clusters;
  for (int i = 0; i < units; ++i) {
    if (!clusters.empty() && std::abs(vals[i] - clusters.back().first) < tol.eigen_cluster)
      clusters.back().second.push_back(i);
    else
      clusters.push_back({vals[i], {i}});
  }
  for (auto it = clusters.rbegin(); it != clusters.rend(); ++it) {  // descending eigenvalue
    Stratum s;
    s.eigenvalue = it->first;
    s.dimension = static_cast<int>(it->second.size());
    RealMatrix basis(units, s.dimension);
    for (int j = 0; j < s.dimension; ++j) basis.col(j) = es.eigenvectors().col(it->second[j]);
    s.projector = (basis * basis.transpose()).cast<Complex>();
    rep.strata.push_back(std::move(s));
  }

  Matrix sum = Matrix::Zero(units, units);
  for (const auto& s : rep.strata) sum += s.projector;
  rep.projector_sum_residual = frobenius(sum - Matrix::Identity(units, units));
  for (const auto& s : rep.strata)
    for (const auto& g : gens) {
      Matrix u = Matrix::Zero(units, units);
      for (int z = 0; z < units; ++z) u(z, g[z]) = 1.0;
      rep.strata_invariance_worst =
          std::max(rep.strata_invariance_worst, frobenius(u * s.projector - s.projector * u));
    }
  return rep;
}

}  // namespace symq
