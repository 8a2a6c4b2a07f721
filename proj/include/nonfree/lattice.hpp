#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rational.hpp"
#include "subgroup.hpp"

namespace nonfree {

using SubgroupIndex = std::size_t;

struct LatticeBounds {
  std::size_t max_subgroups = 10000;
};

/// The complete subgroup lattice L(G) together with the conjugation (adjoint)
/// action of G on it.
///
/// Subgroups are ordered by (order, lexicographic element list), so index 0 is
/// the trivial subgroup and the last index is G itself.
class SubgroupLattice {
public:
  const FiniteGroup &group() const { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }

  std::size_t size() const { return subgroups_.size(); }
  const Subgroup &subgroup(SubgroupIndex i) const { return subgroups_[i]; }
  const std::vector<Subgroup> &subgroups() const { return subgroups_; }
  SubgroupIndex trivial() const { return 0; }
  SubgroupIndex whole() const { return subgroups_.size() - 1; }

  std::optional<SubgroupIndex> index_of(const ElementMask &mask) const {
    auto it = index_.find(mask);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  SubgroupIndex index_of(const Subgroup &h) const {
    auto i = index_of(h.mask());
    if (!i)
      throw InputError("subgroup is not part of this lattice");
    return *i;
  }

  /// conj_table(k, i): index of s H s^-1 for the k-th generator s.
  SubgroupIndex conj_table(std::size_t generator, SubgroupIndex i) const {
    return conj_table_[generator][i];
  }

  /// Index of g H g^-1 for an arbitrary element g.
  SubgroupIndex conjugate(ElementIndex g, SubgroupIndex i) const {
    return index_.at(conjugate_subgroup(*group_, g, subgroups_[i]).mask());
  }

  const std::vector<std::vector<SubgroupIndex>> &orbits() const { return orbits_; }
  std::size_t orbit_of(SubgroupIndex i) const { return orbit_of_[i]; }
  const std::vector<SubgroupIndex> &orbit(SubgroupIndex i) const { return orbits_[orbit_of_[i]]; }

  SubgroupIndex normalizer(SubgroupIndex i) const { return normalizers_[i]; }

  /// Self-normalizing: N(H) = H.
  bool is_abnormal(SubgroupIndex i) const { return normalizers_[i] == i; }

  bool is_normal(SubgroupIndex i) const { return normalizers_[i] == whole(); }

  /// H, N(H), N(N(H)), ... up to and including the first fixpoint.
  std::vector<SubgroupIndex> normalization_tower(SubgroupIndex i) const {
    std::vector<SubgroupIndex> tower{i};
    while (normalizers_[tower.back()] != tower.back())
      tower.push_back(normalizers_[tower.back()]);
    return tower;
  }

  /// L_g: indices of all subgroups containing g.
  std::vector<SubgroupIndex> membership_set(ElementIndex g) const {
    std::vector<SubgroupIndex> out;
    for (SubgroupIndex i = 0; i < subgroups_.size(); ++i)
      if (subgroups_[i].contains(g))
        out.push_back(i);
    return out;
  }

  /// Word length of each element over the designated generators and their
  /// inverses.
  const std::vector<std::size_t> &word_lengths() const { return word_lengths_; }

  /// Weak-topology ultrametric: 0 if equal, otherwise 2^-n with n the least
  /// radius at which the intersections with the word ball B_n differ. Depends
  /// on the designated generators of the group.
  Rational weak_distance(SubgroupIndex a, SubgroupIndex b) const {
    if (a == b)
      return 0;
    const auto &ha = subgroups_[a];
    const auto &hb = subgroups_[b];
    std::size_t radius = std::numeric_limits<std::size_t>::max();
    for (ElementIndex e = 0; e < group_->order(); ++e)
      if (ha.contains(e) != hb.contains(e))
        radius = std::min(radius, word_lengths_[e]);
    Rational d = 1;
    for (std::size_t k = 0; k < radius; ++k)
      d /= 2;
    return d;
  }

  friend SubgroupLattice enumerate_subgroups(std::shared_ptr<const FiniteGroup> group,
                                             const LatticeBounds &bounds);

private:
  SubgroupLattice() = default;

  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Subgroup> subgroups_;
  std::unordered_map<ElementMask, SubgroupIndex, ElementMaskHash> index_;
  std::vector<std::vector<SubgroupIndex>> conj_table_;
  std::vector<std::vector<SubgroupIndex>> orbits_;
  std::vector<std::size_t> orbit_of_;
  std::vector<SubgroupIndex> normalizers_;
  std::vector<std::size_t> word_lengths_;
};

namespace detail {

/// Closure of H together with one extra element, reusing H's generators.
inline Subgroup extend_subgroup(const FiniteGroup &g, const Subgroup &h, ElementIndex extra) {
  std::vector<ElementIndex> gens = h.generators();
  gens.push_back(extra);
  return subgroup_closure(g, gens);
}

/// Normalizer of H as a mask, testing g H g^-1 on a generating set of H.
inline ElementMask normalizer_mask(const FiniteGroup &g, const Subgroup &h) {
  ElementMask mask(g.order());
  for (ElementIndex x = 0; x < g.order(); ++x) {
    bool keeps = std::all_of(h.generators().begin(), h.generators().end(),
                             [&](ElementIndex s) { return h.contains(g.conjugate(x, s)); });
    if (keeps)
      mask.set(x);
  }
  return mask;
}

} // namespace detail

/// Enumerates every subgroup by cyclic extension: starting from the trivial
/// subgroup, each known subgroup is joined with every cyclic subgroup it does
/// not contain. Every subgroup is a join of cyclic subgroups, so this is
/// complete.
inline SubgroupLattice enumerate_subgroups(std::shared_ptr<const FiniteGroup> group,
                                           const LatticeBounds &bounds = {}) {
  const FiniteGroup &g = *group;
  const auto n = g.order();

  // one generator per distinct cyclic subgroup
  std::vector<ElementIndex> cyclic_gens;
  {
    std::unordered_map<ElementMask, ElementIndex, ElementMaskHash> cyclic;
    for (ElementIndex e = 1; e < n; ++e) {
      auto c = subgroup_closure(g, {e});
      cyclic.emplace(c.mask(), e);
    }
    for (const auto &[mask, e] : cyclic)
      cyclic_gens.push_back(e);
    std::sort(cyclic_gens.begin(), cyclic_gens.end());
  }

  std::vector<Subgroup> found{subgroup_closure(g, std::span<const ElementIndex>{})};
  std::unordered_map<ElementMask, SubgroupIndex, ElementMaskHash> seen{{found[0].mask(), 0}};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (auto z : cyclic_gens) {
      if (found[i].contains(z))
        continue;
      auto k = detail::extend_subgroup(g, found[i], z);
      if (seen.emplace(k.mask(), found.size()).second) {
        found.push_back(std::move(k));
        if (found.size() > bounds.max_subgroups)
          throw LatticeBoundExceeded("more than " + std::to_string(bounds.max_subgroups) +
                                     " subgroups");
      }
    }
  }

  SubgroupLattice lat;
  lat.group_ = std::move(group);
  std::sort(found.begin(), found.end(), canonical_less);
  lat.subgroups_ = std::move(found);
  const auto m = lat.subgroups_.size();
  for (SubgroupIndex i = 0; i < m; ++i)
    lat.index_.emplace(lat.subgroups_[i].mask(), i);

  lat.conj_table_.assign(g.generators().size(), std::vector<SubgroupIndex>(m));
  for (std::size_t k = 0; k < g.generators().size(); ++k)
    for (SubgroupIndex i = 0; i < m; ++i)
      lat.conj_table_[k][i] =
          lat.index_.at(conjugate_subgroup(g, g.generator_index(k), lat.subgroups_[i]).mask());

  lat.orbit_of_.assign(m, std::numeric_limits<std::size_t>::max());
  for (SubgroupIndex start = 0; start < m; ++start) {
    if (lat.orbit_of_[start] != std::numeric_limits<std::size_t>::max())
      continue;
    auto id = lat.orbits_.size();
    std::vector<SubgroupIndex> orbit{start};
    lat.orbit_of_[start] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto &row : lat.conj_table_) {
        auto c = row[orbit[i]];
        if (lat.orbit_of_[c] != id) {
          lat.orbit_of_[c] = id;
          orbit.push_back(c);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    lat.orbits_.push_back(std::move(orbit));
  }

  lat.normalizers_.resize(m);
  for (SubgroupIndex i = 0; i < m; ++i) {
    auto mask = detail::normalizer_mask(g, lat.subgroups_[i]);
    auto it = lat.index_.find(mask);
    if (it == lat.index_.end())
      throw std::logic_error("normalizer is not a subgroup in the lattice");
    lat.normalizers_[i] = it->second;
    // orbit-stabilizer: |orbit| * |N(H)| = |G|
    if (lat.orbits_[lat.orbit_of_[i]].size() * mask.count() != n)
      throw std::logic_error("adjoint orbit size disagrees with normalizer index");
  }

  // word lengths by breadth-first search over generators and inverses
  lat.word_lengths_.assign(n, std::numeric_limits<std::size_t>::max());
  lat.word_lengths_[FiniteGroup::identity()] = 0;
  std::vector<ElementIndex> frontier{FiniteGroup::identity()};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    auto x = frontier[i];
    for (std::size_t k = 0; k < g.generators().size(); ++k) {
      auto s = g.generator_index(k);
      for (auto step : {s, g.inverse(s)}) {
        auto y = g.multiply(step, x);
        if (lat.word_lengths_[y] == std::numeric_limits<std::size_t>::max()) {
          lat.word_lengths_[y] = lat.word_lengths_[x] + 1;
          frontier.push_back(y);
        }
      }
    }
  }
  return lat;
}

} // namespace nonfree
