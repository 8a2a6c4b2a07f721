#pragma once

#include <nonfree/lattice.hpp>
#include <nonfree/registry.hpp>

#include <map>
#include <memory>
#include <string>

namespace fixtures {

/// Lattices are immutable, so tests share one per registry group.
inline std::shared_ptr<const nonfree::SubgroupLattice> lattice(const std::string &name) {
  static std::map<std::string, std::shared_ptr<const nonfree::SubgroupLattice>> cache;
  auto it = cache.find(name);
  if (it != cache.end())
    return it->second;
  auto group = std::make_shared<const nonfree::FiniteGroup>(
      nonfree::generate_group(*nonfree::lookup_group(name)));
  auto lat = std::make_shared<const nonfree::SubgroupLattice>(nonfree::enumerate_subgroups(group));
  cache.emplace(name, lat);
  return lat;
}

inline nonfree::ElementIndex element(const nonfree::FiniteGroup &g,
                                     std::initializer_list<std::initializer_list<nonfree::Point>> cycles) {
  return *g.index_of(nonfree::Permutation::from_cycles(g.degree(), cycles));
}

/// Lattice index of the subgroup generated by the given elements.
inline nonfree::SubgroupIndex
subgroup(const nonfree::SubgroupLattice &lat,
         std::initializer_list<std::initializer_list<std::initializer_list<nonfree::Point>>> gens) {
  std::vector<nonfree::ElementIndex> seed;
  for (auto c : gens)
    seed.push_back(element(lat.group(), c));
  return lat.index_of(nonfree::subgroup_closure(lat.group(), seed));
}

} // namespace fixtures
