#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"

namespace nonfree {

/// A group given by its permutation generators.
struct GroupSpec {
  std::size_t degree = 1;
  std::vector<Permutation> generators;
};

namespace detail {

inline GroupSpec symmetric_spec(std::size_t n) {
  if (n < 2)
    return {1, {}};
  std::vector<Point> cycle(n);
  for (std::size_t i = 0; i < n; ++i)
    cycle[i] = static_cast<Point>(i);
  return {n, {Permutation::from_cycles(n, {{0, 1}}), Permutation::from_cycles(n, {cycle})}};
}

// Left multiplication by i and j on {1,-1,i,-i,j,-j,k,-k}.
inline GroupSpec quaternion_spec() {
  return {8, {Permutation({2, 3, 1, 0, 6, 7, 5, 4}), Permutation({4, 5, 7, 6, 1, 0, 2, 3})}};
}

} // namespace detail

/// Names with stored generator lists.
inline const std::map<std::string, GroupSpec> &group_registry() {
  static const std::map<std::string, GroupSpec> registry = [] {
    using P = Permutation;
    std::map<std::string, GroupSpec> r;
    r["C1"] = {1, {}};
    r["C2"] = {2, {P::from_cycles(2, {{0, 1}})}};
    r["C3"] = {3, {P::from_cycles(3, {{0, 1, 2}})}};
    r["C4"] = {4, {P::from_cycles(4, {{0, 1, 2, 3}})}};
    r["C2xC2"] = {4, {P::from_cycles(4, {{0, 1}, {2, 3}}), P::from_cycles(4, {{0, 2}, {1, 3}})}};
    r["S3"] = detail::symmetric_spec(3);
    r["D4"] = {4, {P::from_cycles(4, {{0, 1, 2, 3}}), P::from_cycles(4, {{1, 3}})}};
    r["Q8"] = detail::quaternion_spec();
    r["A4"] = {4, {P::from_cycles(4, {{0, 1, 2}}), P::from_cycles(4, {{0, 1}, {2, 3}})}};
    r["S4"] = detail::symmetric_spec(4);
    r["D6"] = {6, {P::from_cycles(6, {{0, 1, 2, 3, 4, 5}}), P::from_cycles(6, {{1, 5}, {2, 4}})}};
    r["A5"] = {5, {P::from_cycles(5, {{0, 1, 2}}), P::from_cycles(5, {{0, 1, 2, 3, 4}})}};
    r["S5"] = detail::symmetric_spec(5);
    r["S6"] = detail::symmetric_spec(6);
    return r;
  }();
  return registry;
}

inline std::optional<GroupSpec> lookup_group(const std::string &name) {
  const auto &r = group_registry();
  auto it = r.find(name);
  if (it == r.end())
    return std::nullopt;
  return it->second;
}

/// The groups exercised by the acceptance suite, smallest first.
inline const std::vector<std::string> &acceptance_groups() {
  static const std::vector<std::string> names{"C2", "C2xC2", "S3", "D4", "Q8",
                                              "A4", "S4",    "D6", "S5"};
  return names;
}

inline FiniteGroup generate_group(const GroupSpec &spec, const GroupBounds &bounds = {}) {
  return generate_group(spec.degree, spec.generators, bounds);
}

} // namespace nonfree
