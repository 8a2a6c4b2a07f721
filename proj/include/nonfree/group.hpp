#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "permutation.hpp"

namespace nonfree {

using ElementIndex = std::uint32_t;

struct GroupBounds {
  std::size_t max_degree = 12;
  std::size_t max_order = 5040;

  /// Default bounds, with the order bound overridden by NONFREE_MAX_ORDER.
  static GroupBounds from_environment() {
    GroupBounds b;
    if (const char *env = std::getenv("NONFREE_MAX_ORDER")) {
      char *end = nullptr;
      auto v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0)
        b.max_order = static_cast<std::size_t>(v);
    }
    return b;
  }
};

/// A fully materialized permutation group.
///
/// Elements are sorted lexicographically by image array, so the identity is
/// always element 0. Conjugacy classes are ordered by least element.
class FiniteGroup {
public:
  static constexpr std::size_t kTableLimit = 1024;

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation> &generators() const { return generators_; }
  const std::vector<Permutation> &elements() const { return elements_; }
  const Permutation &element(ElementIndex i) const { return elements_[i]; }
  static constexpr ElementIndex identity() { return 0; }

  /// Element index of generators()[k].
  ElementIndex generator_index(std::size_t k) const { return generator_indices_[k]; }

  std::optional<ElementIndex> index_of(const Permutation &p) const {
    auto it = index_.find(p);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  /// Index of element(a) * element(b).
  ElementIndex multiply(ElementIndex a, ElementIndex b) const {
    if (!table_.empty())
      return table_[static_cast<std::size_t>(a) * order() + b];
    return index_.at(elements_[a] * elements_[b]);
  }

  ElementIndex inverse(ElementIndex a) const { return inverses_[a]; }

  /// Index of g h g^-1.
  ElementIndex conjugate(ElementIndex g, ElementIndex h) const {
    return multiply(multiply(g, h), inverses_[g]);
  }

  std::uint32_t element_order(ElementIndex a) const { return element_orders_[a]; }

  /// Least common multiple of element orders.
  std::uint64_t exponent() const {
    std::uint64_t e = 1;
    for (auto o : element_orders_)
      e = std::lcm(e, std::uint64_t{o});
    return e;
  }

  const std::vector<std::vector<ElementIndex>> &classes() const { return classes_; }
  std::size_t class_of(ElementIndex a) const { return class_of_[a]; }

  friend FiniteGroup generate_group(std::size_t degree, const std::vector<Permutation> &generators,
                                    const GroupBounds &bounds);

private:
  FiniteGroup() = default;

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<ElementIndex> generator_indices_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, ElementIndex, PermutationHash> index_;
  std::vector<ElementIndex> table_;
  std::vector<ElementIndex> inverses_;
  std::vector<std::uint32_t> element_orders_;
  std::vector<std::vector<ElementIndex>> classes_;
  std::vector<std::size_t> class_of_;
};

/// Orbit partition of the conjugation action of G on itself, each class
/// sorted ascending, classes ordered by least element index (so the identity
/// class comes first).
inline std::vector<std::vector<ElementIndex>> conjugacy_classes(const FiniteGroup &g) {
  std::vector<std::vector<ElementIndex>> classes;
  std::vector<bool> seen(g.order(), false);
  for (ElementIndex start = 0; start < g.order(); ++start) {
    if (seen[start])
      continue;
    std::vector<ElementIndex> cls{start};
    seen[start] = true;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t k = 0; k < g.generators().size(); ++k) {
        auto c = g.conjugate(g.generator_index(k), cls[i]);
        if (!seen[c]) {
          seen[c] = true;
          cls.push_back(c);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  // already in order of least element, since starts are scanned ascending
  return classes;
}

/// Closure of the generators under composition. Throws DegreeMismatch when the
/// generators disagree on degree and OrderBoundExceeded when the group is too
/// large to materialize.
inline FiniteGroup generate_group(std::size_t degree, const std::vector<Permutation> &generators,
                                  const GroupBounds &bounds = {}) {
  if (degree == 0)
    throw InputError("group degree must be positive");
  if (degree > bounds.max_degree)
    throw OrderBoundExceeded("degree " + std::to_string(degree) + " exceeds bound " +
                             std::to_string(bounds.max_degree));
  for (const auto &p : generators)
    if (p.degree() != degree)
      throw DegreeMismatch("generator of degree " + std::to_string(p.degree()) +
                           " in a group of degree " + std::to_string(degree));

  std::vector<Permutation> found{Permutation::identity(degree)};
  std::unordered_map<Permutation, ElementIndex, PermutationHash> seen{{found[0], 0}};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto &s : generators) {
      auto y = s * found[i];
      if (seen.emplace(y, static_cast<ElementIndex>(found.size())).second) {
        found.push_back(std::move(y));
        if (found.size() > bounds.max_order)
          throw OrderBoundExceeded("group order exceeds bound " +
                                   std::to_string(bounds.max_order));
      }
    }
  }

  FiniteGroup g;
  g.degree_ = degree;
  g.generators_ = generators;
  std::sort(found.begin(), found.end());
  g.elements_ = std::move(found);
  const auto n = g.elements_.size();
  g.index_.reserve(n);
  for (ElementIndex i = 0; i < n; ++i)
    g.index_.emplace(g.elements_[i], i);
  for (const auto &s : generators)
    g.generator_indices_.push_back(g.index_.at(s));

  if (n <= FiniteGroup::kTableLimit) {
    g.table_.resize(n * n);
    for (ElementIndex a = 0; a < n; ++a)
      for (ElementIndex b = 0; b < n; ++b)
        g.table_[static_cast<std::size_t>(a) * n + b] = g.index_.at(g.elements_[a] * g.elements_[b]);
  }
  g.inverses_.resize(n);
  g.element_orders_.resize(n);
  for (ElementIndex a = 0; a < n; ++a) {
    g.inverses_[a] = g.index_.at(g.elements_[a].inverse());
    std::uint32_t ord = 1;
    for (ElementIndex x = a; x != FiniteGroup::identity(); x = g.multiply(a, x))
      ++ord;
    g.element_orders_[a] = ord;
  }

  g.classes_ = conjugacy_classes(g);
  g.class_of_.resize(n);
  for (std::size_t c = 0; c < g.classes_.size(); ++c)
    for (auto e : g.classes_[c])
      g.class_of_[e] = c;
  return g;
}

} // namespace nonfree
