#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace nonfree {

using Point = std::uint32_t;

/// Cycle type of a permutation: cycle length -> multiplicity (fixed points
/// are recorded under length 1).
using CycleType = std::map<std::uint32_t, std::uint32_t>;

/// A bijection of {0, ..., degree-1}.
///
/// Composition convention, used everywhere in the library:
///   (p * q)(x) = p(q(x))
/// i.e. q is applied first.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point y : images_) {
      if (y >= images_.size() || seen[y])
        throw InputError("image array is not a permutation of 0.." +
                         std::to_string(images_.size()) + "-1");
      seen[y] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    return Permutation(std::move(images), unchecked_tag{});
  }

  /// Builds a permutation from disjoint cycles, e.g. from_cycles(4, {{0, 1}, {2, 3}}).
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<Point>> cycles) {
    std::vector<std::vector<Point>> list;
    for (auto c : cycles)
      list.emplace_back(c);
    return from_cycles(degree, list);
  }

  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>> &cycles) {
    auto images = identity(degree).images_;
    for (const auto &c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree)
          throw InputError("cycle point out of range");
        images[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(images));
  }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      inv[images_[i]] = static_cast<Point>(i);
    return Permutation(std::move(inv), unchecked_tag{});
  }

  friend Permutation operator*(const Permutation &p, const Permutation &q) {
    if (p.degree() != q.degree())
      throw DegreeMismatch("composing permutations of different degree");
    std::vector<Point> out(q.degree());
    for (std::size_t x = 0; x < out.size(); ++x)
      out[x] = p.images_[q.images_[x]];
    return Permutation(std::move(out), unchecked_tag{});
  }

  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(images_.size(), false);
    for (Point start = 0; start < images_.size(); ++start) {
      if (seen[start])
        continue;
      std::vector<Point> cycle;
      for (Point x = start; !seen[x]; x = images_[x]) {
        seen[x] = true;
        cycle.push_back(x);
      }
      out.push_back(std::move(cycle));
    }
    return out;
  }

  CycleType cycle_type() const {
    CycleType ct;
    for (const auto &c : cycles())
      ++ct[static_cast<std::uint32_t>(c.size())];
    return ct;
  }

  /// Cycle notation with fixed points omitted, "()" for the identity.
  std::string to_cycle_string() const {
    std::string s;
    for (const auto &c : cycles()) {
      if (c.size() < 2)
        continue;
      s += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
          s += ' ';
        s += std::to_string(c[i]);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &a, const Permutation &b) {
    return a.images_ <=> b.images_;
  }

private:
  struct unchecked_tag {};
  Permutation(std::vector<Point> images, unchecked_tag) : images_(std::move(images)) {}

  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation &p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

} // namespace nonfree
