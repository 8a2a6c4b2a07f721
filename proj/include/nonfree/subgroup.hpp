#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "group.hpp"

namespace nonfree {

/// Bit set over the element indices of one FiniteGroup.
class ElementMask {
public:
  ElementMask() = default;
  explicit ElementMask(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  void set(ElementIndex i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  bool test(ElementIndex i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_)
      c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::vector<ElementIndex> indices() const {
    std::vector<ElementIndex> out;
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (auto bits = words_[w]; bits; bits &= bits - 1)
        out.push_back(static_cast<ElementIndex>(w * 64 + std::countr_zero(bits)));
    return out;
  }

  bool is_subset_of(const ElementMask &other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~other.words_[w])
        return false;
    return true;
  }

  ElementMask operator&(const ElementMask &other) const {
    ElementMask out(bits_);
    for (std::size_t w = 0; w < words_.size(); ++w)
      out.words_[w] = words_[w] & other.words_[w];
    return out;
  }

  /// Hex digits of the integer sum of 2^i over members, most significant first.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    std::size_t nibbles = (bits_ + 3) / 4;
    for (std::size_t k = nibbles; k-- > 0;) {
      unsigned v = 0;
      for (unsigned b = 0; b < 4; ++b) {
        auto i = k * 4 + b;
        if (i < bits_ && test(static_cast<ElementIndex>(i)))
          v |= 1u << b;
      }
      out += kDigits[v];
    }
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto w : words_)
      h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return h;
  }

  friend bool operator==(const ElementMask &, const ElementMask &) = default;

private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A subgroup of a FiniteGroup, identified by its membership mask. The
/// generator list is a convenience for closure computations; equality is by
/// mask only.
class Subgroup {
public:
  Subgroup() = default;
  Subgroup(ElementMask mask, std::vector<ElementIndex> generators)
      : mask_(std::move(mask)), generators_(std::move(generators)) {}

  const ElementMask &mask() const { return mask_; }
  const std::vector<ElementIndex> &generators() const { return generators_; }
  std::size_t order() const { return mask_.count(); }
  bool contains(ElementIndex i) const { return mask_.test(i); }
  std::vector<ElementIndex> elements() const { return mask_.indices(); }

  friend bool operator==(const Subgroup &a, const Subgroup &b) { return a.mask_ == b.mask_; }

private:
  ElementMask mask_;
  std::vector<ElementIndex> generators_;
};

/// Canonical lattice order: by order, then lexicographically by the sorted
/// element index list.
inline bool canonical_less(const Subgroup &a, const Subgroup &b) {
  if (a.order() != b.order())
    return a.order() < b.order();
  auto ea = a.elements(), eb = b.elements();
  return ea < eb;
}

/// Smallest subgroup of g containing the seed elements.
inline Subgroup subgroup_closure(const FiniteGroup &g, std::span<const ElementIndex> seed) {
  std::vector<ElementIndex> gens;
  for (auto s : seed) {
    if (s >= g.order())
      throw InputError("element index out of range");
    if (s != FiniteGroup::identity() && std::find(gens.begin(), gens.end(), s) == gens.end())
      gens.push_back(s);
  }
  ElementMask mask(g.order());
  std::vector<ElementIndex> members{FiniteGroup::identity()};
  mask.set(FiniteGroup::identity());
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (auto s : gens) {
      auto y = g.multiply(s, members[i]);
      if (!mask.test(y)) {
        mask.set(y);
        members.push_back(y);
      }
    }
  }
  return Subgroup(std::move(mask), std::move(gens));
}

inline Subgroup subgroup_closure(const FiniteGroup &g, std::initializer_list<ElementIndex> seed) {
  return subgroup_closure(g, std::span<const ElementIndex>(seed.begin(), seed.size()));
}

/// The conjugate g H g^-1, computed elementwise.
inline Subgroup conjugate_subgroup(const FiniteGroup &g, ElementIndex by, const Subgroup &h) {
  ElementMask mask(g.order());
  for (auto e : h.elements())
    mask.set(g.conjugate(by, e));
  std::vector<ElementIndex> gens;
  for (auto e : h.generators())
    gens.push_back(g.conjugate(by, e));
  return Subgroup(std::move(mask), std::move(gens));
}

struct ElementMaskHash {
  std::size_t operator()(const ElementMask &m) const noexcept { return m.hash(); }
};

} // namespace nonfree
