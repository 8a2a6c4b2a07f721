#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rational.hpp"

namespace nonfree {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Incrementally built row-echelon basis over the rationals.
class RationalBasis {
public:
  explicit RationalBasis(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds v to the span; returns true iff it was independent of the basis.
  bool insert(std::vector<Rational> v) {
    reduce(v);
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0)
      ++lead;
    if (lead == v.size())
      return false;
    Rational scale = v[lead];
    for (auto &x : v)
      x /= scale;
    rows_.push_back(std::move(v));
    pivots_.push_back(lead);
    return true;
  }

  bool contains(std::vector<Rational> v) const {
    reduce(v);
    for (const auto &x : v)
      if (x != 0)
        return false;
    return true;
  }

private:
  void reduce(std::vector<Rational> &v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto p = pivots_[r];
      if (v[p] == 0)
        continue;
      Rational f = v[p];
      for (std::size_t c = 0; c < v.size(); ++c)
        if (rows_[r][c] != 0)
          v[c] -= f * rows_[r][c];
    }
  }

  std::size_t dimension_;
  RationalMatrix rows_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t exact_rank(const RationalMatrix &rows) {
  if (rows.empty())
    return 0;
  RationalBasis basis(rows.front().size());
  for (const auto &r : rows)
    basis.insert(r);
  return basis.rank();
}

struct Pivot {
  std::size_t index = 0;
  Rational value;
};

struct PsdResult {
  bool symmetric = false;
  bool psd = false;
  /// Pivot sequence of the symmetric factorization, in elimination order. A
  /// failing run ends with the offending (negative) pivot, if any.
  std::vector<Pivot> pivots;
};

/// Exact positive-semidefiniteness test by symmetric Gaussian elimination,
/// always pivoting on the largest remaining diagonal entry. A PSD matrix never
/// produces a negative pivot; when the largest remaining diagonal entry is 0
/// the remaining block must vanish.
inline PsdResult psd_pivoted(RationalMatrix a) {
  PsdResult res;
  const auto n = a.size();
  res.symmetric = true;
  for (std::size_t i = 0; i < n && res.symmetric; ++i) {
    if (a[i].size() != n) {
      res.symmetric = false;
      break;
    }
    for (std::size_t j = 0; j < i; ++j)
      if (a[i][j] != a[j][i]) {
        res.symmetric = false;
        break;
      }
  }
  if (!res.symmetric)
    return res;

  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i)
    active[i] = i;
  while (!active.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < active.size(); ++k)
      if (a[active[k]][active[k]] > a[active[best]][active[best]])
        best = k;
    const auto p = active[best];
    const Rational d = a[p][p];
    if (d < 0) {
      res.pivots.push_back({p, d});
      return res;
    }
    if (d == 0) {
      for (auto i : active)
        for (auto j : active)
          if (a[i][j] != 0)
            return res;
      break;
    }
    res.pivots.push_back({p, d});
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
    for (std::size_t x = 0; x < active.size(); ++x) {
      const auto i = active[x];
      if (a[i][p] == 0)
        continue;
      const Rational f = a[i][p] / d;
      for (std::size_t y = x; y < active.size(); ++y) {
        const auto j = active[y];
        if (a[p][j] != 0) {
          a[i][j] -= f * a[p][j];
          if (i != j)
            a[j][i] = a[i][j];
        }
      }
    }
  }
  res.psd = true;
  return res;
}

} // namespace nonfree
