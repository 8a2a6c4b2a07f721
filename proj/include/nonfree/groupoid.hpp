#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "action.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace nonfree {

/// Functions on the pairs of a groupoid, indexed like GroupoidSpace::pairs.
using PairFunction = std::vector<Rational>;

/// The orbit-equivalence relation of an action restricted to positive-measure
/// points: pairs (x, y) with y in the orbit of x, in lexicographic order,
/// weighted by M(x, y) = mu(x).
class GroupoidSpace {
public:
  static constexpr std::size_t max_pairs = 4096;

  explicit GroupoidSpace(MeasuredAction action) : action_(std::move(action)) {
    const auto support = action_.support();
    std::vector<bool> positive(action_.size(), false);
    for (auto x : support)
      positive[x] = true;
    std::vector<std::size_t> orbit_id(action_.size(), 0);
    auto orbits = action_.orbits();
    for (std::size_t o = 0; o < orbits.size(); ++o)
      for (auto x : orbits[o])
        orbit_id[x] = o;
    for (auto x : support)
      for (auto y : support)
        if (orbit_id[x] == orbit_id[y]) {
          if (pairs_.size() == max_pairs)
            throw TableBoundExceeded("groupoid exceeds " + std::to_string(max_pairs) + " pairs");
          index_.emplace(std::pair{x, y}, pairs_.size());
          if (x == y)
            diagonal_.push_back(pairs_.size());
          pairs_.emplace_back(x, y);
          mass_.push_back(action_.mu(x));
        }
    for (std::size_t p = 0; p < pairs_.size(); ++p)
      if (mass_[p] != mass_[index(pairs_[p].second, pairs_[p].first)])
        throw std::logic_error("groupoid measure is not symmetric");
  }

  const MeasuredAction &action() const { return action_; }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<std::pair<Point, Point>> &pairs() const { return pairs_; }
  const std::vector<Rational> &mass() const { return mass_; }
  /// Pair indices of (x, x), in order of x.
  const std::vector<std::size_t> &diagonal() const { return diagonal_; }

  std::size_t index(Point x, Point y) const { return index_.at({x, y}); }

  /// <f1, f2> = sum over pairs of M f1 f2.
  Rational inner(const PairFunction &f1, const PairFunction &f2) const {
    Rational s = 0;
    for (std::size_t p = 0; p < size(); ++p)
      if (f1[p] != 0 && f2[p] != 0)
        s += mass_[p] * f1[p] * f2[p];
    return s;
  }

  /// 1_Delta, the indicator of the diagonal.
  PairFunction diagonal_indicator() const {
    PairFunction f(size(), Rational(0));
    for (auto p : diagonal_)
      f[p] = 1;
    return f;
  }

private:
  MeasuredAction action_;
  std::vector<std::pair<Point, Point>> pairs_;
  std::vector<Rational> mass_;
  std::vector<std::size_t> diagonal_;
  std::map<std::pair<Point, Point>, std::size_t> index_;
};

inline GroupoidSpace build_groupoid(const MeasuredAction &a) { return GroupoidSpace(a); }

/// A composition operator (U f)(p) = f(source[p]), an exact 0/1 monomial
/// matrix over the pair basis.
struct PairOperator {
  std::vector<std::size_t> source;

  PairFunction apply(const PairFunction &f) const {
    PairFunction out(f.size());
    for (std::size_t p = 0; p < f.size(); ++p)
      out[p] = f[source[p]];
    return out;
  }

  /// The operator product (*this) * b, i.e. f -> this(b(f)).
  friend PairOperator operator*(const PairOperator &a, const PairOperator &b) {
    PairOperator c{std::vector<std::size_t>(a.source.size())};
    for (std::size_t p = 0; p < a.source.size(); ++p)
      c.source[p] = b.source[a.source[p]];
    return c;
  }

  friend bool operator==(const PairOperator &, const PairOperator &) = default;

  RationalMatrix to_matrix() const {
    RationalMatrix m(source.size(), std::vector<Rational>(source.size(), Rational(0)));
    for (std::size_t p = 0; p < source.size(); ++p)
      m[p][source[p]] = 1;
    return m;
  }
};

/// (L_g f)(x, y) = f(g^-1 x, y).
inline PairOperator left_op(const GroupoidSpace &s, ElementIndex g) {
  const auto ginv = s.action().group().inverse(g);
  PairOperator u{std::vector<std::size_t>(s.size())};
  for (std::size_t p = 0; p < s.size(); ++p) {
    auto [x, y] = s.pairs()[p];
    u.source[p] = s.index(s.action().act(ginv, x), y);
  }
  return u;
}

/// (R_g f)(x, y) = f(x, g^-1 y).
inline PairOperator right_op(const GroupoidSpace &s, ElementIndex g) {
  const auto ginv = s.action().group().inverse(g);
  PairOperator u{std::vector<std::size_t>(s.size())};
  for (std::size_t p = 0; p < s.size(); ++p) {
    auto [x, y] = s.pairs()[p];
    u.source[p] = s.index(x, s.action().act(ginv, y));
  }
  return u;
}

/// A composition operator preserves <,> iff it preserves M.
inline bool is_unitary(const GroupoidSpace &s, const PairOperator &u) {
  std::vector<bool> hit(s.size(), false);
  for (std::size_t p = 0; p < s.size(); ++p) {
    if (hit[u.source[p]] || s.mass()[u.source[p]] != s.mass()[p])
      return false;
    hit[u.source[p]] = true;
  }
  return true;
}

/// <L_g 1_Delta, 1_Delta>, checked against mu(X_g).
inline Rational matrix_coefficient(const GroupoidSpace &s, ElementIndex g) {
  auto delta = s.diagonal_indicator();
  Rational c = s.inner(left_op(s, g).apply(delta), delta);
  if (c != s.action().measure_of(fixed_set(s.action(), g)))
    throw std::logic_error("matrix coefficient differs from the fixed-set measure");
  return c;
}

/// Restriction to the diagonal, read as a function of x over the support.
inline std::vector<Rational> diagonal_part(const GroupoidSpace &s, const PairFunction &f) {
  std::vector<Rational> out;
  for (auto p : s.diagonal())
    out.push_back(f[p]);
  return out;
}

struct DiagonalSpanReport {
  std::size_t indicator_span_dim = 0;
  std::size_t algebra_span_dim = 0;
  std::size_t diag_dim = 0;
  bool tnf = false;
};

/// Spans of the diagonal parts of L_g 1_Delta (the indicators of X_g) and of
/// the algebra they generate under pointwise products and 1.
inline DiagonalSpanReport diagonal_span_report(const GroupoidSpace &s) {
  const auto &a = s.action();
  const auto &g = a.group();
  const auto delta = s.diagonal_indicator();
  const auto n = s.diagonal().size();
  DiagonalSpanReport r;
  r.diag_dim = n;

  std::vector<std::vector<Rational>> indicators;
  RationalBasis span(n);
  for (ElementIndex e = 0; e < g.order(); ++e) {
    auto d = diagonal_part(s, left_op(s, e).apply(delta));
    for (std::size_t i = 0; i < n; ++i) {
      Point x = s.pairs()[s.diagonal()[i]].first;
      if (d[i] != (a.act(e, x) == x ? 1 : 0))
        throw std::logic_error("diagonal part of L_g 1_Delta is not the indicator of X_g");
    }
    span.insert(d);
    indicators.push_back(std::move(d));
  }
  r.indicator_span_dim = span.rank();

  // close {1} under multiplication by every indicator
  RationalBasis algebra(n);
  std::vector<std::vector<Rational>> queue{std::vector<Rational>(n, Rational(1))};
  algebra.insert(queue.front());
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto &ind : indicators) {
      auto v = queue[q];
      for (std::size_t i = 0; i < n; ++i)
        v[i] *= ind[i];
      if (algebra.insert(v))
        queue.push_back(std::move(v));
    }
  r.algebra_span_dim = algebra.rank();
  if (r.algebra_span_dim != algebra_AG(a).blocks.size())
    throw std::logic_error("algebra span dimension differs from the number of atoms");
  r.tnf = r.algebra_span_dim == r.diag_dim;
  if (r.tnf != classify_action(a).totally_nonfree)
    throw std::logic_error("diagonal span verdict disagrees with the action classification");
  return r;
}

struct CyclicDimension {
  std::size_t dimension = 0;
  std::size_t total = 0;
};

/// Dimension of the smallest subspace containing 1_Delta and invariant under
/// every L_g (and, optionally, under multiplication by functions of x).
inline CyclicDimension cyclic_dimension(const GroupoidSpace &s, bool with_multiplicators) {
  const auto &g = s.action().group();
  std::vector<PairOperator> ops;
  for (std::size_t k = 0; k < g.generators().size(); ++k)
    ops.push_back(left_op(s, g.generator_index(k)));
  std::vector<Point> points;
  for (auto p : s.diagonal())
    points.push_back(s.pairs()[p].first);

  RationalBasis basis(s.size());
  std::vector<PairFunction> queue{s.diagonal_indicator()};
  basis.insert(queue.front());
  auto push = [&](PairFunction v) {
    if (basis.insert(v))
      queue.push_back(std::move(v));
  };
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto &u : ops)
      push(u.apply(queue[q]));
    if (with_multiplicators)
      for (auto x : points) {
        auto v = queue[q];
        for (std::size_t p = 0; p < s.size(); ++p)
          if (s.pairs()[p].first != x)
            v[p] = 0;
        push(std::move(v));
      }
  }
  return {basis.rank(), s.size()};
}

} // namespace nonfree
