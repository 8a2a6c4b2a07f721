#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "lattice.hpp"
#include "measure.hpp"
#include "rational.hpp"

namespace nonfree {

/// A finite G-set with a G-invariant probability measure.
///
/// The action is given by the images of the group's designated generators and
/// extended to all elements; construction verifies that this is a well-defined
/// action, that the measure is a probability measure, and that it is
/// invariant.
class MeasuredAction {
public:
  MeasuredAction(std::shared_ptr<const FiniteGroup> group, std::vector<Permutation> generator_images,
                 std::vector<Rational> mu)
      : group_(std::move(group)), generator_images_(std::move(generator_images)), mu_(std::move(mu)) {
    const auto &g = *group_;
    const auto n = mu_.size();
    if (n == 0)
      throw InputError("action needs at least one point");
    if (generator_images_.size() != g.generators().size())
      throw InputError("expected " + std::to_string(g.generators().size()) +
                       " generator images, got " + std::to_string(generator_images_.size()));
    for (const auto &p : generator_images_)
      if (p.degree() != n)
        throw DegreeMismatch("generator image degree differs from the number of points");
    Rational total = 0;
    for (const auto &m : mu_) {
      if (m < 0)
        throw InputError("negative point measure");
      total += m;
    }
    if (total != 1)
      throw InputError("point measures sum to " + to_string(total) + ", not 1");

    // extend along the Cayley graph: act(s x) = img(s) act(x)
    std::vector<std::optional<Permutation>> acts(g.order());
    acts[FiniteGroup::identity()] = Permutation::identity(n);
    std::vector<ElementIndex> queue{FiniteGroup::identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto x = queue[i];
      for (std::size_t k = 0; k < generator_images_.size(); ++k) {
        auto y = g.multiply(g.generator_index(k), x);
        auto image = generator_images_[k] * *acts[x];
        if (!acts[y]) {
          acts[y] = std::move(image);
          queue.push_back(y);
        } else if (*acts[y] != image) {
          throw InputError("generator images do not define a group action");
        }
      }
    }
    for (auto &a : acts)
      element_actions_.push_back(std::move(*a));

    // g(hx) = (gh)x over all pairs of elements, when affordable
    if (g.order() * g.order() * n <= 50'000'000) {
      for (ElementIndex a = 0; a < g.order(); ++a)
        for (ElementIndex b = 0; b < g.order(); ++b)
          if (element_actions_[a] * element_actions_[b] != element_actions_[g.multiply(a, b)])
            throw InputError("generator images do not define a group action");
    }

    for (const auto &p : generator_images_)
      for (Point x = 0; x < n; ++x)
        if (mu_[p(x)] != mu_[x])
          throw NotInvariant("point measure is not invariant under the action");
  }

  const FiniteGroup &group() const { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }
  std::size_t size() const { return mu_.size(); }
  const std::vector<Rational> &mu() const { return mu_; }
  const Rational &mu(Point x) const { return mu_[x]; }
  const std::vector<Permutation> &generator_images() const { return generator_images_; }

  /// The permutation of the points induced by element g.
  const Permutation &action_of(ElementIndex g) const { return element_actions_[g]; }
  Point act(ElementIndex g, Point x) const { return element_actions_[g](x); }

  /// Points of positive measure (the space mod 0).
  std::vector<Point> support() const {
    std::vector<Point> out;
    for (Point x = 0; x < mu_.size(); ++x)
      if (mu_[x] > 0)
        out.push_back(x);
    return out;
  }

  Rational measure_of(std::span<const Point> points) const {
    Rational m = 0;
    for (auto x : points)
      m += mu_[x];
    return m;
  }

  /// G-orbits of all points, each sorted, in order of least point.
  std::vector<std::vector<Point>> orbits() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(size(), false);
    for (Point start = 0; start < size(); ++start) {
      if (seen[start])
        continue;
      std::vector<Point> orbit{start};
      seen[start] = true;
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const auto &p : generator_images_)
          if (!seen[p(orbit[i])]) {
            seen[p(orbit[i])] = true;
            orbit.push_back(p(orbit[i]));
          }
      std::sort(orbit.begin(), orbit.end());
      out.push_back(std::move(orbit));
    }
    return out;
  }

private:
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Permutation> generator_images_;
  std::vector<Rational> mu_;
  std::vector<Permutation> element_actions_;
};

/// The defining action of a permutation group on its points, uniform measure.
inline MeasuredAction natural_action(std::shared_ptr<const FiniteGroup> group) {
  auto n = group->degree();
  auto gens = group->generators();
  return MeasuredAction(std::move(group), std::move(gens),
                        std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n))));
}

/// The action of G on left cosets of the given subgroup, uniform measure.
/// Cosets are numbered in order of their least element.
inline MeasuredAction coset_action(const SubgroupLattice &lattice, SubgroupIndex h) {
  const auto &g = lattice.group();
  const auto &sub = lattice.subgroup(h);
  std::vector<std::size_t> coset_of(g.order(), std::numeric_limits<std::size_t>::max());
  std::size_t count = 0;
  for (ElementIndex x = 0; x < g.order(); ++x) {
    if (coset_of[x] != std::numeric_limits<std::size_t>::max())
      continue;
    for (auto e : sub.elements())
      coset_of[g.multiply(x, e)] = count;
    ++count;
  }
  std::vector<Permutation> images;
  for (std::size_t k = 0; k < g.generators().size(); ++k) {
    std::vector<Point> img(count);
    for (ElementIndex x = 0; x < g.order(); ++x)
      img[coset_of[x]] = static_cast<Point>(coset_of[g.multiply(g.generator_index(k), x)]);
    images.emplace_back(std::move(img));
  }
  return MeasuredAction(lattice.group_ptr(), std::move(images),
                        std::vector<Rational>(count, Rational(1, static_cast<unsigned long>(count))));
}

/// X_g = {x : gx = x}, over all points (null points included).
inline std::vector<Point> fixed_set(const MeasuredAction &a, ElementIndex g) {
  std::vector<Point> out;
  for (Point x = 0; x < a.size(); ++x)
    if (a.act(g, x) == x)
      out.push_back(x);
  return out;
}

/// G_x = {g : gx = x}.
inline Subgroup stabilizer(const MeasuredAction &a, Point x) {
  const auto &g = a.group();
  std::vector<ElementIndex> members;
  for (ElementIndex e = 0; e < g.order(); ++e)
    if (a.act(e, x) == x)
      members.push_back(e);
  return subgroup_closure(g, members);
}

/// Finite model of a sigma-algebra mod 0: its atom partition of the
/// positive-measure points. Blocks are sorted, and ordered by least point.
struct PartitionAlgebra {
  std::vector<std::vector<Point>> blocks;

  bool is_discrete() const {
    return std::all_of(blocks.begin(), blocks.end(), [](const auto &b) { return b.size() == 1; });
  }

  /// True iff every block of this partition lies inside a block of `coarser`.
  bool refines(const PartitionAlgebra &coarser) const {
    std::map<Point, std::size_t> where;
    for (std::size_t i = 0; i < coarser.blocks.size(); ++i)
      for (auto x : coarser.blocks[i])
        where[x] = i;
    for (const auto &b : blocks) {
      auto it = where.find(b.front());
      if (it == where.end())
        return false;
      for (auto x : b) {
        auto jt = where.find(x);
        if (jt == where.end() || jt->second != it->second)
          return false;
      }
    }
    return true;
  }

  friend bool operator==(const PartitionAlgebra &, const PartitionAlgebra &) = default;
};

namespace detail {

inline PartitionAlgebra canonical(std::vector<std::vector<Point>> blocks) {
  for (auto &b : blocks)
    std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return {std::move(blocks)};
}

} // namespace detail

/// Atoms of the algebra generated by the fixed-point sets X_g, mod 0:
/// the support is successively split by each X_g.
inline PartitionAlgebra algebra_AG(const MeasuredAction &a) {
  std::vector<std::vector<Point>> blocks{a.support()};
  for (ElementIndex g = 0; g < a.group().order(); ++g) {
    std::vector<std::vector<Point>> next;
    for (const auto &b : blocks) {
      std::vector<Point> inside, outside;
      for (auto x : b)
        (a.act(g, x) == x ? inside : outside).push_back(x);
      if (!inside.empty())
        next.push_back(std::move(inside));
      if (!outside.empty())
        next.push_back(std::move(outside));
    }
    blocks = std::move(next);
  }
  return detail::canonical(std::move(blocks));
}

/// Atoms of the algebra pulled back by the stabilizer map, mod 0: points are
/// grouped by equality of stabilizer.
inline PartitionAlgebra algebra_stab(const MeasuredAction &a) {
  std::map<std::vector<ElementIndex>, std::vector<Point>> by_stab;
  for (auto x : a.support())
    by_stab[stabilizer(a, x).elements()].push_back(x);
  std::vector<std::vector<Point>> blocks;
  for (auto &[stab, pts] : by_stab)
    blocks.push_back(std::move(pts));
  return detail::canonical(std::move(blocks));
}

struct ActionClassification {
  bool free = false;
  bool extremely_nonfree = false;
  bool totally_nonfree = false;
  bool algebras_agree = false;
  /// Single-point support; EN and TNF hold vacuously.
  bool degenerate = false;
};

/// Free / extremely nonfree / totally nonfree, with the inclusion of the
/// fixed-point algebra in the stabilizer algebra and (finite group) their
/// equality checked.
inline ActionClassification classify_action(const MeasuredAction &a) {
  ActionClassification c;
  c.free = true;
  for (ElementIndex g = 1; g < a.group().order(); ++g)
    if (a.measure_of(fixed_set(a, g)) != 0) {
      c.free = false;
      break;
    }
  auto ag = algebra_AG(a);
  auto stab = algebra_stab(a);
  c.totally_nonfree = ag.is_discrete();
  c.extremely_nonfree = stab.is_discrete();
  c.algebras_agree = stab.refines(ag) && ag == stab;
  c.degenerate = a.support().size() == 1;
  if (c.totally_nonfree && !c.extremely_nonfree)
    throw std::logic_error("totally nonfree action that is not extremely nonfree");
  return c;
}

/// nu_mu(H) = mu{x : G_x = H}. Checks sum_{H contains g} nu_mu(H) = mu(X_g)
/// for every g.
inline InvariantMeasure pushforward_measure(const MeasuredAction &a,
                                            std::shared_ptr<const SubgroupLattice> lattice) {
  if (&lattice->group() != &a.group() &&
      lattice->group().generators() != a.group().generators())
    throw InputError("lattice belongs to a different group");
  LatticeWeights w(lattice->size(), Rational(0));
  for (Point x = 0; x < a.size(); ++x)
    if (a.mu(x) > 0)
      w[lattice->index_of(stabilizer(a, x))] += a.mu(x);
  InvariantMeasure nu(lattice, std::move(w));
  for (ElementIndex g = 0; g < a.group().order(); ++g)
    if (nu.mass(lattice->membership_set(g)) != a.measure_of(fixed_set(a, g)))
      throw std::logic_error("pushforward measure does not reproduce fixed-set measures");
  return nu;
}

namespace detail {

/// Restriction of an action to its support, renumbering points in order.
struct SupportView {
  std::vector<Point> points;
  std::vector<std::vector<Point>> gens; // generator images on local numbering
  std::vector<Rational> mu;
};

inline SupportView support_view(const MeasuredAction &a) {
  SupportView v;
  v.points = a.support();
  std::vector<Point> local(a.size(), 0);
  for (Point i = 0; i < v.points.size(); ++i)
    local[v.points[i]] = i;
  for (const auto &p : a.generator_images()) {
    std::vector<Point> img;
    for (auto x : v.points)
      img.push_back(local[p(x)]);
    v.gens.push_back(std::move(img));
  }
  for (auto x : v.points)
    v.mu.push_back(a.mu(x));
  return v;
}

inline std::vector<std::vector<Point>> inverse_images(const std::vector<std::vector<Point>> &gens) {
  std::vector<std::vector<Point>> inv;
  for (const auto &img : gens) {
    std::vector<Point> r(img.size());
    for (Point x = 0; x < img.size(); ++x)
      r[img[x]] = x;
    inv.push_back(std::move(r));
  }
  return inv;
}

} // namespace detail

/// Exhaustive search for a measure-preserving equivariant bijection between
/// the supports of two actions of the same group. Choices are made only for
/// orbit representatives; everything else is forced by equivariance.
inline bool brute_force_isomorphic(const MeasuredAction &a1, const MeasuredAction &a2,
                                   std::size_t max_points = 10) {
  auto v1 = detail::support_view(a1);
  auto v2 = detail::support_view(a2);
  const auto n = v1.points.size();
  if (n != v2.points.size())
    return false;
  if (n > max_points)
    throw BoundError("isomorphism search limited to " + std::to_string(max_points) + " points");
  auto moves1 = v1.gens, moves2 = v2.gens;
  for (auto &m : detail::inverse_images(v1.gens))
    moves1.push_back(std::move(m));
  for (auto &m : detail::inverse_images(v2.gens))
    moves2.push_back(std::move(m));

  constexpr Point kUnset = std::numeric_limits<Point>::max();
  std::vector<Point> f(n, kUnset);
  std::vector<bool> used(n, false);

  // assigns x -> y and everything forced by it; records assignments for undo
  auto propagate = [&](Point x, Point y, std::vector<Point> &trail) {
    std::vector<std::pair<Point, Point>> work{{x, y}};
    while (!work.empty()) {
      auto [p, q] = work.back();
      work.pop_back();
      if (f[p] != kUnset) {
        if (f[p] != q)
          return false;
        continue;
      }
      if (used[q] || v1.mu[p] != v2.mu[q])
        return false;
      f[p] = q;
      used[q] = true;
      trail.push_back(p);
      for (std::size_t k = 0; k < moves1.size(); ++k)
        work.emplace_back(moves1[k][p], moves2[k][q]);
    }
    return true;
  };

  std::function<bool()> search = [&]() {
    auto it = std::find(f.begin(), f.end(), kUnset);
    if (it == f.end())
      return true;
    auto x = static_cast<Point>(it - f.begin());
    for (Point y = 0; y < n; ++y) {
      if (used[y])
        continue;
      std::vector<Point> trail;
      bool ok = propagate(x, y, trail);
      if (ok && search())
        return true;
      for (auto p : trail) {
        used[f[p]] = false;
        f[p] = kUnset;
      }
    }
    return false;
  };
  return search();
}

struct IsoReport {
  bool nu_equal = false;
  bool brute_iso = false;
  bool agree = false;
};

/// Compares "same pushforward measure" with "isomorphic" for two extremely
/// nonfree actions of one group. Throws NotExtremelyNonfree otherwise.
inline IsoReport iso_test(const MeasuredAction &a1, const MeasuredAction &a2,
                          std::shared_ptr<const SubgroupLattice> lattice) {
  if (a1.group().elements() != a2.group().elements() ||
      a1.group().generators() != a2.group().generators())
    throw InputError("actions of different groups");
  if (!classify_action(a1).extremely_nonfree || !classify_action(a2).extremely_nonfree)
    throw NotExtremelyNonfree("isomorphism test requires extremely nonfree actions");
  IsoReport r;
  r.nu_equal = pushforward_measure(a1, lattice).weights() == pushforward_measure(a2, lattice).weights();
  r.brute_iso = brute_force_isomorphic(a1, a2);
  r.agree = r.nu_equal == r.brute_iso;
  return r;
}

struct KoopmanReport {
  /// Uniform measure on a transitive action.
  bool applicable = false;
  /// Number of G-orbits on X x X.
  std::size_t rank = 0;
  /// rank == 2, i.e. the action is 2-transitive.
  bool irreducible_complement = false;
  /// One point: the complement of the constants is zero.
  bool complement_empty = false;
};

inline KoopmanReport koopman_rank(const MeasuredAction &a) {
  KoopmanReport r;
  const auto n = a.size();
  bool uniform = std::all_of(a.mu().begin(), a.mu().end(),
                             [&](const Rational &m) { return m == a.mu().front(); });
  r.applicable = uniform && a.orbits().size() == 1;
  r.complement_empty = n == 1;

  std::vector<bool> seen(n * n, false);
  for (std::size_t start = 0; start < n * n; ++start) {
    if (seen[start])
      continue;
    ++r.rank;
    std::vector<std::size_t> queue{start};
    seen[start] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      auto x = static_cast<Point>(queue[i] / n), y = static_cast<Point>(queue[i] % n);
      for (const auto &p : a.generator_images()) {
        auto next = static_cast<std::size_t>(p(x)) * n + p(y);
        if (!seen[next]) {
          seen[next] = true;
          queue.push_back(next);
        }
      }
    }
  }
  r.irreducible_complement = r.applicable && r.rank == 2;
  return r;
}

} // namespace nonfree
