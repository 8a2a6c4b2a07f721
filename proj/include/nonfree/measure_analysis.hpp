#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "action.hpp"
#include "measure.hpp"

namespace nonfree {

/// The adjoint action of G on (L(G), nu) mod 0, i.e. on the support of nu.
struct AdjointAction {
  MeasuredAction action;
  /// Lattice index of each action point.
  std::vector<SubgroupIndex> points;
};

inline AdjointAction adjoint_action(const InvariantMeasure &nu) {
  const auto &lat = nu.lattice();
  auto points = nu.support();
  std::vector<Point> local(lat.size(), 0);
  for (Point i = 0; i < points.size(); ++i)
    local[points[i]] = i;
  std::vector<Permutation> images;
  for (std::size_t k = 0; k < lat.group().generators().size(); ++k) {
    std::vector<Point> img;
    for (auto h : points)
      img.push_back(local[lat.conj_table(k, h)]);
    images.emplace_back(std::move(img));
  }
  std::vector<Rational> mu;
  for (auto h : points)
    mu.push_back(nu[h]);
  return {MeasuredAction(lat.group_ptr(), std::move(images), std::move(mu)), std::move(points)};
}

/// The adjoint action on the conjugacy class of H, uniform measure.
inline AdjointAction adjoint_orbit_action(std::shared_ptr<const SubgroupLattice> lattice,
                                          SubgroupIndex h) {
  return adjoint_action(orbit_uniform(std::move(lattice), h));
}

struct EnReport {
  /// nu{H : N(H) = H}
  Rational abnormal_mass;
  /// H -> N(H) is injective on the support.
  bool stabilizers_distinct = false;
  /// (abnormal_mass == 1) <=> stabilizers_distinct
  bool agree = false;
  bool degenerate = false;
  /// Injective normalizer map with abnormal mass < 1 on a non-degenerate
  /// support: the converse fails for this atomic measure.
  bool converse_counterexample = false;
};

inline EnReport en_measure_report(const InvariantMeasure &nu) {
  const auto &lat = nu.lattice();
  EnReport r;
  r.abnormal_mass = 0;
  std::set<SubgroupIndex> normalizers;
  auto support = nu.support();
  for (auto h : support) {
    if (lat.is_abnormal(h))
      r.abnormal_mass += nu[h];
    normalizers.insert(lat.normalizer(h));
  }
  r.stabilizers_distinct = normalizers.size() == support.size();
  r.agree = (r.abnormal_mass == 1) == r.stabilizers_distinct;
  r.degenerate = support.size() == 1;
  r.converse_counterexample = r.stabilizers_distinct && r.abnormal_mass != 1 && !r.degenerate;
  if (r.abnormal_mass == 1 && !r.stabilizers_distinct)
    throw std::logic_error("abnormal-supported measure with coinciding normalizers");
  return r;
}

struct TnfMeasureReport {
  /// Every pair of support points is separated by some L_g of positive mass.
  bool separated = false;
  bool degenerate = false;
  /// Total nonfreeness of the adjoint action on (L(G), nu). On an
  /// abnormal-supported measure this must equal `separated`.
  bool adjoint_tnf = false;
  bool abnormal_supported = false;
};

inline TnfMeasureReport tnf_measure_report(const InvariantMeasure &nu) {
  const auto &lat = nu.lattice();
  const auto &g = lat.group();
  auto support = nu.support();
  TnfMeasureReport r;
  r.degenerate = support.size() == 1;

  std::vector<ElementIndex> charged;
  for (ElementIndex e = 0; e < g.order(); ++e)
    if (nu.mass(lat.membership_set(e)) > 0)
      charged.push_back(e);
  r.separated = true;
  for (std::size_t i = 0; i < support.size() && r.separated; ++i)
    for (std::size_t j = i + 1; j < support.size() && r.separated; ++j) {
      const auto &a = lat.subgroup(support[i]);
      const auto &b = lat.subgroup(support[j]);
      r.separated = std::any_of(charged.begin(), charged.end(),
                                [&](ElementIndex e) { return a.contains(e) != b.contains(e); });
    }

  r.adjoint_tnf = classify_action(adjoint_action(nu).action).totally_nonfree;
  r.abnormal_supported = en_measure_report(nu).abnormal_mass == 1;
  if (r.abnormal_supported && r.adjoint_tnf != r.separated)
    throw std::logic_error("L_g separation disagrees with the adjoint action classification");
  return r;
}

/// Whether nu is totally nonfree, i.e. the adjoint action on (L(G), nu) is.
/// On abnormal-supported measures this is decided equally by L_g separation.
inline bool tnf_measure_test(const InvariantMeasure &nu) { return tnf_measure_report(nu).adjoint_tnf; }

/// The normalization pushforward is extremely nonfree. Cross-checked against
/// nu{H : N(N(H)) = N(H)} = 1.
inline bool reducely_en_test(const InvariantMeasure &nu) {
  const auto &lat = nu.lattice();
  bool via_pushforward = en_measure_report(normalization_pushforward(nu)).abnormal_mass == 1;
  Rational stable = 0;
  for (auto h : nu.support())
    if (lat.is_abnormal(lat.normalizer(h)))
      stable += nu[h];
  if (via_pushforward != (stable == 1))
    throw std::logic_error("reducely-EN criteria disagree");
  return via_pushforward;
}

} // namespace nonfree
