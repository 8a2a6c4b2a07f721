#pragma once

#include <memory>
#include <span>
#include <vector>

#include "lattice.hpp"
#include "rational.hpp"

namespace nonfree {

/// Weights on the lattice points, before any validation.
using LatticeWeights = std::vector<Rational>;

/// True iff w(s H s^-1) = w(H) for every designated generator s and every H.
inline bool check_invariance(const SubgroupLattice &lattice, std::span<const Rational> weights) {
  if (weights.size() != lattice.size())
    return false;
  for (std::size_t k = 0; k < lattice.group().generators().size(); ++k)
    for (SubgroupIndex i = 0; i < lattice.size(); ++i)
      if (weights[lattice.conj_table(k, i)] != weights[i])
        return false;
  return true;
}

/// A conjugation-invariant probability measure on L(G), atomic with exact
/// rational weights.
class InvariantMeasure {
public:
  /// Throws InputError for wrong size, negative weights or total mass != 1,
  /// and NotInvariant when the weights are not constant on adjoint orbits.
  InvariantMeasure(std::shared_ptr<const SubgroupLattice> lattice, LatticeWeights weights)
      : lattice_(std::move(lattice)), weights_(std::move(weights)) {
    if (weights_.size() != lattice_->size())
      throw InputError("measure has " + std::to_string(weights_.size()) + " weights for " +
                       std::to_string(lattice_->size()) + " subgroups");
    Rational total = 0;
    for (const auto &w : weights_) {
      if (w < 0)
        throw InputError("negative measure weight");
      total += w;
    }
    if (total != 1)
      throw InputError("measure weights sum to " + to_string(total) + ", not 1");
    if (!check_invariance(*lattice_, weights_))
      throw NotInvariant("measure is not invariant under conjugation");
  }

  const SubgroupLattice &lattice() const { return *lattice_; }
  std::shared_ptr<const SubgroupLattice> lattice_ptr() const { return lattice_; }
  const LatticeWeights &weights() const { return weights_; }
  const Rational &operator[](SubgroupIndex i) const { return weights_[i]; }

  std::vector<SubgroupIndex> support() const {
    std::vector<SubgroupIndex> out;
    for (SubgroupIndex i = 0; i < weights_.size(); ++i)
      if (weights_[i] > 0)
        out.push_back(i);
    return out;
  }

  /// Single-atom support: every separation property holds vacuously.
  bool is_degenerate() const { return support().size() == 1; }

  Rational mass(std::span<const SubgroupIndex> indices) const {
    Rational m = 0;
    for (auto i : indices)
      m += weights_[i];
    return m;
  }

  friend bool operator==(const InvariantMeasure &a, const InvariantMeasure &b) {
    return a.lattice_ == b.lattice_ && a.weights_ == b.weights_;
  }

private:
  std::shared_ptr<const SubgroupLattice> lattice_;
  LatticeWeights weights_;
};

inline bool check_invariance(const InvariantMeasure &nu) {
  return check_invariance(nu.lattice(), nu.weights());
}

/// Uniform measure on the adjoint orbit of H; ergodic by construction.
inline InvariantMeasure orbit_uniform(std::shared_ptr<const SubgroupLattice> lattice,
                                      SubgroupIndex h) {
  LatticeWeights w(lattice->size(), Rational(0));
  const auto &orbit = lattice->orbit(h);
  for (auto i : orbit)
    w[i] = Rational(1, static_cast<unsigned long>(orbit.size()));
  return InvariantMeasure(std::move(lattice), std::move(w));
}

/// Convex combination sum_i c_i nu_i over a common lattice.
inline InvariantMeasure mixture(const std::vector<std::pair<Rational, InvariantMeasure>> &parts) {
  if (parts.empty())
    throw InputError("empty mixture");
  auto lat = parts.front().second.lattice_ptr();
  LatticeWeights w(lat->size(), Rational(0));
  for (const auto &[c, nu] : parts) {
    if (nu.lattice_ptr() != lat)
      throw InputError("mixture of measures on different lattices");
    for (SubgroupIndex i = 0; i < w.size(); ++i)
      w[i] += c * nu[i];
  }
  return InvariantMeasure(lat, std::move(w));
}

struct ErgodicComponent {
  Rational weight;
  std::size_t orbit = 0;
  InvariantMeasure measure;
};

/// Unique decomposition into uniform-on-orbit measures, in orbit order.
inline std::vector<ErgodicComponent> ergodic_decomposition(const InvariantMeasure &nu) {
  std::vector<ErgodicComponent> out;
  const auto &lat = nu.lattice();
  for (std::size_t o = 0; o < lat.orbits().size(); ++o) {
    auto w = nu.mass(lat.orbits()[o]);
    if (w > 0)
      out.push_back({w, o, orbit_uniform(nu.lattice_ptr(), lat.orbits()[o].front())});
  }
  return out;
}

/// Pushforward under H -> N(H): the mass of H moves to its normalizer.
inline InvariantMeasure normalization_pushforward(const InvariantMeasure &nu) {
  const auto &lat = nu.lattice();
  LatticeWeights w(lat.size(), Rational(0));
  for (SubgroupIndex i = 0; i < lat.size(); ++i)
    w[lat.normalizer(i)] += nu[i];
  return InvariantMeasure(nu.lattice_ptr(), std::move(w));
}

} // namespace nonfree
