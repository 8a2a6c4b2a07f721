#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "action.hpp"
#include "character_table.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "measure.hpp"
#include "measure_analysis.hpp"

namespace nonfree {

/// A class function with rational values, one per conjugacy class.
struct Character {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<Rational> values;

  const Rational &at(ElementIndex g) const { return values[group->class_of(g)]; }
  friend bool operator==(const Character &a, const Character &b) {
    return a.group == b.group && a.values == b.values;
  }
};

/// g -> mu(X_g). Evaluated on every element and checked to be a class function.
inline Character character_from_action(const MeasuredAction &a) {
  const auto &g = a.group();
  const auto &classes = g.classes();
  std::vector<std::optional<Rational>> values(classes.size());
  for (ElementIndex e = 0; e < g.order(); ++e) {
    Rational v = a.measure_of(fixed_set(a, e));
    auto &slot = values[g.class_of(e)];
    if (!slot)
      slot = v;
    else if (*slot != v)
      throw std::logic_error("fixed-set measure is not constant on a conjugacy class");
  }
  Character chi{a.group_ptr(), {}};
  for (auto &v : values)
    chi.values.push_back(*v);
  return chi;
}

/// g -> nu{H : g in H}. Checked against the adjoint action's character when
/// nu is carried by abnormal subgroups.
inline Character measure_character(const InvariantMeasure &nu) {
  const auto &lat = nu.lattice();
  const auto &g = lat.group();
  Character chi{lat.group_ptr(), {}};
  for (const auto &cls : g.classes())
    chi.values.push_back(nu.mass(lat.membership_set(cls.front())));
  if (en_measure_report(nu).abnormal_mass == 1 &&
      character_from_action(adjoint_action(nu).action) != chi)
    throw std::logic_error("membership character differs from the adjoint action character");
  return chi;
}

struct AxiomReport {
  bool psd = false;
  bool central = false;
  bool normalized = false;
  std::vector<Pivot> pivots;
  bool ok() const { return psd && central && normalized; }
};

/// The matrix (phi(g_i g_j^-1)) over all group elements.
inline RationalMatrix kernel_matrix(const FiniteGroup &g, const std::vector<Rational> &phi) {
  RationalMatrix m(g.order(), std::vector<Rational>(g.order()));
  for (ElementIndex i = 0; i < g.order(); ++i)
    for (ElementIndex j = 0; j < g.order(); ++j)
      m[i][j] = phi[g.multiply(i, g.inverse(j))];
  return m;
}

/// Axioms for an arbitrary function on elements (indexed like the group).
inline AxiomReport check_function_axioms(const FiniteGroup &g, const std::vector<Rational> &phi) {
  if (phi.size() != g.order())
    throw InputError("function has " + std::to_string(phi.size()) + " values, group has " +
                     std::to_string(g.order()) + " elements");
  AxiomReport r;
  r.normalized = phi[FiniteGroup::identity()] == 1;
  r.central = true;
  for (ElementIndex x = 0; x < g.order() && r.central; ++x)
    for (ElementIndex h = 0; h < g.order() && r.central; ++h)
      r.central = phi[g.conjugate(h, x)] == phi[x];
  auto psd = psd_pivoted(kernel_matrix(g, phi));
  r.psd = psd.symmetric && psd.psd;
  r.pivots = std::move(psd.pivots);
  return r;
}

inline std::vector<Rational> element_values(const Character &chi) {
  std::vector<Rational> phi(chi.group->order());
  for (ElementIndex e = 0; e < phi.size(); ++e)
    phi[e] = chi.at(e);
  return phi;
}

inline AxiomReport check_character_axioms(const Character &chi) {
  if (chi.values.size() != chi.group->classes().size())
    throw InputError("character must have one value per conjugacy class");
  return check_function_axioms(*chi.group, element_values(chi));
}

struct Component {
  Rational weight;
  std::size_t irreducible = 0;
};

struct Decomposition {
  std::vector<Component> components; // one per irreducible, in table order
  bool indecomposable = false;
};

/// phi = sum_i c_i chi_i / chi_i(1), c_i = <phi, chi_i> chi_i(1). The
/// reassembled sum is checked against phi exactly.
inline Decomposition decompose_character(const Character &phi, const CharacterTable &table) {
  const auto &g = *phi.group;
  const auto &classes = g.classes();
  const auto e = table.conductor;
  Decomposition d;
  Rational total = 0;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    Cyclotomic ip(e);
    for (std::size_t c = 0; c < classes.size(); ++c)
      ip += Rational(static_cast<unsigned long>(classes[c].size())) * phi.values[c] *
            table.rows[i][c].conj();
    Rational w = ip.rational_value() * Rational(static_cast<unsigned long>(table.degrees[i])) /
                 Rational(static_cast<unsigned long>(g.order()));
    w.canonicalize();
    if (w < 0)
      throw NegativeWeight("irreducible " + std::to_string(i) + " has weight " + to_string(w));
    total += w;
    if (w != 0)
      ++nonzero;
    d.components.push_back({w, i});
  }
  if (total != 1)
    throw std::logic_error("decomposition weights do not sum to 1");
  for (std::size_t c = 0; c < classes.size(); ++c) {
    Cyclotomic sum(e);
    for (const auto &comp : d.components)
      sum += (comp.weight / Rational(static_cast<unsigned long>(table.degrees[comp.irreducible]))) *
             table.rows[comp.irreducible][c];
    if (sum != Cyclotomic(e, phi.values[c]))
      throw std::logic_error("decomposition does not reassemble the character");
  }
  d.indecomposable = nonzero == 1;
  return d;
}

inline Decomposition decompose_character(const Character &phi) {
  return decompose_character(phi, character_table(*phi.group));
}

} // namespace nonfree
