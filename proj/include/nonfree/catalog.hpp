#pragma once

#include <memory>
#include <string>
#include <vector>

#include "action.hpp"
#include "lattice.hpp"
#include "measure_analysis.hpp"
#include "registry.hpp"

namespace nonfree {

/// A registry group with its lattice, built once.
struct GroupContext {
  std::string name;
  std::shared_ptr<const FiniteGroup> group;
  std::shared_ptr<const SubgroupLattice> lattice;
};

inline GroupContext make_context(const std::string &name, const GroupSpec &spec,
                                 const GroupBounds &bounds = GroupBounds::from_environment(),
                                 const LatticeBounds &lattice_bounds = {}) {
  auto group = std::make_shared<const FiniteGroup>(generate_group(spec, bounds));
  auto lattice =
      std::make_shared<const SubgroupLattice>(enumerate_subgroups(group, lattice_bounds));
  return {name, group, lattice};
}

inline GroupContext make_context(const std::string &name) {
  auto spec = lookup_group(name);
  if (!spec)
    throw InputError("unknown group '" + name + "'");
  return make_context(name, *spec);
}

struct NamedAction {
  std::string name;
  MeasuredAction action;
};

/// Uniform actions on each subgroup's cosets (index <= max_points), one per
/// conjugacy class of subgroups: every transitive action up to isomorphism.
inline std::vector<NamedAction> transitive_actions(const GroupContext &ctx,
                                                   std::size_t max_points = 8) {
  std::vector<NamedAction> out;
  for (const auto &orbit : ctx.lattice->orbits()) {
    auto h = orbit.front();
    if (ctx.group->order() / ctx.lattice->subgroup(h).order() > max_points)
      continue;
    out.push_back({ctx.name + ":cosets:" + std::to_string(h), coset_action(*ctx.lattice, h)});
  }
  return out;
}

/// Adjoint actions on each ergodic (uniform-on-orbit) lattice measure.
inline std::vector<NamedAction> adjoint_actions(const GroupContext &ctx) {
  std::vector<NamedAction> out;
  for (const auto &orbit : ctx.lattice->orbits()) {
    auto h = orbit.front();
    out.push_back({ctx.name + ":adjoint:" + std::to_string(h),
                   adjoint_orbit_action(ctx.lattice, h).action});
  }
  return out;
}

/// Resolves "<group>:natural", "<group>:trivial", "<group>:cosets:<i>",
/// "<group>:adjoint:<i>" and a few fixed examples ("C2:free4", "C2:two-orbit",
/// "C2xC2:pairs").
inline MeasuredAction named_action(const GroupContext &ctx, const std::string &kind) {
  using P = Permutation;
  auto uniform = [](std::size_t n) {
    return std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n)));
  };
  if (kind == "natural")
    return natural_action(ctx.group);
  if (kind == "trivial")
    return MeasuredAction(ctx.group,
                          std::vector<P>(ctx.group->generators().size(), P::identity(1)),
                          {Rational(1)});
  auto colon = kind.find(':');
  if (colon != std::string::npos) {
    auto what = kind.substr(0, colon);
    std::size_t index = 0;
    try {
      index = std::stoul(kind.substr(colon + 1));
    } catch (const std::exception &) {
      throw InputError("bad subgroup index in action name '" + kind + "'");
    }
    if (index >= ctx.lattice->size())
      throw InputError("subgroup index out of range in '" + kind + "'");
    if (what == "cosets")
      return coset_action(*ctx.lattice, index);
    if (what == "adjoint")
      return adjoint_orbit_action(ctx.lattice, index).action;
  }
  if (ctx.name == "C2" && kind == "free4")
    return MeasuredAction(ctx.group, {P::from_cycles(4, {{0, 1}, {2, 3}})}, uniform(4));
  if (ctx.name == "C2" && kind == "two-orbit")
    return MeasuredAction(ctx.group, {P::from_cycles(3, {{0, 1}})}, uniform(3));
  if (ctx.name == "C2xC2" && kind == "pairs")
    return MeasuredAction(ctx.group, {P::from_cycles(4, {{0, 1}}), P::from_cycles(4, {{2, 3}})},
                          uniform(4));
  throw InputError("unknown action '" + ctx.name + ":" + kind + "'");
}

/// Every action exercised by the acceptance suite for one group: natural,
/// trivial, all transitive actions on <= 8 points and all adjoint actions on
/// ergodic lattice measures, plus the fixed examples for C2 and C2xC2.
inline std::vector<NamedAction> registry_actions(const GroupContext &ctx) {
  std::vector<NamedAction> out;
  out.push_back({ctx.name + ":natural", named_action(ctx, "natural")});
  out.push_back({ctx.name + ":trivial", named_action(ctx, "trivial")});
  for (auto &a : transitive_actions(ctx))
    out.push_back(std::move(a));
  for (auto &a : adjoint_actions(ctx))
    out.push_back(std::move(a));
  if (ctx.name == "C2") {
    out.push_back({"C2:free4", named_action(ctx, "free4")});
    out.push_back({"C2:two-orbit", named_action(ctx, "two-orbit")});
  }
  if (ctx.name == "C2xC2")
    out.push_back({"C2xC2:pairs", named_action(ctx, "pairs")});
  return out;
}

} // namespace nonfree
