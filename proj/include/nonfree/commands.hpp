#pragma once

#include <map>
#include <optional>
#include <string>

#include "character.hpp"
#include "groupoid.hpp"
#include "json_io.hpp"
#include "measure_analysis.hpp"
#include "thoma.hpp"

namespace nonfree {

inline constexpr const char *artifact_version = "0.1.0";

namespace io {

/// {command, inputs, results, seed, version}. nlohmann's default object
/// keeps keys sorted, so dump() is deterministic.
inline json make_report(const std::string &command, json inputs, json results,
                        std::optional<std::uint64_t> seed = std::nullopt) {
  json r = {{"command", command},
            {"inputs", std::move(inputs)},
            {"results", std::move(results)},
            {"version", artifact_version}};
  r["seed"] = seed ? json(*seed) : json(nullptr);
  return r;
}

inline json indices_to_json(const std::vector<SubgroupIndex> &v) {
  json out = json::array();
  for (auto i : v)
    out.push_back(i);
  return out;
}

inline json measure_weights_to_json(const InvariantMeasure &nu) {
  json out = json::array();
  for (auto i : nu.support())
    out.push_back({{"subgroup_index", i},
                   {"order", nu.lattice().subgroup(i).order()},
                   {"weight", to_json(nu[i])}});
  return out;
}

inline json decomposition_to_json(const Character &phi) {
  try {
    auto table = character_table(*phi.group);
    auto d = decompose_character(phi, table);
    json comps = json::array();
    for (const auto &c : d.components)
      comps.push_back({{"irreducible", c.irreducible},
                       {"degree", table.degrees[c.irreducible]},
                       {"weight", to_json(c.weight)}});
    return {{"components", comps}, {"indecomposable", d.indecomposable}};
  } catch (const TableBoundExceeded &e) {
    return {{"skipped", e.what()}};
  }
}

} // namespace io

/// Lattice report for the canonical input {"group": {...}}.
inline io::json cmd_lattice(const io::json &inputs) {
  using io::json;
  auto spec = io::group_spec_from_json(io::field<json>(inputs, "group"));
  auto ctx = io::context_from_spec(spec);
  const auto &lat = *ctx.lattice;
  json subgroups = json::array();
  std::vector<SubgroupIndex> abnormal;
  for (SubgroupIndex i = 0; i < lat.size(); ++i) {
    const auto &h = lat.subgroup(i);
    json gens = json::array();
    for (auto e : h.generators())
      gens.push_back(ctx.group->element(e).to_cycle_string());
    if (lat.is_abnormal(i))
      abnormal.push_back(i);
    subgroups.push_back({{"index", i},
                         {"order", h.order()},
                         {"mask", h.mask().to_hex()},
                         {"generators", gens},
                         {"normalizer", lat.normalizer(i)},
                         {"abnormal", lat.is_abnormal(i)},
                         {"normal", lat.is_normal(i)},
                         {"orbit", lat.orbit_of(i)},
                         {"tower_length", lat.normalization_tower(i).size() - 1}});
  }
  json results = {{"group_order", ctx.group->order()},
                  {"subgroup_count", lat.size()},
                  {"orbit_count", lat.orbits().size()},
                  {"abnormal", io::indices_to_json(abnormal)},
                  {"subgroups", subgroups}};
  return io::make_report("lattice", {{"group", io::to_json(spec)}}, results);
}

/// Full pipeline on a canonical action: classification, stabilizer law,
/// character with axioms and decomposition, groupoid identities.
inline io::json cmd_action(const io::json &inputs) {
  using io::json;
  auto spec = io::group_spec_from_json(io::field<json>(inputs, "group"));
  auto ctx = io::context_from_spec(spec);
  auto a = io::action_from_json(ctx, inputs);
  const auto &g = *ctx.group;

  auto cls = classify_action(a);
  json classification = {{"free", cls.free},
                         {"extremely_nonfree", cls.extremely_nonfree},
                         {"totally_nonfree", cls.totally_nonfree},
                         {"algebras_agree", cls.algebras_agree},
                         {"degenerate", cls.degenerate}};

  auto nu = pushforward_measure(a, ctx.lattice);
  auto phi = character_from_action(a);
  if (phi != measure_character(nu))
    throw std::logic_error("action character differs from the stabilizer-law character");
  auto axioms = check_character_axioms(phi);

  auto s = build_groupoid(a);
  json coefficients = json::array();
  for (ElementIndex e = 0; e < g.order(); ++e)
    coefficients.push_back(
        {{"element", g.element(e).to_cycle_string()}, {"value", io::to_json(matrix_coefficient(s, e))}});
  const bool all_pairs = g.order() * g.order() <= 100000;
  std::vector<ElementIndex> probe;
  if (all_pairs)
    for (ElementIndex e = 0; e < g.order(); ++e)
      probe.push_back(e);
  else
    for (std::size_t k = 0; k < g.generators().size(); ++k)
      probe.push_back(g.generator_index(k));
  bool commute = true, unitary = true;
  for (auto x : probe) {
    auto lx = left_op(s, x);
    unitary = unitary && is_unitary(s, lx) && is_unitary(s, right_op(s, x));
    for (auto y : probe)
      commute = commute && lx * right_op(s, y) == right_op(s, y) * lx;
  }
  auto span = diagonal_span_report(s);
  auto cyc_group = cyclic_dimension(s, false);
  auto cyc_mult = cyclic_dimension(s, true);
  json groupoid = {{"pairs", s.size()},
                   {"matrix_coefficients", coefficients},
                   {"coefficients_equal_fixed_measure", true},
                   {"operators_unitary", unitary},
                   {"left_right_commute", commute},
                   {"commutation_checked_on", all_pairs ? "all elements" : "generators"},
                   {"diagonal_span",
                    {{"indicator_span_dim", span.indicator_span_dim},
                     {"algebra_span_dim", span.algebra_span_dim},
                     {"diag_dim", span.diag_dim},
                     {"tnf", span.tnf}}},
                   {"cyclic_dimension",
                    {{"group_only", cyc_group.dimension},
                     {"with_multiplicators", cyc_mult.dimension},
                     {"total", cyc_group.total}}}};

  auto k = koopman_rank(a);
  json results = {{"classification", classification},
                  {"stabilizer_law", io::measure_weights_to_json(nu)},
                  {"character", io::character_to_json(phi)},
                  {"axioms", io::axioms_to_json(axioms)},
                  {"decomposition", io::decomposition_to_json(phi)},
                  {"groupoid", groupoid},
                  {"koopman",
                   {{"applicable", k.applicable},
                    {"rank", k.rank},
                    {"irreducible_complement", k.irreducible_complement},
                    {"complement_empty", k.complement_empty}}}};
  return io::make_report("action", io::action_to_json(spec, a), results);
}

/// EN/TNF analysis of a canonical lattice measure.
inline io::json cmd_measure(const io::json &inputs) {
  using io::json;
  auto spec = io::group_spec_from_json(io::field<json>(inputs, "group"));
  auto ctx = io::context_from_spec(spec);
  auto nu = io::measure_from_json(ctx, spec, inputs);

  json components = json::array();
  for (const auto &c : ergodic_decomposition(nu))
    components.push_back({{"orbit", c.orbit},
                          {"representative", ctx.lattice->orbits()[c.orbit].front()},
                          {"weight", io::to_json(c.weight)}});
  auto en = en_measure_report(nu);
  auto tnf = tnf_measure_report(nu);
  auto phi = measure_character(nu);
  json results = {{"support", io::measure_weights_to_json(nu)},
                  {"ergodic_components", components},
                  {"en_report",
                   {{"abnormal_mass", io::to_json(en.abnormal_mass)},
                    {"stabilizers_distinct", en.stabilizers_distinct},
                    {"agree", en.agree},
                    {"degenerate", en.degenerate},
                    {"converse_counterexample", en.converse_counterexample}}},
                  {"tnf_report",
                   {{"separated", tnf.separated},
                    {"adjoint_tnf", tnf.adjoint_tnf},
                    {"abnormal_supported", tnf.abnormal_supported},
                    {"degenerate", tnf.degenerate}}},
                  {"totally_nonfree", tnf.adjoint_tnf},
                  {"reducely_extremely_nonfree", reducely_en_test(nu)},
                  {"normalization_pushforward", io::measure_weights_to_json(normalization_pushforward(nu))},
                  {"character", io::character_to_json(phi)},
                  {"axioms", io::axioms_to_json(check_character_axioms(phi))}};
  return io::make_report("measure", io::measure_to_json(spec, nu), results);
}

namespace io {

/// Canonical Thoma input {"alpha", "cycle_type", "trials", "seed"}.
inline json thoma_input(const json &j, std::optional<std::uint64_t> trials, std::optional<std::uint64_t> seed) {
  json alpha = json::array();
  std::vector<Rational> values;
  for (const auto &a : field<json>(j, "alpha"))
    values.push_back(rational_from_json(a));
  make_thoma_params(values); // validate
  for (const auto &v : values)
    alpha.push_back(to_json(v));
  json ct = json::object();
  const auto cycle_type = field<json>(j, "cycle_type");
  if (!cycle_type.is_object())
    throw InputError("cycle_type must be an object mapping lengths to multiplicities");
  for (const auto &[k, m] : cycle_type.items()) {
    unsigned long len = 0;
    try {
      len = std::stoul(k);
    } catch (const std::exception &) {
      throw InputError("cycle lengths must be positive integers, got '" + k + "'");
    }
    if (len == 0 || !m.is_number_unsigned())
      throw InputError("cycle type entries must map positive lengths to multiplicities");
    if (m.get<std::uint64_t>() > 0)
      ct[std::to_string(len)] = m.get<std::uint64_t>();
  }
  std::uint64_t t = trials ? *trials : (j.contains("trials") ? field<std::uint64_t>(j, "trials") : 100000);
  std::uint64_t s = seed ? *seed : (j.contains("seed") ? field<std::uint64_t>(j, "seed") : 42);
  if (t == 0)
    throw InputError("trials must be positive");
  return {{"alpha", alpha}, {"cycle_type", ct}, {"trials", t}, {"seed", s}};
}

} // namespace io

/// Closed form and Monte-Carlo estimate of the fixed probability.
inline io::json cmd_thoma(const io::json &inputs) {
  using io::json;
  std::vector<Rational> alpha;
  for (const auto &a : io::field<json>(inputs, "alpha"))
    alpha.push_back(io::rational_from_json(a));
  auto p = make_thoma_params(alpha);
  CycleType ct;
  std::vector<std::vector<Point>> cycles;
  Point next = 0;
  const auto cycle_type = io::field<json>(inputs, "cycle_type");
  for (const auto &[k, m] : cycle_type.items()) {
    auto len = static_cast<std::uint32_t>(std::stoul(k));
    auto mult = m.get<std::uint32_t>();
    ct[len] += mult;
    for (std::uint32_t c = 0; c < mult; ++c) {
      std::vector<Point> cycle;
      for (std::uint32_t i = 0; i < len; ++i)
        cycle.push_back(next++);
      cycles.push_back(std::move(cycle));
    }
  }
  if (next > 100000)
    throw BoundError("cycle type moves more than 100000 points");
  auto g = Permutation::from_cycles(std::max<Point>(next, 1), cycles);
  const auto trials = io::field<std::uint64_t>(inputs, "trials");
  const auto seed = io::field<std::uint64_t>(inputs, "seed");
  auto exact = thoma_value(p, ct);
  auto mc = mc_fixed_probability(g, p, trials, seed);
  json results = {{"exact", io::to_json(exact)},
                  {"estimate", mc.estimate},
                  {"stderr", mc.stderr_},
                  {"hits", mc.hits},
                  {"within_3_stderr", std::abs(mc.estimate - exact.get_d()) <= 3 * mc.stderr_},
                  {"gamma", io::to_json(p.gamma)}};
  return io::make_report("thoma", inputs, results, seed);
}

/// Re-runs the command recorded in a report from its echoed inputs.
inline io::json replay(const io::json &report) {
  const auto command = io::field<std::string>(report, "command");
  const auto &inputs = io::field<io::json>(report, "inputs");
  if (command == "lattice")
    return cmd_lattice(inputs);
  if (command == "action")
    return cmd_action(inputs);
  if (command == "measure")
    return cmd_measure(inputs);
  if (command == "thoma")
    return cmd_thoma(inputs);
  throw InputError("unknown command '" + command + "' in report");
}

} // namespace nonfree
