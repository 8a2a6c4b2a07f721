#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "action.hpp"
#include "catalog.hpp"
#include "character.hpp"
#include "errors.hpp"
#include "measure.hpp"
#include "registry.hpp"

namespace nonfree::io {

using json = nlohmann::json;

/// Parses JSON text, reporting syntax errors as InputError.
inline json parse_json(const std::string &text, const std::string &what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool looks_like_json(const std::string &s) {
  auto pos = s.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && (s[pos] == '{' || s[pos] == '[');
}

/// Typed field access with InputError diagnostics.
template <class T> T field(const json &j, const std::string &key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError("missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &e) {
    throw InputError("field '" + key + "' has the wrong type: " + e.what());
  }
}

inline Rational rational_from_json(const json &j) {
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  if (j.is_number_integer())
    return Rational(j.get<long>());
  throw InputError("rational values must be strings \"p/q\" or integers");
}

inline json to_json(const Rational &r) { return to_string(r); }

inline Permutation permutation_from_json(const json &j) {
  try {
    return Permutation(j.get<std::vector<Point>>());
  } catch (const json::exception &) {
    throw InputError("permutation must be a list of 0-based images");
  }
}

inline json to_json(const Permutation &p) { return p.images(); }

// ---- groups --------------------------------------------------------------

inline GroupSpec group_spec_from_json(const json &j) {
  if (j.is_string()) {
    auto spec = lookup_group(j.get<std::string>());
    if (!spec)
      throw InputError("unknown registry group '" + j.get<std::string>() + "'");
    return *spec;
  }
  GroupSpec spec;
  spec.degree = field<std::size_t>(j, "degree");
  for (const auto &g : field<json>(j, "generators")) {
    auto p = permutation_from_json(g);
    if (p.degree() != spec.degree)
      throw DegreeMismatch("generator of degree " + std::to_string(p.degree()) + " in a group of degree " +
                           std::to_string(spec.degree));
    spec.generators.push_back(std::move(p));
  }
  return spec;
}

inline json to_json(const GroupSpec &spec) {
  json gens = json::array();
  for (const auto &g : spec.generators)
    gens.push_back(to_json(g));
  return {{"degree", spec.degree}, {"generators", gens}};
}

/// A group given as a registry name, a path to a JSON file, or inline JSON.
inline GroupSpec resolve_group(const std::string &arg) {
  if (auto spec = lookup_group(arg))
    return *spec;
  if (looks_like_json(arg))
    return group_spec_from_json(parse_json(arg, "group"));
  return group_spec_from_json(parse_json(read_file(arg), arg));
}

inline GroupContext context_from_spec(const GroupSpec &spec) {
  return make_context("custom", spec, GroupBounds::from_environment());
}

/// 64-bit FNV-1a of the canonical generator JSON, in hex.
inline std::string fingerprint(const GroupSpec &spec) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : to_json(spec).dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

// ---- actions -------------------------------------------------------------

inline json action_to_json(const GroupSpec &spec, const MeasuredAction &a) {
  json mu = json::array(), images = json::array();
  for (const auto &m : a.mu())
    mu.push_back(to_json(m));
  for (const auto &g : a.generator_images())
    images.push_back(to_json(g));
  return {{"group", to_json(spec)}, {"points", a.size()}, {"measure", mu}, {"generator_images", images}};
}

inline MeasuredAction action_from_json(const GroupContext &ctx, const json &j) {
  const auto points = field<std::size_t>(j, "points");
  std::vector<Rational> mu;
  for (const auto &m : field<json>(j, "measure"))
    mu.push_back(rational_from_json(m));
  if (mu.size() != points)
    throw InputError("measure has " + std::to_string(mu.size()) + " entries for " + std::to_string(points) +
                     " points");
  std::vector<Permutation> images;
  for (const auto &g : field<json>(j, "generator_images"))
    images.push_back(permutation_from_json(g));
  return MeasuredAction(ctx.group, std::move(images), std::move(mu));
}

/// An action given as "<registry group>:<kind>" (see named_action), a path to
/// a JSON file, or inline JSON. Returns the canonical action JSON.
inline json resolve_action(const std::string &arg) {
  json j;
  if (looks_like_json(arg)) {
    j = parse_json(arg, "action");
  } else if (auto colon = arg.find(':'); colon != std::string::npos && lookup_group(arg.substr(0, colon))) {
    auto name = arg.substr(0, colon);
    auto spec = *lookup_group(name);
    auto ctx = make_context(name, spec, GroupBounds::from_environment());
    return action_to_json(spec, named_action(ctx, arg.substr(colon + 1)));
  } else {
    j = parse_json(read_file(arg), arg);
  }
  auto spec = group_spec_from_json(field<json>(j, "group"));
  auto ctx = context_from_spec(spec);
  return action_to_json(spec, action_from_json(ctx, j));
}

// ---- measures ------------------------------------------------------------

inline json measure_to_json(const GroupSpec &spec, const InvariantMeasure &nu) {
  json weights = json::array();
  for (auto i : nu.support())
    weights.push_back({{"subgroup_index", i}, {"weight", to_json(nu[i])}});
  return {{"group", to_json(spec)}, {"weights", weights}, {"fingerprint", fingerprint(spec)}};
}

/// Weights as a list of {subgroup_index, weight}, or {"orbit_uniform": i}.
inline InvariantMeasure measure_from_json(const GroupContext &ctx, const GroupSpec &spec, const json &j) {
  if (j.contains("fingerprint") && field<std::string>(j, "fingerprint") != fingerprint(spec))
    throw InputError("measure fingerprint does not match the group generators");
  if (j.contains("orbit_uniform")) {
    auto h = field<std::size_t>(j, "orbit_uniform");
    if (h >= ctx.lattice->size())
      throw InputError("subgroup index " + std::to_string(h) + " out of range");
    return orbit_uniform(ctx.lattice, h);
  }
  LatticeWeights w(ctx.lattice->size(), Rational(0));
  for (const auto &entry : field<json>(j, "weights")) {
    auto i = field<std::size_t>(entry, "subgroup_index");
    if (i >= w.size())
      throw InputError("subgroup index " + std::to_string(i) + " out of range");
    if (!entry.contains("weight"))
      throw InputError("missing field 'weight'");
    w[i] += rational_from_json(entry.at("weight"));
  }
  return InvariantMeasure(ctx.lattice, std::move(w));
}

/// A measure given as a path or inline JSON. Returns the canonical JSON.
inline json resolve_measure(const std::string &arg) {
  json j = looks_like_json(arg) ? parse_json(arg, "measure") : parse_json(read_file(arg), arg);
  auto spec = group_spec_from_json(field<json>(j, "group"));
  auto ctx = context_from_spec(spec);
  return measure_to_json(spec, measure_from_json(ctx, spec, j));
}

// ---- characters ----------------------------------------------------------

inline json character_to_json(const Character &chi) {
  json out = json::array();
  const auto &g = *chi.group;
  for (std::size_t c = 0; c < chi.values.size(); ++c)
    out.push_back({{"class", c},
                   {"representative", g.element(g.classes()[c].front()).to_cycle_string()},
                   {"size", g.classes()[c].size()},
                   {"value", to_json(chi.values[c])}});
  return out;
}

inline json axioms_to_json(const AxiomReport &r) {
  json pivots = json::array();
  for (const auto &p : r.pivots)
    pivots.push_back({{"index", p.index}, {"value", to_json(p.value)}});
  return {{"psd", r.psd}, {"central", r.central}, {"normalized", r.normalized}, {"pivots", pivots}};
}

} // namespace nonfree::io
