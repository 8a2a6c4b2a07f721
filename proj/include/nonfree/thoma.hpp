#pragma once

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "measure.hpp"
#include "measure_analysis.hpp"
#include "character.hpp"
#include "registry.hpp"

namespace nonfree {

/// Block frequencies alpha (non-increasing, nonnegative) and the leftover
/// mass gamma = 1 - sum(alpha) of points that get a color of their own.
struct ThomaParams {
  std::vector<Rational> alpha;
  Rational gamma = 1;
};

inline ThomaParams make_thoma_params(std::vector<Rational> alpha) {
  Rational total = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0)
      throw InputError("frequencies must be nonnegative");
    if (i > 0 && alpha[i] > alpha[i - 1])
      throw InputError("frequencies must be non-increasing");
    total += alpha[i];
  }
  if (total > 1)
    throw InputError("frequencies sum to " + to_string(total) + " > 1");
  Rational gamma = 1 - total;
  return {std::move(alpha), gamma};
}

/// Probability that every cycle of a permutation with cycle type c is
/// monochromatic: prod over k >= 2 of (sum_i alpha_i^k)^{m_k}.
inline Rational thoma_value(const ThomaParams &p, const CycleType &c) {
  Rational v = 1;
  for (auto [k, m] : c) {
    if (k < 2 || m == 0)
      continue;
    Rational s = 0;
    for (const auto &a : p.alpha)
      s += pow(a, k);
    v *= pow(s, m);
  }
  return v;
}

/// Seedable, splittable generator: a splitmix64-derived seed feeding
/// mt19937_64. Child streams are derived from (seed, stream index) only.
class SplitRng {
public:
  explicit SplitRng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  SplitRng split(std::uint64_t stream) const { return SplitRng(mix(seed_ ^ mix(stream + 1))); }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Color per point: i < alpha.size() with probability alpha_i, otherwise the
/// unique color alpha.size() + point.
inline std::vector<std::uint32_t> sample_coloring(const ThomaParams &p, std::size_t n, SplitRng &rng) {
  std::vector<double> cumulative;
  double acc = 0;
  for (const auto &a : p.alpha)
    cumulative.push_back(acc += a.get_d());
  if (p.gamma == 0 && !cumulative.empty())
    cumulative.back() = 2; // no unique colors from rounding
  std::vector<std::uint32_t> colors(n);
  const auto k = static_cast<std::uint32_t>(p.alpha.size());
  for (std::size_t x = 0; x < n; ++x) {
    double u = rng.uniform();
    std::uint32_t c = 0;
    while (c < k && u >= cumulative[c])
      ++c;
    colors[x] = c < k ? c : k + static_cast<std::uint32_t>(x);
  }
  return colors;
}

inline std::vector<std::uint32_t> sample_coloring(const ThomaParams &p, std::size_t n, std::uint64_t seed) {
  SplitRng rng(seed);
  return sample_coloring(p, n, rng);
}

struct McEstimate {
  double estimate = 0;
  double stderr_ = 0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
};

/// Fraction of sampled colorings under which every cycle of g is
/// monochromatic. Trials are split over a fixed number of chunks, chunk c
/// using stream c of the seed, so the result depends on (seed, trials) only.
inline McEstimate mc_fixed_probability(const Permutation &g, const ThomaParams &p, std::uint64_t trials,
                                       std::uint64_t seed, std::size_t chunks = 16) {
  if (trials == 0)
    throw InputError("trials must be positive");
  std::vector<std::vector<Point>> cycles;
  for (auto &c : g.cycles())
    if (c.size() > 1)
      cycles.push_back(c);
  const SplitRng root(seed);
  auto run = [&](std::size_t chunk) {
    auto rng = root.split(chunk);
    const auto count = trials / chunks + (chunk < trials % chunks ? 1 : 0);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < count; ++t) {
      auto colors = sample_coloring(p, g.degree(), rng);
      bool fixed = true;
      for (const auto &c : cycles)
        for (auto x : c)
          fixed = fixed && colors[x] == colors[c.front()];
      hits += fixed;
    }
    return hits;
  };
  std::vector<std::future<std::uint64_t>> parts;
  for (std::size_t c = 0; c < chunks; ++c)
    parts.push_back(std::async(std::launch::async, run, c));
  McEstimate e;
  e.trials = trials;
  for (auto &f : parts)
    e.hits += f.get();
  e.estimate = static_cast<double>(e.hits) / static_cast<double>(trials);
  e.stderr_ = std::sqrt(e.estimate * (1 - e.estimate) / static_cast<double>(trials));
  return e;
}

/// Permutations of S_n preserving every color class setwise.
inline Subgroup young_stabilizer(const FiniteGroup &sn, const std::vector<std::uint32_t> &colors) {
  if (colors.size() != sn.degree())
    throw DegreeMismatch("coloring has " + std::to_string(colors.size()) + " points, group degree " +
                         std::to_string(sn.degree()));
  ElementMask mask(sn.order());
  std::vector<ElementIndex> gens;
  for (ElementIndex e = 0; e < sn.order(); ++e) {
    const auto &perm = sn.element(e);
    bool keeps = true;
    for (Point x = 0; x < colors.size() && keeps; ++x)
      keeps = colors[perm(x)] == colors[x];
    if (keeps) {
      mask.set(e);
      gens.push_back(e);
    }
  }
  return Subgroup(std::move(mask), std::move(gens));
}

/// The lattice of S_n in its natural action, shared per n.
inline std::shared_ptr<const SubgroupLattice> symmetric_lattice(std::size_t n) {
  static std::mutex guard;
  static std::map<std::size_t, std::shared_ptr<const SubgroupLattice>> cache;
  std::lock_guard lock(guard);
  auto &slot = cache[n];
  if (!slot) {
    auto g = std::make_shared<const FiniteGroup>(generate_group(detail::symmetric_spec(n)));
    slot = std::make_shared<const SubgroupLattice>(enumerate_subgroups(g));
  }
  return slot;
}

struct ClassDiscrepancy {
  std::size_t class_index = 0;
  /// Probability that every cycle is monochromatic (= thoma_value).
  Rational young;
  /// Probability that the element fixes the level-set partition, block swaps
  /// included.
  Rational partition;
};

struct YoungReport {
  InvariantMeasure measure;
  bool extremely_nonfree = false;
  bool totally_nonfree = false;
  std::vector<ClassDiscrepancy> discrepancies;
};

namespace detail {

/// All set partitions of {0..n-1} as block labels (restricted growth strings).
inline void set_partitions(std::size_t n, std::vector<std::uint32_t> &label, std::uint32_t blocks,
                           std::vector<std::vector<std::uint32_t>> &out) {
  if (label.size() == n) {
    out.push_back(label);
    return;
  }
  for (std::uint32_t b = 0; b <= blocks; ++b) {
    label.push_back(b);
    set_partitions(n, label, std::max(blocks, b + 1), out);
    label.pop_back();
  }
}

/// Probability that the level sets of a coloring are exactly the given
/// blocks: distinct frequency colors on distinct blocks, or a unique color on
/// a singleton block.
inline Rational exact_partition_probability(const ThomaParams &p, const std::vector<std::uint32_t> &sizes) {
  const auto k = p.alpha.size();
  if (k > 20)
    throw TableBoundExceeded("exact coloring enumeration limited to 20 frequencies");
  // dp over blocks with the set of used frequency colors
  std::map<std::uint32_t, Rational> dp{{0u, Rational(1)}};
  for (auto s : sizes) {
    std::map<std::uint32_t, Rational> next;
    for (const auto &[used, prob] : dp) {
      if (s == 1 && p.gamma > 0)
        next[used] += prob * p.gamma;
      for (std::size_t c = 0; c < k; ++c)
        if (!(used >> c & 1u) && p.alpha[c] > 0)
          next[used | (1u << c)] += prob * pow(p.alpha[c], s);
    }
    dp = std::move(next);
  }
  Rational total = 0;
  for (const auto &[used, prob] : dp)
    total += prob;
  return total;
}

} // namespace detail

/// Exact law of the Young stabilizer of a random coloring of n <= 6 points.
inline YoungReport young_pushforward(std::size_t n, const ThomaParams &p) {
  if (n < 1 || n > 6)
    throw LatticeBoundExceeded("young_pushforward needs the full lattice of S_n, n <= 6");
  auto lattice = symmetric_lattice(n);
  const auto &sn = lattice->group();

  std::vector<std::uint32_t> label;
  std::vector<std::vector<std::uint32_t>> partitions;
  detail::set_partitions(n, label, 0, partitions);

  LatticeWeights w(lattice->size(), Rational(0));
  std::vector<std::pair<std::vector<std::uint32_t>, Rational>> laws;
  std::map<std::vector<std::uint32_t>, Rational> by_shape;
  for (const auto &part : partitions) {
    std::vector<std::uint32_t> sizes(*std::max_element(part.begin(), part.end()) + 1, 0);
    for (auto b : part)
      ++sizes[b];
    auto shape = sizes;
    std::sort(shape.begin(), shape.end());
    auto it = by_shape.find(shape);
    if (it == by_shape.end())
      it = by_shape.emplace(shape, detail::exact_partition_probability(p, shape)).first;
    if (it->second == 0)
      continue;
    w[lattice->index_of(young_stabilizer(sn, part))] += it->second;
    laws.emplace_back(part, it->second);
  }
  YoungReport r{InvariantMeasure(lattice, std::move(w)), false, false, {}};
  r.extremely_nonfree = en_measure_report(r.measure).abnormal_mass == 1;
  r.totally_nonfree = tnf_measure_test(r.measure);

  auto chi = measure_character(r.measure).values;
  for (std::size_t c = 0; c < sn.classes().size(); ++c) {
    const auto &g = sn.element(sn.classes()[c].front());
    ClassDiscrepancy d{c, thoma_value(p, g.cycle_type()), 0};
    if (chi[c] != d.young)
      throw std::logic_error("Young measure character differs from the closed form");
    for (const auto &[part, prob] : laws) {
      // g permutes the blocks among themselves
      std::map<std::uint32_t, std::uint32_t> image;
      bool ok = true;
      for (Point x = 0; x < n && ok; ++x) {
        auto [it, fresh] = image.emplace(part[x], part[g(x)]);
        ok = fresh || it->second == part[g(x)];
      }
      if (ok)
        d.partition += prob;
    }
    r.discrepancies.push_back(std::move(d));
  }
  return r;
}

} // namespace nonfree
