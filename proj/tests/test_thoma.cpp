#include <nonfree/character.hpp>
#include <nonfree/thoma.hpp>

#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"

using namespace nonfree;

namespace {

ThomaParams params(std::initializer_list<Rational> alpha) { return make_thoma_params(alpha); }

Rational r(long p, long q) {
  Rational x(p, q);
  x.canonicalize();
  return x;
}

/// Calls f(colors, probability) for every assignment of colors to n points,
/// where color k = alpha.size() stands for "unique".
void each_assignment(const ThomaParams &p, std::size_t n,
                     const std::function<void(const std::vector<std::uint32_t> &, const Rational &)> &f) {
  const auto k = static_cast<std::uint32_t>(p.alpha.size());
  std::vector<std::uint32_t> colors(n, 0);
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t x, Rational prob) {
    if (prob == 0)
      return;
    if (x == n) {
      std::vector<std::uint32_t> concrete(colors);
      for (std::size_t i = 0; i < n; ++i)
        if (concrete[i] == k)
          concrete[i] = k + static_cast<std::uint32_t>(i);
      f(concrete, prob);
      return;
    }
    for (std::uint32_t c = 0; c <= k; ++c) {
      colors[x] = c;
      rec(x + 1, prob * (c < k ? p.alpha[c] : p.gamma));
    }
  };
  rec(0, Rational(1));
}

/// Brute-force probability that every cycle of g is monochromatic.
Rational monochromatic_probability(const Permutation &g, const ThomaParams &p) {
  Rational total = 0;
  each_assignment(p, g.degree(), [&](const std::vector<std::uint32_t> &c, const Rational &prob) {
    for (Point x = 0; x < g.degree(); ++x)
      if (c[g(x)] != c[x])
        return;
    total += prob;
  });
  return total;
}

} // namespace

TEST(ThomaParams, Validation) {
  EXPECT_EQ(params({r(1, 2), r(1, 4)}).gamma, r(1, 4));
  EXPECT_THROW(params({r(1, 4), r(1, 2)}), InputError);
  EXPECT_THROW(params({r(-1, 4)}), InputError);
  EXPECT_THROW(params({r(3, 4), r(1, 2)}), InputError);
}

TEST(ThomaValue, Examples) {
  CycleType two{{2, 1}}, twotwo{{2, 2}}, three{{3, 1}}, mixed{{1, 3}, {2, 1}, {3, 1}};
  EXPECT_EQ(thoma_value(params({1}), mixed), 1);
  EXPECT_EQ(thoma_value(params({}), two), 0);
  EXPECT_EQ(thoma_value(params({}), CycleType{{1, 4}}), 1);
  EXPECT_EQ(thoma_value(params({r(1, 2), r(1, 2)}), two), r(1, 2));
  EXPECT_EQ(thoma_value(params({r(1, 2), r(1, 2)}), twotwo), r(1, 4));
  EXPECT_EQ(thoma_value(params({r(1, 3), r(1, 3), r(1, 3)}), three), r(1, 9));
}

TEST(ThomaValue, MatchesBruteForceColorings) {
  std::vector<ThomaParams> ps{params({r(1, 2), r(1, 2)}), params({r(1, 2), r(1, 4)}),
                              params({r(1, 3), r(1, 3), r(1, 3)}), params({r(2, 3)}), params({})};
  std::vector<Permutation> gs{Permutation::from_cycles(5, {{0, 1}}), Permutation::from_cycles(5, {{0, 1, 2}}),
                              Permutation::from_cycles(5, {{0, 1}, {2, 3}}),
                              Permutation::from_cycles(5, {{0, 1}, {2, 3, 4}}),
                              Permutation::from_cycles(5, {{0, 1, 2, 3, 4}}), Permutation::identity(5)};
  for (const auto &p : ps)
    for (const auto &g : gs) {
      auto v = thoma_value(p, g.cycle_type());
      EXPECT_EQ(v, monochromatic_probability(g, p)) << g.to_cycle_string();
      EXPECT_GE(v, 0);
      EXPECT_LE(v, 1);
    }
}

TEST(ThomaValue, Multiplicative) {
  auto p = params({r(1, 2), r(1, 3)});
  for (std::uint32_t a = 2; a < 5; ++a)
    for (std::uint32_t b = 2; b < 5; ++b) {
      CycleType both{{a, 1}};
      ++both[b];
      EXPECT_EQ(thoma_value(p, both), thoma_value(p, {{a, 1}}) * thoma_value(p, {{b, 1}}));
    }
}

TEST(SampleColoring, Examples) {
  EXPECT_EQ(sample_coloring(params({1}), 5, 1), (std::vector<std::uint32_t>{0, 0, 0, 0, 0}));
  EXPECT_EQ(sample_coloring(params({}), 5, 1), (std::vector<std::uint32_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(sample_coloring(params({r(1, 2), r(1, 2)}), 50, 9), sample_coloring(params({r(1, 2), r(1, 2)}), 50, 9));
  auto c = sample_coloring(params({r(1, 2), r(1, 2)}), 100000, 3);
  double zeros = static_cast<double>(std::count(c.begin(), c.end(), 0u));
  EXPECT_NEAR(zeros / 100000, 0.5, 3 * std::sqrt(0.25 / 100000));
}

TEST(SplitRng, StreamsAreDeterministicAndDistinct) {
  SplitRng root(42);
  auto a = root.split(0), b = root.split(0), c = root.split(1);
  auto x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
}

TEST(MonteCarlo, Examples) {
  auto id = mc_fixed_probability(Permutation::identity(4), params({r(1, 2), r(1, 2)}), 1000, 5);
  EXPECT_EQ(id.estimate, 1.0);
  auto two = mc_fixed_probability(Permutation::from_cycles(4, {{0, 1}}), params({r(1, 2), r(1, 2)}), 100000, 42);
  EXPECT_NEAR(two.estimate, 0.5, 3 * two.stderr_);
  EXPECT_NEAR(two.stderr_, 0.0016, 0.0001);
  auto three =
      mc_fixed_probability(Permutation::from_cycles(4, {{0, 1, 2}}), params({r(1, 3), r(1, 3), r(1, 3)}), 100000, 42);
  EXPECT_NEAR(three.estimate, 1.0 / 9, 3 * three.stderr_);
  // reproducible from (seed, trials)
  auto again = mc_fixed_probability(Permutation::from_cycles(4, {{0, 1}}), params({r(1, 2), r(1, 2)}), 100000, 42);
  EXPECT_EQ(again.hits, two.hits);
}

TEST(YoungStabilizer, Examples) {
  auto lat = symmetric_lattice(3);
  const auto &s3 = lat->group();
  EXPECT_EQ(young_stabilizer(s3, {0, 0, 0}).order(), 6u);
  EXPECT_EQ(young_stabilizer(s3, {0, 1, 2}).order(), 1u);
  auto h = young_stabilizer(s3, {0, 0, 1});
  EXPECT_EQ(h.order(), 2u);
  EXPECT_TRUE(h.contains(*s3.index_of(Permutation::from_cycles(3, {{0, 1}}))));
  EXPECT_THROW(young_stabilizer(s3, {0, 0}), DegreeMismatch);
}

TEST(YoungPushforward, Examples) {
  auto one = young_pushforward(3, params({1}));
  EXPECT_EQ(one.measure[one.measure.lattice().whole()], 1);
  auto unique = young_pushforward(3, params({}));
  EXPECT_EQ(unique.measure[unique.measure.lattice().trivial()], 1);
  auto half = young_pushforward(2, params({r(1, 2), r(1, 2)}));
  EXPECT_EQ(half.measure[half.measure.lattice().whole()], r(1, 2));
  EXPECT_EQ(half.measure[half.measure.lattice().trivial()], r(1, 2));
  EXPECT_THROW(young_pushforward(7, params({1})), LatticeBoundExceeded);
}

TEST(YoungPushforward, MatchesBruteForceEnumeration) {
  for (std::size_t n : {3u, 4u}) {
    for (const auto &p : {params({r(1, 2), r(1, 3)}), params({r(1, 2), r(1, 2)}), params({r(1, 4)})}) {
      auto rep = young_pushforward(n, p);
      const auto &lat = rep.measure.lattice();
      const auto &g = lat.group();
      std::map<std::set<oracle::Images>, Rational> law;
      each_assignment(p, n, [&](const std::vector<std::uint32_t> &c, const Rational &prob) {
        std::set<oracle::Images> stab;
        for (const auto &perm : g.elements()) {
          bool keeps = true;
          for (Point x = 0; x < n; ++x)
            keeps = keeps && c[perm(x)] == c[x];
          if (keeps)
            stab.insert(oracle::Images(perm.images().begin(), perm.images().end()));
        }
        law[stab] += prob;
      });
      for (std::size_t i = 0; i < lat.size(); ++i) {
        std::set<oracle::Images> elems;
        for (auto e : lat.subgroup(i).elements())
          elems.insert(oracle::Images(g.element(e).images().begin(), g.element(e).images().end()));
        auto it = law.find(elems);
        EXPECT_EQ(rep.measure[i], it == law.end() ? Rational(0) : it->second);
      }
    }
  }
}

TEST(YoungPushforward, CharacterAndFiniteDiscrepancy) {
  auto p = params({r(1, 2), r(1, 2)});
  auto rep = young_pushforward(4, p);
  EXPECT_TRUE(check_invariance(rep.measure));
  const auto &g = rep.measure.lattice().group();
  for (const auto &d : rep.discrepancies) {
    auto cycle_type = g.element(g.classes()[d.class_index].front()).cycle_type();
    EXPECT_EQ(d.young, thoma_value(p, cycle_type));
    EXPECT_GE(d.partition, d.young);
  }
  // (0 1)(2 3) also fixes the partition {0,2 | 1,3} by swapping its blocks
  auto dd = rep.discrepancies[g.class_of(*g.index_of(Permutation::from_cycles(4, {{0, 1}, {2, 3}})))];
  EXPECT_EQ(dd.young, r(1, 4));
  EXPECT_GT(dd.partition, dd.young);
}

TEST(ThomaProperties, RestrictionToSymmetricGroupsIsACharacter) {
  for (std::size_t n : {2u, 3u, 4u, 5u}) {
    auto g = symmetric_lattice(n)->group_ptr();
    for (const auto &p : {params({r(1, 2), r(1, 2)}), params({r(1, 3), r(1, 3), r(1, 3)}), params({r(3, 5), r(1, 5)}),
                          params({})}) {
      std::vector<Rational> phi(g->order());
      for (ElementIndex e = 0; e < g->order(); ++e)
        phi[e] = thoma_value(p, g->element(e).cycle_type());
      EXPECT_TRUE(check_function_axioms(*g, phi).ok()) << n;
    }
  }
}

TEST(ThomaProperties, MonteCarloSeedBatch) {
  auto g = Permutation::from_cycles(4, {{0, 1}});
  auto p = params({r(1, 2), r(1, 3)});
  const double exact = thoma_value(p, g.cycle_type()).get_d();
  int inside = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto e = mc_fixed_probability(g, p, 20000, seed);
    inside += std::abs(e.estimate - exact) <= 3 * e.stderr_;
  }
  EXPECT_GE(inside, 19);
}
