#include <nonfree/catalog.hpp>
#include <nonfree/character.hpp>
#include <nonfree/cyclotomic.hpp>
#include <nonfree/linalg.hpp>

#include <gtest/gtest.h>

#include <random>

#include "lattice_fixtures.hpp"
#include "oracles.hpp"

using namespace nonfree;
using fixtures::element;
using fixtures::lattice;
using fixtures::subgroup;

namespace {

GroupContext context(const std::string &name) {
  auto lat = lattice(name);
  return GroupContext{name, lat->group_ptr(), lat};
}

Character from(const std::string &group, const std::string &kind) {
  return character_from_action(named_action(context(group), kind));
}

std::vector<Rational> q(std::initializer_list<Rational> v) { return v; }

const std::vector<std::string> small_groups = {"C1", "C2", "C3", "C4", "C2xC2", "S3", "D4", "Q8", "A4", "D6"};

} // namespace

TEST(Cyclotomic, Identities) {
  auto w = Cyclotomic::zeta_power(3, 1);
  EXPECT_EQ(w + w * w, Cyclotomic(3, -1));
  EXPECT_EQ(w * w * w, Cyclotomic(3, 1));
  auto i = Cyclotomic::zeta_power(4, 1);
  EXPECT_EQ(i * i, Cyclotomic(4, -1));
  EXPECT_EQ(i.conj(), Cyclotomic(4, -1) * i);
  EXPECT_EQ(i.to_string(), "1*E(4)^1");
  // 1 + z + ... + z^4 = 0 for a primitive fifth root
  Cyclotomic sum(5);
  for (int k = 0; k < 5; ++k)
    sum += Cyclotomic::zeta_power(5, k);
  EXPECT_EQ(sum, Cyclotomic(5));
  // z6 = -z3^2 inside Q(zeta_6)
  EXPECT_EQ(Cyclotomic::zeta_power(6, 1), Cyclotomic(6, -1) * Cyclotomic::zeta_power(6, 4));
  EXPECT_TRUE(Cyclotomic(7, Rational(2, 3)).is_rational());
  EXPECT_EQ(Cyclotomic(7, Rational(2, 3)).to_string(), "2/3");
}

TEST(Linalg, RankMatchesOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    RationalMatrix m(5, std::vector<Rational>(6));
    for (auto &row : m)
      for (auto &x : row)
        x = d(rng);
    if (trial % 3 == 0)
      m[4] = m[0]; // force dependence
    EXPECT_EQ(exact_rank(m), oracle::rank(m));
  }
}

TEST(Linalg, PsdExamples) {
  EXPECT_TRUE(psd_pivoted({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}).psd);
  auto bad = psd_pivoted({{Rational(1), Rational(-2)}, {Rational(-2), Rational(1)}});
  EXPECT_TRUE(bad.symmetric);
  EXPECT_FALSE(bad.psd);
  EXPECT_FALSE(psd_pivoted({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}).psd);
  EXPECT_FALSE(psd_pivoted({{Rational(1), Rational(1)}, {Rational(0), Rational(1)}}).symmetric);
}

TEST(Linalg, PsdAgreesWithPrincipalMinorOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-3, 3);
  std::size_t agreed = 0, positive = 0;
  for (const auto &name : small_groups) {
    auto ctx = context(name);
    const auto &g = *ctx.group;
    std::vector<std::vector<Rational>> candidates;
    for (const auto &na : registry_actions(ctx))
      candidates.push_back(element_values(character_from_action(na.action)));
    for (int t = 0; t < 12; ++t) {
      // random class functions, and perturbations of genuine characters
      std::vector<Rational> cls(g.classes().size());
      for (auto &x : cls)
        x = Rational(num(rng), 4);
      cls[0] = 1;
      if (t % 2 == 1 && !candidates.empty()) {
        auto base = candidates[static_cast<std::size_t>(t) % candidates.size()];
        for (std::size_t c = 0; c < cls.size(); ++c)
          cls[c] = base[g.classes()[c].front()] + (c == cls.size() - 1 ? Rational(num(rng), 8) : Rational(0));
      }
      std::vector<Rational> phi(g.order());
      for (ElementIndex e = 0; e < g.order(); ++e)
        phi[e] = cls[g.class_of(e)];
      candidates.push_back(phi);
    }
    for (const auto &phi : candidates) {
      auto m = kernel_matrix(g, phi);
      bool fast = psd_pivoted(m).psd;
      EXPECT_EQ(fast, oracle::psd_by_principal_minors(m)) << name;
      ++agreed;
      positive += fast;
    }
  }
  EXPECT_GT(positive, 20u);
  EXPECT_LT(positive, agreed);
}

TEST(CharacterTable, Examples) {
  auto t1 = character_table(*lattice("C1")->group_ptr());
  EXPECT_EQ(t1.degrees, (std::vector<std::uint64_t>{1}));

  auto t2 = character_table(*lattice("C2")->group_ptr());
  EXPECT_EQ(t2.degrees, (std::vector<std::uint64_t>{1, 1}));
  EXPECT_EQ(t2.rows[0], (std::vector<Cyclotomic>{Cyclotomic(2, 1), Cyclotomic(2, 1)}));
  EXPECT_EQ(t2.rows[1], (std::vector<Cyclotomic>{Cyclotomic(2, 1), Cyclotomic(2, -1)}));

  // classes (id, transpositions, 3-cycles)
  auto t3 = character_table(*lattice("S3")->group_ptr());
  EXPECT_EQ(t3.degrees, (std::vector<std::uint64_t>{1, 1, 2}));
  auto row = [&](int a, int b, int c) {
    const auto n = t3.conductor;
    return std::vector<Cyclotomic>{Cyclotomic(n, a), Cyclotomic(n, b), Cyclotomic(n, c)};
  };
  EXPECT_EQ(t3.rows[0], row(1, 1, 1));
  EXPECT_EQ(t3.rows[1], row(1, -1, 1));
  EXPECT_EQ(t3.rows[2], row(2, 0, -1));
}

TEST(CharacterTable, CyclicGroupHasRootsOfUnity) {
  auto g = lattice("C4")->group_ptr();
  auto t = character_table(*g);
  ASSERT_EQ(t.rows.size(), 4u);
  std::set<std::vector<std::string>> printed;
  auto gen = g->generator_index(0);
  for (const auto &r : t.rows) {
    // each row is a homomorphism to roots of unity, determined by its generator value
    auto v = r[g->class_of(gen)];
    std::vector<std::string> s;
    Cyclotomic power(4, 1);
    ElementIndex x = FiniteGroup::identity();
    for (int k = 0; k < 4; ++k) {
      EXPECT_EQ(r[g->class_of(x)], power);
      s.push_back(power.to_string());
      power = power * v;
      x = g->multiply(x, gen);
    }
    EXPECT_EQ(power, Cyclotomic(4, 1));
    printed.insert(s);
  }
  EXPECT_EQ(printed.size(), 4u);
}

TEST(CharacterTable, ColumnOrthogonality) {
  // sum_i |chi_i(g)|^2 = |C_G(g)|, with the centralizer counted directly
  for (const auto &name : {"S3", "D4", "Q8", "A4", "S4", "D6", "A5"}) {
    auto g = lattice(name)->group_ptr();
    auto t = character_table(*g);
    EXPECT_EQ(t.rows.size(), g->classes().size()) << name;
    for (std::size_t c = 0; c < g->classes().size(); ++c) {
      auto x = g->classes()[c].front();
      unsigned long centralizer = 0;
      for (ElementIndex y = 0; y < g->order(); ++y)
        centralizer += g->multiply(x, y) == g->multiply(y, x);
      Cyclotomic s(t.conductor);
      for (const auto &r : t.rows)
        s += r[c] * r[c].conj();
      EXPECT_EQ(s, Cyclotomic(t.conductor, Rational(centralizer))) << name;
    }
  }
}

TEST(CharacterTable, BoundEnforced) {
  EXPECT_THROW(character_table(*lattice("S5")->group_ptr(), 100), TableBoundExceeded);
  auto s5 = character_table(*lattice("S5")->group_ptr());
  EXPECT_EQ(s5.degrees, (std::vector<std::uint64_t>{1, 1, 4, 4, 5, 5, 6}));
}

TEST(CharacterFromAction, Examples) {
  EXPECT_EQ(from("C2", "free4").values, q({1, 0}));
  EXPECT_EQ(from("S3", "natural").values, q({1, Rational(1, 3), 0}));
  EXPECT_EQ(from("S4", "trivial").values, std::vector<Rational>(5, Rational(1)));
}

TEST(CharacterAxioms, Examples) {
  auto r = check_character_axioms(from("S3", "natural"));
  EXPECT_TRUE(r.psd && r.central && r.normalized);
  EXPECT_FALSE(r.pivots.empty());
  EXPECT_TRUE(check_character_axioms(from("S3", "trivial")).ok());
  auto g = lattice("C2")->group_ptr();
  auto bad = check_character_axioms(Character{g, q({1, -2})});
  EXPECT_FALSE(bad.psd);
  EXPECT_TRUE(bad.central && bad.normalized);
  EXPECT_FALSE(check_character_axioms(Character{g, q({2, 0})}).normalized);
  // not a class function on S3: value on a single transposition
  auto s3 = lattice("S3")->group_ptr();
  std::vector<Rational> f(6, Rational(0));
  f[0] = 1;
  f[element(*s3, {{0, 1}})] = Rational(1, 2);
  EXPECT_FALSE(check_function_axioms(*s3, f).central);
}

TEST(Decompose, Examples) {
  auto reg = decompose_character(from("C2", "free4"));
  ASSERT_EQ(reg.components.size(), 2u);
  EXPECT_EQ(reg.components[0].weight, Rational(1, 2));
  EXPECT_EQ(reg.components[1].weight, Rational(1, 2));
  EXPECT_FALSE(reg.indecomposable);

  auto nat = decompose_character(from("S3", "natural"));
  EXPECT_EQ(nat.components[0].weight, Rational(1, 3));
  EXPECT_EQ(nat.components[1].weight, Rational(0));
  EXPECT_EQ(nat.components[2].weight, Rational(2, 3));

  auto one = decompose_character(from("S3", "trivial"));
  EXPECT_EQ(one.components[0].weight, Rational(1));
  EXPECT_TRUE(one.indecomposable);

  auto g = lattice("C2")->group_ptr();
  EXPECT_THROW(decompose_character(Character{g, q({1, -2})}), NegativeWeight);
}

TEST(MeasureCharacter, Examples) {
  auto lat = lattice("S3");
  auto whole = orbit_uniform(lat, lat->whole());
  EXPECT_EQ(measure_character(whole).values, q({1, 1, 1}));
  auto triv = orbit_uniform(lat, lat->trivial());
  EXPECT_EQ(measure_character(triv).values, q({1, 0, 0}));
  auto order2 = orbit_uniform(lat, subgroup(*lat, {{{0, 1}}}));
  EXPECT_EQ(measure_character(order2).values, q({1, Rational(1, 3), 0}));
  EXPECT_EQ(measure_character(order2), from("S3", "natural"));
}

TEST(CharacterProperties, RegistryActions) {
  for (const auto &name : {"C2", "C2xC2", "S3", "D4", "Q8", "A4", "S4", "D6"}) {
    auto ctx = context(name);
    auto table = character_table(*ctx.group);
    for (const auto &na : registry_actions(ctx)) {
      auto phi = character_from_action(na.action);
      EXPECT_TRUE(check_character_axioms(phi).ok()) << na.name;
      EXPECT_EQ(phi, measure_character(pushforward_measure(na.action, ctx.lattice))) << na.name;
      auto d = decompose_character(phi, table);
      Rational total = 0;
      for (const auto &c : d.components) {
        EXPECT_GE(c.weight, 0);
        total += c.weight;
      }
      EXPECT_EQ(total, 1);
      // a nontrivial transitive action always contains the trivial character strictly
      if (na.action.orbits().size() == 1 && na.action.size() > 1)
        EXPECT_FALSE(d.indecomposable) << na.name;
    }
  }
}

TEST(CharacterProperties, FreeActionsGiveRegularWeights) {
  for (const auto &name : {"C2", "S3", "Q8", "A4"}) {
    auto ctx = context(name);
    auto table = character_table(*ctx.group);
    auto phi = character_from_action(named_action(ctx, "cosets:0"));
    auto d = decompose_character(phi, table);
    for (const auto &c : d.components) {
      auto deg = table.degrees[c.irreducible];
      Rational expected(static_cast<long>(deg * deg), static_cast<long>(ctx.group->order()));
      expected.canonicalize();
      EXPECT_EQ(c.weight, expected) << name;
    }
  }
}
