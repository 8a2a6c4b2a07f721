#include <nonfree/catalog.hpp>
#include <nonfree/groupoid.hpp>

#include <gtest/gtest.h>

#include "lattice_fixtures.hpp"
#include "oracles.hpp"

using namespace nonfree;
using fixtures::element;
using fixtures::lattice;

namespace {

GroupContext context(const std::string &name) {
  auto lat = lattice(name);
  return GroupContext{name, lat->group_ptr(), lat};
}

MeasuredAction act(const std::string &group, const std::string &kind) {
  return named_action(context(group), kind);
}

RationalMatrix multiply(const RationalMatrix &a, const RationalMatrix &b) {
  const auto n = a.size();
  RationalMatrix c(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j)
          c[i][j] += a[i][k] * b[k][j];
  return c;
}

const std::vector<std::string> registry = {"C2", "C2xC2", "S3", "D4", "Q8", "A4", "S4", "D6"};

} // namespace

TEST(Groupoid, Examples) {
  auto one = build_groupoid(act("C1", "natural"));
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.diagonal().size(), 1u);

  auto s3 = build_groupoid(act("S3", "natural"));
  EXPECT_EQ(s3.size(), 9u);
  for (const auto &m : s3.mass())
    EXPECT_EQ(m, Rational(1, 3));

  auto two = build_groupoid(act("C2", "two-orbit"));
  using P = std::pair<Point, Point>;
  EXPECT_EQ(two.pairs(), (std::vector<P>{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}}));
}

TEST(Groupoid, SupportOnly) {
  auto lat = lattice("S3");
  auto g = lat->group_ptr();
  // mass only on the fixed point of (0 1)
  MeasuredAction a(g, {Permutation::from_cycles(4, {{0, 1}}), Permutation::from_cycles(4, {{0, 1, 2}})},
                   {Rational(0), Rational(0), Rational(0), Rational(1)});
  auto s = build_groupoid(a);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.pairs().front(), (std::pair<Point, Point>{3, 3}));
}

TEST(GroupoidOperators, S3Identities) {
  auto s = build_groupoid(act("S3", "natural"));
  const auto &g = s.action().group();
  PairOperator id{std::vector<std::size_t>(s.size())};
  for (std::size_t p = 0; p < s.size(); ++p)
    id.source[p] = p;
  EXPECT_EQ(left_op(s, FiniteGroup::identity()), id);
  EXPECT_EQ(right_op(s, FiniteGroup::identity()), id);
  std::size_t commuting = 0;
  for (ElementIndex a = 0; a < g.order(); ++a)
    for (ElementIndex b = 0; b < g.order(); ++b) {
      auto la = left_op(s, a).to_matrix();
      auto lb = left_op(s, b).to_matrix();
      auto rb = right_op(s, b).to_matrix();
      EXPECT_EQ(multiply(la, lb), left_op(s, g.multiply(a, b)).to_matrix());
      EXPECT_EQ(multiply(right_op(s, a).to_matrix(), rb), right_op(s, g.multiply(a, b)).to_matrix());
      commuting += multiply(la, rb) == multiply(rb, la);
      EXPECT_EQ(left_op(s, a) * left_op(s, b), left_op(s, g.multiply(a, b)));
    }
  EXPECT_EQ(commuting, 36u);
}

TEST(MatrixCoefficient, Examples) {
  auto s = build_groupoid(act("S3", "natural"));
  EXPECT_EQ(matrix_coefficient(s, FiniteGroup::identity()), 1);
  EXPECT_EQ(matrix_coefficient(s, element(s.action().group(), {{0, 1}})), Rational(1, 3));
  auto free = build_groupoid(act("C2", "free4"));
  EXPECT_EQ(matrix_coefficient(free, 1), 0);
}

TEST(DiagonalSpan, Examples) {
  auto s3 = diagonal_span_report(build_groupoid(act("S3", "natural")));
  EXPECT_EQ(s3.indicator_span_dim, 3u);
  EXPECT_EQ(s3.algebra_span_dim, 3u);
  EXPECT_EQ(s3.diag_dim, 3u);
  EXPECT_TRUE(s3.tnf);

  auto free = diagonal_span_report(build_groupoid(act("C2", "free4")));
  EXPECT_EQ(free.indicator_span_dim, 1u);
  EXPECT_EQ(free.algebra_span_dim, 1u);
  EXPECT_EQ(free.diag_dim, 4u);
  EXPECT_FALSE(free.tnf);

  // <(0 1), (2 3)> on 4 points: X_g in {X, {2,3}, {0,1}, empty}, and
  // 1_X = 1_{0,1} + 1_{2,3}, so both spans are 2-dimensional
  auto k4 = diagonal_span_report(build_groupoid(act("C2xC2", "pairs")));
  EXPECT_EQ(k4.indicator_span_dim, 2u);
  EXPECT_EQ(k4.algebra_span_dim, 2u);
  EXPECT_EQ(k4.diag_dim, 4u);
  EXPECT_FALSE(k4.tnf);
}

TEST(CyclicDimension, Examples) {
  auto s3 = build_groupoid(act("S3", "natural"));
  auto full = cyclic_dimension(s3, true);
  EXPECT_EQ(full.dimension, 9u);
  EXPECT_EQ(full.total, 9u);
  // group only: the span of the six 3x3 permutation matrices
  std::vector<std::vector<Rational>> perms;
  for (ElementIndex e = 0; e < 6; ++e) {
    std::vector<Rational> flat(9, Rational(0));
    for (Point y = 0; y < 3; ++y)
      flat[3 * s3.action().act(e, y) + y] = 1;
    perms.push_back(flat);
  }
  EXPECT_EQ(cyclic_dimension(s3, false).dimension, oracle::rank(perms));
  EXPECT_EQ(cyclic_dimension(s3, false).dimension, 5u);

  auto free = build_groupoid(act("C2", "free4"));
  EXPECT_EQ(free.size(), 8u);
  EXPECT_EQ(cyclic_dimension(free, false).dimension, 2u);
  EXPECT_EQ(cyclic_dimension(free, true).dimension, 8u);
}

TEST(GroupoidProperties, RegistryActions) {
  for (const auto &name : registry) {
    auto ctx = context(name);
    for (const auto &na : registry_actions(ctx)) {
      auto s = build_groupoid(na.action);
      const auto &g = s.action().group();
      auto delta = s.diagonal_indicator();
      for (ElementIndex a = 0; a < g.order(); ++a) {
        auto la = left_op(s, a);
        auto ra = right_op(s, a);
        EXPECT_TRUE(is_unitary(s, la) && is_unitary(s, ra)) << na.name;
        EXPECT_EQ(matrix_coefficient(s, a), na.action.measure_of(fixed_set(na.action, a))) << na.name;
        for (ElementIndex h = 0; h < g.order(); ++h) {
          EXPECT_EQ(la * right_op(s, h), right_op(s, h) * la) << na.name;
          EXPECT_EQ(matrix_coefficient(s, g.conjugate(h, a)), matrix_coefficient(s, a)) << na.name;
        }
        // unitarity as an inner-product identity on a non-symmetric test vector
        PairFunction f(s.size());
        for (std::size_t p = 0; p < s.size(); ++p)
          f[p] = Rational(static_cast<long>(p + 1));
        EXPECT_EQ(s.inner(la.apply(f), la.apply(f)), s.inner(f, f));
      }
      auto rep = diagonal_span_report(s);
      EXPECT_EQ(rep.tnf, classify_action(na.action).totally_nonfree) << na.name;
      EXPECT_LE(rep.indicator_span_dim, rep.algebra_span_dim);
      // the bicommutant shadow: multiplicators make 1_Delta cyclic on each ergodic action
      if (na.action.orbits().size() == 1)
        EXPECT_EQ(cyclic_dimension(s, true).dimension, s.size()) << na.name;
    }
  }
}
