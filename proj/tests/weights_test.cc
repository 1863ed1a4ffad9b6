#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "graphenergy/graph.hpp"
#include "graphenergy/selftest.hpp"
#include "graphenergy/weights.hpp"

namespace ge = graphenergy;
using ge::WeightFunctionSpec;
using ge::WeightId;

namespace {

std::vector<WeightFunctionSpec> catalog() {
  std::vector<WeightFunctionSpec> out;
  for (WeightId id : ge::kAllWeightIds) {
    if (id == WeightId::general_randic) {
      for (double a : {-2.0, -0.5, -0.3, 0.5, 1.0, 2.5}) out.emplace_back(id, a);
    } else {
      out.emplace_back(id);
    }
  }
  return out;
}

std::optional<double> try_eval(const WeightFunctionSpec& s, std::size_t x, std::size_t y, std::size_t n) {
  try {
    return ge::eval_weight(s, x, y, n);
  } catch (const ge::WeightDomainError&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(EvalWeight, Examples) {
  EXPECT_EQ(ge::eval_weight(WeightFunctionSpec(WeightId::zagreb_m1), 3, 4, 10), 7.0);
  EXPECT_EQ(ge::eval_weight(WeightFunctionSpec(WeightId::randic), 2, 2, 10), 0.5);
  EXPECT_EQ(ge::eval_weight(WeightFunctionSpec(WeightId::abc), 1, 1, 10), 0.0);
  EXPECT_EQ(ge::eval_weight(WeightFunctionSpec(WeightId::lanzhou), 2, 2, 4), 4.0);
  EXPECT_EQ(ge::eval_weight(WeightFunctionSpec(WeightId::mzagreb1), 1, 1, 10), 0.0);
  EXPECT_DOUBLE_EQ(ge::eval_weight(WeightFunctionSpec(WeightId::azi), 2, 2, 10), 8.0);
  EXPECT_DOUBLE_EQ(ge::eval_weight(WeightFunctionSpec(WeightId::harmonic), 1, 3, 10), 0.5);
  EXPECT_DOUBLE_EQ(ge::eval_weight(WeightFunctionSpec(WeightId::ag1), 1, 4, 10), 0.8);
}

TEST(EvalWeight, DomainErrors) {
  EXPECT_THROW(ge::eval_weight(WeightFunctionSpec(WeightId::azi), 1, 1, 10), ge::WeightDomainError);
  EXPECT_THROW(ge::eval_weight(WeightFunctionSpec(WeightId::unit), 0, 1, 10), ge::WeightDomainError);
  EXPECT_THROW(ge::eval_weight(WeightFunctionSpec(WeightId::randic), 3, 0, 10), ge::WeightDomainError);
}

TEST(EvalWeight, SymmetricOnDegreeGrid) {
  for (const auto& s : catalog()) {
    for (std::size_t x = 1; x <= 50; ++x)
      for (std::size_t y = 1; y <= 50; ++y) {
        const auto a = try_eval(s, x, y, 100);
        const auto b = try_eval(s, y, x, 100);
        ASSERT_EQ(a.has_value(), b.has_value()) << ge::describe(s);
        if (a) {
          EXPECT_EQ(*a, *b) << ge::describe(s) << " at " << x << "," << y;
        }
      }
  }
}

TEST(EvalWeight, GeneralRandicSpecializations) {
  const WeightFunctionSpec g1(WeightId::general_randic, 1.0), m2(WeightId::zagreb_m2);
  const WeightFunctionSpec gh(WeightId::general_randic, -0.5), r(WeightId::randic);
  for (std::size_t x = 1; x <= 60; ++x)
    for (std::size_t y = 1; y <= 60; ++y) {
      EXPECT_EQ(ge::eval_weight(g1, x, y, 100), ge::eval_weight(m2, x, y, 100));
      const double want = ge::eval_weight(r, x, y, 100);
      EXPECT_NEAR(ge::eval_weight(gh, x, y, 100), want, 1e-15 * want);
    }
}

TEST(WeightFunctionSpec, AlphaValidation) {
  EXPECT_THROW(WeightFunctionSpec(WeightId::general_randic, 3.5), std::invalid_argument);
  EXPECT_THROW(WeightFunctionSpec(WeightId::general_randic, std::nan("")), std::invalid_argument);
  EXPECT_NO_THROW(WeightFunctionSpec(WeightId::general_randic, ge::kAlphaMin));
  EXPECT_EQ(WeightFunctionSpec(WeightId::randic, 2.0).alpha(), 0.0);
  EXPECT_EQ(ge::describe(WeightFunctionSpec(WeightId::general_randic, 0.5)), "general_randic(0.5)");
  EXPECT_TRUE(WeightFunctionSpec(WeightId::lanzhou).needs_n());
  EXPECT_FALSE(WeightFunctionSpec(WeightId::sci).needs_n());
}

TEST(WeightId, NamesRoundTrip) {
  for (WeightId id : ge::kAllWeightIds) EXPECT_EQ(ge::parse_weight_id(ge::to_string(id)), id);
  EXPECT_FALSE(ge::parse_weight_id("wiener").has_value());
}

TEST(CenterValue, Examples) {
  EXPECT_DOUBLE_EQ(ge::center_value(WeightFunctionSpec(WeightId::randic), 100, 0.5), 0.02);
  EXPECT_DOUBLE_EQ(ge::center_value(WeightFunctionSpec(WeightId::zagreb_m1), 100, 0.5), 100.0);
  EXPECT_NEAR(ge::center_value(WeightFunctionSpec(WeightId::sci), 200, 0.5), 0.0707106781186547524, 1e-16);
  EXPECT_DOUBLE_EQ(ge::center_value(WeightFunctionSpec(WeightId::lanzhou), 100, 0.5), 99.0 * 100.0 - 5000.0);
}

TEST(CenterValue, AgreesWithEvaluationAtIntegerDegree) {
  for (const auto& s : catalog()) {
    const double v = ge::center_value(s, 200, 0.25);
    EXPECT_DOUBLE_EQ(v, ge::eval_weight(s, 50, 50, 200)) << ge::describe(s);
  }
}

TEST(CenterValue, VanishingCenterIsADomainError) {
  EXPECT_THROW(ge::center_value(WeightFunctionSpec(WeightId::abc), 2, 0.5), ge::WeightDomainError);
  EXPECT_THROW(ge::center_value(WeightFunctionSpec(WeightId::mzagreb2), 2, 0.5), ge::WeightDomainError);
  EXPECT_THROW(ge::center_value(WeightFunctionSpec(WeightId::unit), 10, 1.0), std::invalid_argument);
}

TEST(GrowthBound, HoldsAtMeanDegree) {
  for (const auto& s : catalog()) {
    const auto gb = s.growth_bound();
    for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
      for (double p : {0.2, 0.5, 0.8}) {
        const auto d = static_cast<std::size_t>(std::ceil(n * p));
        if (d < 2 || d + 2 > n) continue;
        const double f = ge::eval_weight(s, d, d, n);
        const double bound = gb.c * std::pow(double(n), gb.m);
        ASSERT_TRUE(std::isfinite(f));
        EXPECT_LE(std::abs(f), bound) << ge::describe(s) << " n=" << n << " p=" << p;
        EXPECT_LE(1.0 / std::abs(f), bound) << ge::describe(s) << " n=" << n << " p=" << p;
      }
    }
  }
}

TEST(BuildWeightedAdjacency, Fixtures) {
  const auto p3 = ge::build_weighted_adjacency(ge::Graph(3, {{0, 1}, {1, 2}}), WeightFunctionSpec(WeightId::randic));
  EXPECT_NEAR(p3(0, 1), 0.7071068, 1e-7);
  EXPECT_NEAR(p3(2, 1), 0.7071068, 1e-7);
  EXPECT_EQ(p3(0, 2), 0.0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(p3(i, i), 0.0);

  const auto k4 = ge::build_weighted_adjacency(ge::make_named(ge::NamedGraph::complete, 4), WeightFunctionSpec(WeightId::unit));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(k4(i, j), i == j ? 0.0 : 1.0);

  const auto z = ge::build_weighted_adjacency(ge::make_named(ge::NamedGraph::empty, 5), WeightFunctionSpec(WeightId::sci));
  EXPECT_EQ(z, ge::SymmetricMatrix(5));
}

TEST(BuildWeightedAdjacency, ReportsOffendingEdge) {
  const ge::Graph g(4, {{0, 1}, {2, 3}, {1, 2}});  // path 0-1-2-3; edges 0-1 and 2-3 have degrees (1,2)
  EXPECT_NO_THROW(ge::build_weighted_adjacency(g, WeightFunctionSpec(WeightId::azi)));
  const ge::Graph bad(5, {{1, 3}, {0, 2}, {2, 4}});
  try {
    ge::build_weighted_adjacency(bad, WeightFunctionSpec(WeightId::azi));
    FAIL() << "expected a domain error";
  } catch (const ge::WeightDomainError& e) {
    ASSERT_TRUE(e.edge().has_value());
    EXPECT_EQ(e.edge()->first, 1u);
    EXPECT_EQ(e.edge()->second, 3u);
  }
}

TEST(CenterScale, Examples) {
  const auto c = ge::center_scale(ge::SymmetricMatrix(4), 1.0, 0.3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(c(i, j), i == j ? 0.0 : -0.3);

  const auto k5 = ge::build_weighted_adjacency(ge::make_named(ge::NamedGraph::complete, 5), WeightFunctionSpec(WeightId::unit));
  const auto ck = ge::center_scale(k5, 1.0, 0.4);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_DOUBLE_EQ(ck(i, j), i == j ? 0.0 : 0.6);

  const WeightFunctionSpec r(WeightId::randic);
  const ge::Graph p3(3, {{0, 1}, {1, 2}});
  const double fc = ge::center_value(r, 3, 0.5);
  const auto cp = ge::center_scale(ge::build_weighted_adjacency(p3, r), fc, 0.5);
  EXPECT_DOUBLE_EQ(cp(0, 1), ge::eval_weight(r, 1, 2, 3) / fc - 0.5);
  EXPECT_DOUBLE_EQ(cp(0, 2), -0.5);
  EXPECT_THROW(ge::center_scale(k5, 0.0, 0.5), std::invalid_argument);
}

TEST(CenterScale, InverseRecoversAdjacency) {
  for (const auto& s : catalog()) {
    for (std::uint64_t t = 0; t < 3; ++t) {
      const auto g = ge::sample_gnp(40, 0.5, {314, t});
      const auto a = ge::build_weighted_adjacency(g, s);
      const double fc = ge::center_value(s, 40, 0.5);
      const auto back = ge::uncenter_scale(ge::center_scale(a, fc, 0.5), fc, 0.5);
      double scale = 0.0;
      for (std::size_t i = 0; i < 40; ++i)
        for (std::size_t j = 0; j < 40; ++j) scale = std::max(scale, std::abs(a(i, j)));
      for (std::size_t i = 0; i < 40; ++i)
        for (std::size_t j = 0; j < 40; ++j)
          EXPECT_NEAR(back(i, j), a(i, j), 1e-12 * std::max(scale, std::abs(fc))) << ge::describe(s);
    }
  }
}
