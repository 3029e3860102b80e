#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "basp/error.hpp"
#include "basp/instances.hpp"
#include "basp/io.hpp"

namespace basp {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Examples, Shapes) {
  EXPECT_EQ(ChainExample().node_count(), 4u);
  EXPECT_EQ(ExampleOne().arc_count(), 3u);
  EXPECT_EQ(ExampleOne().Label(2), "f");
}

TEST(Dubins, Straight) { EXPECT_NEAR(DubinsLength({0, 0, 0}, {4, 0, 0}, 1.0), 4.0, 1e-12); }

TEST(Dubins, Semicircle) { EXPECT_NEAR(DubinsLength({0, 0, 0}, {0, 2, kPi}, 1.0), kPi, 1e-9); }

TEST(Dubins, RigidMotionInvariant) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  for (int i = 0; i < 200; ++i) {
    const Pose a{u(rng), u(rng), ang(rng)};
    const Pose b{u(rng), u(rng), ang(rng)};
    const double r = 0.5 + std::abs(u(rng)) / 5.0;
    const double rot = ang(rng), tx = u(rng), ty = u(rng);
    auto move = [&](const Pose& p) {
      return Pose{std::cos(rot) * p.x - std::sin(rot) * p.y + tx, std::sin(rot) * p.x + std::cos(rot) * p.y + ty,
                  p.heading + rot};
    };
    const double len = DubinsLength(a, b, r);
    EXPECT_NEAR(DubinsLength(move(a), move(b), r), len, 1e-9 * std::max(1.0, len));
    EXPECT_GE(len + 1e-9, std::hypot(a.x - b.x, a.y - b.y));
  }
}

TEST(Generator, RadiusRule) {
  // A pure length of 8 with heading change 2 saturates the radius at 4.
  EXPECT_DOUBLE_EQ(std::min(8.0 / 2.0, 4.0), 4.0);
  EXPECT_NEAR(AngularDistance(0.1, 2.0 * kPi - 0.1), 0.2, 1e-12);
  const Pose a{0, 0, 0}, b{10, 0, 0};
  EXPECT_DOUBLE_EQ(ConnectionRadius(a, b, 4.0), 4.0);
}

TEST(Generator, Properties) {
  GeneratorParams p;
  p.n = 60;
  p.seed = 5;
  const RoadGraph g = RandomInstance(p);
  EXPECT_EQ(g.node_count(), 120u);
  for (const Arc& a : g.arcs()) {
    EXPECT_NE(a.from ^ 1u, a.to);
    const double cap = a.bounds.values()[0].mu_plus;
    EXPECT_LE(cap, 2.0 * 4.0 + 1e-12);
    const Pose& x = *g.node(a.from).pose;
    const Pose& y = *g.node(a.to).pose;
    EXPECT_GE(a.length + 1e-9, std::hypot(x.x - y.x, x.y - y.y));
  }
  EXPECT_EQ(SerializeInstance(g), SerializeInstance(RandomInstance(p)));
}

TEST(Generator, CurvatureBounds) {
  GeneratorParams p;
  p.n = 30;
  p.seed = 3;
  p.curvature_bounds = true;
  const RoadGraph g = RandomInstance(p);
  for (const Arc& a : g.arcs()) {
    for (const auto& v : a.bounds.values()) EXPECT_LE(v.mu_plus, 8.0);
  }
}

TEST(Generator, RejectsTinyN) {
  GeneratorParams p;
  p.n = 1;
  EXPECT_THROW(RandomInstance(p), Error);
}

TEST(Corridor, Sparse) {
  const RoadGraph g = CorridorInstance({});
  EXPECT_EQ(g.node_count(), 400u);
  const double mean_degree = 2.0 * static_cast<double>(g.arc_count()) / static_cast<double>(g.node_count());
  EXPECT_LE(mean_degree, 2.5);
}

TEST(Io, RoundTrip) {
  for (const RoadGraph& g : {ChainExample(), ExampleOne(), CorridorInstance({.rows = 2, .cols = 3})}) {
    EXPECT_EQ(ParseInstance(SerializeInstance(g)), g);
  }
  RoadGraph inf;
  inf.AddNode("a");
  inf.AddNode("b");
  inf.AddArc(0, 1, 1.5, ArcBounds::PiecewiseConstant({0.0, 0.5}, {{0.0, kInf, -kInf, kInf}, {0.1, 2.0, -1.0, 3.0}}));
  inf.AddArc(1, 0, 1.0, ArcBounds::Sampled(0.5, {{0.0, 1.0, -1.0, 1.0}, {0.0, 2.0, -1.0, 1.0}, {0.0, 3.0, -1.0, 1.0}}));
  inf.set_query({0, {1}, 0.0, std::nullopt});
  const RoadGraph back = ParseInstance(SerializeInstance(inf));
  EXPECT_EQ(back, inf);
  EXPECT_TRUE(std::isinf(back.arc(0).bounds.values()[0].alpha_plus));
}

std::string ErrorOf(std::string_view text, ErrorCode code) {
  try {
    ParseInstance(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error";
  return {};
}

TEST(Io, Diagnostics) {
  const std::string bad_length = R"({"nodes":[{"id":0},{"id":1}],"arcs":[{"from":0,"to":1,"length":-1,
    "bounds":{"kind":"piecewise_constant","breakpoints":[0],"mu_minus":[0],"mu_plus":[1],"alpha_minus":[-1],"alpha_plus":[1]}}]})";
  EXPECT_NE(ErrorOf(bad_length, ErrorCode::kSchemaError).find("arcs[0].length"), std::string::npos);
  EXPECT_NE(ErrorOf("{\n  \"nodes\": [,]\n}", ErrorCode::kParseError).find("2:"), std::string::npos);
  const std::string bad_sign = R"({"nodes":[{"id":0},{"id":1}],"arcs":[{"from":0,"to":1,"length":1,
    "bounds":{"kind":"piecewise_constant","breakpoints":[0],"mu_minus":[0],"mu_plus":[1],"alpha_minus":[-1],"alpha_plus":[-1]}}]})";
  ErrorOf(bad_sign, ErrorCode::kInvalidBounds);
}

}  // namespace
}  // namespace basp
