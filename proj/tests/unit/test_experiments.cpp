#include <gtest/gtest.h>

#include <atomic>
#include <random>

#include "lavaurs/experiments.hpp"
#include "lavaurs/maps.hpp"
#include "lavaurs/sampling.hpp"

using namespace lavaurs;

namespace {

std::vector<ResidualPoint> series(const std::vector<std::int64_t>& ns, auto fn) {
  std::vector<ResidualPoint> out;
  for (auto n : ns) out.push_back({n, fn(static_cast<Real>(n)), 0, 0});
  return out;
}

const Complex kZhat0(-0.22498196338461338, 0.12964909125179411);

}  // namespace

TEST(Experiments, FitDecay) {
  const std::vector<std::int64_t> ns{10, 20, 40, 80};
  EXPECT_NEAR(fit_decay(series(ns, [](Real n) { return 1 / n; })), -1, 1e-9);
  EXPECT_NEAR(fit_decay(series(ns, [](Real) { return 0.3; })), 0, 1e-9);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto noisy = series({10, 20, 40, 80, 160, 320}, [&](Real n) { return std::pow(n, -0.5) * (1 + 0.01 * u(rng)); });
  EXPECT_NEAR(fit_decay(noisy), -0.5, 0.05);
  EXPECT_THROW(fit_decay(series({1, 2}, [](Real n) { return n; })), Error);
}

TEST(Experiments, PassRules) {
  ResidualSeries s;
  s.points = series({8, 16, 32}, [](Real n) { return 1 / n; });
  s.rule = PassRule::monotone_and_slope;
  s.finalize();
  EXPECT_TRUE(s.pass);
  s.points = series({8, 16, 32}, [](Real n) { return std::pow(n, -0.1); });
  s.finalize();
  EXPECT_FALSE(s.pass);
  s.rule = PassRule::zero_violations;
  s.points = {{1, 0, 0, 0}, {2, 0, 0, 0}};
  s.finalize();
  EXPECT_TRUE(s.pass);
  s.points[1].residual = 1;
  s.finalize();
  EXPECT_FALSE(s.pass);
}

TEST(Experiments, ComposeChain) {
  MapParams p;
  p.delta = 0.1;
  const CPoint2 seed{-0.05, 0.01};
  const auto flat = make_schedule(p, {}, {seed}, {{0, 0}}, 10);
  auto same = compose_F_chain(flat, p, 3, 3, seed);
  EXPECT_EQ(same.c0, seed.c0);
  EXPECT_EQ(same.c1, seed.c1);
  CPoint2 plain = seed;
  for (int i = 0; i < 5; ++i) plain = F(plain, p);
  EXPECT_LE(norm(compose_F_chain(flat, p, 2, 7, seed) - plain), 1e-16);

  const auto sched = make_schedule(p, {}, {seed}, {{0.05, 0}}, 10);
  CPoint2 manual = seed;
  for (int m = 4; m < 7; ++m) manual = F_w(manual, sched.w(m), p);
  EXPECT_LE(norm(compose_F_chain(sched, p, 4, 7, seed) - manual), 1e-16);
  EXPECT_NEAR(std::abs(sched.w(1) - Complex(0.0475)), 0, 1e-17);
  EXPECT_THROW(sched.w(11), Error);
  EXPECT_THROW(make_schedule(p, {}, {{0.5, 0}}, {{0.05, 0}}, 10), Error);
}

TEST(Experiments, FourDimensionalDegeneration) {
  // with delta = 0 the z-track of H is the skew product P
  MapParams p;
  CPoint4 q{Complex(-0.2, 0.1), 0.03, 0.01, 0.01};
  CPoint2 zw{q.z, q.w};
  for (int i = 0; i < 40; ++i) {
    q = H(q, p);
    zw = P(zw, p);
    ASSERT_LE(std::abs(q.z - zw.c0), 1e-6);
    ASSERT_LE(std::abs(q.w - zw.c1), 1e-6);
  }
}

TEST(Experiments, PropADimensionsAgreeAtDeltaZero) {
  auto cfg = default_config("prop_a");
  cfg.params.delta = 0;
  cfg.n_list = {5, 10};
  const auto one = run_prop_A(cfg, kZhat0);
  cfg.dims = 4;
  const auto four = run_prop_A(cfg, kZhat0);
  ASSERT_EQ(one.points.size(), four.points.size());
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    EXPECT_TRUE(std::isfinite(one.points[i].residual));
    // the 4D residual also carries x, w, y; the z column is what degenerates
    EXPECT_NEAR(one.points[i].aux1, four.points[i].aux1, 1e-6);
  }
}

TEST(Experiments, Prop2Smoke) {
  auto cfg = default_config("prop2");
  cfg.n_list = {10, 20, 40};
  const auto s = run_prop2(cfg);
  ASSERT_EQ(s.points.size(), 3u);
  for (const auto& pt : s.points) EXPECT_TRUE(std::isfinite(pt.residual));
  EXPECT_TRUE(s.pass);
}

TEST(Experiments, Dispatcher) {
  EXPECT_EQ(experiment_names().size(), 8u);
  EXPECT_THROW(default_config("nope"), Error);
  EXPECT_THROW(run_experiment("nope", ExperimentConfig{}), Error);
}

TEST(Sampling, SobolIsDeterministic) {
  const auto a = sobol_points(16, 3), b = sobol_points(16, 3);
  EXPECT_EQ(a, b);
  for (const auto& pt : a)
    for (Real v : pt) {
      EXPECT_GE(v, 0);
      EXPECT_LT(v, 1);
    }
  const auto skipped = sobol_points(4, 3, 2);
  EXPECT_EQ(skipped[0], a[2]);
  EXPECT_LE(std::abs(disk_point(0.5, 0.1, 0.3, 0.7) - Complex(0.5)), 0.1);
}

TEST(Sampling, ParallelFor) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  set_thread_limit(1);
  std::atomic<int> count{0};
  parallel_for(100, [&](std::size_t) { ++count; });
  set_thread_limit(0);
  EXPECT_EQ(count.load(), 100);
}
