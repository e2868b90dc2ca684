#include <gtest/gtest.h>

#include <random>

#include "lavaurs/maps.hpp"

using namespace lavaurs;

namespace {

MapParams params(Complex delta) {
  MapParams p;
  p.delta = delta;
  return p;
}

Complex unit_disk(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    Complex c(u(rng), u(rng));
    if (std::abs(c) < 1) return c;
  }
}

}  // namespace

TEST(Maps, ScalarPolynomials) {
  MapParams p = params(0.1);
  EXPECT_EQ(q1(0, p), Complex(0));
  MapParams one = p;
  one.a = 1;
  EXPECT_NEAR(std::abs(q1(1, one) - Complex(2)), 0, 1e-15);
  EXPECT_NEAR(std::abs(q1(0.1, p) - Complex(0.010950000000000001)), 0, 1e-17);
  EXPECT_EQ(f(0, p), Complex(0));
  EXPECT_NEAR(std::abs(f_w(0, 4 / (kPi * kPi), p) - Complex(1)), 0, 1e-15);
  EXPECT_NEAR(std::abs(g(0.05, p) - Complex(0.0475)), 0, 1e-16);
}

TEST(Maps, TwoDimensionalValues) {
  MapParams p = params(0.1);
  auto o = F({0, 0}, p);
  EXPECT_EQ(o.c0, Complex(0));
  EXPECT_EQ(o.c1, Complex(0));
  auto z0 = F({Complex(0.3, 0.1), 0}, p);
  EXPECT_NEAR(std::abs(z0.c0 - f(Complex(0.3, 0.1), p)), 0, 1e-16);
  EXPECT_NEAR(std::abs(z0.c1 + q1(Complex(0.3, 0.1), p)), 0, 1e-16);

  auto v = F({0.1, 0.2}, p);
  EXPECT_NEAR(std::abs(v.c0 - Complex(0.11604160000000001)), 0, 1e-16);
  EXPECT_NEAR(std::abs(v.c1 - Complex(0.003958400000000001)), 0, 1e-16);

  auto vw = F_w({0.1, 0.2}, 0.01, p);
  EXPECT_NEAR(std::abs(vw.c0 - v.c0 - Complex(0.024674011002723394)), 0, 1e-16);
  EXPECT_EQ(vw.c1, v.c1);
  auto ow = F_w({0, 0}, 0.01, p);
  EXPECT_NEAR(std::abs(ow.c0 - kPi2Over4 * Real(0.01)), 0, 1e-17);
  auto f0 = F_w({0.1, 0.2}, 0, p);
  EXPECT_EQ(f0.c0, v.c0);
  EXPECT_EQ(f0.c1, v.c1);
}

TEST(Maps, FourDimensional) {
  MapParams p = params(0.1);
  auto o = H({}, p);
  EXPECT_EQ(norm(o), 0);
  auto plane = H({0.1, 0.2, 0, 0}, p);
  EXPECT_EQ(plane.w, Complex(0));
  EXPECT_EQ(plane.y, Complex(0));
  auto h = H({0.1, 0.2, 0.01, 0.02}, p);
  EXPECT_NEAR(std::abs(h.z - Complex(0.1407156110027234)), 0, 1e-15);
  EXPECT_NEAR(std::abs(h.x - Complex(0.003958400000000001)), 0, 1e-16);
  EXPECT_NEAR(std::abs(h.w - Complex(0.009856)), 0, 1e-17);
  EXPECT_NEAR(std::abs(h.y - Complex(0.002144)), 0, 1e-17);
  auto pz = P({0.1, 0.01}, p);
  EXPECT_NEAR(std::abs(pz.c0 - f_w(0.1, 0.01, p)), 0, 1e-17);
  EXPECT_NEAR(std::abs(pz.c1 - g(0.01, p)), 0, 1e-17);
}

TEST(Maps, InverseRoundTrips) {
  MapParams p = params(Complex(0.1, 0.02));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    CPoint2 a{unit_disk(rng), unit_disk(rng)};
    EXPECT_LE(norm(F_inv(F(a, p), p) - a), 1e-12);
    EXPECT_LE(norm(G_inv(G(a, p), p) - a), 1e-12);
    CPoint4 q{unit_disk(rng), unit_disk(rng), unit_disk(rng), unit_disk(rng)};
    EXPECT_LE(norm(H_inv(H(q, p), p) - q), 1e-12);
  }
  auto o = F_inv({0, 0}, p);
  EXPECT_EQ(norm(o), 0);
}

TEST(Maps, InverseNeedsNonzeroDelta) {
  MapParams p = params(0);
  try {
    F_inv({0.1, 0.1}, p);
    FAIL() << "expected non_invertible";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_invertible);
  }
}

TEST(Maps, ConstantJacobian) {
  MapParams p = params(0.1);
  Map2 m = [&](const CPoint2& q) { return F(q, p); };
  const Complex d0 = jacobian_det_fd(m, {0, 0}, 1e-4);
  EXPECT_NEAR(std::abs(d0 - p.delta), 0, 1e-6);
  EXPECT_NEAR(std::abs(jacobian_det_fd(m, {0.3, 0.1}, 1e-4) - d0), 0, 1e-8);
  Map4 h = [&](const CPoint4& q) { return H(q, p); };
  EXPECT_NEAR(std::abs(jacobian_det_fd(h, {0.2, -0.1, 0.05, 0.3}, 1e-4) - p.delta * p.delta), 0, 1e-6);
}

TEST(Maps, BasinProbe) {
  MapParams p = params(0.01);
  Map2 m = [&](const CPoint2& q) { return F(q, p); };
  auto origin = basin_probe(m, {0, 0}, 1000, p.bail_radius, p.R, p.eta);
  EXPECT_TRUE(origin.converges);
  EXPECT_EQ(origin.iters, 0);
  auto far = basin_probe(m, {Complex(2 * p.bail_radius), 0}, 1000, p.bail_radius, p.R, p.eta);
  EXPECT_FALSE(far.converges);
  EXPECT_LE(far.iters, 1);
  auto near = basin_probe(m, {-0.05, 0}, 100000, p.bail_radius, p.R, p.eta);
  EXPECT_TRUE(near.converges);
}

TEST(Maps, Validation) {
  MapParams p;
  p.alpha = 0.7;
  EXPECT_THROW(validate(p), Error);
  p.alpha = 0.6;
  p.delta = 0.5;
  EXPECT_NO_THROW(validate(p));
  EXPECT_THROW(validate_for_4d(p), Error);
}
