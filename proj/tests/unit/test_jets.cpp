#include <gtest/gtest.h>

#include <random>

#include "lavaurs/jet.hpp"

using namespace lavaurs;

namespace {

void expect_jet(const Jet2& j, const std::vector<std::tuple<int, int, Complex>>& terms, double tol = 1e-15) {
  Jet2 want(j.order());
  for (auto [i, k, c] : terms) want.at(i, k) = c;
  for (int d = 0; d <= j.order(); ++d)
    for (int k = 0; k <= d; ++k) EXPECT_NEAR(std::abs(j(d - k, k) - want(d - k, k)), 0, tol) << d - k << "," << k;
}

Jet2 random_jet(int order, std::mt19937_64& rng, bool vanish_at_0) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Jet2 j(order);
  for (auto& c : j.coeffs()) c = Complex(u(rng), u(rng));
  if (vanish_at_0) j.at(0, 0) = 0;
  return j;
}

}  // namespace

TEST(Jets, Products) {
  const auto z = Jet2::var_z(2), x = Jet2::var_x(2), one = Jet2::constant(2, 1);
  expect_jet((one + z) * (one - z), {{0, 0, 1}, {2, 0, -1}});
  expect_jet(Jet2::var_z(1) * Jet2::var_x(1), {});
  const auto s = one + z + x;
  expect_jet(s * s, {{0, 0, 1}, {1, 0, 2}, {0, 1, 2}, {2, 0, 1}, {1, 1, 2}, {0, 2, 1}});
  EXPECT_THROW(Jet2(2).at(2, 1), Error);
  EXPECT_EQ(Jet2(2)(3, 0), Complex(0));
}

TEST(Jets, Reciprocal) {
  const auto one = Jet2::constant(5, 1);
  const auto a = one + Jet2::var_z(5) + Complex(0.5) * Jet2::var_x(5);
  expect_jet(a * jet_reciprocal(a), {{0, 0, 1}}, 1e-14);
}

TEST(Jets, Composition) {
  const int L = 2;
  const auto z = Jet2::var_z(L), x = Jet2::var_x(L);
  JetMap2 outer{z + x, x};
  JetMap2 inner{z * z, x + z};
  auto c = jet_compose(outer, inner);
  expect_jet(c.z, {{2, 0, 1}, {0, 1, 1}, {1, 0, 1}});
  expect_jet(c.x, {{0, 1, 1}, {1, 0, 1}});

  std::mt19937_64 rng(3);
  JetMap2 m{random_jet(4, rng, true), random_jet(4, rng, true)};
  auto id = JetMap2::identity(4);
  auto l = jet_compose(id, m), r = jet_compose(m, id);
  for (std::size_t i = 0; i < m.z.size(); ++i) {
    EXPECT_NEAR(std::abs(l.z.coeffs()[i] - m.z.coeffs()[i]), 0, 1e-15);
    EXPECT_NEAR(std::abs(r.x.coeffs()[i] - m.x.coeffs()[i]), 0, 1e-15);
  }
}

TEST(Jets, Inversion) {
  const int L = 2;
  const auto z = Jet2::var_z(L), x = Jet2::var_x(L);
  auto inv = jet_invert_tangent_identity({z - x * x, x});
  expect_jet(inv.z, {{1, 0, 1}, {0, 2, 1}});
  expect_jet(inv.x, {{0, 1, 1}});
  auto id = jet_invert_tangent_identity(JetMap2::identity(4));
  expect_jet(id.z, {{1, 0, 1}});

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    JetMap2 m{random_jet(6, rng, true), random_jet(6, rng, true)};
    m.z.at(1, 0) = 1;
    m.z.at(0, 1) = 0;
    m.x.at(1, 0) = 0;
    m.x.at(0, 1) = 1;
    auto round = jet_compose(m, jet_invert_tangent_identity(m));
    auto want = JetMap2::identity(6);
    EXPECT_LE(max_abs_coeff(JetMap2{round.z - want.z, round.x - want.x}), 1e-12);
  }
}

TEST(Jets, Evaluation) {
  EXPECT_EQ(jet_eval(Jet2::constant(3, 1), Complex(0.3), Complex(-2)), Complex(1));
  const auto z = Jet2::var_z(2), x = Jet2::var_x(2);
  EXPECT_NEAR(std::abs(jet_eval(z + x * x, 0.1, 0.2) - Complex(0.14)), 0, 1e-16);

  std::mt19937_64 rng(5);
  auto j = random_jet(6, rng, false);
  const Complex zz(0.3, -0.1), xx(-0.2, 0.25);
  Complex sum = 0;
  for (int d = 0; d <= 6; ++d)
    for (int k = 0; k <= d; ++k) sum += j(d - k, k) * std::pow(zz, d - k) * std::pow(xx, k);
  EXPECT_NEAR(std::abs(jet_eval(j, zz, xx) - sum), 0, 1e-14);
  EXPECT_THROW(jet_eval(j, 0.5, 0, 0.1), Error);
}
