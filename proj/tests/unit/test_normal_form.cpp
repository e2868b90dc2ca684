#include <gtest/gtest.h>

#include "lavaurs/maps.hpp"
#include "lavaurs/normal_form.hpp"

using namespace lavaurs;

namespace {

MapParams params(Complex delta) {
  MapParams p;
  p.delta = delta;
  return p;
}

Real conjugacy_defect(const NormalFormData& nf) {
  const auto lhs = jet_compose(nf.U, F_jet(nf.params, nf.order));
  const auto rhs = jet_compose(nf.F_tilde, nf.U);
  return max_abs_coeff(JetMap2{lhs.z - rhs.z, lhs.x - rhs.x});
}

}  // namespace

TEST(NormalForm, ConjugacyAtDeltaPointOne) {
  const auto nf = compute_normal_form(params(0.1), 8, 3);
  EXPECT_LE(conjugacy_defect(nf), 1e-10);
  for (int j = 1; j <= 8; ++j) EXPECT_LE(std::abs(nf.F_tilde.z(0, j)), 1e-12) << "x^" << j;
  EXPECT_NEAR(std::abs(nf.F_tilde.z(2, 0) - Complex(1)), 0, 1e-12);
  EXPECT_NEAR(std::abs(nf.F_tilde.z(1, 0) - Complex(1)), 0, 1e-12);
  EXPECT_LE(std::abs(nf.F_tilde.x(0, 0)), 1e-15);
  EXPECT_NEAR(std::abs(nf.F_tilde.x(0, 1) - Complex(0.1)), 0, 1e-12);
}

TEST(NormalForm, ShapeOfU) {
  const auto nf = compute_normal_form(params(Complex(0.1, 0.05)), 8, 3);
  // z + O(x^2, zx); x-component is x
  EXPECT_NEAR(std::abs(nf.U.z(1, 0) - Complex(1)), 0, 1e-15);
  EXPECT_LE(std::abs(nf.U.z(0, 1)), 1e-15);
  for (int i = 2; i <= 8; ++i) EXPECT_LE(std::abs(nf.U.z(i, 0)), 1e-15) << "z^" << i;
  auto want = JetMap2::identity(8);
  EXPECT_EQ(max_abs_coeff(nf.U.x - want.x), 0);
}

TEST(NormalForm, DegeneratesAtDeltaZero) {
  const auto nf = compute_normal_form(params(0), 8, 3);
  const auto id = JetMap2::identity(8);
  EXPECT_EQ(max_abs_coeff(JetMap2{nf.U.z - id.z, nf.U.x - id.x}), 0);
  EXPECT_EQ(nf.a3, Complex(0.95));
  EXPECT_NEAR(std::abs(nf.b - Complex(0.05)), 0, 1e-15);
  EXPECT_NEAR(std::abs(nf.F_tilde.z(3, 0) - Complex(0.95)), 0, 1e-15);
  EXPECT_EQ(max_abs_coeff(nf.stable_manifold), 0);
}

TEST(NormalForm, QuadraticCoefficientIsOne) {
  for (Complex d : {Complex(0), Complex(0.05), Complex(0.1, 0.05)}) {
    const auto nf = compute_normal_form(params(d), 8, 3);
    EXPECT_NEAR(std::abs(nf.F_tilde.z(2, 0) - Complex(1)), 0, 1e-12) << d;
    EXPECT_LE(conjugacy_defect(nf), 1e-10) << d;
  }
}

TEST(NormalForm, StableManifold) {
  const auto p = params(0.1);
  const Jet2 S = compute_stable_manifold(p, 8);
  // degree-2 coefficient from s2 + delta^2 = s2 delta^2
  EXPECT_NEAR(std::abs(S(0, 2) - Complex(-0.010101010101010104)), 0, 1e-15);
  const JetMap2 graph{S, Jet2::var_x(8)};
  const auto image = jet_compose(F_jet(p, 8), graph);
  const JetMap2 along{Jet2::var_z(8), image.x};
  EXPECT_LE(max_abs_coeff(image.z - jet_compose(S, along)), 1e-12);
}

TEST(NormalForm, PerturbedMapPointwise) {
  const auto nf = compute_normal_form(params(0.1), 8, 3);
  auto o = F_tilde_w_eval(nf, {0, 0}, 0);
  EXPECT_LE(norm(o), 1e-15);
  const CPoint2 q{0.01, 0.005};
  const auto jet = jet_eval(nf.F_tilde, q);
  EXPECT_LE(norm(F_tilde_w_eval(nf, q, 0) - jet), 1e-9);
  // z-part minus (F_tilde_z + pi^2 w / 4) is O(w): ratio to |w| settles
  std::vector<Real> ratio;
  for (Real w : {1e-3, 1e-4, 1e-5}) {
    const auto v = F_tilde_w_eval(nf, q, w);
    ratio.push_back(std::abs(v.c0 - jet.c0 - kPi2Over4 * w) / w);
  }
  EXPECT_LT(ratio[2], 1.0);
  EXPECT_NEAR(ratio[2], ratio[1], 0.05 * ratio[1] + 1e-6);
}

TEST(NormalForm, TrustRadius) {
  const auto nf = compute_normal_form(params(0.1), 8, 3);
  EXPECT_GT(nf.trust_radius, 0);
  EXPECT_LE(nf.trust_radius, 0.1);
  EXPECT_THROW(U_eval(nf, {Complex(2 * nf.trust_radius), 0}), Error);
}
