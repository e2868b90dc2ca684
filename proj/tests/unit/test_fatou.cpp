#include <gtest/gtest.h>

#include "lavaurs/fatou.hpp"
#include "lavaurs/maps.hpp"

using namespace lavaurs;

// Reference values come from tests/oracles/oracles.py (mpmath, brute-force iteration).

namespace {

MapParams params(Complex delta = 0) {
  MapParams p;
  p.delta = delta;
  return p;
}

const Complex kZhat0(-0.22498196338461338, 0.12964909125179411);

}  // namespace

TEST(Fatou, LocalCoordinates) {
  const Complex b = 0.05;
  for (Real n : {3.0, 50.0, 1e4}) {
    EXPECT_NEAR(std::abs(omega_in(-1 / n, b) - (n - b * std::log(n))), 0, 1e-12 * n);
    EXPECT_NEAR(std::abs(omega_out(1 / n, b) - (-n - b * std::log(n))), 0, 1e-12 * n);
  }
  EXPECT_NEAR(std::abs(omega_in(Complex(-0.05, 0.01), b) - Complex(19.08196313492036, 3.8362840681613513)), 0, 1e-12);
  EXPECT_NEAR(std::abs(omega_out(omega_out_inverse(-50, b), b) - Complex(-50)), 0, 1e-10);
  // closed form, up to the rounding of the complex division
  EXPECT_LE(std::abs(omega_out_inverse(Complex(-80, 3), 0) + Real(1) / Complex(-80, 3)), 1e-17);
  EXPECT_NEAR(std::abs(omega_out_inverse(Complex(-100, 5), b) - Complex(0.00999798838825962, 0.0005008021035632545)), 0,
              1e-15);
  EXPECT_THROW(omega_out_inverse(5, b), Error);
}

TEST(Fatou, SeriesCoefficients) {
  const Fatou1D fc(params());
  EXPECT_NEAR(std::abs(fc.series().b() - Complex(0.05)), 0, 1e-15);
  EXPECT_NEAR(std::abs(fc.series().c()[1] - Complex(-0.8775)), 0, 1e-14);
}

TEST(Fatou, AttractingCoordinate) {
  const Fatou1D fc(params());
  const MapParams& p = fc.params();
  const auto v = fc.phi(-0.05);
  EXPECT_NEAR(std::abs(v.value - Complex(19.80403728772068)), 0, 1e-9);
  for (Complex z : {Complex(-0.05), Complex(-0.3, 0.2), Complex(-0.1, -0.05)})
    EXPECT_LE(std::abs(fc.phi(f(z, p)).value - fc.phi(z).value - Real(1)), 1e-8) << z;
  // tighter cap changes the value by less than the stopping tolerance
  MapParams tight = p;
  tight.tol_limit = p.tol_limit / 100;
  EXPECT_LE(std::abs(Fatou1D(tight).phi(-0.05).value - v.value), p.tol_limit);
  try {
    fc.phi(0.5);
    FAIL() << "expected basin";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::basin);
  }
}

TEST(Fatou, RepellingParametrization) {
  const Fatou1D fc(params());
  const MapParams& p = fc.params();
  EXPECT_NEAR(std::abs(fc.psi(0).value - Complex(1.6463503778848485)), 0, 1e-9);
  const Complex Z(0.3, 0.2);
  EXPECT_LE(std::abs(f(fc.psi(Z).value, p) - fc.psi(Z + Real(1)).value), 1e-8);
  EXPECT_LE(std::abs(fc.psi(-1e4).value * Real(-1e4) + Real(1)), 1e-3);
}

TEST(Fatou, LavaursMap) {
  const Fatou1D fc(params());
  const MapParams& p = fc.params();
  const Complex z(-0.3, 0.2);
  const auto l = fc.lavaurs(z);
  EXPECT_NEAR(std::abs(l.value - Complex(-0.22560189506523207, 0.19932035292913944)), 0, 1e-8);
  EXPECT_LE(std::abs(l.value - fc.psi(fc.phi(z).value).value), 1e-14);
  EXPECT_LE(std::abs(fc.lavaurs(f(z, p)).value - f(l.value, p)), 1e-6);
}

TEST(Fatou, LavaursFixedPoint) {
  const Fatou1D fc(params());
  const auto fp = find_lavaurs_fixed_point(fc, Complex(-0.23, 0.13));
  EXPECT_NEAR(std::abs(fp.z - kZhat0), 0, 1e-9);
  EXPECT_LE(std::abs(fc.lavaurs(fp.z).value - fp.z), 1e-8);
  EXPECT_TRUE(fp.attracting());
}

TEST(Fatou, DegenerateTwoDimensional) {
  const Fatou1D f1(params());
  const Fatou2D f2(compute_normal_form(params(0), 8, 3));
  for (CPoint2 q : {CPoint2{-0.05, 0.01}, CPoint2{Complex(-0.3, 0.2), Complex(0.02, -0.01)}, CPoint2{-0.1, 0}})
    EXPECT_LE(std::abs(f2.Phi_F(q).value - f1.phi(q.c0).value), 1e-8);
  for (Complex Z : {Complex(0), Complex(0.3, 0.2), Complex(-1, 0.5)})
    EXPECT_LE(std::abs(f2.Psi_F(Z).value.c0 - f1.psi(Z).value), 1e-8);
  const Complex z(-0.3, 0.2);
  EXPECT_LE(std::abs(f2.lavaurs({z, 0.01}).value.c0 - f1.lavaurs(z).value), 1e-6);
}

TEST(Fatou, TwoDimensionalAbel) {
  const Fatou2D fc(compute_normal_form(params(0.01), 8, 3));
  const MapParams& p = fc.normal_form().params;
  int checked = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j) {
      const CPoint2 q{Complex(-0.3 + 0.05 * i, -0.1 + 0.07 * j), Complex(0.01 * j, -0.005 * i)};
      EXPECT_LE(std::abs(fc.Phi_F(F(q, p)).value - fc.Phi_F(q).value - Real(1)), 1e-6);
      ++checked;
    }
  EXPECT_EQ(checked, 20);
  for (Complex Z : {Complex(0.3, 0.2), Complex(-1, 0.5), Complex(0)})
    EXPECT_LE(norm(F(fc.Psi_F(Z).value, p) - fc.Psi_F(Z + Real(1)).value), 1e-6);
  // local coordinate inside the trust region
  const Real r = fc.normal_form().trust_radius / 4;
  const CPoint2 q{Complex(-r, 0.3 * r), Complex(0.2 * r)};
  const auto tq = jet_eval(fc.normal_form().F_tilde, q);
  EXPECT_LE(std::abs(fc.Phi_Ftilde(tq).value - fc.Phi_Ftilde(q).value - Real(1)), 1e-6);
}

TEST(Fatou, ContinuationInDelta) {
  const auto ladder = continue_lavaurs_fixed_point(params(), kZhat0, {1e-4, 1e-3, 1e-2});
  ASSERT_EQ(ladder.size(), 3u);
  Real prev = 0;
  for (const auto& fp : ladder) {
    EXPECT_LE(fp.residual, 1e-6);
    EXPECT_TRUE(fp.attracting());
    const Real d = std::abs(fp.p.c0 - kZhat0);
    EXPECT_GT(d, prev);
    prev = d;
  }
  EXPECT_LT(std::abs(ladder[0].p.c0 - kZhat0), 1e-4);
}
