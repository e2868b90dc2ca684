#include "lavaurs/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lavaurs/maps.hpp"

namespace lavaurs {

namespace {

// Terms c_{k,j} z^k x^j of J with fixed k, as an x-only jet.
Jet2 z_slice(const Jet2& J, int k) {
  Jet2 out(J.order());
  for (int j = 0; j + k <= J.order(); ++j) out.at(0, j) = J(k, j);
  return out;
}

// x-only jet a composed with x-only jet b (b(0) = 0).
Jet2 compose_x(const Jet2& a, const Jet2& b) {
  return jet_compose(a, JetMap2{Jet2(a.order()), b});
}

Real max_dev_from(const Jet2& j, Complex constant) {
  Real m = std::abs(j(0, 0) - constant);
  for (std::size_t k = 1; k < j.size(); ++k) m = std::max(m, std::abs(j.coeffs()[k]));
  return m;
}

JetMap2 conjugate(const JetMap2& V, const JetMap2& M, const JetMap2& V_inv) {
  return jet_compose(V, jet_compose(M, V_inv));
}

}  // namespace

std::vector<Complex> NormalFormData::z_coeffs() const {
  std::vector<Complex> a(order + 1);
  for (int k = 0; k <= order; ++k) a[k] = F_tilde.z(k, 0);
  return a;
}

JetMap2 F_jet(const MapParams& p, int order) {
  const Jet2 z = Jet2::var_z(order);
  const Jet2 x = Jet2::var_x(order);
  const Jet2 s = z + jet_scale(x, p.delta);
  const Jet2 s2 = s * s;
  const Jet2 q = s2 + jet_scale(s2 * s, p.a);
  return {z + q, jet_scale(x, p.delta) - q};
}

Jet2 compute_stable_manifold(const MapParams& p, int order) {
  validate(p);
  for (int k = 2; k <= order; ++k)
    if (std::abs(Real(1) - std::pow(p.delta, k)) < 1e-12)
      throw Error(ErrorKind::invalid_argument, "resonance 1 = delta^" + std::to_string(k));

  const JetMap2 Fj = F_jet(p, order);
  Jet2 S(order);
  for (int k = 2; k <= order; ++k) {
    const JetMap2 graph{S, Jet2::var_x(order)};
    const JetMap2 image = jet_compose(Fj, graph);
    const Jet2 residual = image.z - compose_x(S, image.x);
    S.at(0, k) = -residual(0, k) / (Real(1) - std::pow(p.delta, k));
  }
  return S;
}

NormalFormData compute_normal_form(const MapParams& p, int order, int l, Real tail_tol, int cap) {
  validate(p);
  if (order < 3) throw Error(ErrorKind::invalid_argument, "normal form needs order >= 3");
  if (l < 3 || l > order) throw Error(ErrorKind::invalid_argument, "normal form needs 3 <= l <= order");
  const int L = order;
  const Jet2 zvar = Jet2::var_z(L);
  const Jet2 xvar = Jet2::var_x(L);

  NormalFormData nf;
  nf.params = p;
  nf.order = L;
  nf.l = l;

  // Step 1: straighten the strong stable manifold onto {z = 0}.
  nf.stable_manifold = compute_stable_manifold(p, L);
  const JetMap2 U1{zvar - nf.stable_manifold, xvar};
  const JetMap2 U1_inv{zvar + nf.stable_manifold, xvar};
  JetMap2 Fc = conjugate(U1, F_jet(p, L), U1_inv);
  JetMap2 U = U1;

  // Step 2: make the coefficient of z equal to 1 via P(x) = prod a1(b0^n(x)).
  const Jet2 b0 = z_slice(Fc.x, 0);
  {
    const Jet2 a1 = z_slice(Fc.z, 1);
    Jet2 prod = Jet2::constant(L, 1);
    Jet2 iterate = xvar;
    int n = 0;
    for (;; ++n) {
      if (n >= cap) throw Error(ErrorKind::stagnation, "step-2 product did not converge; delta too close to 1");
      const Jet2 factor = compose_x(a1, iterate);
      prod = prod * factor;
      if (max_dev_from(factor, 1) < tail_tol) break;
      iterate = compose_x(b0, iterate);
    }
    nf.product_terms = std::max(nf.product_terms, n + 1);
    const JetMap2 U2{prod * zvar, xvar};
    const JetMap2 U2_inv{jet_reciprocal(prod) * zvar, xvar};
    Fc = conjugate(U2, Fc, U2_inv);
    U = jet_compose(U2, U);
  }

  // Step 3: make a_j(x) constant for j = 2..l via P_j(x) = sum (a_j(0) - a_j(b0^n(x))).
  for (int j = 2; j <= l; ++j) {
    const Jet2 aj = z_slice(Fc.z, j);
    const Complex aj0 = aj(0, 0);
    Jet2 sum(L);
    Jet2 iterate = xvar;
    int n = 0;
    for (;; ++n) {
      if (n >= cap) throw Error(ErrorKind::stagnation, "step-3 sum did not converge; delta too close to 1");
      Jet2 term = jet_scale(compose_x(aj, iterate), Real(-1));
      term.at(0, 0) += aj0;
      sum = sum + term;
      if (max_abs_coeff(term) < tail_tol) break;
      iterate = compose_x(b0, iterate);
    }
    nf.product_terms = std::max(nf.product_terms, n + 1);
    Jet2 zj = Jet2::constant(L, 1);
    for (int k = 0; k < j; ++k) zj = zj * zvar;
    const JetMap2 U3{zvar - sum * zj, xvar};
    const JetMap2 U3_inv = jet_invert_tangent_identity(U3);
    Fc = conjugate(U3, Fc, U3_inv);
    U = jet_compose(U3, U);
  }

  nf.U = U;
  nf.U_inv = jet_invert_tangent_identity(U);
  nf.F_tilde = conjugate(nf.U, F_jet(p, L), nf.U_inv);
  nf.a3 = nf.F_tilde.z(3, 0);
  nf.b = Real(1) - nf.a3;
  nf.trust_radius = p.trust_radius > 0 ? p.trust_radius : validate_trust_radius(nf.F_tilde);
  return nf;
}

Real validate_trust_radius(const JetMap2& F_tilde, Real r0, Real tol) {
  const int L = F_tilde.order();
  const JetMap2 low{F_tilde.z.truncated(L - 2), F_tilde.x.truncated(L - 2)};
  constexpr int kAngles = 12;
  Real r = r0;
  for (int attempt = 0; attempt < 40; ++attempt, r /= 2) {
    Real worst = 0;
    for (int i = 0; i < kAngles; ++i) {
      for (int k = 0; k < kAngles; ++k) {
        const CPoint2 q{std::polar(r, 2 * kPi * i / kAngles), std::polar(r, 2 * kPi * k / kAngles)};
        worst = std::max(worst, norm(jet_eval(F_tilde, q) - jet_eval(low, q)));
      }
    }
    if (worst < tol) return r;
  }
  return r;
}

CPoint2 U_eval(const NormalFormData& nf, const CPoint2& p) { return jet_eval(nf.U, p, nf.trust_radius); }

CPoint2 U_inv_eval(const NormalFormData& nf, const CPoint2& p) {
  return jet_eval(nf.U_inv, p, nf.trust_radius);
}

CPoint2 F_tilde_w_eval(const NormalFormData& nf, const CPoint2& p, Complex w) {
  require_finite(p, "F_tilde_w_eval");
  return U_eval(nf, F_w(U_inv_eval(nf, p), w, nf.params));
}

}  // namespace lavaurs
