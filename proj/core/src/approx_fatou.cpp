#include "lavaurs/approx_fatou.hpp"

#include <cmath>

namespace lavaurs {

WContext make_wcontext(Complex w, const MapParams& p, Complex a_used) {
  return make_wcontext(w, p, a_used, p.zeta);
}

WContext make_wcontext(Complex w, const MapParams& p, Complex a_used, ZetaChoice zeta) {
  require_finite(w, "make_wcontext");
  if (w == Complex(0) || w.real() <= 0)
    throw Error(ErrorKind::invalid_argument, "w must lie in the right half plane");
  WContext c;
  c.w = w;
  c.sqrt_w = std::sqrt(w);
  c.a_used = a_used;
  c.alpha = p.alpha;
  c.r_w = std::pow(std::abs(w), (1 - p.alpha) / 2);
  c.R_w = std::pow(std::abs(w), -p.alpha / 2);

  const Complex lead = kI * (kPi / 2) * c.sqrt_w;
  if (zeta == ZetaChoice::invariant_curves) {
    const Complex second = (a_used * kPi * kPi / Real(8) - Real(0.25)) * w;
    c.zeta_plus = lead + second;
    c.zeta_minus = -lead + second;
  } else {
    Complex roots[2];
    for (int s = 0; s < 2; ++s) {
      Complex z = s == 0 ? lead : -lead;
      bool ok = false;
      for (int it = 0; it < 50; ++it) {
        const Complex v = z * z + a_used * z * z * z + kPi2Over4 * w;
        const Complex d = Real(2) * z + Real(3) * a_used * z * z;
        const Complex step = v / d;
        z -= step;
        if (std::abs(step) <= 1e-15 * std::abs(z)) {
          ok = true;
          break;
        }
      }
      if (!ok || !is_finite(z)) throw Error(ErrorKind::newton, "fixed point of f_w did not converge");
      roots[s] = z;
    }
    c.zeta_plus = roots[0];
    c.zeta_minus = roots[1];
  }
  if (std::abs(c.zeta_plus - c.zeta_minus) < 1e-3 * std::abs(c.sqrt_w))
    throw Error(ErrorKind::invalid_argument, "zeta+ and zeta- collide");
  return c;
}

Complex psi_w(Complex Z, const WContext& c) {
  require_finite(Z, "psi_w");
  const Complex e = std::exp(Real(2) * kPi * kI * Z);
  if (std::abs(e - Real(1)) < 1e-300) throw Error(ErrorKind::pole, "psi_w at an integer");
  return (c.zeta_minus * e - c.zeta_plus) / (e - Real(1));
}

Complex psi_w_inv(Complex z, const WContext& c) {
  require_finite(z, "psi_w_inv");
  if (z == c.zeta_plus || z == c.zeta_minus) throw Error(ErrorKind::pole, "psi_w_inv at zeta");
  const Complex q = (z - c.zeta_plus) / (z - c.zeta_minus);
  if (q.imag() == 0 && q.real() >= 0) throw Error(ErrorKind::branch, "psi_w_inv on the cut");
  Complex l = std::log(q);
  if (l.imag() < 0) l += Complex(0, 2 * kPi);
  return l / (Real(2) * kPi * kI);
}

Complex psi_w_inv_derivative(Complex z, const WContext& c) {
  return (Real(1) / (z - c.zeta_plus) - Real(1) / (z - c.zeta_minus)) / (Real(2) * kPi * kI);
}

Complex chi_w(Complex Z, const WContext& c) {
  require_finite(Z, "chi_w");
  const Complex sn = std::sin(kPi * Z);
  if (sn == Complex(0)) throw Error(ErrorKind::pole, "chi_w at sin(pi Z) = 0");
  // log on (1/sqrt w)(C minus R-) with log(1) = 0
  const Complex t = Real(2) * sn / kPi;
  if (t.imag() == 0 && t.real() <= 0) throw Error(ErrorKind::branch, "chi_w on the cut");
  const Complex L = std::log(t) - std::log(c.sqrt_w);
  return Z - c.sqrt_w * (Real(1) - c.a_used) / Real(2) * L;
}

Complex chi_w_derivative(Complex Z, const WContext& c) {
  return Real(1) - c.sqrt_w * (Real(1) - c.a_used) / Real(2) * kPi * std::cos(kPi * Z) / std::sin(kPi * Z);
}

Complex phi_w(Complex z, const WContext& c) { return chi_w(psi_w_inv(z, c), c); }

Complex phi_w_derivative(Complex z, const WContext& c) {
  return chi_w_derivative(psi_w_inv(z, c), c) * psi_w_inv_derivative(z, c);
}

Complex phi_w_inv(Complex Z, const WContext& c, Real tol) {
  require_finite(Z, "phi_w_inv");
  const Complex t = Real(2) * std::sin(kPi * Z) / kPi;
  const Complex first = Z + c.sqrt_w * (Real(1) - c.a_used) / Real(2) * (std::log(t) - std::log(c.sqrt_w));
  Complex z = psi_w(first, c);
  for (int it = 0; it < 60; ++it) {
    const Complex r = phi_w(z, c) - Z;
    const Complex step = r / phi_w_derivative(z, c);
    z -= step;
    if (std::abs(step) <= tol * std::abs(z) || std::abs(r) <= tol * 1e-2) return z;
  }
  throw Error(ErrorKind::newton, "phi_w inverse did not converge");
}

bool in_S0(Complex Z) { return Z.real() > 0 && Z.real() < 1; }

bool in_S_w(Complex Z, const WContext& c) {
  const Real m = std::pow(std::abs(c.w), Real(0.25));
  return Z.real() > m && Z.real() < 1 - m;
}

bool in_V_w(Complex z, const WContext& c) {
  try {
    return in_S_w(psi_w_inv(z, c), c);
  } catch (const Error&) {
    return false;
  }
}

bool in_R_w(Complex Z, const WContext& c) {
  return Z.real() > c.r_w / 10 && Z.real() < 1 - c.r_w / 10 && std::abs(Z.imag()) < Real(0.5);
}

bool in_Rprime_w(Complex Z, const WContext& c) {
  return Z.real() > c.r_w / 20 && Z.real() < 1 - c.r_w / 20 && std::abs(Z.imag()) < 1;
}

bool in_D_att(Complex Z, const WContext& c) { return std::abs(Z - c.R_w) < c.R_w / 10; }

bool in_D_rep(Complex Z, const WContext& c) { return std::abs(Z + c.R_w) < c.R_w / 10; }

bool in_Omega(const CPoint2& p, Complex w, Real C) {
  return std::abs(p.c1) < C * std::max(std::norm(p.c0), std::norm(w));
}

bool in_Delta_s(const CPoint2& p, Real s) { return std::abs(p.c0) < s && std::abs(p.c1) < s; }

std::int64_t k_n(std::int64_t n, Real alpha) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "k_n needs n >= 1");
  return static_cast<std::int64_t>(std::floor(std::pow(static_cast<Real>(n), alpha)));
}

}  // namespace lavaurs
