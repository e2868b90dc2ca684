#pragma once

#include <cstdint>

#include "lavaurs/types.hpp"

namespace lavaurs {

struct WContext {
  Complex w{};
  Complex sqrt_w{};
  Complex zeta_plus{};
  Complex zeta_minus{};
  Real r_w = 0;  // |w|^{(1-alpha)/2}
  Real R_w = 0;  // |w|^{-alpha/2}
  Complex a_used{};
  Real alpha = 0.6;
};

// a_used is the cubic coefficient of the one-dimensional model (a, or a3 of the normal form in 2D).
WContext make_wcontext(Complex w, const MapParams& p, Complex a_used);
WContext make_wcontext(Complex w, const MapParams& p, Complex a_used, ZetaChoice zeta);

// Cover of the punctured sphere by the strip: (zeta- e^{2 pi i Z} - zeta+) / (e^{2 pi i Z} - 1).
Complex psi_w(Complex Z, const WContext& c);
// (1/2 pi i) log((z - zeta+)/(z - zeta-)), log cut along the positive reals with log(-1) = pi i.
Complex psi_w_inv(Complex z, const WContext& c);
Complex psi_w_inv_derivative(Complex z, const WContext& c);

Complex chi_w(Complex Z, const WContext& c);
Complex chi_w_derivative(Complex Z, const WContext& c);

Complex phi_w(Complex z, const WContext& c);
Complex phi_w_derivative(Complex z, const WContext& c);
inline Complex Phi_w(const CPoint2& p, const WContext& c) { return phi_w(p.c0, c); }
// Newton on phi_w seeded by psi_w of the first-order inverse of chi_w.
Complex phi_w_inv(Complex Z, const WContext& c, Real tol = 1e-13);

bool in_S0(Complex Z);
bool in_S_w(Complex Z, const WContext& c);
bool in_V_w(Complex z, const WContext& c);
bool in_R_w(Complex Z, const WContext& c);
bool in_Rprime_w(Complex Z, const WContext& c);
bool in_D_att(Complex Z, const WContext& c);
bool in_D_rep(Complex Z, const WContext& c);
bool in_Omega(const CPoint2& p, Complex w, Real C);
bool in_Delta_s(const CPoint2& p, Real s);

std::int64_t k_n(std::int64_t n, Real alpha);

}  // namespace lavaurs
