#pragma once

#include <vector>

#include "lavaurs/jet.hpp"
#include "lavaurs/types.hpp"

namespace lavaurs {

struct NormalFormData {
  MapParams params;
  int order = 8;
  int l = 3;
  JetMap2 U;
  JetMap2 U_inv;
  JetMap2 F_tilde;
  Complex a3{};
  Complex b{};
  Jet2 stable_manifold;  // x-only jet S(x)
  Real trust_radius = 0.1;
  int product_terms = 0;  // longest truncated product or sum used in the construction

  // coefficients a_k(0) of z^k in the z-component of F_tilde, k = 0..order
  std::vector<Complex> z_coeffs() const;
};

// F as an exact polynomial jet (degree 3 in s = z + delta x).
JetMap2 F_jet(const MapParams& p, int order);

Jet2 compute_stable_manifold(const MapParams& p, int order);

NormalFormData compute_normal_form(const MapParams& p, int order = 8, int l = 3,
                                   Real tail_tol = 1e-16, int cap = 200);

// Largest radius in {r0, r0/2, ...} on whose boundary the F_tilde jets at order and order-2 agree within tol.
Real validate_trust_radius(const JetMap2& F_tilde, Real r0 = 0.1, Real tol = 1e-9);

CPoint2 U_eval(const NormalFormData& nf, const CPoint2& p);
CPoint2 U_inv_eval(const NormalFormData& nf, const CPoint2& p);

// U o F_w o U^{-1}, evaluated pointwise.
CPoint2 F_tilde_w_eval(const NormalFormData& nf, const CPoint2& p, Complex w);

}  // namespace lavaurs
