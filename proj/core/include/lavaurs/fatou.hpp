#pragma once

#include <cstdint>
#include <vector>

#include "lavaurs/normal_form.hpp"
#include "lavaurs/types.hpp"

namespace lavaurs {

Complex omega_in(Complex z, Complex b);   // -1/z - b log(-1/z)
Complex omega_out(Complex z, Complex b);  // -1/z - b log(1/z)
// Newton from -1/Z; needs |Z| > 10 (1 + |b|).
Complex omega_out_inverse(Complex Z, Complex b, Real tol = 1e-13);

// Formal Fatou coordinate of z -> z + a2 z^2 + a3 z^3 + ... (a1 = a2 = 1) in the variable Z = -1/z:
//   Z - b log Z + sum_{k=1..K} c_k Z^{-k}   (log(-Z) on the repelling side).
// Exact order by order in 1/Z, so the Abel defect at Z is O(|Z|^{-K-2}).
class FatouSeries {
 public:
  FatouSeries() = default;
  // a[k] is the coefficient of z^k; a[1] and a[2] must equal 1.
  FatouSeries(const std::vector<Complex>& a, int K);

  Complex b() const { return b_; }
  const std::vector<Complex>& c() const { return c_; }  // c[0] unused
  int K() const { return static_cast<int>(c_.size()) - 1; }

  Complex attracting(Complex Z) const;
  Complex repelling(Complex Z) const;
  Complex attracting_derivative(Complex Z) const;
  Complex repelling_derivative(Complex Z) const;
  // Solve attracting(Z) = W, resp. repelling(Z) = W, for Z.
  Complex attracting_inverse(Complex W, Real tol) const;
  Complex repelling_inverse(Complex W, Real tol) const;

 private:
  Complex tail(Complex Z) const;
  Complex tail_derivative(Complex Z) const;
  Complex b_{};
  std::vector<Complex> c_;
};

struct FatouValue {
  Complex value{};
  std::int64_t iters = 0;
  Real err_est = 0;
};

struct FatouValue2 {
  CPoint2 value{};
  std::int64_t iters = 0;
  Real err_est = 0;
};

class Fatou1D {
 public:
  explicit Fatou1D(const MapParams& p);

  const MapParams& params() const { return p_; }
  const FatouSeries& series() const { return series_; }

  FatouValue phi(Complex z) const;
  FatouValue psi(Complex Z) const;
  FatouValue lavaurs(Complex z) const;

  Complex phi_derivative(Complex z) const;
  Complex psi_derivative(Complex Z) const;

  // Newton inverses; the seeds come from the series when omitted.
  Complex phi_inverse(Complex Z) const;
  Complex phi_inverse(Complex Z, Complex seed) const;
  Complex psi_inverse(Complex z) const;
  Complex psi_inverse(Complex z, Complex seed) const;

 private:
  FatouValue phi_impl(Complex z, Complex* derivative) const;
  FatouValue psi_impl(Complex Z, Complex* derivative) const;
  MapParams p_;
  FatouSeries series_;
};

class Fatou2D {
 public:
  explicit Fatou2D(const NormalFormData& nf);

  const NormalFormData& normal_form() const { return nf_; }
  const FatouSeries& series() const { return series_; }

  // Global coordinates of F.
  FatouValue Phi_F(const CPoint2& p) const;
  FatouValue2 Psi_F(Complex Z) const;
  FatouValue2 lavaurs(const CPoint2& p) const;

  // Local coordinates of F_tilde = U o F o U^{-1}.
  FatouValue Phi_Ftilde(const CPoint2& p) const;
  FatouValue2 Psi_Ftilde(Complex Z) const;

  struct Lift {
    Complex Z{};
    CPoint2 point{};
  };
  // Z with pi_z(Psi_Ftilde(Z)) = z, found by Newton from the series seed.
  Lift lift_to_repelling(Complex z) const;

 private:
  Complex local_omega(const CPoint2& q) const;
  NormalFormData nf_;
  FatouSeries series_;
};

struct LavaursFixedPoint {
  Complex z{};          // one-dimensional location
  CPoint2 p{};          // two-dimensional location (z, x)
  Complex multiplier{};  // eigenvalue of largest modulus
  Complex delta{};
  Real residual = 0;
  int newton_iters = 0;
  bool attracting() const { return std::abs(multiplier) < 1; }
};

// Damped Newton on L_f(z) - z with a finite-difference derivative.
LavaursFixedPoint find_lavaurs_fixed_point(const Fatou1D& fc, Complex seed);
LavaursFixedPoint find_lavaurs_fixed_point(const Fatou2D& fc, const CPoint2& seed);

struct ScanRegion {
  Complex center{-0.25, 0.15};
  Real half_width = 0.15;
  int n = 15;
};

// Grid scan of |L_f - id| followed by Newton from local minima. Returns attracting fixed points
// ordered by distance to the region centre; throws not_found when there are none.
std::vector<LavaursFixedPoint> scan_lavaurs_fixed_points(const Fatou1D& fc, const ScanRegion& region);

// Continues (z0, x0) at delta = 0 along the given increasing ladder of delta values.
std::vector<LavaursFixedPoint> continue_lavaurs_fixed_point(const MapParams& p, Complex z0,
                                                            const std::vector<Complex>& deltas,
                                                            int order = 8);

}  // namespace lavaurs
