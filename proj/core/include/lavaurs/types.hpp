#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lavaurs/config.hpp"

namespace lavaurs {

#if LAVAURS_EXTENDED_PRECISION
using Real = long double;
#else
using Real = double;
#endif
using Complex = std::complex<Real>;

inline constexpr Real kPi = std::numbers::pi_v<Real>;
inline constexpr Real kPi2Over4 = kPi * kPi / 4;
inline const Complex kI{0, 1};

enum class ErrorKind {
  invalid_argument,
  non_invertible,
  order_mismatch,
  trust_radius,
  basin,
  stagnation,
  branch,
  newton,
  not_attracting,
  indeterminate,
  pole,
  not_found,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// (z, x) or (w, y) depending on context
struct CPoint2 {
  Complex c0{};
  Complex c1{};
};

struct CPoint4 {
  Complex z{};
  Complex x{};
  Complex w{};
  Complex y{};
};

inline CPoint2 operator+(const CPoint2& a, const CPoint2& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
inline CPoint2 operator-(const CPoint2& a, const CPoint2& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
inline CPoint4 operator-(const CPoint4& a, const CPoint4& b) {
  return {a.z - b.z, a.x - b.x, a.w - b.w, a.y - b.y};
}

Real norm(const CPoint2& p);
Real norm(const CPoint4& p);

inline bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }
inline bool is_finite(const CPoint2& p) { return is_finite(p.c0) && is_finite(p.c1); }
inline bool is_finite(const CPoint4& p) {
  return is_finite(p.z) && is_finite(p.x) && is_finite(p.w) && is_finite(p.y);
}

void require_finite(Complex c, const char* where);
void require_finite(const CPoint2& p, const char* where);
void require_finite(const CPoint4& p, const char* where);

enum class ZetaChoice {
  fixed_points,      // roots of q1(z) + pi^2 w / 4
  invariant_curves,  // second-order approximate invariant curves
};

struct MapParams {
  Complex a{0.95, 0};
  Complex delta{0, 0};
  std::vector<Complex> q2_coeffs;  // coefficients of w^3, w^4, ... in q2
  Real alpha = 0.6;
  Real R = 20;
  Real R_prime = 40;
  Real eta = 0.05;
  Real C_omega = 10;
  Real s = 0.05;
  Real tol_limit = 1e-10;
  Real tol_newton = 1e-12;

  int series_order = 8;         // terms of the asymptotic expansion used inside Fatou coordinates
  std::int64_t max_iter = 1000000;
  Real bail_radius = 10;
  Real trust_radius = 0;        // 0: validated automatically by the normal form
  ZetaChoice zeta = ZetaChoice::fixed_points;
};

// Throws Error(invalid_argument) naming the offending field.
void validate(const MapParams& p);
// Additional smallness condition on delta needed by the four-dimensional construction.
void validate_for_4d(const MapParams& p);

}  // namespace lavaurs
