#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "lavaurs/types.hpp"

namespace lavaurs {

// Truncated power series sum c[i][j] z^i x^j over i + j <= order.
class Jet2 {
 public:
  Jet2() = default;
  explicit Jet2(int order);

  static Jet2 constant(int order, Complex c);
  static Jet2 var_z(int order);
  static Jet2 var_x(int order);

  int order() const { return order_; }
  std::size_t size() const { return c_.size(); }

  Complex operator()(int i, int j) const;  // zero when i + j > order
  Complex& at(int i, int j);               // throws when i + j > order

  const std::vector<Complex>& coeffs() const { return c_; }
  std::vector<Complex>& coeffs() { return c_; }

  // storage is by total degree, then by the x exponent
  static std::size_t index(int i, int j) {
    const int d = i + j;
    return static_cast<std::size_t>(d) * (d + 1) / 2 + j;
  }

  // Keep only terms of total degree <= k.
  Jet2 truncated(int k) const;

 private:
  int order_ = 0;
  std::vector<Complex> c_;
};

struct JetMap2 {
  Jet2 z;
  Jet2 x;

  static JetMap2 identity(int order);
  int order() const { return z.order(); }
};

Jet2 jet_add(const Jet2& a, const Jet2& b);
Jet2 jet_sub(const Jet2& a, const Jet2& b);
Jet2 jet_mul(const Jet2& a, const Jet2& b);
Jet2 jet_scale(const Jet2& a, Complex s);
// 1 / a for a with nonzero constant term
Jet2 jet_reciprocal(const Jet2& a);

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return jet_add(a, b); }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return jet_sub(a, b); }
inline Jet2 operator*(const Jet2& a, const Jet2& b) { return jet_mul(a, b); }
inline Jet2 operator*(Complex s, const Jet2& a) { return jet_scale(a, s); }

// outer(inner.z, inner.x); inner must vanish at the origin.
Jet2 jet_compose(const Jet2& outer, const JetMap2& inner);
JetMap2 jet_compose(const JetMap2& outer, const JetMap2& inner);

JetMap2 jet_invert_tangent_identity(const JetMap2& m);

inline constexpr Real kNoTrustLimit = std::numeric_limits<Real>::infinity();

Complex jet_eval(const Jet2& j, Complex z, Complex x, Real trust_radius = kNoTrustLimit);
CPoint2 jet_eval(const JetMap2& m, const CPoint2& p, Real trust_radius = kNoTrustLimit);

Real max_abs_coeff(const Jet2& j);
Real max_abs_coeff(const JetMap2& m);

}  // namespace lavaurs
