#include "lavaurs/maps.hpp"

#include <Eigen/Dense>

namespace lavaurs {

Complex q1(Complex z, const MapParams& p) { return z * z * (Real(1) + p.a * z); }

Complex q2(Complex w, const MapParams& p) {
  // -w^2 + c3 w^3 + c4 w^4 + ...
  Complex tail = 0;
  for (auto it = p.q2_coeffs.rbegin(); it != p.q2_coeffs.rend(); ++it) tail = (tail + *it) * w;
  return w * w * (tail - Real(1));
}

Complex f(Complex z, const MapParams& p) {
  require_finite(z, "f");
  return z + q1(z, p);
}

Complex g(Complex w, const MapParams& p) {
  require_finite(w, "g");
  return w + q2(w, p);
}

Complex f_w(Complex z, Complex w, const MapParams& p) {
  require_finite(z, "f_w");
  require_finite(w, "f_w");
  return z + q1(z, p) + kPi2Over4 * w;
}

CPoint2 F(const CPoint2& zx, const MapParams& p) {
  require_finite(zx, "F");
  const Complex s = zx.c0 + p.delta * zx.c1;
  const Complex q = q1(s, p);
  return {zx.c0 + q, p.delta * zx.c1 - q};
}

CPoint2 G(const CPoint2& wy, const MapParams& p) {
  require_finite(wy, "G");
  const Complex s = wy.c0 + p.delta * wy.c1;
  const Complex q = q2(s, p);
  return {wy.c0 + q, p.delta * wy.c1 - q};
}

CPoint2 F_w(const CPoint2& zx, Complex w, const MapParams& p) {
  require_finite(w, "F_w");
  CPoint2 out = F(zx, p);
  out.c0 += kPi2Over4 * w;
  return out;
}

CPoint4 H(const CPoint4& q, const MapParams& p) {
  require_finite(q, "H");
  const CPoint2 zx = F_w({q.z, q.x}, q.w, p);
  const CPoint2 wy = G({q.w, q.y}, p);
  return {zx.c0, zx.c1, wy.c0, wy.c1};
}

CPoint2 P(const CPoint2& zw, const MapParams& p) {
  require_finite(zw, "P");
  return {f_w(zw.c0, zw.c1, p), g(zw.c1, p)};
}

namespace {

void require_invertible(const MapParams& p) {
  if (p.delta == Complex(0)) throw Error(ErrorKind::non_invertible, "inverse requires delta != 0");
}

}  // namespace

CPoint2 F_inv(const CPoint2& zx, const MapParams& p) {
  require_finite(zx, "F_inv");
  require_invertible(p);
  const Complex s = zx.c0 + zx.c1;
  const Complex q = q1(s, p);
  return {zx.c0 - q, (zx.c1 + q) / p.delta};
}

CPoint2 G_inv(const CPoint2& wy, const MapParams& p) {
  require_finite(wy, "G_inv");
  require_invertible(p);
  const Complex s = wy.c0 + wy.c1;
  const Complex q = q2(s, p);
  return {wy.c0 - q, (wy.c1 + q) / p.delta};
}

CPoint4 H_inv(const CPoint4& q, const MapParams& p) {
  require_finite(q, "H_inv");
  const CPoint2 wy = G_inv({q.w, q.y}, p);
  const CPoint2 zx = F_inv({q.z - kPi2Over4 * wy.c0, q.x}, p);
  return {zx.c0, zx.c1, wy.c0, wy.c1};
}

Complex jacobian_det_fd(const Map2& map, const CPoint2& at, Real h) {
  if (!(h > 0)) throw Error(ErrorKind::invalid_argument, "jacobian_det_fd needs h > 0");
  require_finite(at, "jacobian_det_fd");
  Eigen::Matrix<Complex, 2, 2> J;
  for (int k = 0; k < 2; ++k) {
    CPoint2 plus = at, minus = at;
    (k == 0 ? plus.c0 : plus.c1) += h;
    (k == 0 ? minus.c0 : minus.c1) -= h;
    const CPoint2 d = map(plus) - map(minus);
    J(0, k) = d.c0 / (2 * h);
    J(1, k) = d.c1 / (2 * h);
  }
  return J.determinant();
}

Complex jacobian_det_fd(const Map4& map, const CPoint4& at, Real h) {
  if (!(h > 0)) throw Error(ErrorKind::invalid_argument, "jacobian_det_fd needs h > 0");
  require_finite(at, "jacobian_det_fd");
  auto coord = [](CPoint4& q, int k) -> Complex& {
    switch (k) {
      case 0: return q.z;
      case 1: return q.x;
      case 2: return q.w;
      default: return q.y;
    }
  };
  Eigen::Matrix<Complex, 4, 4> J;
  for (int k = 0; k < 4; ++k) {
    CPoint4 plus = at, minus = at;
    coord(plus, k) += h;
    coord(minus, k) -= h;
    CPoint4 d = map(plus) - map(minus);
    for (int r = 0; r < 4; ++r) J(r, k) = coord(d, r) / (2 * h);
  }
  return J.determinant();
}

BasinProbe basin_probe(const Map2& map, const CPoint2& start, std::int64_t max_iter,
                       Real bail_radius, Real R, Real eta) {
  if (max_iter < 1) throw Error(ErrorKind::invalid_argument, "basin_probe needs max_iter >= 1");
  require_finite(start, "basin_probe");
  constexpr int kStay = 16;
  auto in_petal = [&](const CPoint2& q) {
    return q.c0 != Complex(0) && (Real(-1) / q.c0).real() > R && std::abs(q.c1) < eta;
  };
  auto at_origin = [](const CPoint2& q) { return q.c0 == Complex(0) && q.c1 == Complex(0); };

  CPoint2 q = start;
  for (std::int64_t n = 0; n <= max_iter; ++n) {
    if (at_origin(q)) return {true, n};
    if (!is_finite(q) || norm(q) > bail_radius) return {false, n};
    if (in_petal(q)) {
      CPoint2 t = q;
      bool stays = true;
      for (int k = 0; k < kStay && stays; ++k) {
        t = map(t);
        stays = at_origin(t) || in_petal(t);
      }
      if (stays) return {true, n};
    }
    if (n < max_iter) q = map(q);
  }
  throw Error(ErrorKind::indeterminate, "orbit neither entered the petal nor escaped");
}

}  // namespace lavaurs
