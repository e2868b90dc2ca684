#include "lavaurs/fatou.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lavaurs/maps.hpp"

namespace lavaurs {

namespace {

using Series = std::vector<Complex>;

Series s_mul(const Series& a, const Series& b) {
  const std::size_t N = a.size();
  Series r(N, Complex(0));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; i + j < N; ++j) r[i + j] += a[i] * b[j];
  return r;
}

Series s_inv(const Series& a) {
  const std::size_t N = a.size();
  Series r(N, Complex(0));
  r[0] = Real(1) / a[0];
  for (std::size_t k = 1; k < N; ++k) {
    Complex acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * r[k - j];
    r[k] = -acc / a[0];
  }
  return r;
}

// log(1 + s) for s(0) = 0
Series s_log1p(const Series& s) {
  const std::size_t N = s.size();
  Series r(N, Complex(0));
  Series power(N, Complex(0));
  power[0] = 1;
  for (std::size_t k = 1; k < N; ++k) {
    power = s_mul(power, s);
    const Real coef = (k % 2 == 1 ? Real(1) : Real(-1)) / static_cast<Real>(k);
    for (std::size_t i = 0; i < N; ++i) r[i] += coef * power[i];
  }
  return r;
}

void check_branch(Complex v, const char* what) {
  if (v.imag() == 0 && v.real() <= 0)
    throw Error(ErrorKind::branch, std::string(what) + " hits the cut of the principal logarithm");
}

Complex fprime(Complex z, const MapParams& p) { return Real(1) + Real(2) * z + Real(3) * p.a * z * z; }

}  // namespace

Complex omega_in(Complex z, Complex b) {
  require_finite(z, "omega_in");
  if (z == Complex(0)) throw Error(ErrorKind::invalid_argument, "omega_in at z = 0");
  const Complex Z = Real(-1) / z;
  check_branch(Z, "omega_in");
  return Z - b * std::log(Z);
}

Complex omega_out(Complex z, Complex b) {
  require_finite(z, "omega_out");
  if (z == Complex(0)) throw Error(ErrorKind::invalid_argument, "omega_out at z = 0");
  const Complex u = Real(1) / z;
  check_branch(u, "omega_out");
  return -u - b * std::log(u);
}

Complex omega_out_inverse(Complex Z, Complex b, Real tol) {
  require_finite(Z, "omega_out_inverse");
  if (!(std::abs(Z) > 10 * (1 + std::abs(b))))
    throw Error(ErrorKind::invalid_argument, "omega_out_inverse needs |Z| > 10 (1 + |b|)");
  Complex z = Real(-1) / Z;
  if (b == Complex(0)) return z;
  for (int it = 0; it < 50; ++it) {
    const Complex r = omega_out(z, b) - Z;
    if (std::abs(r) <= tol * std::abs(Z)) return z;
    const Complex d = Real(1) / (z * z) - b / z;
    z -= r / d;
  }
  throw Error(ErrorKind::newton, "omega_out_inverse did not converge in 50 steps");
}

FatouSeries::FatouSeries(const std::vector<Complex>& a, int K) {
  if (K < 0) throw Error(ErrorKind::invalid_argument, "series order must be >= 0");
  if (a.size() < 3 || std::abs(a[1] - Real(1)) > 1e-10 || std::abs(a[2] - Real(1)) > 1e-10)
    throw Error(ErrorKind::invalid_argument, "Fatou series needs a map z + z^2 + O(z^3)");
  const std::size_t N = static_cast<std::size_t>(K) + 3;
  // With Z = -1/z and u = 1/Z the map reads Z -> Z * D(u), D = 1 / sum_j a_{j+1} (-u)^j.
  Series A(N, Complex(0));
  for (std::size_t j = 0; j < N; ++j)
    if (j + 1 < a.size()) A[j] = (j % 2 == 0 ? Real(1) : Real(-1)) * a[j + 1];
  const Series D = s_inv(A);
  b_ = D[2];

  Series Dm1 = D;
  Dm1[0] = 0;
  const Series logD = s_log1p(Dm1);
  const Series Dinv = s_inv(D);

  // E(u) = (T - Z - 1) - b log(T/Z) + sum_j c_j (T^{-j} - Z^{-j}); E = 0 fixes c_k at u^{k+1}.
  Series E(N, Complex(0));
  for (std::size_t k = 1; k + 1 < N; ++k) E[k] = D[k + 1];
  for (std::size_t k = 0; k < N; ++k) E[k] -= b_ * logD[k];

  c_.assign(static_cast<std::size_t>(K) + 1, Complex(0));
  Series Dneg(N, Complex(0));
  Dneg[0] = 1;
  for (int k = 1; k <= K; ++k) {
    Dneg = s_mul(Dneg, Dinv);
    const Complex ck = E[k + 1] / static_cast<Real>(k);
    c_[k] = ck;
    // add c_k u^k (D^{-k} - 1)
    for (std::size_t i = 1; i + k < N; ++i) E[i + k] += ck * Dneg[i];
  }
}

Complex FatouSeries::tail(Complex Z) const {
  const Complex u = Real(1) / Z;
  Complex acc = 0;
  for (int k = K(); k >= 1; --k) acc = (acc + c_[k]) * u;
  return acc;
}

Complex FatouSeries::tail_derivative(Complex Z) const {
  const Complex u = Real(1) / Z;
  Complex acc = 0;
  for (int k = K(); k >= 1; --k) acc = (acc - static_cast<Real>(k) * c_[k]) * u;
  return acc * u;
}

Complex FatouSeries::attracting(Complex Z) const {
  check_branch(Z, "attracting Fatou series");
  return Z - b_ * std::log(Z) + tail(Z);
}

Complex FatouSeries::repelling(Complex Z) const {
  check_branch(-Z, "repelling Fatou series");
  return Z - b_ * std::log(-Z) + tail(Z);
}

Complex FatouSeries::attracting_derivative(Complex Z) const { return Real(1) - b_ / Z + tail_derivative(Z); }

Complex FatouSeries::repelling_derivative(Complex Z) const { return Real(1) - b_ / Z + tail_derivative(Z); }

Complex FatouSeries::attracting_inverse(Complex W, Real tol) const {
  Complex Z = W.real() > 0 ? W + b_ * std::log(W) : W;
  for (int it = 0; it < 60; ++it) {
    const Complex step = (attracting(Z) - W) / attracting_derivative(Z);
    Z -= step;
    if (std::abs(step) <= tol * std::max(Real(1), std::abs(Z))) return Z;
  }
  throw Error(ErrorKind::newton, "attracting series inverse did not converge");
}

Complex FatouSeries::repelling_inverse(Complex W, Real tol) const {
  Complex Z = W.real() < 0 ? W + b_ * std::log(-W) : W;
  for (int it = 0; it < 60; ++it) {
    const Complex step = (repelling(Z) - W) / repelling_derivative(Z);
    Z -= step;
    if (std::abs(step) <= tol * std::max(Real(1), std::abs(Z))) return Z;
  }
  throw Error(ErrorKind::newton, "repelling series inverse did not converge");
}

// ---------------------------------------------------------------- one dimension

Fatou1D::Fatou1D(const MapParams& p) : p_(p) {
  validate(p_);
  series_ = FatouSeries({0, 1, 1, p_.a}, p_.series_order);
}

FatouValue Fatou1D::phi_impl(Complex z, Complex* derivative) const {
  require_finite(z, "phi_f");
  if (z == Complex(0)) throw Error(ErrorKind::basin, "phi_f at the parabolic point");
  Complex d = 1;
  std::int64_t n = 0;
  auto in_petal = [&](Complex v) { return v != Complex(0) && (Real(-1) / v).real() > p_.R; };
  while (!in_petal(z)) {
    if (!is_finite(z) || std::abs(z) > p_.bail_radius)
      throw Error(ErrorKind::basin, "orbit escaped before reaching the attracting petal");
    if (++n > p_.max_iter) throw Error(ErrorKind::basin, "orbit did not reach the attracting petal");
    d *= fprime(z, p_);
    z = f(z, p_);
  }
  Real defect = 0;
  for (;;) {
    const Complex z1 = f(z, p_);
    defect = std::abs(series_.attracting(Real(-1) / z1) - series_.attracting(Real(-1) / z) - Real(1));
    if (defect < p_.tol_limit) break;
    if (++n > p_.max_iter) throw Error(ErrorKind::stagnation, "phi_f limit did not settle");
    d *= fprime(z, p_);
    z = z1;
  }
  const Complex Z = Real(-1) / z;
  if (derivative) *derivative = series_.attracting_derivative(Z) * d / (z * z);
  return {series_.attracting(Z) - static_cast<Real>(n), n, defect};
}

FatouValue Fatou1D::psi_impl(Complex Z, Complex* derivative) const {
  require_finite(Z, "psi_f");
  std::int64_t n = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(Z.real() + p_.R_prime)));
  Complex Zc, z0;
  Real defect = 0;
  for (;; ++n) {
    if (n > p_.max_iter) throw Error(ErrorKind::stagnation, "psi_f limit did not settle");
    const Complex W = Z - static_cast<Real>(n);
    Zc = series_.repelling_inverse(W, p_.tol_newton);
    z0 = Real(-1) / Zc;
    defect = std::abs(series_.repelling(Real(-1) / f(z0, p_)) - series_.repelling(Zc) - Real(1));
    if (defect < p_.tol_limit) break;
  }
  Complex z = z0;
  Complex d = Real(1) / (Zc * Zc * series_.repelling_derivative(Zc));
  for (std::int64_t k = 0; k < n; ++k) {
    d *= fprime(z, p_);
    z = f(z, p_);
    if (!is_finite(z)) throw Error(ErrorKind::basin, "psi_f orbit overflowed");
  }
  if (derivative) *derivative = d;
  return {z, n, defect};
}

FatouValue Fatou1D::phi(Complex z) const { return phi_impl(z, nullptr); }
FatouValue Fatou1D::psi(Complex Z) const { return psi_impl(Z, nullptr); }

Complex Fatou1D::phi_derivative(Complex z) const {
  Complex d;
  phi_impl(z, &d);
  return d;
}

Complex Fatou1D::psi_derivative(Complex Z) const {
  Complex d;
  psi_impl(Z, &d);
  return d;
}

FatouValue Fatou1D::lavaurs(Complex z) const {
  const FatouValue a = phi(z);
  FatouValue b = psi(a.value);
  b.iters += a.iters;
  b.err_est = std::max(a.err_est, b.err_est);
  return b;
}

Complex Fatou1D::phi_inverse(Complex Z) const {
  Complex seed = Real(-1) / Z;
  if (Z.real() > 1) {
    try {
      seed = Real(-1) / series_.attracting_inverse(Z, p_.tol_newton);
    } catch (const Error&) {
    }
  }
  return phi_inverse(Z, seed);
}

Complex Fatou1D::phi_inverse(Complex Z, Complex seed) const {
  require_finite(Z, "phi_inverse");
  Complex z = seed;
  for (int it = 0; it < 80; ++it) {
    Complex d;
    const Complex r = phi_impl(z, &d).value - Z;
    if (std::abs(r) <= p_.tol_newton * (1 + std::abs(Z))) return z;
    Complex step = r / d;
    if (std::abs(step) > std::abs(z) / 2) step *= std::abs(z) / (2 * std::abs(step));
    z -= step;
  }
  throw Error(ErrorKind::newton, "phi_f inverse did not converge");
}

Complex Fatou1D::psi_inverse(Complex z) const {
  require_finite(z, "psi_inverse");
  if (z == Complex(0)) throw Error(ErrorKind::invalid_argument, "psi_inverse at z = 0");
  return psi_inverse(z, series_.repelling(Real(-1) / z));
}

Complex Fatou1D::psi_inverse(Complex z, Complex seed) const {
  require_finite(z, "psi_inverse");
  Complex Z = seed;
  for (int it = 0; it < 80; ++it) {
    Complex d;
    const Complex r = psi_impl(Z, &d).value - z;
    if (std::abs(r) <= p_.tol_newton * std::max(std::abs(z), Real(1e-3))) return Z;
    Complex step = r / d;
    const Real cap = (1 + std::abs(Z)) / 4;
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    Z -= step;
  }
  throw Error(ErrorKind::newton, "psi_f inverse did not converge");
}

// ---------------------------------------------------------------- two dimensions

Fatou2D::Fatou2D(const NormalFormData& nf) : nf_(nf) {
  std::vector<Complex> a = nf_.z_coeffs();
  a[0] = 0;
  series_ = FatouSeries(a, nf_.params.series_order);
}

Complex Fatou2D::local_omega(const CPoint2& q) const {
  const Complex z = U_eval(nf_, q).c0;
  if (z == Complex(0)) throw Error(ErrorKind::basin, "local coordinate reached the fixed point");
  return series_.attracting(Real(-1) / z);
}

FatouValue Fatou2D::Phi_F(const CPoint2& p) const {
  require_finite(p, "Phi_F");
  const MapParams& mp = nf_.params;
  const Real inner = nf_.trust_radius / 2;
  auto ready = [&](const CPoint2& q) {
    return q.c0 != Complex(0) && (Real(-1) / q.c0).real() > mp.R && std::abs(q.c1) < mp.eta &&
           std::abs(q.c0) <= inner && std::abs(q.c1) <= inner;
  };
  CPoint2 q = p;
  std::int64_t n = 0;
  while (!ready(q)) {
    if (!is_finite(q) || norm(q) > mp.bail_radius)
      throw Error(ErrorKind::basin, "orbit escaped before reaching the attracting petal");
    if (++n > mp.max_iter) throw Error(ErrorKind::basin, "orbit did not reach the attracting petal");
    q = F(q, mp);
  }
  Real defect = 0;
  Complex om = local_omega(q);
  for (;;) {
    const CPoint2 q1 = F(q, mp);
    const Complex om1 = local_omega(q1);
    defect = std::abs(om1 - om - Real(1));
    if (defect < mp.tol_limit) break;
    if (++n > mp.max_iter) throw Error(ErrorKind::stagnation, "Phi_F limit did not settle");
    q = q1;
    om = om1;
  }
  return {om - static_cast<Real>(n), n, defect};
}

FatouValue2 Fatou2D::Psi_F(Complex Z) const {
  require_finite(Z, "Psi_F");
  const MapParams& mp = nf_.params;
  const Real inner = nf_.trust_radius / 2;
  std::int64_t n = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(Z.real() + mp.R_prime)));
  Complex z0;
  Real defect = 0;
  for (;; ++n) {
    if (n > mp.max_iter) throw Error(ErrorKind::stagnation, "Psi_F limit did not settle");
    const Complex W = Z - static_cast<Real>(n);
    const Complex Zc = series_.repelling_inverse(W, mp.tol_newton);
    z0 = Real(-1) / Zc;
    if (std::abs(z0) > inner) continue;
    const Complex fz0 = jet_eval(nf_.F_tilde.z, z0, 0, nf_.trust_radius);
    defect = std::abs(series_.repelling(Real(-1) / fz0) - series_.repelling(Zc) - Real(1));
    if (defect < mp.tol_limit) break;
  }
  CPoint2 q = U_inv_eval(nf_, {z0, 0});
  for (std::int64_t k = 0; k < n; ++k) {
    q = F(q, mp);
    if (!is_finite(q)) throw Error(ErrorKind::basin, "Psi_F orbit overflowed");
  }
  return {q, n, defect};
}

FatouValue2 Fatou2D::lavaurs(const CPoint2& p) const {
  const FatouValue a = Phi_F(p);
  FatouValue2 b = Psi_F(a.value);
  b.iters += a.iters;
  b.err_est = std::max(a.err_est, b.err_est);
  return b;
}

FatouValue Fatou2D::Phi_Ftilde(const CPoint2& p) const { return Phi_F(U_inv_eval(nf_, p)); }

FatouValue2 Fatou2D::Psi_Ftilde(Complex Z) const {
  FatouValue2 v = Psi_F(Z);
  v.value = U_eval(nf_, v.value);
  return v;
}

Fatou2D::Lift Fatou2D::lift_to_repelling(Complex z) const {
  require_finite(z, "lift_to_repelling");
  if (z == Complex(0)) throw Error(ErrorKind::invalid_argument, "lift at z = 0");
  Complex Z = series_.repelling(Real(-1) / z);
  for (int it = 0; it < 80; ++it) {
    const CPoint2 v = Psi_Ftilde(Z).value;
    const Complex r = v.c0 - z;
    if (std::abs(r) <= nf_.params.tol_newton * std::max(std::abs(z), Real(1e-3))) return {Z, v};
    const Real h = Real(1e-6) * std::max(Real(1), std::abs(Z));
    const Complex d = (Psi_Ftilde(Z + h).value.c0 - Psi_Ftilde(Z - h).value.c0) / (2 * h);
    Complex step = r / d;
    const Real cap = (1 + std::abs(Z)) / 4;
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    Z -= step;
  }
  throw Error(ErrorKind::newton, "lift to the repelling graph did not converge");
}

// ---------------------------------------------------------------- Lavaurs fixed points

namespace {

constexpr Real kFdStep = 1e-6;

}  // namespace

LavaursFixedPoint find_lavaurs_fixed_point(const Fatou1D& fc, Complex seed) {
  require_finite(seed, "find_lavaurs_fixed_point");
  auto G = [&](Complex z) { return fc.lavaurs(z).value - z; };
  auto deriv = [&](Complex z) { return (fc.lavaurs(z + kFdStep).value - fc.lavaurs(z - kFdStep).value) / (2 * kFdStep); };
  Complex z = seed;
  Complex r = G(z);
  int it = 0;
  for (; it < 100 && std::abs(r) > 1e-14; ++it) {
    Complex step = -r / (deriv(z) - Real(1));
    if (std::abs(step) > 0.2) step *= Real(0.2) / std::abs(step);
    bool accepted = false;
    for (int k = 0; k < 30 && !accepted; ++k, step /= Real(2)) {
      try {
        const Complex r1 = G(z + step);
        if (std::abs(r1) < std::abs(r) || k == 29) {
          z += step;
          r = r1;
          accepted = true;
        }
      } catch (const Error&) {
      }
    }
    if (!accepted) throw Error(ErrorKind::newton, "damped Newton left the basin");
    if (std::abs(step) < 1e-15 * (1 + std::abs(z))) break;
  }
  LavaursFixedPoint out;
  out.z = z;
  out.p = {z, 0};
  out.residual = std::abs(r);
  out.newton_iters = it;
  out.multiplier = deriv(z);
  out.delta = 0;
  if (!(out.residual <= 1e-8)) throw Error(ErrorKind::newton, "Lavaurs fixed-point Newton did not converge");
  return out;
}

LavaursFixedPoint find_lavaurs_fixed_point(const Fatou2D& fc, const CPoint2& seed) {
  require_finite(seed, "find_lavaurs_fixed_point");
  using Vec = Eigen::Matrix<Complex, 2, 1>;
  using Mat = Eigen::Matrix<Complex, 2, 2>;
  auto L = [&](const Vec& v) {
    const CPoint2 q = fc.lavaurs({v(0), v(1)}).value;
    return Vec(q.c0, q.c1);
  };
  auto jac = [&](const Vec& v) {
    Mat J;
    for (int k = 0; k < 2; ++k) {
      Vec plus = v, minus = v;
      plus(k) += kFdStep;
      minus(k) -= kFdStep;
      J.col(k) = (L(plus) - L(minus)) / (2 * kFdStep);
    }
    return J;
  };
  Vec v(seed.c0, seed.c1);
  Vec r = L(v) - v;
  int it = 0;
  for (; it < 100 && r.norm() > 1e-14; ++it) {
    const Mat A = jac(v) - Mat::Identity();
    Vec step = A.fullPivLu().solve(-r);
    if (step.norm() > 0.2) step *= Real(0.2) / step.norm();
    bool accepted = false;
    for (int k = 0; k < 30 && !accepted; ++k, step /= Real(2)) {
      try {
        const Vec r1 = L(v + step) - (v + step);
        if (r1.norm() < r.norm() || k == 29) {
          v += step;
          r = r1;
          accepted = true;
        }
      } catch (const Error&) {
      }
    }
    if (!accepted) throw Error(ErrorKind::newton, "damped Newton left the basin");
    if (step.norm() < 1e-15 * (1 + v.norm())) break;
  }
  LavaursFixedPoint out;
  out.p = {v(0), v(1)};
  out.z = v(0);
  out.residual = r.norm();
  out.newton_iters = it;
  out.delta = fc.normal_form().params.delta;
  const Eigen::ComplexEigenSolver<Mat> es(jac(v));
  const auto& ev = es.eigenvalues();
  out.multiplier = std::abs(ev(0)) >= std::abs(ev(1)) ? ev(0) : ev(1);
  if (!(out.residual <= 1e-6)) throw Error(ErrorKind::newton, "Lavaurs fixed-point Newton did not converge");
  return out;
}

std::vector<LavaursFixedPoint> scan_lavaurs_fixed_points(const Fatou1D& fc, const ScanRegion& region) {
  if (region.n < 2 || !(region.half_width > 0))
    throw Error(ErrorKind::invalid_argument, "scan region needs n >= 2 and a positive half width");
  const int n = region.n;
  const Real nan = std::numeric_limits<Real>::quiet_NaN();
  std::vector<Real> res(static_cast<std::size_t>(n) * n, nan);
  std::vector<Complex> pts(res.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex z = region.center + Complex(-region.half_width + 2 * region.half_width * i / (n - 1),
                                                -region.half_width + 2 * region.half_width * j / (n - 1));
      pts[i * n + j] = z;
      try {
        res[i * n + j] = std::abs(fc.lavaurs(z).value - z);
      } catch (const Error&) {
      }
    }
  }
  std::vector<std::pair<Real, Complex>> seeds;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Real r = res[i * n + j];
      if (std::isnan(r)) continue;
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1 && is_min; ++dj) {
          const int a = i + di, b = j + dj;
          if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= n || b >= n) continue;
          const Real rn = res[a * n + b];
          if (!std::isnan(rn) && rn < r) is_min = false;
        }
      if (is_min) seeds.emplace_back(r, pts[i * n + j]);
    }
  }
  std::sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (seeds.size() > 12) seeds.resize(12);

  std::vector<LavaursFixedPoint> found;
  for (const auto& s : seeds) {
    try {
      LavaursFixedPoint fp = find_lavaurs_fixed_point(fc, s.second);
      if (!fp.attracting()) continue;
      const bool dup = std::any_of(found.begin(), found.end(),
                                   [&](const LavaursFixedPoint& q) { return std::abs(q.z - fp.z) < 1e-8; });
      if (!dup) found.push_back(fp);
    } catch (const Error&) {
    }
  }
  if (found.empty()) throw Error(ErrorKind::not_found, "no attracting fixed point found in scan region");
  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    return std::abs(a.z - region.center) < std::abs(b.z - region.center);
  });
  return found;
}

std::vector<LavaursFixedPoint> continue_lavaurs_fixed_point(const MapParams& p, Complex z0,
                                                            const std::vector<Complex>& deltas, int order) {
  MapParams p0 = p;
  p0.delta = 0;
  const Fatou2D fc0(compute_normal_form(p0, order));
  CPoint2 seed{z0, fc0.lavaurs({z0, 0}).value.c1};
  std::vector<LavaursFixedPoint> out;
  for (const Complex& d : deltas) {
    MapParams pd = p;
    pd.delta = d;
    const Fatou2D fc(compute_normal_form(pd, order));
    LavaursFixedPoint fp = find_lavaurs_fixed_point(fc, seed);
    seed = fp.p;
    out.push_back(fp);
  }
  return out;
}

}  // namespace lavaurs
