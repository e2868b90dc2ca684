#include "lavaurs/jet.hpp"

#include <algorithm>
#include <string>

namespace lavaurs {

namespace {

void same_order(const Jet2& a, const Jet2& b) {
  if (a.order() != b.order())
    throw Error(ErrorKind::order_mismatch,
                "jet orders " + std::to_string(a.order()) + " and " + std::to_string(b.order()));
}

void check_finite(const Jet2& j) {
  for (const auto& c : j.coeffs())
    if (!is_finite(c)) throw Error(ErrorKind::invalid_argument, "non-finite jet coefficient");
}

}  // namespace

Jet2::Jet2(int order) : order_(order) {
  if (order < 1) throw Error(ErrorKind::invalid_argument, "jet order must be at least 1");
  c_.assign(index(0, order) + 1, Complex(0));
}

Jet2 Jet2::constant(int order, Complex c) {
  Jet2 j(order);
  j.c_[0] = c;
  return j;
}

Jet2 Jet2::var_z(int order) {
  Jet2 j(order);
  j.c_[index(1, 0)] = 1;
  return j;
}

Jet2 Jet2::var_x(int order) {
  Jet2 j(order);
  j.c_[index(0, 1)] = 1;
  return j;
}

Complex Jet2::operator()(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) return 0;
  return c_[index(i, j)];
}

Complex& Jet2::at(int i, int j) {
  if (i < 0 || j < 0 || i + j > order_)
    throw Error(ErrorKind::invalid_argument, "coefficient index beyond jet order");
  return c_[index(i, j)];
}

Jet2 Jet2::truncated(int k) const {
  Jet2 out = *this;
  for (int d = k + 1; d <= order_; ++d)
    for (int j = 0; j <= d; ++j) out.c_[index(d - j, j)] = 0;
  return out;
}

JetMap2 JetMap2::identity(int order) { return {Jet2::var_z(order), Jet2::var_x(order)}; }

Jet2 jet_add(const Jet2& a, const Jet2& b) {
  same_order(a, b);
  Jet2 out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.coeffs()[k] += b.coeffs()[k];
  return out;
}

Jet2 jet_sub(const Jet2& a, const Jet2& b) {
  same_order(a, b);
  Jet2 out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.coeffs()[k] -= b.coeffs()[k];
  return out;
}

Jet2 jet_scale(const Jet2& a, Complex s) {
  Jet2 out = a;
  for (auto& c : out.coeffs()) c *= s;
  return out;
}

Jet2 jet_mul(const Jet2& a, const Jet2& b) {
  same_order(a, b);
  const int L = a.order();
  Jet2 out(L);
  auto& oc = out.coeffs();
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  for (int da = 0; da <= L; ++da) {
    for (int ja = 0; ja <= da; ++ja) {
      const Complex ca = ac[Jet2::index(da - ja, ja)];
      if (ca == Complex(0)) continue;
      for (int db = 0; db + da <= L; ++db) {
        for (int jb = 0; jb <= db; ++jb) {
          const Complex cb = bc[Jet2::index(db - jb, jb)];
          if (cb == Complex(0)) continue;
          oc[Jet2::index(da - ja + db - jb, ja + jb)] += ca * cb;
        }
      }
    }
  }
  return out;
}

Jet2 jet_reciprocal(const Jet2& a) {
  const Complex c0 = a(0, 0);
  if (c0 == Complex(0)) throw Error(ErrorKind::invalid_argument, "reciprocal of a jet vanishing at the origin");
  const int L = a.order();
  // 1/a = (1/c0) * sum_k (-t)^k with t = a/c0 - 1, t = O(1)
  Jet2 t = jet_scale(a, Real(1) / c0);
  t.at(0, 0) -= Real(1);
  Jet2 minus_t = jet_scale(t, Real(-1));
  Jet2 sum = Jet2::constant(L, 1);
  Jet2 power = Jet2::constant(L, 1);
  for (int k = 1; k <= L; ++k) {
    power = power * minus_t;
    sum = sum + power;
  }
  return jet_scale(sum, Real(1) / c0);
}

Jet2 jet_compose(const Jet2& outer, const JetMap2& inner) {
  same_order(outer, inner.z);
  same_order(outer, inner.x);
  if (inner.z(0, 0) != Complex(0) || inner.x(0, 0) != Complex(0))
    throw Error(ErrorKind::invalid_argument, "jet_compose needs an inner map vanishing at the origin");
  check_finite(outer);
  const int L = outer.order();
  // Horner in z over x-polynomials: outer = sum_i z^i * (sum_j c_ij x^j)
  std::vector<Jet2> xpow(L + 1, Jet2(L));
  xpow[0] = Jet2::constant(L, 1);
  for (int j = 1; j <= L; ++j) xpow[j] = xpow[j - 1] * inner.x;

  Jet2 acc(L);
  for (int i = L; i >= 0; --i) {
    Jet2 row(L);
    for (int j = 0; i + j <= L; ++j) {
      const Complex c = outer(i, j);
      if (c != Complex(0)) row = row + jet_scale(xpow[j], c);
    }
    acc = acc * inner.z + row;
  }
  return acc;
}

JetMap2 jet_compose(const JetMap2& outer, const JetMap2& inner) {
  return {jet_compose(outer.z, inner), jet_compose(outer.x, inner)};
}

JetMap2 jet_invert_tangent_identity(const JetMap2& m) {
  const int L = m.order();
  same_order(m.z, m.x);
  constexpr Real kTol = 1e-12;
  const bool linear_ok = std::abs(m.z(0, 0)) <= kTol && std::abs(m.x(0, 0)) <= kTol &&
                         std::abs(m.z(1, 0) - Real(1)) <= kTol && std::abs(m.z(0, 1)) <= kTol &&
                         std::abs(m.x(1, 0)) <= kTol && std::abs(m.x(0, 1) - Real(1)) <= kTol;
  if (!linear_ok) throw Error(ErrorKind::invalid_argument, "jet map is not tangent to the identity");

  const JetMap2 id = JetMap2::identity(L);
  JetMap2 nonlinear{m.z - id.z, m.x - id.x};
  nonlinear.z.at(0, 0) = 0;
  nonlinear.x.at(0, 0) = 0;
  JetMap2 n = id;
  // each pass fixes one more degree
  for (int k = 0; k < L; ++k) {
    const JetMap2 corr = jet_compose(nonlinear, n);
    n = {id.z - corr.z, id.x - corr.x};
  }
  return n;
}

Complex jet_eval(const Jet2& j, Complex z, Complex x, Real trust_radius) {
  require_finite(z, "jet_eval");
  require_finite(x, "jet_eval");
  if (std::abs(z) > trust_radius || std::abs(x) > trust_radius)
    throw Error(ErrorKind::trust_radius,
                "jet evaluated at |z|=" + std::to_string(static_cast<double>(std::abs(z))) +
                    ", |x|=" + std::to_string(static_cast<double>(std::abs(x))) + " beyond trust radius " +
                    std::to_string(static_cast<double>(trust_radius)));
  const int L = j.order();
  Complex acc = 0;
  for (int i = L; i >= 0; --i) {
    Complex row = 0;
    for (int k = L - i; k >= 0; --k) row = row * x + j(i, k);
    acc = acc * z + row;
  }
  return acc;
}

CPoint2 jet_eval(const JetMap2& m, const CPoint2& p, Real trust_radius) {
  return {jet_eval(m.z, p.c0, p.c1, trust_radius), jet_eval(m.x, p.c0, p.c1, trust_radius)};
}

Real max_abs_coeff(const Jet2& j) {
  Real m = 0;
  for (const auto& c : j.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

Real max_abs_coeff(const JetMap2& m) { return std::max(max_abs_coeff(m.z), max_abs_coeff(m.x)); }

}  // namespace lavaurs
