#include "lavaurs/types.hpp"

#include <cmath>

namespace lavaurs {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::non_invertible: return "non_invertible";
    case ErrorKind::order_mismatch: return "order_mismatch";
    case ErrorKind::trust_radius: return "trust_radius";
    case ErrorKind::basin: return "basin";
    case ErrorKind::stagnation: return "stagnation";
    case ErrorKind::branch: return "branch";
    case ErrorKind::newton: return "newton";
    case ErrorKind::not_attracting: return "not_attracting";
    case ErrorKind::indeterminate: return "indeterminate";
    case ErrorKind::pole: return "pole";
    case ErrorKind::not_found: return "not_found";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

Real norm(const CPoint2& p) { return std::sqrt(std::norm(p.c0) + std::norm(p.c1)); }

Real norm(const CPoint4& p) {
  return std::sqrt(std::norm(p.z) + std::norm(p.x) + std::norm(p.w) + std::norm(p.y));
}

void require_finite(Complex c, const char* where) {
  if (!is_finite(c)) throw Error(ErrorKind::invalid_argument, std::string("non-finite input to ") + where);
}

void require_finite(const CPoint2& p, const char* where) {
  if (!is_finite(p)) throw Error(ErrorKind::invalid_argument, std::string("non-finite input to ") + where);
}

void require_finite(const CPoint4& p, const char* where) {
  if (!is_finite(p)) throw Error(ErrorKind::invalid_argument, std::string("non-finite input to ") + where);
}

namespace {

void positive(Real v, const char* name) {
  if (!(v > 0) || !std::isfinite(v))
    throw Error(ErrorKind::invalid_argument, std::string(name) + " must be a positive finite number");
}

}  // namespace

void validate(const MapParams& p) {
  if (!is_finite(p.a)) throw Error(ErrorKind::invalid_argument, "a must be finite");
  if (!is_finite(p.delta)) throw Error(ErrorKind::invalid_argument, "delta must be finite");
  if (!(std::abs(p.delta) < 1)) throw Error(ErrorKind::invalid_argument, "delta must satisfy |delta| < 1");
  for (const auto& c : p.q2_coeffs)
    if (!is_finite(c)) throw Error(ErrorKind::invalid_argument, "q2_coeffs must be finite");
  if (!(p.alpha > 0.5 && p.alpha < 2.0 / 3.0))
    throw Error(ErrorKind::invalid_argument, "alpha must lie in (1/2, 2/3)");
  positive(p.R, "R");
  positive(p.R_prime, "R_prime");
  positive(p.eta, "eta");
  positive(p.C_omega, "C_omega");
  positive(p.s, "s");
  positive(p.tol_limit, "tol_limit");
  positive(p.tol_newton, "tol_newton");
  positive(p.bail_radius, "bail_radius");
  if (p.series_order < 0 || p.series_order > 24)
    throw Error(ErrorKind::invalid_argument, "series_order must lie in [0, 24]");
  if (p.max_iter < 1) throw Error(ErrorKind::invalid_argument, "max_iter must be at least 1");
  if (!(p.trust_radius >= 0) || !std::isfinite(p.trust_radius))
    throw Error(ErrorKind::invalid_argument, "trust_radius must be >= 0");
}

void validate_for_4d(const MapParams& p) {
  validate(p);
  if (!(std::abs(p.delta) < 1 / (4 * std::pow(kPi, 4))))
    throw Error(ErrorKind::invalid_argument, "delta must satisfy |delta| < 1/(4 pi^4) for four-dimensional runs");
}

}  // namespace lavaurs
