#pragma once

#include <cstdint>
#include <functional>

#include "lavaurs/types.hpp"

namespace lavaurs {

Complex q1(Complex z, const MapParams& p);
Complex q2(Complex w, const MapParams& p);

Complex f(Complex z, const MapParams& p);
Complex g(Complex w, const MapParams& p);
Complex f_w(Complex z, Complex w, const MapParams& p);

CPoint2 F(const CPoint2& zx, const MapParams& p);
CPoint2 G(const CPoint2& wy, const MapParams& p);
CPoint2 F_w(const CPoint2& zx, Complex w, const MapParams& p);
CPoint4 H(const CPoint4& q, const MapParams& p);

// Skew product (z, w) -> (f(z) + pi^2 w / 4, g(w)).
CPoint2 P(const CPoint2& zw, const MapParams& p);

// Inverses need delta != 0.
CPoint2 F_inv(const CPoint2& zx, const MapParams& p);
CPoint2 G_inv(const CPoint2& wy, const MapParams& p);
CPoint4 H_inv(const CPoint4& q, const MapParams& p);

using Map2 = std::function<CPoint2(const CPoint2&)>;
using Map4 = std::function<CPoint4(const CPoint4&)>;

// Central differences in each complex variable; the maps are holomorphic.
Complex jacobian_det_fd(const Map2& map, const CPoint2& at, Real h);
Complex jacobian_det_fd(const Map4& map, const CPoint4& at, Real h);

struct BasinProbe {
  bool converges = false;
  std::int64_t iters = 0;
};

// Converges once the orbit is in {Re(-1/c0) > R, |c1| < eta} and stays there for a few
// further steps; diverges once it leaves the bail radius. Throws indeterminate otherwise.
BasinProbe basin_probe(const Map2& map, const CPoint2& start, std::int64_t max_iter,
                       Real bail_radius, Real R, Real eta);

}  // namespace lavaurs
