#include "lavaurs/experiments.hpp"

#include <algorithm>
#include <boost/math/statistics/linear_regression.hpp>
#include <chrono>
#include <cmath>
#include <sstream>

#include "lavaurs/approx_fatou.hpp"
#include "lavaurs/maps.hpp"
#include "lavaurs/sampling.hpp"

namespace lavaurs {

const char* to_string(PassRule rule) {
  switch (rule) {
    case PassRule::monotone_decrease:
      return "monotone_decrease";
    case PassRule::slope:
      return "slope<=-0.2";
    case PassRule::monotone_and_slope:
      return "monotone_decrease+slope<=-0.2";
    case PassRule::zero_violations:
      return "zero_violations";
  }
  return "?";
}

Real fit_decay(const std::vector<ResidualPoint>& points) {
  if (points.size() < 3) throw Error(ErrorKind::invalid_argument, "fit_decay needs at least 3 points");
  std::vector<Real> x, y;
  for (const auto& pt : points) {
    if (pt.n <= 0) throw Error(ErrorKind::invalid_argument, "fit_decay needs positive n");
    x.push_back(std::log(static_cast<Real>(pt.n)));
    y.push_back(std::log(std::max(pt.residual, Real(1e-300))));
  }
  return boost::math::statistics::simple_ordinary_least_squares(x, y).second;
}

bool strictly_decreasing(const std::vector<ResidualPoint>& points) {
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i].residual < points[i - 1].residual)) return false;
  return true;
}

void ResidualSeries::finalize() {
  if (points.empty()) throw Error(ErrorKind::invalid_argument, "residual series " + label + " is empty");
  if (points.size() >= 3 && rule != PassRule::zero_violations) slope = fit_decay(points);
  const bool slope_ok = points.size() >= 3 && slope <= kSlopeThreshold;
  switch (rule) {
    case PassRule::monotone_decrease:
      pass = strictly_decreasing(points);
      break;
    case PassRule::slope:
      pass = slope_ok;
      break;
    case PassRule::monotone_and_slope:
      pass = strictly_decreasing(points) && slope_ok;
      break;
    case PassRule::zero_violations:
      pass = std::all_of(points.begin(), points.end(), [](const ResidualPoint& p) { return p.residual == 0; });
      break;
  }
}

// ---------------------------------------------------------------- schedule

Complex Schedule::w(std::int64_t m) const {
  if (m < 0 || m >= static_cast<std::int64_t>(g_orbit.size()))
    throw Error(ErrorKind::invalid_argument, "w_m requested beyond the cached G-orbit (m = " + std::to_string(m) + ")");
  return g_orbit[static_cast<std::size_t>(m)].c0;
}

Schedule make_schedule(const MapParams& p, std::vector<std::int64_t> n_list, std::vector<CPoint2> grid_F,
                       std::vector<CPoint2> grid_G, std::int64_t max_m) {
  if (grid_G.empty()) throw Error(ErrorKind::invalid_argument, "schedule needs a G seed");
  for (const auto& q : grid_F) {
    const auto probe = basin_probe([&](const CPoint2& v) { return F(v, p); }, q, p.max_iter, p.bail_radius, p.R, p.eta);
    if (!probe.converges) throw Error(ErrorKind::basin, "grid point of C_F is not in the basin of F");
  }
  // the attracting direction of g is the positive reals: probe G in the coordinate -w
  const Map2 G_flipped = [&](const CPoint2& v) {
    const CPoint2 im = G({-v.c0, v.c1}, p);
    return CPoint2{-im.c0, im.c1};
  };
  for (const auto& q : grid_G) {
    const auto probe = basin_probe(G_flipped, {-q.c0, q.c1}, p.max_iter, p.bail_radius, p.R, p.eta);
    if (!probe.converges) throw Error(ErrorKind::basin, "grid point of C_G is not in the basin of G");
  }
  Schedule s;
  s.n_list = std::move(n_list);
  s.grid_F = std::move(grid_F);
  s.grid_G = std::move(grid_G);
  s.g_orbit.reserve(static_cast<std::size_t>(max_m) + 1);
  CPoint2 q = s.grid_G.front();
  for (std::int64_t m = 0; m <= max_m; ++m) {
    s.g_orbit.push_back(q);
    q = G(q, p);
  }
  return s;
}

CPoint2 compose_F_chain(const Schedule& sched, const MapParams& p, std::int64_t m1, std::int64_t m2,
                        const CPoint2& seed, const NormalFormData* local) {
  if (m1 > m2) throw Error(ErrorKind::invalid_argument, "compose_F_chain needs m1 <= m2");
  require_finite(seed, "compose_F_chain");
  CPoint2 q = seed;
  for (std::int64_t m = m1; m < m2; ++m) {
    if (local) {
      try {
        q = F_tilde_w_eval(*local, q, sched.w(m));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::trust_radius) throw;
        throw Error(ErrorKind::trust_radius, "local chain left the trust radius at m = " + std::to_string(m));
      }
    } else {
      q = F_w(q, sched.w(m), p);
    }
  }
  return q;
}

// ---------------------------------------------------------------- configuration

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"prop_a",        "prop2",         "prop51", "prop53_54",
                                              "properties_1d", "properties_2d", "omega",  "wandering"};
  return names;
}

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig c;
  if (experiment == "prop_a") {
    c.n_list = {5, 10, 15, 20};
    c.params.delta = 1e-3;
    c.spacing = 0.01;
  } else if (experiment == "prop2") {
    c.n_list = {10, 20, 40};
  } else if (experiment == "prop51" || experiment == "prop53_54") {
    c.n_list = {8, 16, 32};
    c.params.delta = 1e-3;
    c.params.trust_radius = 1;
    c.spacing = 0.005;
    c.x_offsets = {Complex(0), Complex(0.005)};
  } else if (experiment == "properties_1d" || experiment == "properties_2d") {
    c.m_list = {1024, 2048, 4096, 8192};
    c.params.alpha = 0.505;
    c.params.zeta = ZetaChoice::invariant_curves;
    c.samples = 512;
    if (experiment == "properties_2d") {
      c.params.delta = 1e-3;
      c.params.trust_radius = 1;
    }
  } else if (experiment == "omega") {
    c.params.delta = 1e-3;
    c.params.trust_radius = 1;
    c.samples = 200;
  } else if (experiment == "wandering") {
    c.params.delta = 1e-3;
    c.j_max = 12;
  } else {
    throw Error(ErrorKind::invalid_argument, "unknown experiment '" + experiment + "'");
  }
  return c;
}

namespace {

std::vector<Complex> square_grid(Complex center, Real spacing, int n) {
  std::vector<Complex> out;
  const Real h = (n - 1) / Real(2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.push_back(center + spacing * Complex(i - h, j - h));
  return out;
}

std::string fmt(Complex c) {
  std::ostringstream os;
  os.precision(17);
  os << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
  return os.str();
}

std::string fmt(Real r) {
  std::ostringstream os;
  os.precision(17);
  os << r;
  return os.str();
}

void check_orbit(const CPoint4& q, Real bail, std::int64_t step, Complex start) {
  if (!is_finite(q) || norm(q) > bail)
    throw Error(ErrorKind::basin, "orbit from z = " + fmt(start) + " escaped at step " + std::to_string(step));
}

}  // namespace

Complex phi_zero_point(const MapParams& p) {
  MapParams p0 = p;
  p0.delta = 0;
  return Fatou1D(p0).phi_inverse(0, Complex(-1));
}

Complex resolve_lavaurs_z0(const ExperimentConfig& cfg) {
  if (cfg.lavaurs_z0) return *cfg.lavaurs_z0;
  MapParams p0 = cfg.params;
  p0.delta = 0;
  return scan_lavaurs_fixed_points(Fatou1D(p0), cfg.scan).front().z;
}

// ---------------------------------------------------------------- transition to the Lavaurs map

ResidualSeries run_prop_A(const ExperimentConfig& cfg, Complex z0) {
  const MapParams& p = cfg.params;
  validate(p);
  if (cfg.dims != 1 && cfg.dims != 2 && cfg.dims != 4)
    throw Error(ErrorKind::invalid_argument, "dims must be 1, 2 or 4");
  if (cfg.n_list.empty()) throw Error(ErrorKind::invalid_argument, "n_list is empty");
  const Complex center = cfg.center.value_or(z0);
  const std::vector<Complex> zs = square_grid(center, cfg.spacing, cfg.grid);
  const std::int64_t n_max = *std::max_element(cfg.n_list.begin(), cfg.n_list.end());

  ResidualSeries s;
  s.rule = PassRule::monotone_decrease;
  s.label = "prop_a_dims" + std::to_string(cfg.dims);
  s.aux1_name = "z_residual";
  s.aux2_name = "max_|w|";

  if (cfg.dims == 4) {
    validate_for_4d(p);
    const Fatou2D fc(compute_normal_form(p, cfg.normal_form_order));
    std::vector<CPoint2> pts;
    for (const auto& z : zs) pts.push_back({z, cfg.x_offsets.front()});
    std::vector<CPoint2> targets(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { targets[i] = fc.lavaurs(pts[i]).value; });
    const Schedule sched = make_schedule(p, cfg.n_list, {}, {cfg.g_seed}, n_max * n_max);
    for (const auto n : cfg.n_list) {
      std::vector<ResidualPoint> per(pts.size());
      parallel_for(pts.size(), [&](std::size_t i) {
        const CPoint2 wy = sched.g_orbit[static_cast<std::size_t>(n * n)];
        CPoint4 q{pts[i].c0, pts[i].c1, wy.c0, wy.c1};
        for (std::int64_t k = 0; k < 2 * n + 1; ++k) {
          q = H(q, p);
          check_orbit(q, p.bail_radius, k, pts[i].c0);
        }
        const CPoint4 d{q.z - targets[i].c0, q.x - targets[i].c1, q.w, q.y};
        per[i] = {n, norm(d), std::abs(d.z), std::abs(q.w)};
      });
      ResidualPoint r{n, 0, 0, 0};
      for (const auto& x : per) {
        r.residual = std::max(r.residual, x.residual);
        r.aux1 = std::max(r.aux1, x.aux1);
        r.aux2 = std::max(r.aux2, x.aux2);
      }
      s.points.push_back(r);
    }
  } else {
    MapParams p0 = p;
    p0.delta = 0;
    const Fatou1D fc(p0);
    std::vector<Complex> targets(zs.size());
    parallel_for(zs.size(), [&](std::size_t i) { targets[i] = fc.lavaurs(zs[i]).value; });
    std::vector<Complex> ws{cfg.g_seed.c0};
    for (std::int64_t m = 0; m < n_max * n_max; ++m) ws.push_back(g(ws.back(), p));
    for (const auto n : cfg.n_list) {
      ResidualPoint r{n, 0, 0, 0};
      for (std::size_t i = 0; i < zs.size(); ++i) {
        CPoint2 q{zs[i], ws[static_cast<std::size_t>(n * n)]};
        for (std::int64_t k = 0; k < 2 * n + 1; ++k) {
          q = P(q, p);
          if (!is_finite(q) || norm(q) > p.bail_radius)
            throw Error(ErrorKind::basin, "orbit from z = " + fmt(zs[i]) + " escaped at step " + std::to_string(k));
        }
        const Real dz = std::abs(q.c0 - targets[i]);
        const Real res = cfg.dims == 1 ? dz : std::hypot(dz, std::abs(q.c1));
        r.residual = std::max(r.residual, res);
        r.aux1 = std::max(r.aux1, dz);
        r.aux2 = std::max(r.aux2, std::abs(q.c1));
      }
      s.points.push_back(r);
    }
  }
  s.finalize();
  return s;
}

// ---------------------------------------------------------------- sum identity

ResidualSeries run_prop2(const ExperimentConfig& cfg) {
  const MapParams& p = cfg.params;
  validate(p);
  if (cfg.n_list.empty()) throw Error(ErrorKind::invalid_argument, "n_list is empty");
  const std::int64_t n_max = *std::max_element(cfg.n_list.begin(), cfg.n_list.end());
  const Schedule sched = make_schedule(p, cfg.n_list, {}, {cfg.g_seed}, n_max * n_max + 2 * n_max);
  ResidualSeries s;
  s.label = "prop2";
  s.rule = PassRule::monotone_and_slope;
  s.aux1_name = "k_n";
  s.aux2_name = "|1/w_(n^2+k_n)-(n^2+k_n)|/log(n)";
  for (const auto n : cfg.n_list) {
    const std::int64_t k = k_n(n, p.alpha);
    Complex sum = 0;
    for (std::int64_t m = n * n + k; m <= n * n + 2 * n - k; ++m) sum += std::sqrt(sched.w(m)) / Real(2);
    const Real res = std::abs(Real(2 * n) * sum - Real(2 * n - 2 * k));
    const std::int64_t mk = n * n + k;
    const Real drift = std::abs(Real(1) / sched.w(mk) - Real(mk)) / std::log(static_cast<Real>(n));
    s.points.push_back({n, res, static_cast<Real>(k), drift});
  }
  s.finalize();
  return s;
}

// ---------------------------------------------------------------- wandering demo

WanderingReport wandering_orbit_demo(const ExperimentConfig& cfg, const LavaursFixedPoint& fp, const CPoint4& seed) {
  const MapParams& p = cfg.params;
  validate_for_4d(p);
  require_finite(seed, "wandering_orbit_demo");
  const std::int64_t clock = cfg.wander_clock, first = cfg.wander_first_j;
  if (clock < 0 || first < 0 || first * first < clock || cfg.j_max < first + 2)
    throw Error(ErrorKind::invalid_argument, "wandering needs first_j^2 >= clock and j_max >= first_j + 2");
  WanderingReport rep;
  rep.fixed_point = fp;
  rep.distances.label = "wandering";
  rep.distances.rule = PassRule::slope;
  rep.distances.aux1_name = "min_wy_separation";
  rep.distances.aux2_name = "|w_(j^2)|";
  const CPoint4 target{fp.p.c0, fp.p.c1, 0, 0};
  std::vector<CPoint2> wy;
  CPoint4 q = seed;
  std::int64_t t = clock;  // the seed is the orbit at time `clock`
  Real min_sep = std::numeric_limits<Real>::infinity();
  for (std::int64_t j = first; j <= cfg.j_max && rep.escape_step < 0; ++j) {
    for (; t < j * j; ++t) {
      q = H(q, p);
      if (!is_finite(q) || norm(q) > p.bail_radius) {
        rep.escape_step = t + 1 - clock;
        break;
      }
    }
    if (rep.escape_step >= 0) break;
    const CPoint2 cur{q.w, q.y};
    for (const auto& prev : wy) min_sep = std::min(min_sep, norm(cur - prev));
    wy.push_back(cur);
    rep.distances.points.push_back({j, norm(q - target), min_sep, std::abs(q.w)});
  }
  rep.min_wy_separation = min_sep;
  if (rep.distances.points.size() >= 3) rep.distances.finalize();
  if (rep.escape_step >= 0) rep.distances.pass = false;
  return rep;
}

// ---------------------------------------------------------------- dispatch

ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.experiment = name;
  if (name == "prop_a") {
    const Complex z0 = resolve_lavaurs_z0(cfg);
    rep.facts.push_back({"lavaurs_z0", fmt(z0)});
    rep.series.push_back(run_prop_A(cfg, z0));
  } else if (name == "prop2") {
    rep.series.push_back(run_prop2(cfg));
  } else if (name == "prop51") {
    std::int64_t kappa0 = 0;
    rep.series.push_back(run_prop51(cfg, &kappa0));
    rep.facts.push_back({"kappa0", std::to_string(kappa0)});
    std::string late;
    for (const auto n : cfg.n_list)
      if (kappa0 > k_n(n, cfg.params.alpha)) late += (late.empty() ? "" : ",") + std::to_string(n);
    if (!late.empty()) rep.facts.push_back({"kappa0_exceeds_k_n_at", late});
  } else if (name == "prop53_54") {
    auto pr = run_prop53_54(cfg);
    rep.series.push_back(pr.first);
    rep.series.push_back(pr.second);
  } else if (name == "properties_1d") {
    rep.series = run_properties_1d(cfg);
  } else if (name == "properties_2d") {
    rep.series = run_properties_2d(cfg);
  } else if (name == "omega") {
    auto pr = run_omega(cfg);
    rep.series.push_back(pr.first);
    rep.series.push_back(pr.second);
  } else if (name == "wandering") {
    const Complex z0 = resolve_lavaurs_z0(cfg);
    const auto ladder = continue_lavaurs_fixed_point(cfg.params, z0, {cfg.params.delta}, cfg.normal_form_order);
    const LavaursFixedPoint& fp = ladder.back();
    const CPoint4 seed{fp.p.c0 + cfg.wander_offset, fp.p.c1, cfg.g_seed.c0, cfg.g_seed.c1};
    WanderingReport w = wandering_orbit_demo(cfg, fp, seed);
    rep.facts.push_back({"lavaurs_z0", fmt(z0)});
    rep.facts.push_back({"fixed_point_z", fmt(fp.p.c0)});
    rep.facts.push_back({"fixed_point_x", fmt(fp.p.c1)});
    rep.facts.push_back({"multiplier", fmt(fp.multiplier)});
    rep.facts.push_back({"min_wy_separation", fmt(w.min_wy_separation)});
    if (w.escape_step >= 0) rep.facts.push_back({"escaped_at_step", std::to_string(w.escape_step)});
    rep.series.push_back(w.distances);
  } else {
    throw Error(ErrorKind::invalid_argument, "unknown experiment '" + name + "'");
  }
  rep.pass = std::all_of(rep.series.begin(), rep.series.end(), [](const ResidualSeries& s) { return s.pass; });
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace lavaurs
