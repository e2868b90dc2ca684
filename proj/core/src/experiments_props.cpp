#include <algorithm>
#include <cmath>

#include "lavaurs/approx_fatou.hpp"
#include "lavaurs/experiments.hpp"
#include "lavaurs/maps.hpp"
#include "lavaurs/sampling.hpp"

namespace lavaurs {

namespace {

struct Setup {
  NormalFormData nf;
  std::vector<CPoint2> pts;
};

Setup section5_setup(const ExperimentConfig& cfg) {
  const MapParams& p = cfg.params;
  validate(p);
  if (cfg.n_list.empty()) throw Error(ErrorKind::invalid_argument, "n_list is empty");
  Setup s;
  s.nf = compute_normal_form(p, cfg.normal_form_order);
  const Complex center = cfg.center.value_or(phi_zero_point(p));
  const Real h = (cfg.grid - 1) / Real(2);
  for (int i = 0; i < cfg.grid; ++i)
    for (int j = 0; j < cfg.grid; ++j)
      for (const auto& x : cfg.x_offsets) s.pts.push_back({center + cfg.spacing * Complex(i - h, j - h), x});
  return s;
}

std::int64_t max_n(const ExperimentConfig& cfg) { return *std::max_element(cfg.n_list.begin(), cfg.n_list.end()); }

// Smallest kappa with F^kappa(pts) inside {Re(-1/z) > R, |x| < eta}.
std::int64_t entry_time(const std::vector<CPoint2>& pts, const MapParams& p, Real R) {
  std::vector<CPoint2> q = pts;
  for (std::int64_t kappa = 0; kappa <= 10000; ++kappa) {
    const bool inside = std::all_of(q.begin(), q.end(), [&](const CPoint2& v) {
      return v.c0 != Complex(0) && (Real(-1) / v.c0).real() > R && std::abs(v.c1) < p.eta;
    });
    if (inside) return kappa;
    for (auto& v : q) v = F(v, p);
  }
  throw Error(ErrorKind::basin, "grid does not enter the attracting petal");
}

// Global chain pushed into the local chart: the local chain equals U o (global chain) o U^{-1}.
CPoint2 local_chain(const Schedule& sched, const NormalFormData& nf, std::int64_t m1, std::int64_t m2,
                    const CPoint2& global_seed, CPoint2* global_out) {
  const CPoint2 g = compose_F_chain(sched, nf.params, m1, m2, global_seed);
  if (global_out) *global_out = g;
  return U_eval(nf, g);
}

}  // namespace

ResidualSeries run_prop51(const ExperimentConfig& cfg, std::int64_t* kappa0_out) {
  const MapParams& p = cfg.params;
  const Setup st = section5_setup(cfg);
  const Fatou2D fc(st.nf);
  const std::int64_t nm = max_n(cfg);
  const Schedule sched = make_schedule(p, cfg.n_list, st.pts, {cfg.g_seed}, (nm + 1) * (nm + 1));
  const std::int64_t kappa0 = entry_time(st.pts, p, cfg.small_petal_R);
  if (kappa0_out) *kappa0_out = kappa0;

  std::vector<Complex> phi0(st.pts.size());
  parallel_for(st.pts.size(), [&](std::size_t i) { phi0[i] = fc.Phi_F(st.pts[i]).value; });

  ResidualSeries s;
  s.label = "prop51";
  s.rule = PassRule::slope;
  s.aux1_name = "omega_violations";
  s.aux2_name = "max|z_in*k_n+1|";
  for (const auto n : cfg.n_list) {
    const std::int64_t k = k_n(n, p.alpha);
    std::vector<ResidualPoint> per(st.pts.size());
    parallel_for(st.pts.size(), [&](std::size_t i) {
      const CPoint2 zi = local_chain(sched, st.nf, n * n, n * n + k, st.pts[i], nullptr);
      const Real res = std::abs(fc.Phi_Ftilde(zi).value - phi0[i] - Real(k));
      const Real omega_bad = in_Omega(zi, sched.w(n * n + k), p.C_omega) ? 0 : 1;
      per[i] = {n, res, omega_bad, std::abs(zi.c0 * Real(k) + Real(1))};
    });
    ResidualPoint r{n, 0, 0, 0};
    for (const auto& x : per) {
      r.residual = std::max(r.residual, x.residual);
      r.aux1 += x.aux1;
      r.aux2 = std::max(r.aux2, x.aux2);
    }
    s.points.push_back(r);
  }
  s.finalize();
  return s;
}

std::pair<ResidualSeries, ResidualSeries> run_prop53_54(const ExperimentConfig& cfg) {
  const MapParams& p = cfg.params;
  const Setup st = section5_setup(cfg);
  const Fatou2D fc(st.nf);
  const std::int64_t nm = max_n(cfg);
  const Schedule sched = make_schedule(p, cfg.n_list, st.pts, {cfg.g_seed}, (nm + 1) * (nm + 1));

  ResidualSeries s53, s54;
  s53.label = "prop53";
  s53.rule = PassRule::slope;
  s53.aux1_name = "max|z_out*k_n-1|";
  s53.aux2_name = "max|u_out-x_out|";
  s54.label = "prop54";
  s54.rule = PassRule::slope;
  s54.aux1_name = "min_kappa1";
  s54.aux2_name = "k_n";

  struct Row {
    Real r53, r54, ratio, ux;
    std::int64_t kappa1;
  };
  for (const auto n : cfg.n_list) {
    const std::int64_t k = k_n(n, p.alpha);
    const std::int64_t n1sq = (n + 1) * (n + 1);
    std::vector<Row> rows(st.pts.size());
    parallel_for(st.pts.size(), [&](std::size_t i) {
      CPoint2 gi, go;
      const CPoint2 zi = local_chain(sched, st.nf, n * n, n * n + k, st.pts[i], &gi);
      const CPoint2 zo = local_chain(sched, st.nf, n * n + k, n1sq - k, gi, &go);
      const Complex phi_in = fc.Phi_Ftilde(zi).value;
      const Fatou2D::Lift lift = fc.lift_to_repelling(zo.c0);
      Row row{};
      row.r53 = std::abs(lift.Z - phi_in + Real(2 * k));
      row.ratio = std::abs(zo.c0 * Real(k) - Real(1));
      row.ux = std::abs(lift.point.c1 - zo.c1);
      const auto kappa1 = static_cast<std::int64_t>(std::ceil(lift.Z.real() + Real(k) + cfg.small_petal_R + 1));
      row.kappa1 = std::clamp<std::int64_t>(kappa1, 1, k);
      const CPoint2 chain_out = local_chain(sched, st.nf, n1sq - k, n1sq - row.kappa1, go, nullptr);
      CPoint2 ref = U_inv_eval(st.nf, lift.point);
      for (std::int64_t j = 0; j < k - row.kappa1; ++j) ref = F(ref, p);
      row.r54 = norm(chain_out - U_eval(st.nf, ref));
      rows[i] = row;
    });
    ResidualPoint a{n, 0, 0, 0}, b{n, 0, static_cast<Real>(k), static_cast<Real>(k)};
    for (const auto& r : rows) {
      a.residual = std::max(a.residual, r.r53);
      a.aux1 = std::max(a.aux1, r.ratio);
      a.aux2 = std::max(a.aux2, r.ux);
      b.residual = std::max(b.residual, r.r54);
      b.aux1 = std::min(b.aux1, static_cast<Real>(r.kappa1));
    }
    s53.points.push_back(a);
    s54.points.push_back(b);
  }
  s53.finalize();
  s54.finalize();
  return {s53, s54};
}

namespace {

ResidualSeries property_series(const std::string& label) {
  ResidualSeries s;
  s.label = label;
  s.rule = PassRule::slope;
  s.aux1_name = "|w_m|";
  s.aux2_name = "samples_used";
  return s;
}

Complex strip_point(const WContext& c, Real u, Real v) {
  return {c.r_w / 10 + u * (1 - c.r_w / 5), Real(-0.5) + v};
}

void require_m_list(const ExperimentConfig& cfg) {
  if (cfg.m_list.size() < 3) throw Error(ErrorKind::invalid_argument, "m_list needs at least 3 entries");
  if (cfg.samples < 1) throw Error(ErrorKind::invalid_argument, "samples must be positive");
}

}  // namespace

std::vector<ResidualSeries> run_properties_1d(const ExperimentConfig& cfg) {
  require_m_list(cfg);
  MapParams p = cfg.params;
  p.delta = 0;
  validate(p);
  const Fatou1D fc(p);
  const std::int64_t mm = *std::max_element(cfg.m_list.begin(), cfg.m_list.end());
  const Schedule sched = make_schedule(p, {}, {}, {cfg.g_seed}, mm + 1);
  const auto samples = sobol_points(static_cast<std::size_t>(cfg.samples), 2, cfg.sample_skip);

  std::vector<ResidualSeries> out{property_series("property1"), property_series("property2"),
                                  property_series("property3_rel")};
  for (const auto m : cfg.m_list) {
    const Complex w = sched.w(m);
    const WContext c = make_wcontext(w, p, p.a);
    const WContext cn = make_wcontext(sched.w(m + 1), p, p.a);
    std::vector<std::array<Real, 3>> r(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
      const Real u = samples[i][0], v = samples[i][1];
      const Complex Z1 = disk_point(c.R_w, c.R_w / 10, u, v);
      r[i][0] = std::abs(Real(2) / c.sqrt_w * phi_w(fc.phi_inverse(Z1), c) - Z1);
      const Complex Z2 = disk_point(-c.R_w, c.R_w / 10, u, v);
      r[i][1] = std::abs(fc.psi_inverse(phi_w_inv(Real(1) + c.sqrt_w / Real(2) * Z2, c)) - Z2);
      const Complex Z3 = strip_point(c, u, v);
      const Complex z = phi_w_inv(Z3, c);
      r[i][2] = std::abs(phi_w(f_w(z, w, p), cn) - Z3 - c.sqrt_w / Real(2)) / std::abs(w);
    });
    for (int k = 0; k < 3; ++k) {
      Real worst = 0;
      for (const auto& x : r) worst = std::max(worst, x[k]);
      out[k].points.push_back({m, worst, std::abs(w), static_cast<Real>(samples.size())});
    }
  }
  for (auto& s : out) s.finalize();
  return out;
}

std::vector<ResidualSeries> run_properties_2d(const ExperimentConfig& cfg) {
  require_m_list(cfg);
  const MapParams& p = cfg.params;
  validate(p);
  const NormalFormData nf = compute_normal_form(p, cfg.normal_form_order);
  const Fatou2D fc(nf);
  const std::int64_t mm = *std::max_element(cfg.m_list.begin(), cfg.m_list.end());
  const Schedule sched = make_schedule(p, {}, {}, {cfg.g_seed}, mm + 1);
  const auto samples = sobol_points(static_cast<std::size_t>(cfg.samples), 4, cfg.sample_skip);
  const Real C = p.C_omega;

  // x radius of the Omega_w slice, kept inside the polydisk of radius s
  auto x_radius = [&](Complex z, Complex w) { return std::min(p.s, C * std::max(std::norm(z), std::norm(w))); };
  // z with Phi_Ftilde(z, x) = Z on the fiber over x = xfrac * x_radius, by Newton with a central-difference derivative
  auto fiber_inverse = [&](Complex Z, Complex xfrac, Complex w) {
    Complex z = Real(-1) / fc.series().attracting_inverse(Z, p.tol_newton);
    const Complex x = xfrac * x_radius(z, w);
    for (int it = 0; it < 60; ++it) {
      const Complex r = fc.Phi_Ftilde({z, x}).value - Z;
      // Phi_Ftilde itself is only accurate to tol_limit
      if (std::abs(r) <= 10 * p.tol_limit * (1 + std::abs(Z))) return CPoint2{z, x};
      const Real h = Real(1e-6) * std::abs(z);
      const Complex d = (fc.Phi_Ftilde({z + h, x}).value - fc.Phi_Ftilde({z - h, x}).value) / (2 * h);
      const Complex step = r / d;
      z -= step;
      if (std::abs(step) <= p.tol_newton * std::abs(z)) return CPoint2{z, x};
    }
    throw Error(ErrorKind::newton, "fiber inverse of Phi_Ftilde did not converge");
  };

  std::vector<ResidualSeries> out{property_series("property1p"), property_series("property2p"),
                                  property_series("property3p_rel")};
  for (const auto m : cfg.m_list) {
    const Complex w = sched.w(m);
    const WContext c = make_wcontext(w, p, nf.a3);
    const WContext cn = make_wcontext(sched.w(m + 1), p, nf.a3);
    std::vector<std::array<Real, 3>> r(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
      const Real u = samples[i][0], v = samples[i][1];
      const Complex xfrac = disk_point(0, Real(0.9), samples[i][2], samples[i][3]);
      const Complex Z1 = disk_point(c.R_w, c.R_w / 10, u, v);
      const CPoint2 q1 = fiber_inverse(Z1, xfrac, w);
      r[i][0] = std::abs(Real(2) / c.sqrt_w * Phi_w(q1, c) - Z1);
      const Complex Z2 = disk_point(-c.R_w, c.R_w / 10, u, v);
      r[i][1] = std::abs(fc.lift_to_repelling(phi_w_inv(Real(1) + c.sqrt_w / Real(2) * Z2, c)).Z - Z2);
      const Complex Z3 = strip_point(c, u, v);
      const Complex z = phi_w_inv(Z3, c);
      const CPoint2 q3{z, xfrac * x_radius(z, w)};
      // strip points whose orbit leaves the chart of the normal form are skipped and counted
      r[i][2] = -1;
      if (std::abs(z) <= nf.trust_radius / 2) {
        try {
          const CPoint2 img = F_tilde_w_eval(nf, q3, w);
          r[i][2] = std::abs(Phi_w(img, cn) - Z3 - c.sqrt_w / Real(2)) / std::abs(w);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::trust_radius) throw;
        }
      }
    });
    for (int k = 0; k < 3; ++k) {
      Real worst = 0, used = 0;
      for (const auto& x : r) {
        if (x[k] < 0) continue;
        worst = std::max(worst, x[k]);
        used += 1;
      }
      out[k].points.push_back({m, worst, std::abs(w), used});
    }
  }
  for (auto& s : out) s.finalize();
  return out;
}

std::pair<ResidualSeries, ResidualSeries> run_omega(const ExperimentConfig& cfg) {
  const MapParams& p = cfg.params;
  validate(p);
  if (cfg.orbits < 1 || cfg.tail_length < 1 || cfg.tail_start < 0 || cfg.samples < 1)
    throw Error(ErrorKind::invalid_argument, "omega needs positive orbits, tail_length and samples");
  const NormalFormData nf = compute_normal_form(p, cfg.normal_form_order);
  const Real C = p.C_omega;
  const std::int64_t end = cfg.tail_start + cfg.tail_length;

  std::vector<Schedule> orbits;
  const Complex spread(0.004, 0.004);
  for (int o = 0; o < cfg.orbits; ++o) {
    const CPoint2 seed{cfg.g_seed.c0 + Real(o) * spread, cfg.g_seed.c1 + Real(o) * Real(1e-4)};
    orbits.push_back(make_schedule(p, {}, {}, {seed}, end + 1));
  }
  const auto samples = sobol_points(static_cast<std::size_t>(cfg.samples), 4, cfg.sample_skip);

  ResidualSeries s42, s43;
  s42.label = "omega_invariance";
  s42.rule = PassRule::zero_violations;
  s42.aux1_name = "max_ratio";
  s42.aux2_name = "points";
  s43.label = "y_bound";
  s43.rule = PassRule::zero_violations;
  s43.aux1_name = "max_ratio";
  s43.aux2_name = "orbits";
  for (std::int64_t n = cfg.tail_start; n < end; ++n) {
    Real bad42 = 0, ratio42 = 0, bad43 = 0, ratio43 = 0;
    for (const auto& orb : orbits) {
      const Complex w = orb.w(n);
      const Complex w1 = orb.w(n + 1);
      std::vector<std::pair<Real, Real>> r(samples.size());
      parallel_for(samples.size(), [&](std::size_t i) {
        const Complex z = disk_point(0, p.s, samples[i][0], samples[i][1]);
        const Real xr = std::min(p.s, C * std::max(std::norm(z), std::norm(w)));
        const CPoint2 q{z, disk_point(0, xr, samples[i][2], samples[i][3])};
        const CPoint2 img = F_tilde_w_eval(nf, q, w);
        const Real ratio = std::abs(img.c1) / (C * std::max(std::norm(img.c0), std::norm(w1)));
        r[i] = {in_Omega(img, w1, C) ? Real(0) : Real(1), ratio};
      });
      for (const auto& x : r) {
        bad42 += x.first;
        ratio42 = std::max(ratio42, x.second);
      }
      const CPoint2 wy = orb.g_orbit[static_cast<std::size_t>(n)];
      const Real ratio = std::abs(wy.c1) / (C * std::norm(wy.c0));
      ratio43 = std::max(ratio43, ratio);
      if (!(ratio <= 1)) bad43 += 1;
    }
    s42.points.push_back({n, bad42, ratio42, static_cast<Real>(samples.size() * orbits.size())});
    s43.points.push_back({n, bad43, ratio43, static_cast<Real>(orbits.size())});
  }
  s42.finalize();
  s43.finalize();
  return {s42, s43};
}

}  // namespace lavaurs
