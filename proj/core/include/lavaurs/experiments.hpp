#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lavaurs/fatou.hpp"
#include "lavaurs/normal_form.hpp"
#include "lavaurs/types.hpp"

namespace lavaurs {

inline constexpr Real kSlopeThreshold = -0.2;

enum class PassRule {
  monotone_decrease,
  slope,
  monotone_and_slope,
  zero_violations,  // residual column counts violations
};

const char* to_string(PassRule rule);

struct ResidualPoint {
  std::int64_t n = 0;
  Real residual = 0;
  Real aux1 = 0;
  Real aux2 = 0;
};

struct ResidualSeries {
  std::string label;
  std::string aux1_name;
  std::string aux2_name;
  std::vector<ResidualPoint> points;
  Real slope = std::numeric_limits<Real>::quiet_NaN();
  PassRule rule = PassRule::slope;
  bool pass = false;

  // Computes slope (when there are at least 3 points) and pass.
  void finalize();
};

// Least-squares slope of log r against log n; zero residuals are clamped to 1e-300.
Real fit_decay(const std::vector<ResidualPoint>& points);
bool strictly_decreasing(const std::vector<ResidualPoint>& points);

struct Schedule {
  std::vector<std::int64_t> n_list;
  std::vector<CPoint2> grid_F;
  std::vector<CPoint2> grid_G;
  std::vector<CPoint2> g_orbit;  // G^m(grid_G[0]), m = 0..size-1

  Complex w(std::int64_t m) const;
};

// Checks every grid point with basin_probe and caches the G-orbit through max_m.
Schedule make_schedule(const MapParams& p, std::vector<std::int64_t> n_list, std::vector<CPoint2> grid_F,
                       std::vector<CPoint2> grid_G, std::int64_t max_m);

// F_{w_{m2-1}} o ... o F_{w_{m1}}; with `local` the conjugated maps of the normal form are used step by step.
CPoint2 compose_F_chain(const Schedule& sched, const MapParams& p, std::int64_t m1, std::int64_t m2,
                        const CPoint2& seed, const NormalFormData* local = nullptr);

struct ExperimentConfig {
  MapParams params;
  std::vector<std::int64_t> n_list;
  std::optional<Complex> center;  // grid centre; per-experiment default when unset
  Real spacing = 0.01;
  int grid = 3;
  std::vector<Complex> x_offsets{Complex(0)};
  CPoint2 g_seed{Complex(0.05), Complex(0)};
  int dims = 1;
  int samples = 512;
  std::uint64_t sample_skip = 0;  // offset into the Sobol sequence
  std::vector<std::int64_t> m_list;
  std::int64_t tail_start = 100;
  std::int64_t tail_length = 20;
  int orbits = 3;
  int j_max = 12;
  std::int64_t wander_clock = 0;    // time index assigned to the seed
  std::int64_t wander_first_j = 4;  // first recorded j
  Complex wander_offset{0.005, 0.005};
  Real small_petal_R = 2;
  int normal_form_order = 8;
  std::optional<Complex> lavaurs_z0;
  ScanRegion scan;
};

const std::vector<std::string>& experiment_names();
// Throws invalid_argument for unknown names.
ExperimentConfig default_config(const std::string& experiment);

struct ExperimentReport {
  std::string experiment;
  std::vector<ResidualSeries> series;
  std::vector<std::pair<std::string, std::string>> facts;  // derived constants logged for reproducibility
  bool pass = false;
  double wall_seconds = 0;
};

ResidualSeries run_prop_A(const ExperimentConfig& cfg, Complex z0);
ResidualSeries run_prop2(const ExperimentConfig& cfg);
ResidualSeries run_prop51(const ExperimentConfig& cfg, std::int64_t* kappa0 = nullptr);
std::pair<ResidualSeries, ResidualSeries> run_prop53_54(const ExperimentConfig& cfg);
std::vector<ResidualSeries> run_properties_1d(const ExperimentConfig& cfg);
std::vector<ResidualSeries> run_properties_2d(const ExperimentConfig& cfg);
std::pair<ResidualSeries, ResidualSeries> run_omega(const ExperimentConfig& cfg);

struct WanderingReport {
  ResidualSeries distances;  // d_j against j; aux1 = min separation of the (w, y) part from earlier squares
  LavaursFixedPoint fixed_point;
  Real min_wy_separation = 0;
  std::int64_t escape_step = -1;  // steps after the seed when the orbit left the bail ball, -1 if it stayed
};
WanderingReport wandering_orbit_demo(const ExperimentConfig& cfg, const LavaursFixedPoint& fp, const CPoint4& seed);

// Lavaurs fixed point of f used by the experiments: cfg.lavaurs_z0 when set, a scan otherwise.
Complex resolve_lavaurs_z0(const ExperimentConfig& cfg);
// Point of the attracting basin where the Fatou coordinate of f vanishes.
Complex phi_zero_point(const MapParams& p);

ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& cfg);

}  // namespace lavaurs
