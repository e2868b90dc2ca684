// lavaurs: command-line front end to the library.
// stdout carries JSON lines only; everything meant for a person goes to stderr.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lavaurs/fatou.hpp"
#include "lavaurs/maps.hpp"
#include "lavaurs/normal_form.hpp"
#include "lavaurs/sampling.hpp"
#include "report.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lavaurs;
using namespace lavaurs::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string a, delta, alpha;
  std::string config;
  std::vector<std::string> set;
  std::string out = "out";
  std::string fixtures = "fixtures";
  int threads = 0;
  std::string precision = "double";
  bool force = false;
  int dims = 0;
};

void emit(const json& j) { std::cout << j.dump() << std::endl; }

// defaults < config file < --set < named flags
ExperimentConfig build_config(const Common& c, ExperimentConfig base) {
  if (!c.config.empty())
    for (const auto& [k, v] : read_config_file(c.config)) apply_key(base, k, v);
  for (const auto& kv : c.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::invalid_argument, "--set expects key=value, got '" + kv + "'");
    apply_key(base, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!c.a.empty()) apply_key(base, "a", c.a);
  if (!c.delta.empty()) apply_key(base, "delta", c.delta);
  if (!c.alpha.empty()) apply_key(base, "alpha", c.alpha);
  if (c.dims) base.dims = c.dims;
  validate(base.params);
  return base;
}

void check_precision(const std::string& precision) {
  constexpr bool extended = sizeof(Real) > sizeof(double);
  if (precision != "double" && precision != "extended")
    throw Error(ErrorKind::invalid_argument, "--precision must be double or extended");
  if ((precision == "extended") != extended)
    throw Error(ErrorKind::invalid_argument, std::string("this build uses ") + (extended ? "extended" : "double") +
                                                 " precision; reconfigure with LAVAURS_EXTENDED_PRECISION=" +
                                                 (extended ? "OFF" : "ON"));
}

json fatou_json(const char* which, Complex z, Complex value, std::int64_t iters, Real err) {
  return {{"which", which},
          {"z", to_json(z)},
          {"value", to_json(value)},
          {"iters", iters},
          {"err_est", static_cast<double>(err)}};
}

json point_json(const LavaursFixedPoint& p, Real dist) {
  return {{"delta", to_json(p.delta)},
          {"z", to_json(p.p.c0)},
          {"x", to_json(p.p.c1)},
          {"multiplier", to_json(p.multiplier)},
          {"multiplier_abs", static_cast<double>(std::abs(p.multiplier))},
          {"residual", static_cast<double>(p.residual)},
          {"distance_to_base", static_cast<double>(dist)}};
}

// ---------------------------------------------------------------- normal-form

int cmd_normal_form(const Common& c, int order, int l) {
  const ExperimentConfig cfg = build_config(c, {});
  const NormalFormData nf = compute_normal_form(cfg.params, order, l);
  auto jet_json = [](const Jet2& j) {
    json terms = json::array();
    for (int d = 0; d <= j.order(); ++d)
      for (int x = 0; x <= d; ++x) {
        const Complex v = j(d - x, x);
        if (v != Complex(0)) terms.push_back({{"z", d - x}, {"x", x}, {"c", to_json(v)}});
      }
    return terms;
  };
  json full = {{"a", to_json(cfg.params.a)},
               {"delta", to_json(cfg.params.delta)},
               {"order", nf.order},
               {"l", nf.l},
               {"a3", to_json(nf.a3)},
               {"b", to_json(nf.b)},
               {"trust_radius", static_cast<double>(nf.trust_radius)},
               {"product_terms", nf.product_terms},
               {"U", {{"z", jet_json(nf.U.z)}, {"x", jet_json(nf.U.x)}}},
               {"U_inv", {{"z", jet_json(nf.U_inv.z)}, {"x", jet_json(nf.U_inv.x)}}},
               {"F_tilde", {{"z", jet_json(nf.F_tilde.z)}, {"x", jet_json(nf.F_tilde.x)}}},
               {"stable_manifold", jet_json(nf.stable_manifold)}};
  fs::create_directories(c.out);
  const fs::path path =
      fs::path(c.out) / ("normal_form_" + fixture_key(cfg.params.a) + "_" + fixture_key(cfg.params.delta) + ".json");
  write_text(path, full.dump(2) + "\n");
  emit({{"a3", to_json(nf.a3)},
        {"b", to_json(nf.b)},
        {"trust_radius", static_cast<double>(nf.trust_radius)},
        {"file", path.string()}});
  std::cerr << "a3 = " << format_complex(nf.a3) << ", b = " << format_complex(nf.b) << ", trust radius "
            << nf.trust_radius << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- fatou

int cmd_fatou(const Common& c, const std::string& which, const std::string& zs, const std::string& xs) {
  const ExperimentConfig cfg = build_config(c, {});
  const MapParams& p = cfg.params;
  const Complex z = parse_complex(zs);
  const bool two_d = cfg.dims == 2 || !xs.empty();
  if (!two_d) {
    const Fatou1D fc(p);
    if (which == "phi") {
      const FatouValue v = fc.phi(z);
      auto j = fatou_json("phi", z, v.value, v.iters, v.err_est);
      j["abel_residual"] = static_cast<double>(std::abs(fc.phi(f(z, p)).value - v.value - Real(1)));
      emit(j);
    } else if (which == "psi") {
      const FatouValue v = fc.psi(z);
      auto j = fatou_json("psi", z, v.value, v.iters, v.err_est);
      j["abel_residual"] = static_cast<double>(std::abs(f(v.value, p) - fc.psi(z + Real(1)).value));
      emit(j);
    } else {
      const FatouValue v = fc.lavaurs(z);
      const Complex composed = fc.psi(fc.phi(z).value).value;
      auto j = fatou_json("lavaurs", z, v.value, v.iters, v.err_est);
      j["composition_residual"] = static_cast<double>(std::abs(composed - v.value));
      emit(j);
    }
    return kExitOk;
  }
  const NormalFormData nf = compute_normal_form(p, cfg.normal_form_order);
  const Fatou2D fc(nf);
  const CPoint2 q{z, xs.empty() ? Complex(0) : parse_complex(xs)};
  if (which == "phi") {
    const FatouValue v = fc.Phi_F(q);
    auto j = fatou_json("phi", z, v.value, v.iters, v.err_est);
    j["x"] = to_json(q.c1);
    j["abel_residual"] = static_cast<double>(std::abs(fc.Phi_F(F(q, p)).value - v.value - Real(1)));
    emit(j);
  } else if (which == "psi") {
    const FatouValue2 v = fc.Psi_F(z);
    json j = {{"which", "psi"},
              {"Z", to_json(z)},
              {"value", {to_json(v.value.c0), to_json(v.value.c1)}},
              {"iters", v.iters},
              {"err_est", static_cast<double>(v.err_est)}};
    j["abel_residual"] = static_cast<double>(norm(F(v.value, p) - fc.Psi_F(z + Real(1)).value));
    emit(j);
  } else {
    const FatouValue2 v = fc.lavaurs(q);
    const CPoint2 composed = fc.Psi_F(fc.Phi_F(q).value).value;
    json j = {{"which", "lavaurs"},
              {"z", to_json(z)},
              {"x", to_json(q.c1)},
              {"value", {to_json(v.value.c0), to_json(v.value.c1)}},
              {"iters", v.iters},
              {"err_est", static_cast<double>(v.err_est)}};
    j["composition_residual"] = static_cast<double>(norm(composed - v.value));
    emit(j);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- scan-fixed-point

int cmd_scan(const Common& c, const std::string& ladder_text) {
  const ExperimentConfig cfg = build_config(c, {});
  const MapParams& p = cfg.params;
  if (!c.force) {
    if (auto hit = load_fixture(c.fixtures, p.a, p.delta)) {
      auto j = point_json(hit->point, 0);
      j["cached"] = true;
      j["file"] = fixture_path(c.fixtures, p.a, p.delta).string();
      emit(j);
      for (const auto& r : hit->ladder) emit(point_json(r.point, r.distance_to_base));
      std::cerr << "cache hit: " << j["file"].get<std::string>() << "\n";
      return kExitOk;
    }
  }
  MapParams p0 = p;
  p0.delta = 0;
  std::vector<LavaursFixedPoint> found;
  try {
    found = scan_lavaurs_fixed_points(Fatou1D(p0), cfg.scan);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::not_found) throw;
    std::cerr << "no attracting fixed point found in scan region\n";
    emit({{"found", false}, {"reason", "no attracting fixed point found in scan region"}});
    return kExitFail;
  }
  const Complex z0 = found.front().z;

  std::vector<Complex> deltas = parse_complex_list(ladder_text);
  if (p.delta != Complex(0) && std::find(deltas.begin(), deltas.end(), p.delta) == deltas.end())
    deltas.push_back(p.delta);
  if (std::find(deltas.begin(), deltas.end(), Complex(0)) == deltas.end()) deltas.insert(deltas.begin(), Complex(0));
  std::stable_sort(deltas.begin(), deltas.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  const auto rungs = continue_lavaurs_fixed_point(p, z0, deltas, cfg.normal_form_order);

  std::vector<FixtureRung> ladder;
  for (const auto& r : rungs) ladder.push_back({r, norm(r.p - rungs.front().p)});
  bool monotone = true;
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i].distance_to_base < ladder[i - 1].distance_to_base) monotone = false;

  for (const auto& r : ladder) {
    Fixture f{p.a, r.point.delta, r.point, {}};
    if (r.point.delta == p.delta) f.ladder = ladder;
    if (!r.point.attracting()) continue;
    save_fixture(c.fixtures, f);
  }
  LavaursFixedPoint at_delta = rungs.front();
  for (const auto& r : rungs)
    if (r.delta == p.delta) at_delta = r;
  auto head = point_json(at_delta, norm(at_delta.p - rungs.front().p));
  head["cached"] = false;
  head["file"] = fixture_path(c.fixtures, p.a, p.delta).string();
  head["ladder_monotone"] = monotone;
  emit(head);
  for (const auto& r : ladder) emit(point_json(r.point, r.distance_to_base));
  std::cerr << "fixed point z = " << format_complex(at_delta.p.c0) << ", |multiplier| = "
            << std::abs(at_delta.multiplier) << "\n";
  return at_delta.attracting() ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const Common& c, const std::string& name) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw Error(ErrorKind::invalid_argument, "unknown experiment '" + name + "'");
  ExperimentConfig cfg = build_config(c, default_config(name));
  if ((name == "prop_a" || name == "wandering") && !cfg.lavaurs_z0 && !c.force) {
    // the Lavaurs fixed point of f is shared by every delta; reuse the stored one
    if (auto hit = load_fixture(c.fixtures, cfg.params.a, 0)) {
      cfg.lavaurs_z0 = hit->point.z;
      std::cerr << "using fixture " << fixture_path(c.fixtures, cfg.params.a, 0).string() << "\n";
    }
  }
  const ExperimentReport rep = run_experiment(name, cfg);
  const WrittenFiles files = write_report(c.out, rep, cfg);

  json series = json::array();
  for (const auto& s : rep.series) {
    series.push_back({{"label", s.label},
                      {"rule", to_string(s.rule)},
                      {"slope", std::isfinite(s.slope) ? json(static_cast<double>(s.slope)) : json(nullptr)},
                      {"pass", s.pass}});
    std::fprintf(stderr, "%-16s %-30s slope %8.3f  %s\n", s.label.c_str(), to_string(s.rule),
                 static_cast<double>(s.slope), s.pass ? "pass" : "FAIL");
    for (const auto& pt : s.points)
      std::fprintf(stderr, "    n %-8lld residual %-12.6g %s %-12.6g %s %-12.6g\n", static_cast<long long>(pt.n),
                   static_cast<double>(pt.residual), s.aux1_name.c_str(), static_cast<double>(pt.aux1),
                   s.aux2_name.c_str(), static_cast<double>(pt.aux2));
  }
  for (const auto& [k, v] : rep.facts) std::cerr << k << " = " << v << "\n";
  emit({{"experiment", name},
        {"pass", rep.pass},
        {"series", series},
        {"csv", files.csv.string()},
        {"json", files.json.string()},
        {"gnuplot", files.gnuplot.string()},
        {"wall_seconds", rep.wall_seconds}});
  return rep.pass ? kExitOk : kExitFail;
}

// ---------------------------------------------------------------- orbit

int cmd_orbit(const Common& c, const std::string& map, const std::string& z, const std::string& x,
              const std::string& w, const std::string& y, std::int64_t steps, std::int64_t every) {
  const ExperimentConfig cfg = build_config(c, {});
  const MapParams& p = cfg.params;
  if (steps < 0 || every < 1) throw Error(ErrorKind::invalid_argument, "--steps must be >= 0 and --every >= 1");
  CPoint4 q{parse_complex(z), parse_complex(x), parse_complex(w), parse_complex(y)};
  if (map == "H") validate_for_4d(p);
  auto step = [&](const CPoint4& v) -> CPoint4 {
    if (map == "f") return {f(v.z, p), 0, 0, 0};
    if (map == "P") {
      const CPoint2 r = P({v.z, v.w}, p);
      return {r.c0, 0, r.c1, 0};
    }
    if (map == "F") {
      const CPoint2 r = F({v.z, v.x}, p);
      return {r.c0, r.c1, 0, 0};
    }
    return H(v, p);
  };
  auto line = [&](std::int64_t k) {
    emit({{"step", k}, {"z", to_json(q.z)}, {"x", to_json(q.x)}, {"w", to_json(q.w)}, {"y", to_json(q.y)}});
  };
  line(0);
  for (std::int64_t k = 1; k <= steps; ++k) {
    q = step(q);
    if (!is_finite(q) || norm(q) > p.bail_radius)
      throw Error(ErrorKind::basin, "orbit escaped at step " + std::to_string(k));
    if (k % every == 0 || k == steps) line(k);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for Lavaurs maps and wandering domains of polynomial automorphisms"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common c;
  app.add_option("--a", c.a, "cubic coefficient of q1 (complex, e.g. 0.95 or 0.9+0.1i)");
  app.add_option("--delta", c.delta, "Jacobian parameter delta (complex)");
  app.add_option("--alpha", c.alpha, "exponent alpha in (1/2, 2/3)");
  app.add_option("--config", c.config, "flat key = value config file");
  app.add_option("--set", c.set, "override one config key, key=value (repeatable)");
  app.add_option("--out", c.out, "output directory")->capture_default_str();
  app.add_option("--fixtures", c.fixtures, "fixture directory")->capture_default_str();
  app.add_option("--threads", c.threads, "cap on worker threads (0: all)")->check(CLI::NonNegativeNumber);
  app.add_option("--precision", c.precision, "double or extended")->capture_default_str();
  app.add_flag("--force", c.force, "recompute instead of reading fixtures");
  app.add_option("--dims", c.dims, "dimension of the experiment or coordinate (1, 2 or 4)");

  int order = 8, l = 3;
  auto* nf = app.add_subcommand("normal-form", "compute the normal form of F and print a3 and b");
  nf->add_option("--order", order, "jet order L")->capture_default_str();
  nf->add_option("--l", l, "order l of the normal form")->capture_default_str();

  std::string which = "phi", zs, xs;
  auto* fat = app.add_subcommand("fatou", "evaluate a Fatou coordinate or the Lavaurs map at a point");
  fat->add_option("--which", which, "phi, psi or lavaurs")
      ->check(CLI::IsMember({"phi", "psi", "lavaurs"}))
      ->capture_default_str();
  fat->add_option("--z", zs, "point (for psi: the value Z)")->required();
  fat->add_option("--x", xs, "second coordinate; selects the two-dimensional coordinates");

  std::string ladder = "0;1e-3;1e-2";
  auto* scan = app.add_subcommand("scan-fixed-point", "locate the attracting Lavaurs fixed point and store it");
  scan->add_option("--ladder", ladder, "continuation deltas, ';' separated")->capture_default_str();

  std::string experiment;
  auto* ver = app.add_subcommand("verify", "run one experiment and write CSV, JSON and gnuplot files");
  ver->add_option("experiment", experiment, "prop_a|prop2|prop51|prop53_54|properties_1d|properties_2d|omega|wandering")
      ->required();

  std::string omap = "P", oz = "0", ox = "0", ow = "0", oy = "0";
  std::int64_t steps = 100, every = 1;
  auto* orb = app.add_subcommand("orbit", "iterate f, P, F or H and print the orbit");
  orb->add_option("--map", omap, "f, P, F or H")->check(CLI::IsMember({"f", "P", "F", "H"}))->capture_default_str();
  orb->add_option("--z", oz, "z");
  orb->add_option("--x", ox, "x");
  orb->add_option("--w", ow, "w");
  orb->add_option("--y", oy, "y");
  orb->add_option("--steps", steps, "number of steps")->capture_default_str();
  orb->add_option("--every", every, "print every k-th step")->capture_default_str();

  // common flags are accepted before or after the subcommand
  for (auto* sub : {nf, fat, scan, ver, orb}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    check_precision(c.precision);
    set_thread_limit(c.threads);
    if (*nf) return cmd_normal_form(c, order, l);
    if (*fat) return cmd_fatou(c, which, zs, xs);
    if (*scan) return cmd_scan(c, ladder);
    if (*ver) return cmd_verify(c, experiment);
    if (*orb) return cmd_orbit(c, omap, oz, ox, ow, oy, steps, every);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit({{"error", to_string(e.kind())}, {"message", e.what()}});
    return e.kind() == ErrorKind::invalid_argument ? kExitInvalid : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit({{"error", "internal"}, {"message", e.what()}});
    return kExitNumerical;
  }
  return kExitInvalid;
}
