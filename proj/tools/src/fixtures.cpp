#include "fixtures.hpp"

#include <fstream>

#include "report.hpp"
#include "run_config.hpp"

namespace lavaurs::cli {

namespace {

Complex complex_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::invalid_argument, "fixture: expected [re, im]");
  return {j[0].get<Real>(), j[1].get<Real>()};
}

nlohmann::json point_json(const LavaursFixedPoint& p) {
  return {{"delta", to_json(p.delta)},        {"z", to_json(p.p.c0)},       {"x", to_json(p.p.c1)},
          {"z_1d", to_json(p.z)},             {"multiplier", to_json(p.multiplier)},
          {"residual", static_cast<double>(p.residual)}, {"newton_iters", p.newton_iters}};
}

LavaursFixedPoint point_from(const nlohmann::json& j) {
  LavaursFixedPoint p;
  p.delta = complex_from(j.at("delta"));
  p.p = {complex_from(j.at("z")), complex_from(j.at("x"))};
  p.z = complex_from(j.at("z_1d"));
  p.multiplier = complex_from(j.at("multiplier"));
  p.residual = j.at("residual").get<Real>();
  p.newton_iters = j.at("newton_iters").get<int>();
  return p;
}

}  // namespace

std::filesystem::path fixture_path(const std::filesystem::path& dir, Complex a, Complex delta) {
  return dir / ("lavaurs_" + fixture_key(a) + "_" + fixture_key(delta) + ".json");
}

nlohmann::json fixture_json(const Fixture& f) {
  nlohmann::json ladder = nlohmann::json::array();
  for (const auto& r : f.ladder) {
    auto j = point_json(r.point);
    j["distance_to_base"] = static_cast<double>(r.distance_to_base);
    ladder.push_back(j);
  }
  return {{"a", to_json(f.a)}, {"delta", to_json(f.delta)}, {"point", point_json(f.point)}, {"ladder", ladder}};
}

Fixture fixture_from_json(const nlohmann::json& j) {
  Fixture f;
  try {
    f.a = complex_from(j.at("a"));
    f.delta = complex_from(j.at("delta"));
    f.point = point_from(j.at("point"));
    for (const auto& r : j.at("ladder")) f.ladder.push_back({point_from(r), r.at("distance_to_base").get<Real>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_argument, std::string("fixture: ") + e.what());
  }
  return f;
}

std::optional<Fixture> load_fixture(const std::filesystem::path& dir, Complex a, Complex delta) {
  const auto path = fixture_path(dir, a, delta);
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_argument, "fixture " + path.string() + " is not valid JSON");
  }
  Fixture f = fixture_from_json(j);
  if (std::abs(f.a - a) > 1e-12 || std::abs(f.delta - delta) > 1e-12)
    throw Error(ErrorKind::invalid_argument, "fixture " + path.string() + " was stored for other parameters");
  if (!f.point.attracting())
    throw Error(ErrorKind::not_attracting, "fixture " + path.string() + " holds a non-attracting fixed point");
  return f;
}

void save_fixture(const std::filesystem::path& dir, const Fixture& f) {
  std::filesystem::create_directories(dir);
  write_text(fixture_path(dir, f.a, f.delta), fixture_json(f).dump(2) + "\n");
}

}  // namespace lavaurs::cli
