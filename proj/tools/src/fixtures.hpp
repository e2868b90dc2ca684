#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "lavaurs/fatou.hpp"

namespace lavaurs::cli {

struct FixtureRung {
  LavaursFixedPoint point;
  Real distance_to_base = 0;  // |p_delta - p_0|
};

struct Fixture {
  Complex a{};
  Complex delta{};
  LavaursFixedPoint point;         // at delta
  std::vector<FixtureRung> ladder;  // continuation from delta = 0, may be empty
};

std::filesystem::path fixture_path(const std::filesystem::path& dir, Complex a, Complex delta);

nlohmann::json fixture_json(const Fixture& f);
Fixture fixture_from_json(const nlohmann::json& j);

// Re-checks |multiplier| < 1 and the stored (a, delta); throws not_attracting / invalid_argument.
std::optional<Fixture> load_fixture(const std::filesystem::path& dir, Complex a, Complex delta);
void save_fixture(const std::filesystem::path& dir, const Fixture& f);

}  // namespace lavaurs::cli
