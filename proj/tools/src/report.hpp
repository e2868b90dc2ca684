#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "lavaurs/experiments.hpp"

namespace lavaurs::cli {

// experiment,n,residual,aux1,aux2 with one row per point of every series
std::string report_csv(const ExperimentReport& rep);
nlohmann::json report_json(const ExperimentReport& rep, const ExperimentConfig& cfg);
// gnuplot script plotting log residual against log n from the CSV next to it
std::string gnuplot_script(const ExperimentReport& rep, const std::string& csv_name);

struct WrittenFiles {
  std::filesystem::path csv, json, gnuplot;
};
WrittenFiles write_report(const std::filesystem::path& dir, const ExperimentReport& rep, const ExperimentConfig& cfg);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lavaurs::cli
