#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "run_config.hpp"

namespace lavaurs::cli {

namespace {

std::string num(Real v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(v));
  return buf;
}

nlohmann::json real_or_null(Real v) {
  if (!std::isfinite(v)) return nullptr;
  return static_cast<double>(v);
}

}  // namespace

std::string report_csv(const ExperimentReport& rep) {
  std::ostringstream os;
  os << "experiment,n,residual,aux1,aux2\n";
  for (const auto& s : rep.series)
    for (const auto& p : s.points)
      os << s.label << ',' << p.n << ',' << num(p.residual) << ',' << num(p.aux1) << ',' << num(p.aux2) << '\n';
  return os.str();
}

nlohmann::json report_json(const ExperimentReport& rep, const ExperimentConfig& cfg) {
  using nlohmann::json;
  json series = json::array();
  for (const auto& s : rep.series) {
    json pts = json::array();
    for (const auto& p : s.points)
      pts.push_back({{"n", p.n},
                     {"residual", real_or_null(p.residual)},
                     {"aux1", real_or_null(p.aux1)},
                     {"aux2", real_or_null(p.aux2)}});
    series.push_back({{"label", s.label},
                      {"aux1", s.aux1_name},
                      {"aux2", s.aux2_name},
                      {"rule", to_string(s.rule)},
                      {"slope", real_or_null(s.slope)},
                      {"pass", s.pass},
                      {"points", pts}});
  }
  json facts = json::object();
  for (const auto& [k, v] : rep.facts) facts[k] = v;
  return {{"experiment", rep.experiment},
          {"config", config_echo(cfg)},
          {"series", series},
          {"facts", facts},
          {"pass", rep.pass},
          {"slope_threshold", static_cast<double>(kSlopeThreshold)},
          {"wall_seconds", rep.wall_seconds}};
}

std::string gnuplot_script(const ExperimentReport& rep, const std::string& csv_name) {
  std::ostringstream os;
  os << "# " << rep.experiment << ": residual against n, one curve per series\n";
  os << "set datafile separator ','\n";
  os << "set logscale xy\n";
  os << "set xlabel 'n'\n";
  os << "set ylabel 'residual'\n";
  os << "set key outside\n";
  os << "plot ";
  for (std::size_t i = 0; i < rep.series.size(); ++i) {
    const auto& s = rep.series[i];
    if (i) os << ", \\\n     ";
    os << "'" << csv_name << "' using (strcol(1) eq '" << s.label << "' ? $2 : NaN):3 with linespoints title '"
       << s.label << "'";
  }
  os << "\n";
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write '" + path.string() + "'");
  out << text;
}

WrittenFiles write_report(const std::filesystem::path& dir, const ExperimentReport& rep,
                          const ExperimentConfig& cfg) {
  std::filesystem::create_directories(dir);
  WrittenFiles f;
  f.csv = dir / (rep.experiment + ".csv");
  f.json = dir / (rep.experiment + ".json");
  f.gnuplot = dir / (rep.experiment + ".gp");
  // the CSV carries the config echo as comment lines so it stands on its own
  std::ostringstream csv;
  csv << "# config " << config_echo(cfg).dump() << "\n" << report_csv(rep);
  write_text(f.csv, csv.str());
  write_text(f.json, report_json(rep, cfg).dump(2) + "\n");
  write_text(f.gnuplot, gnuplot_script(rep, f.csv.filename().string()));
  return f;
}

}  // namespace lavaurs::cli
