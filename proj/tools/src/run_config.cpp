#include "run_config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace lavaurs::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Real parse_real(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw Error(ErrorKind::invalid_argument, "empty number");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_argument, "not a number: '" + t + "'");
  }
  if (used != t.size()) throw Error(ErrorKind::invalid_argument, "not a number: '" + t + "'");
  return static_cast<Real>(v);
}

std::int64_t parse_int(const std::string& text) {
  const std::string t = trim(text);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw Error(ErrorKind::invalid_argument, "not an integer: '" + t + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"a", [](ExperimentConfig& c, const std::string& v) { c.params.a = parse_complex(v); }},
      {"delta", [](ExperimentConfig& c, const std::string& v) { c.params.delta = parse_complex(v); }},
      {"q2_coeffs", [](ExperimentConfig& c, const std::string& v) { c.params.q2_coeffs = parse_complex_list(v); }},
      {"alpha", [](ExperimentConfig& c, const std::string& v) { c.params.alpha = parse_real(v); }},
      {"R", [](ExperimentConfig& c, const std::string& v) { c.params.R = parse_real(v); }},
      {"R_prime", [](ExperimentConfig& c, const std::string& v) { c.params.R_prime = parse_real(v); }},
      {"eta", [](ExperimentConfig& c, const std::string& v) { c.params.eta = parse_real(v); }},
      {"C_omega", [](ExperimentConfig& c, const std::string& v) { c.params.C_omega = parse_real(v); }},
      {"s", [](ExperimentConfig& c, const std::string& v) { c.params.s = parse_real(v); }},
      {"tol_limit", [](ExperimentConfig& c, const std::string& v) { c.params.tol_limit = parse_real(v); }},
      {"tol_newton", [](ExperimentConfig& c, const std::string& v) { c.params.tol_newton = parse_real(v); }},
      {"series_order",
       [](ExperimentConfig& c, const std::string& v) { c.params.series_order = static_cast<int>(parse_int(v)); }},
      {"max_iter", [](ExperimentConfig& c, const std::string& v) { c.params.max_iter = parse_int(v); }},
      {"bail_radius", [](ExperimentConfig& c, const std::string& v) { c.params.bail_radius = parse_real(v); }},
      {"trust_radius", [](ExperimentConfig& c, const std::string& v) { c.params.trust_radius = parse_real(v); }},
      {"zeta",
       [](ExperimentConfig& c, const std::string& v) {
         const std::string t = trim(v);
         if (t == "fixed_points")
           c.params.zeta = ZetaChoice::fixed_points;
         else if (t == "invariant_curves")
           c.params.zeta = ZetaChoice::invariant_curves;
         else
           throw Error(ErrorKind::invalid_argument, "zeta must be fixed_points or invariant_curves");
       }},
      {"n_list", [](ExperimentConfig& c, const std::string& v) { c.n_list = parse_int_list(v); }},
      {"m_list", [](ExperimentConfig& c, const std::string& v) { c.m_list = parse_int_list(v); }},
      {"center", [](ExperimentConfig& c, const std::string& v) { c.center = parse_complex(v); }},
      {"spacing", [](ExperimentConfig& c, const std::string& v) { c.spacing = parse_real(v); }},
      {"grid", [](ExperimentConfig& c, const std::string& v) { c.grid = static_cast<int>(parse_int(v)); }},
      {"x_offsets", [](ExperimentConfig& c, const std::string& v) { c.x_offsets = parse_complex_list(v); }},
      {"g_seed_w", [](ExperimentConfig& c, const std::string& v) { c.g_seed.c0 = parse_complex(v); }},
      {"g_seed_y", [](ExperimentConfig& c, const std::string& v) { c.g_seed.c1 = parse_complex(v); }},
      {"dims", [](ExperimentConfig& c, const std::string& v) { c.dims = static_cast<int>(parse_int(v)); }},
      {"samples", [](ExperimentConfig& c, const std::string& v) { c.samples = static_cast<int>(parse_int(v)); }},
      {"sample_skip",
       [](ExperimentConfig& c, const std::string& v) {
         const auto k = parse_int(v);
         if (k < 0) throw Error(ErrorKind::invalid_argument, "sample_skip must be >= 0");
         c.sample_skip = static_cast<std::uint64_t>(k);
       }},
      {"tail_start", [](ExperimentConfig& c, const std::string& v) { c.tail_start = parse_int(v); }},
      {"tail_length", [](ExperimentConfig& c, const std::string& v) { c.tail_length = parse_int(v); }},
      {"orbits", [](ExperimentConfig& c, const std::string& v) { c.orbits = static_cast<int>(parse_int(v)); }},
      {"j_max", [](ExperimentConfig& c, const std::string& v) { c.j_max = static_cast<int>(parse_int(v)); }},
      {"wander_clock", [](ExperimentConfig& c, const std::string& v) { c.wander_clock = parse_int(v); }},
      {"wander_first_j", [](ExperimentConfig& c, const std::string& v) { c.wander_first_j = parse_int(v); }},
      {"wander_offset", [](ExperimentConfig& c, const std::string& v) { c.wander_offset = parse_complex(v); }},
      {"small_petal_R", [](ExperimentConfig& c, const std::string& v) { c.small_petal_R = parse_real(v); }},
      {"normal_form_order",
       [](ExperimentConfig& c, const std::string& v) { c.normal_form_order = static_cast<int>(parse_int(v)); }},
      {"lavaurs_z0", [](ExperimentConfig& c, const std::string& v) { c.lavaurs_z0 = parse_complex(v); }},
      {"scan_center", [](ExperimentConfig& c, const std::string& v) { c.scan.center = parse_complex(v); }},
      {"scan_half_width", [](ExperimentConfig& c, const std::string& v) { c.scan.half_width = parse_real(v); }},
      {"scan_n", [](ExperimentConfig& c, const std::string& v) { c.scan.n = static_cast<int>(parse_int(v)); }},
  };
  return table;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string t = trim(text);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  if (const auto comma = t.find(','); comma != std::string::npos)
    return {parse_real(t.substr(0, comma)), parse_real(t.substr(comma + 1))};
  if (t.empty()) throw Error(ErrorKind::invalid_argument, "empty complex number");
  if (t.back() != 'i') return {parse_real(t), 0};
  t.pop_back();
  // split at the last sign that is not part of an exponent
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      const std::string im = t.substr(k);
      return {parse_real(t.substr(0, k)), im.size() == 1 ? parse_real(im + "1") : parse_real(im)};
    }
  }
  if (t.empty() || t == "+" || t == "-") return {0, parse_real(t + "1")};
  return {0, parse_real(t)};
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  for (const auto& part : split(text, ';')) out.push_back(parse_complex(part));
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_int(part));
  if (out.empty()) throw Error(ErrorKind::invalid_argument, "empty integer list");
  return out;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_argument, "cannot open config file '" + path + "'");
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::invalid_argument,
                  "config line " + std::to_string(lineno) + " is not of the form key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorKind::invalid_argument, "config line " + std::to_string(lineno) + " has no key");
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw Error(ErrorKind::invalid_argument, "unknown config key '" + key + "'");
  try {
    it->second(cfg, value);
  } catch (const Error& e) {
    throw Error(ErrorKind::invalid_argument, "config key '" + key + "': " + e.what());
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

nlohmann::json to_json(Complex c) {
  return nlohmann::json::array({static_cast<double>(c.real()), static_cast<double>(c.imag())});
}

nlohmann::json config_echo(const ExperimentConfig& cfg) {
  using nlohmann::json;
  const MapParams& p = cfg.params;
  json q2 = json::array();
  for (const auto& c : p.q2_coeffs) q2.push_back(to_json(c));
  json xo = json::array();
  for (const auto& c : cfg.x_offsets) xo.push_back(to_json(c));
  json j = {
      {"a", to_json(p.a)},
      {"delta", to_json(p.delta)},
      {"q2_coeffs", q2},
      {"alpha", static_cast<double>(p.alpha)},
      {"R", static_cast<double>(p.R)},
      {"R_prime", static_cast<double>(p.R_prime)},
      {"eta", static_cast<double>(p.eta)},
      {"C_omega", static_cast<double>(p.C_omega)},
      {"s", static_cast<double>(p.s)},
      {"tol_limit", static_cast<double>(p.tol_limit)},
      {"tol_newton", static_cast<double>(p.tol_newton)},
      {"series_order", p.series_order},
      {"max_iter", p.max_iter},
      {"bail_radius", static_cast<double>(p.bail_radius)},
      {"trust_radius", static_cast<double>(p.trust_radius)},
      {"zeta", p.zeta == ZetaChoice::fixed_points ? "fixed_points" : "invariant_curves"},
      {"n_list", cfg.n_list},
      {"m_list", cfg.m_list},
      {"spacing", static_cast<double>(cfg.spacing)},
      {"grid", cfg.grid},
      {"x_offsets", xo},
      {"g_seed_w", to_json(cfg.g_seed.c0)},
      {"g_seed_y", to_json(cfg.g_seed.c1)},
      {"dims", cfg.dims},
      {"samples", cfg.samples},
      {"sample_skip", cfg.sample_skip},
      {"tail_start", cfg.tail_start},
      {"tail_length", cfg.tail_length},
      {"orbits", cfg.orbits},
      {"j_max", cfg.j_max},
      {"wander_clock", cfg.wander_clock},
      {"wander_first_j", cfg.wander_first_j},
      {"wander_offset", to_json(cfg.wander_offset)},
      {"small_petal_R", static_cast<double>(cfg.small_petal_R)},
      {"normal_form_order", cfg.normal_form_order},
      {"scan_center", to_json(cfg.scan.center)},
      {"scan_half_width", static_cast<double>(cfg.scan.half_width)},
      {"scan_n", cfg.scan.n},
  };
  j["center"] = cfg.center ? to_json(*cfg.center) : json(nullptr);
  j["lavaurs_z0"] = cfg.lavaurs_z0 ? to_json(*cfg.lavaurs_z0) : json(nullptr);
  return j;
}

std::string format_complex(Complex c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", static_cast<double>(c.real()), static_cast<double>(c.imag()));
  return buf;
}

std::string fixture_key(Complex c) {
  char buf[64];
  if (c.imag() == 0)
    std::snprintf(buf, sizeof buf, "%.6g", static_cast<double>(c.real()));
  else
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", static_cast<double>(c.real()), static_cast<double>(c.imag()));
  return buf;
}

}  // namespace lavaurs::cli
