#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lavaurs/experiments.hpp"

namespace lavaurs::cli {

// "0.5", "-1e-3", "0.1+0.2i", "0.1-0.2i", "2i", "(0.1,0.2)" and "0.1,0.2"
Complex parse_complex(const std::string& text);
// semicolon separated list of complex numbers
std::vector<Complex> parse_complex_list(const std::string& text);
std::vector<std::int64_t> parse_int_list(const std::string& text);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Flat `key = value` file; '#' starts a comment. Throws invalid_argument naming the line.
KeyValues read_config_file(const std::string& path);

// Throws invalid_argument naming the key when it is unknown or its value does not parse.
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

const std::vector<std::string>& config_keys();

nlohmann::json to_json(Complex c);
nlohmann::json config_echo(const ExperimentConfig& cfg);

std::string format_complex(Complex c);
// a and delta rendered for fixture file names
std::string fixture_key(Complex c);

}  // namespace lavaurs::cli
