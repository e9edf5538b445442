// Copyright 2026 The gkpec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gkpec/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "gkpec/defaults.h"

namespace gkpec {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_plain(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

double parse_ratio(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain(text);
  const double den = parse_plain(text.substr(slash + 1));
  if (den == 0.0) throw std::invalid_argument("division by zero in '" + std::string(text) + "'");
  return parse_plain(text.substr(0, slash)) / den;
}

std::uint64_t parse_count(std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("not a boolean: '" + std::string(text) + "'");
}

SchemeSpec scheme_from_fields(const std::map<std::string, std::string>& fields) {
  const auto kind_it = fields.find("kind");
  if (kind_it == fields.end()) throw std::invalid_argument("scheme needs a kind");
  const std::string& kind = kind_it->second;
  auto has = [&](const char* key) { return fields.count(key) > 0; };
  if (kind == "original" || kind == "me" || kind == "teleportation") {
    if (has("a") || has("b") || has("m")) {
      throw std::invalid_argument("scheme '" + kind + "' takes no parameters");
    }
    if (kind == "original") return SchemeSpec::OriginalSteane();
    if (kind == "me") return SchemeSpec::MeSteane();
    return SchemeSpec::Teleportation();
  }
  if (kind != "psteane") throw std::invalid_argument("unknown scheme kind '" + kind + "'");
  if (!has("b")) throw std::invalid_argument("psteane needs b");
  const double b = parse_number(fields.at("b"));
  if (has("m") == has("a")) throw std::invalid_argument("psteane needs exactly one of m or a");
  int m = 0;
  if (has("m")) {
    const std::uint64_t raw = parse_count(fields.at("m"));
    if (raw < 1 || raw > 1'000'000) throw std::invalid_argument("psteane m must be a positive integer");
    m = static_cast<int>(raw);
  } else {
    m = integer_ratio_m(parse_number(fields.at("a")), b);
  }
  return SchemeSpec::PSteane(b, m);
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

std::vector<double> GridSpec::Values() const {
  if (count < 1) throw std::invalid_argument("grid: count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> values(count);
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) values[i] = start + step * i;
  values.back() = stop;
  return values;
}

double parse_number(std::string_view text) {
  text = trim(text);
  constexpr std::string_view kSqrt = "sqrt(";
  if (text.substr(0, kSqrt.size()) == kSqrt) {
    if (text.back() != ')') throw std::invalid_argument("unterminated sqrt(: '" + std::string(text) + "'");
    const double inner = parse_ratio(text.substr(kSqrt.size(), text.size() - kSqrt.size() - 1));
    if (inner < 0.0) throw std::invalid_argument("sqrt of a negative number");
    return std::sqrt(inner);
  }
  return parse_ratio(text);
}

int integer_ratio_m(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("a and b must be > 0");
  const double m = 2.0 * a / b;
  const double r = std::round(m);
  if (std::abs(m - r) > 1e-9 || r < 1.0 || r > 1e6) {
    throw std::invalid_argument("2a/b must be a positive integer");
  }
  return static_cast<int>(r);
}

SchemeSpec parse_scheme(std::string_view text) {
  text = trim(text);
  std::map<std::string, std::string> fields;
  const auto colon = text.find(':');
  fields["kind"] = std::string(trim(text.substr(0, colon)));
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("expected key=value in scheme '" + std::string(text) + "'");
      }
      fields[std::string(trim(item.substr(0, eq)))] = std::string(trim(item.substr(eq + 1)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return scheme_from_fields(fields);
}

RunConfig parse_run_config(std::istream& in, const std::string& source) {
  RunConfig config;
  config.mc.n_samples = defaults::kSamples;
  config.mc.chunk_size = defaults::kChunkSize;
  config.mc.workers = defaults::kWorkers;
  config.common_random_numbers = defaults::kCommonRandomNumbers;
  config.grid = GridSpec{defaults::kGridStart, defaults::kGridStop, defaults::kGridCount};

  std::string section;
  std::map<std::string, std::string> scheme_fields;
  int scheme_line = 0;
  bool seed_seen = false;
  std::map<std::string, int> seen;  // "section.key" -> line, for duplicates

  auto flush_scheme = [&]() {
    if (section != "scheme") return;
    try {
      config.schemes.push_back(scheme_from_fields(scheme_fields));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source, scheme_line, e.what());
    }
    scheme_fields.clear();
  };

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source, line_no, "malformed section header");
      flush_scheme();
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "scheme" && section != "noise" && section != "grid" && section != "mc" &&
          section != "output") {
        throw ConfigError(source, line_no, "unknown section [" + section + "]");
      }
      if (section == "scheme") scheme_line = line_no;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(source, line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) throw ConfigError(source, line_no, "empty key or value");
    if (section.empty()) throw ConfigError(source, line_no, "assignment outside a section");

    if (section == "scheme") {
      if (key != "kind" && key != "a" && key != "b" && key != "m") {
        throw ConfigError(source, line_no, "unknown scheme key '" + key + "'");
      }
      if (!scheme_fields.emplace(key, value).second) {
        throw ConfigError(source, line_no, "duplicate key '" + key + "'");
      }
      continue;
    }
    const std::string qualified = section + "." + key;
    if (!seen.emplace(qualified, line_no).second) {
      throw ConfigError(source, line_no, "duplicate key '" + key + "'");
    }

    try {
      if (section == "noise") {
        if (key == "k") {
          config.k = parse_number(value);
        } else if (key == "sigma_D") {
          config.sigma_data = parse_number(value);
        } else {
          throw std::invalid_argument("unknown noise key '" + key + "'");
        }
      } else if (section == "grid") {
        if (key == "sigma_A_start") {
          config.grid.start = parse_number(value);
        } else if (key == "sigma_A_stop") {
          config.grid.stop = parse_number(value);
        } else if (key == "sigma_A_count") {
          const std::uint64_t count = parse_count(value);
          if (count < 1 || count > 100'000) throw std::invalid_argument("sigma_A_count out of range");
          config.grid.count = static_cast<int>(count);
        } else {
          throw std::invalid_argument("unknown grid key '" + key + "'");
        }
      } else if (section == "mc") {
        if (key == "n_samples") {
          config.mc.n_samples = parse_count(value);
        } else if (key == "seed") {
          config.mc.seed = parse_count(value);
          seed_seen = true;
        } else if (key == "chunk_size") {
          config.mc.chunk_size = parse_count(value);
        } else if (key == "workers") {
          config.mc.workers = static_cast<unsigned>(parse_count(value));
        } else if (key == "common_random_numbers") {
          config.common_random_numbers = parse_bool(value);
        } else {
          throw std::invalid_argument("unknown mc key '" + key + "'");
        }
      } else if (section == "output") {
        if (key != "path") throw std::invalid_argument("unknown output key '" + key + "'");
        config.output_path = value;
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(source, line_no, e.what());
    }
  }
  flush_scheme();

  const int end = line_no + 1;
  if (config.schemes.empty()) throw ConfigError(source, end, "no [scheme] sections");
  if (config.k.has_value() == config.sigma_data.has_value()) {
    throw ConfigError(source, end, "[noise] needs exactly one of k or sigma_D");
  }
  if (config.k && !(*config.k >= 1.0)) throw ConfigError(source, seen["noise.k"], "k must be >= 1");
  if (config.sigma_data && !(*config.sigma_data > 0.0)) {
    throw ConfigError(source, seen["noise.sigma_D"], "sigma_D must be > 0");
  }
  if (!seed_seen) throw ConfigError(source, end, "[mc] seed is required");
  if (config.mc.n_samples == 0) throw ConfigError(source, seen["mc.n_samples"], "n_samples must be > 0");
  if (config.mc.chunk_size == 0) throw ConfigError(source, seen["mc.chunk_size"], "chunk_size must be > 0");
  if (!(config.grid.start > 0.0)) throw ConfigError(source, end, "sigma_A_start must be > 0");
  if (config.grid.count > 1 && !(config.grid.stop > config.grid.start)) {
    throw ConfigError(source, end, "sigma_A grid must be strictly increasing");
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  return parse_run_config(in, path.string());
}

std::vector<NoiseModel> noise_points(const RunConfig& config) {
  std::vector<NoiseModel> points;
  for (const double sigma_a : config.grid.Values()) {
    if (config.k) {
      points.push_back(NoiseModel::FromRatio(*config.k, sigma_a));
    } else {
      points.emplace_back(*config.sigma_data, sigma_a);
    }
  }
  return points;
}

}  // namespace gkpec
