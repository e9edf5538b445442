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

// Sweep configuration files.
//
// Grammar (one statement per line, '#' starts a comment):
//
//   file    := { line }
//   line    := section | assign | blank
//   section := "[" ( "scheme" | "noise" | "grid" | "mc" | "output" ) "]"
//   assign  := key "=" value
//   value   := number | "sqrt(" number ")" | number "/" number | word
//
// [scheme] may repeat, one block per scheme (keys: kind, b, m or a).
// [noise] takes exactly one of k or sigma_D. [grid] takes sigma_A_start,
// sigma_A_stop, sigma_A_count. [mc] takes n_samples, seed (required),
// chunk_size, workers, common_random_numbers. [output] takes path.

#ifndef GKPEC_CONFIG_H_
#define GKPEC_CONFIG_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gkpec/mc.h"
#include "gkpec/schemes.h"

namespace gkpec {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Inclusive linear grid; count = 1 yields {start}.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  std::vector<double> Values() const;
};

struct RunConfig {
  std::vector<SchemeSpec> schemes;
  std::optional<double> k;
  std::optional<double> sigma_data;
  GridSpec grid;
  McConfig mc;
  bool common_random_numbers = true;
  std::string output_path;
};

/// "1.5", "1/3", "sqrt(2)", "sqrt(5/2)". Throws std::invalid_argument.
double parse_number(std::string_view text);

/// "original", "me", "teleportation", "psteane:b=<num>,m=<int>" or
/// "psteane:a=<num>,b=<num>". Throws std::invalid_argument.
SchemeSpec parse_scheme(std::string_view text);

/// m = 2a/b, which must be a positive integer within 1e-9.
int integer_ratio_m(double a, double b);

RunConfig parse_run_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_run_config(const std::filesystem::path& path);

/// Noise points of a config: sigma_D = sqrt(k) sigma_A, or fixed sigma_D.
std::vector<NoiseModel> noise_points(const RunConfig& config);

}  // namespace gkpec

#endif  // GKPEC_CONFIG_H_
