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

// Sweep CSV files.
//
// Line 1 is "# schema_version=1", line 2 the header, then one row per
// (scheme, sigma_A). Reals are written with 17 significant digits so a
// write/read round trip is exact. b and m are empty for schemes without
// parameters.

#ifndef GKPEC_CSV_H_
#define GKPEC_CSV_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkpec/mc.h"

namespace gkpec {

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr const char* kSweepCsvHeader =
    "scheme,b,m,k,sigma_A,sigma_D,delta_q,delta_q_se,delta_p,delta_p_se,"
    "logical_rate,logical_rate_se,n_samples,seed";

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "%.17g".
std::string format_real(double x);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// One parsed data row; the scheme column is kept as written.
struct SweepCsvRow {
  std::string scheme;
  std::optional<double> b;
  std::optional<int> m;
  double k = 0.0;
  double sigma_A = 0.0;
  double sigma_D = 0.0;
  double delta_q = 0.0;
  double delta_q_se = 0.0;
  double delta_p = 0.0;
  double delta_p_se = 0.0;
  double logical_rate = 0.0;
  double logical_rate_se = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Throws CsvError naming the line (and column) at fault.
std::vector<SweepCsvRow> read_sweep_csv(std::istream& in);

/// Scheme identity used to group rows: "psteane(b=...,m=...)" for P-Steane,
/// otherwise the scheme name.
std::string row_label(const SweepCsvRow& row);

}  // namespace gkpec

#endif  // GKPEC_CSV_H_
