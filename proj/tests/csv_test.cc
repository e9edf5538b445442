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


#include "gkpec/csv.h"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace gkpec;

namespace {

std::vector<SweepRow> sample_rows() {
  std::vector<SweepRow> rows;
  SweepRow a;
  a.spec = SchemeSpec::OriginalSteane();
  a.k = 1.0;
  a.sigma_ancilla = 0.15000000000000002;
  a.sigma_data = 0.15000000000000002;
  a.delta_q = {0.12345678901234567, 1.0 / 3.0 * 1e-4, 1000};
  a.delta_p = {0.2, 2.5e-5, 1000};
  a.logical_rate = {1e-300, 0.0, 1000};
  a.n_samples = 1000;
  a.seed = 18'446'744'073'709'551'615ULL;
  rows.push_back(a);
  SweepRow b = a;
  b.spec = SchemeSpec::PSteane(std::sqrt(2.5), 1);
  b.k = 3.0;
  b.sigma_data = std::sqrt(3.0) * 0.15000000000000002;
  b.delta_q.mean = 5e-17;
  rows.push_back(b);
  return rows;
}

std::string written(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  write_sweep_csv(out, rows);
  return out.str();
}

std::string read_error(const std::string& text) {
  std::istringstream in(text);
  try {
    read_sweep_csv(in);
  } catch (const CsvError& e) {
    return e.what();
  }
  return "";
}

const std::string kPrefix = std::string("# schema_version=1\n") + kSweepCsvHeader + "\n";

}  // namespace

TEST_CASE("format_real is exact") {
  for (double x : {0.1, 1.0 / 3.0, std::sqrt(2.0), 1e-300, 6.02214076e23, -0.0}) {
    CHECK(std::stod(format_real(x)) == x);
  }
  CHECK(format_real(0.5) == "0.5");
}

TEST_CASE("sweep csv layout") {
  const std::string text = written(sample_rows());
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# schema_version=1");
  std::getline(in, line);
  CHECK(line == kSweepCsvHeader);
  std::getline(in, line);
  CHECK(line.rfind("original,,,1,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("psteane,1.5811388300841898,1,3,", 0) == 0);
}

TEST_CASE("sweep csv round trip is exact") {
  const auto rows = sample_rows();
  std::istringstream in(written(rows));
  const auto parsed = read_sweep_csv(in);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    const SweepCsvRow& p = parsed[i];
    CHECK(p.scheme == r.spec.name());
    CHECK(p.k == r.k);
    CHECK(p.sigma_A == r.sigma_ancilla);
    CHECK(p.sigma_D == r.sigma_data);
    CHECK(p.delta_q == r.delta_q.mean);
    CHECK(p.delta_q_se == r.delta_q.std_error);
    CHECK(p.delta_p == r.delta_p.mean);
    CHECK(p.delta_p_se == r.delta_p.std_error);
    CHECK(p.logical_rate == r.logical_rate.mean);
    CHECK(p.logical_rate_se == r.logical_rate.std_error);
    CHECK(p.n_samples == r.n_samples);
    CHECK(p.seed == r.seed);
  }
  CHECK_FALSE(parsed[0].b.has_value());
  CHECK_FALSE(parsed[0].m.has_value());
  CHECK(parsed[1].b == std::sqrt(2.5));
  CHECK(parsed[1].m == 1);
  CHECK(row_label(parsed[0]) == "original");
  CHECK(row_label(parsed[1]) == "psteane(b=1.5811388300841898,m=1)");
}

TEST_CASE("sweep csv skips comments and blank lines") {
  const std::string text = written(sample_rows()) + "\n# trailing note\n";
  std::istringstream in(text);
  CHECK(read_sweep_csv(in).size() == 2);
  std::istringstream empty(kPrefix);
  CHECK(read_sweep_csv(empty).empty());
}

TEST_CASE("sweep csv errors name line and column") {
  CHECK(read_error("") == "empty file");
  CHECK(read_error("# schema_version=2\n").find("line 1") != std::string::npos);
  CHECK(read_error("# schema_version=1\n").find("missing header") != std::string::npos);

  const std::string bad_header =
      read_error("# schema_version=1\nscheme,b,m,k,sigma_A,sigma_X\n");
  CHECK(bad_header.find("line 2, column 'sigma_D'") != std::string::npos);

  const std::string bad_value = read_error(
      kPrefix + "original,,,1,0.1,0.1,oops,0,0,0,0,0,10,1\n");
  CHECK(bad_value.find("line 3, column 'delta_q'") != std::string::npos);

  const std::string bad_count = read_error(kPrefix + "original,,,1,0.1,0.1,0,0,0,0,0,0,-5,1\n");
  CHECK(bad_count.find("column 'n_samples'") != std::string::npos);

  CHECK(read_error(kPrefix + "original,1\n").find("wrong number of fields") != std::string::npos);
}
