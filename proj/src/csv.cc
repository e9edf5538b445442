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

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <string_view>

namespace gkpec {

namespace {

constexpr std::array<std::string_view, 14> kColumns = {
    "scheme", "b",          "m",       "k",            "sigma_A",         "sigma_D",   "delta_q",
    "delta_q_se", "delta_p", "delta_p_se", "logical_rate", "logical_rate_se", "n_samples", "seed"};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line = line.substr(comma + 1);
  }
  return out;
}

[[noreturn]] void fail(int line, std::size_t column, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line;
  if (column < kColumns.size()) msg << ", column '" << kColumns[column] << "'";
  msg << ": " << what;
  throw CsvError(msg.str());
}

template <typename T>
T parse_field(std::string_view text, int line, std::size_t column) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    fail(line, column, "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "# schema_version=" << kCsvSchemaVersion << "\n" << kSweepCsvHeader << "\n";
  for (const SweepRow& r : rows) {
    const bool has_params = r.spec.kind() == SchemeKind::kPSteane;
    out << r.spec.name() << ',' << (has_params ? format_real(r.spec.b()) : "") << ','
        << (has_params ? std::to_string(r.spec.m()) : "") << ',' << format_real(r.k) << ','
        << format_real(r.sigma_ancilla) << ',' << format_real(r.sigma_data) << ','
        << format_real(r.delta_q.mean) << ',' << format_real(r.delta_q.std_error) << ','
        << format_real(r.delta_p.mean) << ',' << format_real(r.delta_p.std_error) << ','
        << format_real(r.logical_rate.mean) << ',' << format_real(r.logical_rate.std_error)
        << ',' << r.n_samples << ',' << r.seed << '\n';
  }
}

std::vector<SweepCsvRow> read_sweep_csv(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw CsvError("empty file");
  if (line != "# schema_version=" + std::to_string(kCsvSchemaVersion)) {
    fail(line_no, kColumns.size(), "expected '# schema_version=1'");
  }
  ++line_no;
  if (!std::getline(in, line)) fail(line_no, kColumns.size(), "missing header");
  const auto header = split(line);
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i >= header.size() || header[i] != kColumns[i]) fail(line_no, i, "header mismatch");
  }
  if (header.size() != kColumns.size()) fail(line_no, kColumns.size(), "extra header columns");

  std::vector<SweepCsvRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto f = split(line);
    if (f.size() != kColumns.size()) fail(line_no, kColumns.size(), "wrong number of fields");
    SweepCsvRow r;
    r.scheme = std::string(f[0]);
    if (!f[1].empty()) r.b = parse_field<double>(f[1], line_no, 1);
    if (!f[2].empty()) r.m = parse_field<int>(f[2], line_no, 2);
    r.k = parse_field<double>(f[3], line_no, 3);
    r.sigma_A = parse_field<double>(f[4], line_no, 4);
    r.sigma_D = parse_field<double>(f[5], line_no, 5);
    r.delta_q = parse_field<double>(f[6], line_no, 6);
    r.delta_q_se = parse_field<double>(f[7], line_no, 7);
    r.delta_p = parse_field<double>(f[8], line_no, 8);
    r.delta_p_se = parse_field<double>(f[9], line_no, 9);
    r.logical_rate = parse_field<double>(f[10], line_no, 10);
    r.logical_rate_se = parse_field<double>(f[11], line_no, 11);
    r.n_samples = parse_field<std::uint64_t>(f[12], line_no, 12);
    r.seed = parse_field<std::uint64_t>(f[13], line_no, 13);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string row_label(const SweepCsvRow& row) {
  if (!row.b && !row.m) return row.scheme;
  return row.scheme + "(b=" + (row.b ? format_real(*row.b) : "") +
         ",m=" + (row.m ? std::to_string(*row.m) : "") + ")";
}

}  // namespace gkpec
