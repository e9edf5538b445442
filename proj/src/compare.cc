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

#include "gkpec/compare.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "gkpec/analytics.h"
#include "gkpec/csv.h"

namespace gkpec {

namespace {

constexpr std::uint64_t kIndependentStreamOffset = std::uint64_t{1} << 41;

std::vector<double> sorted_mod(const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(),
                 [](double x) { return symmetric_mod(x, kTwoSqrtPi); });
  std::sort(out.begin(), out.end());
  return out;
}

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace

CompareReport compare_schemes(const SchemeSpec& a, const SchemeSpec& b, const NoiseModel& noise,
                              const McConfig& cfg, const CompareOptions& options) {
  CompareReport r;
  r.a = a;
  r.b = b;
  r.noise = noise;
  r.n_samples = cfg.n_samples;
  r.seed = cfg.seed;

  const std::array<SchemeSpec, 2> pair = {a, b};
  const PanelResult panel = evaluate_panel(pair, noise, cfg);
  r.delta_a = panel.delta[0];
  r.delta_b = panel.delta[1];
  r.diff_q = panel.diff_q[0][1];
  r.diff_p = panel.diff_p[0][1];

  const OutputSamples out_a = collect_outputs(a, noise, cfg);
  {
    const OutputSamples same_b = collect_outputs(b, noise, cfg);
    r.max_abs_diff_u = max_abs_diff(out_a.u, same_b.u);
    r.max_abs_diff_v = max_abs_diff(out_a.v, same_b.v);
  }
  r.pairwise_identical =
      r.max_abs_diff_u < options.identity_tol && r.max_abs_diff_v < options.identity_tol;

  McConfig independent = cfg;
  independent.stream_offset = cfg.stream_offset + kIndependentStreamOffset;
  const OutputSamples out_b = collect_outputs(b, noise, independent);
  r.ks_u = ks_statistic(sorted_mod(out_a.u), sorted_mod(out_b.u));
  r.ks_v = ks_statistic(sorted_mod(out_a.v), sorted_mod(out_b.v));
  r.ks_critical = ks_critical_value(out_a.u.size(), out_b.u.size(), options.ks_alpha);
  r.ks_accept = r.ks_u < r.ks_critical && r.ks_v < r.ks_critical;
  return r;
}

std::string format_report(const CompareReport& r) {
  std::ostringstream out;
  out << "scheme_a = " << r.a.label() << "\n"
      << "scheme_b = " << r.b.label() << "\n"
      << "sigma_D = " << format_real(r.noise.sigma_data()) << "\n"
      << "sigma_A = " << format_real(r.noise.sigma_ancilla()) << "\n"
      << "n_samples = " << r.n_samples << "\n"
      << "seed = " << r.seed << "\n"
      << "delta_q_a = " << format_real(r.delta_a.q.mean) << " +- "
      << format_real(r.delta_a.q.std_error) << "\n"
      << "delta_q_b = " << format_real(r.delta_b.q.mean) << " +- "
      << format_real(r.delta_b.q.std_error) << "\n"
      << "delta_p_a = " << format_real(r.delta_a.p.mean) << " +- "
      << format_real(r.delta_a.p.std_error) << "\n"
      << "delta_p_b = " << format_real(r.delta_b.p.mean) << " +- "
      << format_real(r.delta_b.p.std_error) << "\n"
      << "paired_diff_q = " << format_real(r.diff_q.mean) << " +- "
      << format_real(r.diff_q.std_error) << "\n"
      << "paired_diff_p = " << format_real(r.diff_p.mean) << " +- "
      << format_real(r.diff_p.std_error) << "\n"
      << "max_pairwise_diff_u = " << format_real(r.max_abs_diff_u) << "\n"
      << "max_pairwise_diff_v = " << format_real(r.max_abs_diff_v) << "\n"
      << "PAIRWISE_IDENTICAL: " << (r.pairwise_identical ? "PASS" : "FAIL") << "\n"
      << "ks_u = " << format_real(r.ks_u) << "\n"
      << "ks_v = " << format_real(r.ks_v) << "\n"
      << "ks_critical = " << format_real(r.ks_critical) << "\n"
      << "KS: " << (r.ks_accept ? "PASS" : "FAIL") << "\n"
      << "EQUIVALENCE: " << (r.equivalent() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace gkpec
