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

// Equivalence testing between two correction schemes.
//
// Two schemes are reported equivalent when their outputs agree sample by
// sample on a shared shift stream, or, failing that, when two-sample KS tests
// on the mod-2 sqrt(pi) outputs (independent streams) accept in both
// quadratures.

#ifndef GKPEC_COMPARE_H_
#define GKPEC_COMPARE_H_

#include <string>

#include "gkpec/mc.h"

namespace gkpec {

struct CompareOptions {
  double identity_tol = 1e-12;
  double ks_alpha = 1e-3;
};

struct CompareReport {
  SchemeSpec a = SchemeSpec::OriginalSteane();
  SchemeSpec b = SchemeSpec::OriginalSteane();
  NoiseModel noise{0.0, 0.0};
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;

  // Common-random-number panel.
  DeltaEstimate delta_a;
  DeltaEstimate delta_b;
  MetricEstimate diff_q;  // Delta_q(a) - Delta_q(b)
  MetricEstimate diff_p;

  // Same stream, sample by sample.
  double max_abs_diff_u = 0.0;
  double max_abs_diff_v = 0.0;
  bool pairwise_identical = false;

  // Independent streams, mod-2 sqrt(pi) outputs.
  double ks_u = 0.0;
  double ks_v = 0.0;
  double ks_critical = 0.0;
  bool ks_accept = false;

  bool equivalent() const { return pairwise_identical || ks_accept; }
};

/// Scheme b's independent KS stream starts at cfg.stream_offset + 2^41.
CompareReport compare_schemes(const SchemeSpec& a, const SchemeSpec& b, const NoiseModel& noise,
                              const McConfig& cfg, const CompareOptions& options = {});

/// key = value lines, ending with "EQUIVALENCE: PASS|FAIL".
std::string format_report(const CompareReport& report);

}  // namespace gkpec

#endif  // GKPEC_COMPARE_H_
