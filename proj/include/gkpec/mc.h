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

// Seeded Monte-Carlo estimation of the Delta metrics, logical-error rates
// and output variances.
//
// Samples are drawn in fixed-size chunks; chunk c reads the stream
// (seed, stream_offset + c). Each chunk owns its accumulators and chunks are
// merged in index order, so results are bitwise independent of the number of
// worker threads.

#ifndef GKPEC_MC_H_
#define GKPEC_MC_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "gkpec/quadrature.h"
#include "gkpec/schemes.h"

namespace gkpec {

struct McConfig {
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = 1 << 16;
  /// Added to every chunk index; use distinct offsets for independent runs
  /// under one seed.
  std::uint64_t stream_offset = 0;
  /// 0 = std::thread::hardware_concurrency().
  unsigned workers = 0;

  void Validate() const;
};

struct MetricEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
};

/// Streaming mean and variance (Welford), mergeable (Chan et al.).
class RunningStats {
 public:
  void Push(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  void Merge(const RunningStats& other);

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two samples.
  double variance() const;
  /// sample_std / sqrt(n).
  MetricEstimate Estimate() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Streaming central moments up to fourth order (Pebay's update and merge
/// formulas); used for the standard error of a sample variance.
class MomentStats {
 public:
  void Push(double x);
  void Merge(const MomentStats& other);

  std::uint64_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;
  /// Sample variance with standard error sqrt((m4 - s^4) / n).
  MetricEstimate VarianceEstimate() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

struct DeltaEstimate {
  MetricEstimate q;
  MetricEstimate p;
};

/// |symmetric_mod(out - ideal, 2 sqrt(pi))| per quadrature, ideal being
/// u1 - R(u1) (resp. v1 - R(v1)).
struct DeltaSample {
  double q;
  double p;
};
DeltaSample delta_sample(const CorrectionOutcome& out, const ShiftVector& s);

DeltaEstimate estimate_delta(const SchemeSpec& spec, const NoiseModel& noise,
                             const McConfig& cfg);

/// Fraction of samples with (n_q, n_p) != (0, 0), binomial standard error.
MetricEstimate estimate_logical_rate(const SchemeSpec& spec, const NoiseModel& noise,
                                     const McConfig& cfg);

struct WrapRates {
  MetricEstimate any;
  MetricEstimate q;  // n_q != 0
  MetricEstimate p;  // n_p != 0
};
WrapRates estimate_wrap_rates(const SchemeSpec& spec, const NoiseModel& noise,
                              const McConfig& cfg);

class InsufficientSamplesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sample variances of u_out and v_out, optionally restricted to samples
/// with (n_q, n_p) = (0, 0). Throws InsufficientSamplesError if fewer than
/// two samples survive the conditioning.
DeltaEstimate estimate_output_variance(const SchemeSpec& spec, const NoiseModel& noise,
                                       const McConfig& cfg, bool condition_no_wrap);

/// Several schemes evaluated on one shared shift stream (common random
/// numbers). diff_q[i][j] estimates Delta_q(i) - Delta_q(j) from per-sample
/// differences.
struct PanelResult {
  std::vector<SchemeSpec> specs;
  std::vector<DeltaEstimate> delta;
  std::vector<WrapRates> wraps;
  std::vector<std::vector<MetricEstimate>> diff_q;
  std::vector<std::vector<MetricEstimate>> diff_p;
};
PanelResult evaluate_panel(std::span<const SchemeSpec> specs, const NoiseModel& noise,
                           const McConfig& cfg);

/// Output shifts of one scheme, u_out and v_out in sample order.
struct OutputSamples {
  std::vector<double> u;
  std::vector<double> v;
};
OutputSamples collect_outputs(const SchemeSpec& spec, const NoiseModel& noise,
                              const McConfig& cfg);

/// Histogram of u_out over equal-width bins on [lo, hi); counts[0] and
/// counts.back() are the underflow and overflow cells.
std::vector<std::uint64_t> histogram_u_out(const SchemeSpec& spec, const NoiseModel& noise,
                                           const McConfig& cfg, double lo, double hi,
                                           int bins);

struct SweepRow {
  SchemeSpec spec = SchemeSpec::OriginalSteane();
  double k = 0.0;
  double sigma_ancilla = 0.0;
  double sigma_data = 0.0;
  MetricEstimate delta_q;
  MetricEstimate delta_p;
  MetricEstimate logical_rate;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

struct SweepOptions {
  /// Evaluate every scheme on the same shift stream at each grid point.
  /// When false, scheme i reads streams offset by i << 40.
  bool common_random_numbers = true;
};

/// One row per (scheme, sigma_A) with sigma_D = sqrt(k) sigma_A, ordered by
/// scheme (input order) then sigma_A (grid order).
std::vector<SweepRow> run_sweep(std::span<const SchemeSpec> specs, double k,
                                std::span<const double> sigma_ancilla_grid,
                                const McConfig& cfg, const SweepOptions& options = {});

/// As run_sweep, over explicit noise points (k = sigma_D^2 / sigma_A^2 per
/// row).
std::vector<SweepRow> run_sweep_points(std::span<const SchemeSpec> specs,
                                       std::span<const NoiseModel> points,
                                       const McConfig& cfg, const SweepOptions& options = {});

}  // namespace gkpec

#endif  // GKPEC_MC_H_
