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

#include "gkpec/mc.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace gkpec {

namespace {

constexpr std::uint64_t kSchemeStreamStride = std::uint64_t{1} << 40;

// Runs body(sampler, count, acc) once per chunk and merges the chunk
// accumulators in chunk order.
template <class Acc, class Body>
Acc run_chunks(const McConfig& cfg, const Acc& prototype, Body body) {
  cfg.Validate();
  const std::uint64_t n_chunks = (cfg.n_samples + cfg.chunk_size - 1) / cfg.chunk_size;
  std::vector<Acc> accs(n_chunks, prototype);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    try {
      for (std::uint64_t c = next++; c < n_chunks; c = next++) {
        ShiftSampler sampler(RngStream{cfg.seed, cfg.stream_offset + c});
        const std::uint64_t begin = c * cfg.chunk_size;
        const std::uint64_t count = std::min(cfg.chunk_size, cfg.n_samples - begin);
        body(sampler, count, accs[c]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = n_chunks;
    }
  };

  unsigned workers = cfg.workers ? cfg.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, n_chunks));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  Acc total = std::move(accs.front());
  for (std::uint64_t c = 1; c < n_chunks; ++c) total.Merge(accs[c]);
  return total;
}

MetricEstimate binomial(std::uint64_t hits, std::uint64_t n) {
  const double p = n ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;
  return MetricEstimate{p, n ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0, n};
}

struct SchemeCounters {
  RunningStats dq;
  RunningStats dp;
  std::uint64_t any = 0;
  std::uint64_t wrap_q = 0;
  std::uint64_t wrap_p = 0;
};

struct PanelAcc {
  std::vector<SchemeCounters> schemes;
  // Upper triangle (i < j) of per-sample differences, row-major.
  std::vector<RunningStats> diff_q;
  std::vector<RunningStats> diff_p;

  void Merge(const PanelAcc& o) {
    for (std::size_t i = 0; i < schemes.size(); ++i) {
      schemes[i].dq.Merge(o.schemes[i].dq);
      schemes[i].dp.Merge(o.schemes[i].dp);
      schemes[i].any += o.schemes[i].any;
      schemes[i].wrap_q += o.schemes[i].wrap_q;
      schemes[i].wrap_p += o.schemes[i].wrap_p;
    }
    for (std::size_t i = 0; i < diff_q.size(); ++i) {
      diff_q[i].Merge(o.diff_q[i]);
      diff_p[i].Merge(o.diff_p[i]);
    }
  }
};

struct VarianceAcc {
  MomentStats u;
  MomentStats v;
  void Merge(const VarianceAcc& o) {
    u.Merge(o.u);
    v.Merge(o.v);
  }
};

struct OutputAcc {
  std::vector<double> u;
  std::vector<double> v;
  void Merge(const OutputAcc& o) {
    u.insert(u.end(), o.u.begin(), o.u.end());
    v.insert(v.end(), o.v.begin(), o.v.end());
  }
};

struct HistogramAcc {
  std::vector<std::uint64_t> counts;
  void Merge(const HistogramAcc& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
  }
};

}  // namespace

void McConfig::Validate() const {
  if (n_samples == 0) throw std::invalid_argument("McConfig: n_samples must be > 0");
  if (chunk_size == 0) throw std::invalid_argument("McConfig: chunk_size must be > 0");
}

void RunningStats::Merge(const RunningStats& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
}

double RunningStats::variance() const {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

MetricEstimate RunningStats::Estimate() const {
  const double se = n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  return MetricEstimate{mean_, se, n_};
}

void MomentStats::Push(double x) {
  const double n1 = static_cast<double>(n_);
  ++n_;
  const double n = static_cast<double>(n_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
  m2_ += term1;
}

void MomentStats::Merge(const MomentStats& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double n = na + nb;
  const double d = o.mean_ - mean_;
  const double d2 = d * d;
  const double m2 = m2_ + o.m2_ + d2 * na * nb / n;
  const double m3 = m3_ + o.m3_ + d * d2 * na * nb * (na - nb) / (n * n) +
                    3.0 * d * (na * o.m2_ - nb * m2_) / n;
  const double m4 = m4_ + o.m4_ + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                    6.0 * d2 * (na * na * o.m2_ + nb * nb * m2_) / (n * n) +
                    4.0 * d * (na * o.m3_ - nb * m3_) / n;
  mean_ += d * nb / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  n_ += o.n_;
}

double MomentStats::variance() const {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

MetricEstimate MomentStats::VarianceEstimate() const {
  const double n = static_cast<double>(n_);
  const double s2 = variance();
  const double central4 = n_ ? m4_ / n : 0.0;
  const double spread = std::max(0.0, central4 - s2 * s2);
  return MetricEstimate{s2, n_ ? std::sqrt(spread / n) : 0.0, n_};
}

DeltaSample delta_sample(const CorrectionOutcome& out, const ShiftVector& s) {
  const double ideal_q = s.u1 - round_residual(s.u1);
  const double ideal_p = s.v1 - round_residual(s.v1);
  return DeltaSample{std::abs(symmetric_mod(out.u_out - ideal_q, kTwoSqrtPi)),
                     std::abs(symmetric_mod(out.v_out - ideal_p, kTwoSqrtPi))};
}

PanelResult evaluate_panel(std::span<const SchemeSpec> specs, const NoiseModel& noise,
                           const McConfig& cfg) {
  if (specs.empty()) throw std::invalid_argument("evaluate_panel: no schemes");
  const std::size_t n_schemes = specs.size();
  std::vector<Corrector> correctors;
  for (const SchemeSpec& s : specs) correctors.emplace_back(s, noise);

  const std::size_t n_pairs = n_schemes * (n_schemes - 1) / 2;
  PanelAcc prototype{std::vector<SchemeCounters>(n_schemes), std::vector<RunningStats>(n_pairs),
                     std::vector<RunningStats>(n_pairs)};

  PanelAcc total = run_chunks(cfg, prototype, [&](ShiftSampler& sampler, std::uint64_t count,
                                                  PanelAcc& acc) {
    std::vector<DeltaSample> d(n_schemes);
    for (std::uint64_t i = 0; i < count; ++i) {
      const ShiftVector s = sampler.Next(noise);
      for (std::size_t k = 0; k < n_schemes; ++k) {
        const CorrectionOutcome out = correctors[k](s);
        d[k] = delta_sample(out, s);
        SchemeCounters& c = acc.schemes[k];
        c.dq.Push(d[k].q);
        c.dp.Push(d[k].p);
        c.any += out.logical_error() ? 1 : 0;
        c.wrap_q += out.n_q != 0 ? 1 : 0;
        c.wrap_p += out.n_p != 0 ? 1 : 0;
      }
      std::size_t pair = 0;
      for (std::size_t a = 0; a < n_schemes; ++a) {
        for (std::size_t b = a + 1; b < n_schemes; ++b, ++pair) {
          acc.diff_q[pair].Push(d[a].q - d[b].q);
          acc.diff_p[pair].Push(d[a].p - d[b].p);
        }
      }
    }
  });

  PanelResult result;
  result.specs.assign(specs.begin(), specs.end());
  const std::uint64_t n = cfg.n_samples;
  for (const SchemeCounters& c : total.schemes) {
    result.delta.push_back(DeltaEstimate{c.dq.Estimate(), c.dp.Estimate()});
    result.wraps.push_back(WrapRates{binomial(c.any, n), binomial(c.wrap_q, n), binomial(c.wrap_p, n)});
  }
  result.diff_q.assign(n_schemes, std::vector<MetricEstimate>(n_schemes, MetricEstimate{0.0, 0.0, n}));
  result.diff_p = result.diff_q;
  std::size_t pair = 0;
  for (std::size_t a = 0; a < n_schemes; ++a) {
    for (std::size_t b = a + 1; b < n_schemes; ++b, ++pair) {
      const MetricEstimate q = total.diff_q[pair].Estimate();
      const MetricEstimate p = total.diff_p[pair].Estimate();
      result.diff_q[a][b] = q;
      result.diff_p[a][b] = p;
      result.diff_q[b][a] = MetricEstimate{-q.mean, q.std_error, q.n};
      result.diff_p[b][a] = MetricEstimate{-p.mean, p.std_error, p.n};
    }
  }
  return result;
}

DeltaEstimate estimate_delta(const SchemeSpec& spec, const NoiseModel& noise,
                             const McConfig& cfg) {
  return evaluate_panel(std::span(&spec, 1), noise, cfg).delta.front();
}

WrapRates estimate_wrap_rates(const SchemeSpec& spec, const NoiseModel& noise,
                              const McConfig& cfg) {
  return evaluate_panel(std::span(&spec, 1), noise, cfg).wraps.front();
}

MetricEstimate estimate_logical_rate(const SchemeSpec& spec, const NoiseModel& noise,
                                     const McConfig& cfg) {
  return estimate_wrap_rates(spec, noise, cfg).any;
}

DeltaEstimate estimate_output_variance(const SchemeSpec& spec, const NoiseModel& noise,
                                       const McConfig& cfg, bool condition_no_wrap) {
  const Corrector corrector(spec, noise);
  const VarianceAcc total = run_chunks(
      cfg, VarianceAcc{}, [&](ShiftSampler& sampler, std::uint64_t count, VarianceAcc& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
          const CorrectionOutcome out = corrector(sampler.Next(noise));
          if (condition_no_wrap && out.logical_error()) continue;
          acc.u.Push(out.u_out);
          acc.v.Push(out.v_out);
        }
      });
  if (total.u.count() < 2) {
    throw InsufficientSamplesError(
        "estimate_output_variance: conditioning left fewer than two samples");
  }
  return DeltaEstimate{total.u.VarianceEstimate(), total.v.VarianceEstimate()};
}

OutputSamples collect_outputs(const SchemeSpec& spec, const NoiseModel& noise,
                              const McConfig& cfg) {
  const Corrector corrector(spec, noise);
  OutputAcc total = run_chunks(
      cfg, OutputAcc{}, [&](ShiftSampler& sampler, std::uint64_t count, OutputAcc& acc) {
        acc.u.reserve(count);
        acc.v.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
          const CorrectionOutcome out = corrector(sampler.Next(noise));
          acc.u.push_back(out.u_out);
          acc.v.push_back(out.v_out);
        }
      });
  return OutputSamples{std::move(total.u), std::move(total.v)};
}

std::vector<std::uint64_t> histogram_u_out(const SchemeSpec& spec, const NoiseModel& noise,
                                           const McConfig& cfg, double lo, double hi,
                                           int bins) {
  if (bins < 1 || !(hi > lo)) throw std::invalid_argument("histogram_u_out: bad binning");
  const Corrector corrector(spec, noise);
  const double width = (hi - lo) / bins;
  HistogramAcc prototype{std::vector<std::uint64_t>(bins + 2, 0)};
  const HistogramAcc total = run_chunks(
      cfg, prototype, [&](ShiftSampler& sampler, std::uint64_t count, HistogramAcc& acc) {
        for (std::uint64_t i = 0; i < count; ++i) {
          const double u = corrector(sampler.Next(noise)).u_out;
          std::size_t cell;
          if (u < lo) {
            cell = 0;
          } else if (u >= hi) {
            cell = bins + 1;
          } else {
            const auto b = static_cast<std::size_t>((u - lo) / width);
            cell = 1 + std::min<std::size_t>(b, bins - 1);
          }
          ++acc.counts[cell];
        }
      });
  return total.counts;
}

std::vector<SweepRow> run_sweep(std::span<const SchemeSpec> specs, double k,
                                std::span<const double> sigma_ancilla_grid,
                                const McConfig& cfg, const SweepOptions& options) {
  if (!(k >= 1.0) || !std::isfinite(k)) throw std::invalid_argument("run_sweep: requires k >= 1");
  std::vector<NoiseModel> points;
  for (const double sigma_a : sigma_ancilla_grid) {
    points.push_back(NoiseModel::FromRatio(k, sigma_a));
  }
  std::vector<SweepRow> rows = run_sweep_points(specs, points, cfg, options);
  for (SweepRow& row : rows) row.k = k;
  return rows;
}

std::vector<SweepRow> run_sweep_points(std::span<const SchemeSpec> specs,
                                       std::span<const NoiseModel> points,
                                       const McConfig& cfg, const SweepOptions& options) {
  if (specs.empty()) throw std::invalid_argument("run_sweep: no schemes");
  if (points.empty()) throw std::invalid_argument("run_sweep: empty sigma_A grid");

  // rows[scheme][point]
  std::vector<std::vector<SweepRow>> rows(specs.size());
  for (const NoiseModel& noise : points) {
    std::vector<PanelResult> panels;
    if (options.common_random_numbers) {
      panels.push_back(evaluate_panel(specs, noise, cfg));
    } else {
      for (std::size_t i = 0; i < specs.size(); ++i) {
        McConfig own = cfg;
        own.stream_offset = cfg.stream_offset + i * kSchemeStreamStride;
        panels.push_back(evaluate_panel(specs.subspan(i, 1), noise, own));
      }
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const PanelResult& panel = options.common_random_numbers ? panels.front() : panels[i];
      const std::size_t slot = options.common_random_numbers ? i : 0;
      SweepRow row;
      row.spec = specs[i];
      row.k = noise.ratio();
      row.sigma_ancilla = noise.sigma_ancilla();
      row.sigma_data = noise.sigma_data();
      row.delta_q = panel.delta[slot].q;
      row.delta_p = panel.delta[slot].p;
      row.logical_rate = panel.wraps[slot].any;
      row.n_samples = cfg.n_samples;
      row.seed = cfg.seed;
      rows[i].push_back(row);
    }
  }
  std::vector<SweepRow> flat;
  for (auto& per_scheme : rows) {
    flat.insert(flat.end(), per_scheme.begin(), per_scheme.end());
  }
  return flat;
}

}  // namespace gkpec
