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

// gkpec command-line tool.
//
// Exit status: 0 success, 1 validation failure (bad input, or a verify /
// compare check reported FAIL), 2 runtime or estimation failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gkpec/analytics.h"
#include "gkpec/compare.h"
#include "gkpec/config.h"
#include "gkpec/csv.h"
#include "gkpec/defaults.h"
#include "gkpec/mc.h"
#include "gkpec/symplectic.h"

namespace {

using namespace gkpec;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

// Input problems detected by the tool itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double number_arg(const std::string& flag, const std::string& text) {
  try {
    return parse_number(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(defaults::kOutputDirEnv); dir && *dir) {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

// Writes text to path, or to stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  const std::filesystem::path p = resolve_output(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

NoiseModel noise_from_flags(const std::string& sigma_a, const std::string& sigma_d,
                            const std::string& k) {
  if (sigma_a.empty()) throw UsageError("--sigma-a is required");
  if (sigma_d.empty() == k.empty()) throw UsageError("give exactly one of --sigma-d or --k");
  const double sa = number_arg("--sigma-a", sigma_a);
  if (!(sa > 0.0)) throw UsageError("--sigma-a must be > 0");
  if (!k.empty()) {
    const double kv = number_arg("--k", k);
    if (!(kv >= 1.0)) throw UsageError("--k must be >= 1");
    return NoiseModel::FromRatio(kv, sa);
  }
  const double sd = number_arg("--sigma-d", sigma_d);
  if (!(sd > 0.0)) throw UsageError("--sigma-d must be > 0");
  return NoiseModel(sd, sa);
}

SchemeSpec scheme_arg(const std::string& text) {
  try {
    return parse_scheme(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--scheme '" + text + "': " + e.what());
  }
}

struct McFlags {
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> chunk_size;
  std::optional<unsigned> workers;

  void Add(CLI::App* app) {
    app->add_option("--samples", samples, "Monte-Carlo samples per point");
    app->add_option("--seed", seed, "RNG seed");
    app->add_option("--chunk-size", chunk_size, "samples per RNG stream chunk");
    app->add_option("--workers", workers, "worker threads (0 = all cores)");
  }

  // Flags override base.
  McConfig Apply(McConfig base) const {
    if (samples) base.n_samples = *samples;
    if (seed) base.seed = *seed;
    if (chunk_size) base.chunk_size = *chunk_size;
    if (workers) base.workers = *workers;
    if (base.n_samples == 0) throw UsageError("--samples must be > 0");
    if (base.chunk_size == 0) throw UsageError("--chunk-size must be > 0");
    return base;
  }
};

McConfig default_mc() {
  McConfig cfg;
  cfg.n_samples = defaults::kSamples;
  cfg.chunk_size = defaults::kChunkSize;
  cfg.workers = defaults::kWorkers;
  return cfg;
}

// ---------------------------------------------------------------------------

int cmd_verify(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw UsageError("verify: a and b must be > 0");
  const IdentityReport report = verify_preprocessing_identity(a, b);
  std::cout << format_report(report);
  return report.identical ? kExitOk : kExitValidation;
}

int cmd_simulate(const std::vector<std::string>& schemes, const NoiseModel& noise,
                 const McConfig& cfg, bool crn, bool oracle, const std::string& output) {
  std::vector<SchemeSpec> specs;
  for (const std::string& s : schemes) specs.push_back(scheme_arg(s));
  const NoiseModel points[] = {noise};
  const std::vector<SweepRow> rows = run_sweep_points(specs, points, cfg, SweepOptions{crn});
  std::ostringstream out;
  write_sweep_csv(out, rows);
  if (oracle) {
    for (const SchemeSpec& spec : specs) {
      const QuadratureGrid grid{defaults::kQuadratureNodes, defaults::kQuadraturePanels,
                                defaults::kQuadratureHalfWidth};
      const DeltaPair d = delta_oracle(spec, noise, grid, defaults::kQuadratureRefineTol);
      out << "# oracle " << spec.label() << " delta_q=" << format_real(d.q)
          << " delta_p=" << format_real(d.p) << "\n";
    }
  }
  emit(output, out.str());
  return kExitOk;
}

int cmd_sweep(const RunConfig& config, const McFlags& flags, std::optional<bool> crn_flag,
              const std::string& output_flag) {
  const McConfig cfg = flags.Apply(config.mc);
  const bool crn = crn_flag.value_or(config.common_random_numbers);
  const std::vector<NoiseModel> points = noise_points(config);
  std::vector<SweepRow> rows = run_sweep_points(config.schemes, points, cfg, SweepOptions{crn});
  if (config.k) {
    for (SweepRow& row : rows) row.k = *config.k;
  }
  std::ostringstream out;
  write_sweep_csv(out, rows);
  emit(output_flag.empty() ? config.output_path : output_flag, out.str());
  return kExitOk;
}

int cmd_pdf(const NoiseModel& noise, double x_min, double x_max, int points,
            std::uint64_t mc_samples, const McConfig& cfg, const std::string& output) {
  if (points < 2) throw UsageError("pdf: --points must be >= 2");
  if (!(x_max > x_min)) throw UsageError("pdf: need x-max > x-min");
  const PdfSpec spec = PdfSpec::ForNoise(noise.sigma_data(), noise.sigma_ancilla());
  spec.Validate();

  const double h = (x_max - x_min) / (points - 1);
  std::vector<double> xs(points), fs(points);
  for (int i = 0; i < points; ++i) {
    // Mirror-exact grid: x_i = -x_{n-1-i} whenever the range is symmetric.
    xs[i] = i < points / 2 ? x_min + h * i : x_max - h * (points - 1 - i);
    fs[i] = p_steane_sym_pdf(xs[i], spec);
  }

  std::vector<std::uint64_t> counts;
  if (mc_samples > 0) {
    McConfig mc = cfg;
    mc.n_samples = mc_samples;
    // One bin centred on each x.
    counts = histogram_u_out(SchemeSpec::PSteane(kSqrt2, 1), noise, mc, x_min - 0.5 * h,
                             x_max + 0.5 * h, points);
  }

  std::ostringstream out;
  out << "# schema_version=" << kCsvSchemaVersion << "\n";
  out << (counts.empty() ? "x,f" : "x,f,mc_count,mc_density") << "\n";
  double integral = 0.0;
  for (int i = 0; i < points; ++i) {
    out << format_real(xs[i]) << ',' << format_real(fs[i]);
    if (!counts.empty()) {
      const std::uint64_t c = counts[i + 1];
      out << ',' << c << ','
          << format_real(static_cast<double>(c) / (static_cast<double>(mc_samples) * h));
    }
    out << "\n";
    if (i > 0) integral += 0.5 * (xs[i] - xs[i - 1]) * (fs[i] + fs[i - 1]);
  }
  out << "# trapezoid_integral=" << format_real(integral) << "\n";
  emit(output, out.str());
  return kExitOk;
}

int cmd_compare(const std::string& a, const std::string& b, const NoiseModel& noise,
                const McConfig& cfg, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("compare: --alpha must be in (0, 1)");
  const CompareReport report = compare_schemes(scheme_arg(a), scheme_arg(b), noise, cfg,
                                               CompareOptions{defaults::kIdentityTol, alpha});
  std::cout << format_report(report);
  return report.equivalent() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GKP error-correction simulator and analytics toolkit"};
  app.require_subcommand(1);

  // verify
  std::string verify_a, verify_b;
  CLI::App* verify = app.add_subcommand("verify", "check the preprocessing stabilizer identity");
  verify->add_option("--a", verify_a, "squeezing parameter a")->required();
  verify->add_option("--b", verify_b, "squeezing parameter b")->required();

  // Shared noise flags.
  struct NoiseFlags {
    std::string sigma_a, sigma_d, k;
    void Add(CLI::App* sub) {
      sub->add_option("--sigma-a", sigma_a, "ancilla noise sigma_A");
      sub->add_option("--sigma-d", sigma_d, "data noise sigma_D");
      sub->add_option("--k", k, "noise ratio k = sigma_D^2 / sigma_A^2");
    }
  };

  // simulate
  std::vector<std::string> sim_schemes;
  NoiseFlags sim_noise;
  McFlags sim_mc;
  bool sim_oracle = false, sim_no_crn = false;
  std::string sim_output;
  CLI::App* simulate = app.add_subcommand("simulate", "estimate Delta at one noise point");
  simulate->add_option("--scheme", sim_schemes, "original | me | teleportation | psteane:b=..,m=..")
      ->required();
  sim_noise.Add(simulate);
  sim_mc.Add(simulate);
  simulate->add_flag("--oracle", sim_oracle, "append deterministic quadrature values");
  simulate->add_flag("--no-crn", sim_no_crn, "independent streams per scheme");
  simulate->add_option("--output", sim_output, "CSV path (default stdout)");

  // sweep
  std::string sweep_config, sweep_output;
  McFlags sweep_mc;
  bool sweep_crn = false, sweep_no_crn = false;
  CLI::App* sweep = app.add_subcommand("sweep", "run a configured sigma_A sweep");
  sweep->add_option("--config", sweep_config, "config file")->required();
  sweep->add_option("--output", sweep_output, "CSV path (overrides [output] path)");
  sweep_mc.Add(sweep);
  sweep->add_flag("--crn", sweep_crn, "force common random numbers");
  sweep->add_flag("--no-crn", sweep_no_crn, "force independent streams per scheme");

  // pdf
  NoiseFlags pdf_noise;
  std::string pdf_min, pdf_max, pdf_output;
  int pdf_points = defaults::kPdfPoints;
  std::uint64_t pdf_overlay = 0;
  McFlags pdf_mc;
  CLI::App* pdf = app.add_subcommand("pdf", "tabulate the P-Steane(sqrt2, 1) output density");
  pdf_noise.Add(pdf);
  pdf->add_option("--x-min", pdf_min, "range start (default -6 sqrt(pi))");
  pdf->add_option("--x-max", pdf_max, "range end (default +6 sqrt(pi))");
  pdf->add_option("--points", pdf_points, "grid points (>= 2)");
  pdf->add_option("--mc-overlay", pdf_overlay, "add a histogram from this many MC samples");
  pdf_mc.Add(pdf);
  pdf->add_option("--output", pdf_output, "CSV path (default stdout)");

  // compare
  std::string cmp_a, cmp_b;
  NoiseFlags cmp_noise;
  McFlags cmp_mc;
  double cmp_alpha = defaults::kKsAlpha;
  CLI::App* compare = app.add_subcommand("compare", "test two schemes for equivalence");
  compare->add_option("--scheme-a", cmp_a, "first scheme")->required();
  compare->add_option("--scheme-b", cmp_b, "second scheme")->required();
  cmp_noise.Add(compare);
  cmp_mc.Add(compare);
  compare->add_option("--alpha", cmp_alpha, "KS significance level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*verify) {
      return cmd_verify(number_arg("--a", verify_a), number_arg("--b", verify_b));
    }
    if (*simulate) {
      if (!sim_mc.seed) throw UsageError("simulate: --seed is required");
      return cmd_simulate(sim_schemes,
                          noise_from_flags(sim_noise.sigma_a, sim_noise.sigma_d, sim_noise.k),
                          sim_mc.Apply(default_mc()),
                          sim_no_crn ? false : defaults::kCommonRandomNumbers, sim_oracle,
                          sim_output);
    }
    if (*sweep) {
      if (sweep_crn && sweep_no_crn) throw UsageError("sweep: --crn and --no-crn conflict");
      std::optional<bool> crn;
      if (sweep_crn) crn = true;
      if (sweep_no_crn) crn = false;
      return cmd_sweep(load_run_config(sweep_config), sweep_mc, crn, sweep_output);
    }
    if (*pdf) {
      const NoiseModel noise = noise_from_flags(pdf_noise.sigma_a, pdf_noise.sigma_d, pdf_noise.k);
      const double half = defaults::kPdfHalfRangeLattice * kSqrtPi;
      const double lo = pdf_min.empty() ? -half : number_arg("--x-min", pdf_min);
      const double hi = pdf_max.empty() ? half : number_arg("--x-max", pdf_max);
      if (pdf_overlay > 0 && !pdf_mc.seed) throw UsageError("pdf: --mc-overlay needs --seed");
      return cmd_pdf(noise, lo, hi, pdf_points, pdf_overlay, pdf_mc.Apply(default_mc()),
                     pdf_output);
    }
    if (*compare) {
      if (!cmp_mc.seed) throw UsageError("compare: --seed is required");
      return cmd_compare(cmp_a, cmp_b,
                         noise_from_flags(cmp_noise.sigma_a, cmp_noise.sigma_d, cmp_noise.k),
                         cmp_mc.Apply(default_mc()), cmp_alpha);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}
