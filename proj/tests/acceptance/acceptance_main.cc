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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Runtime budgets are part of each criterion.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gkpec/analytics.h"
#include "gkpec/csv.h"
#include "gkpec/mc.h"
#include "gkpec/quadrature.h"
#include "gkpec/schemes.h"
#include "gkpec/symplectic.h"

namespace fs = std::filesystem;
using namespace gkpec;

namespace {

constexpr std::uint64_t kSeed = 20261015;
const double kSqrt3 = std::sqrt(3.0);

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few violations so a FAIL line says where it broke.
class Findings {
 public:
  void Fail(const std::string& what) {
    ++failures_;
    if (failures_ <= 4) notes_ << (failures_ > 1 ? "; " : "") << what;
  }
  void Note(const std::string& what) { extra_ << (extra_.tellp() > 0 ? "; " : "") << what; }
  Outcome Done() const {
    Outcome o;
    o.pass = failures_ == 0;
    if (failures_ > 0) {
      o.detail = std::to_string(failures_) + " violation(s): " + notes_.str();
    } else {
      o.detail = extra_.str();
    }
    return o;
  }

 private:
  int failures_ = 0;
  std::ostringstream notes_;
  std::ostringstream extra_;
};

std::string fmt(double x, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

McConfig mc(std::uint64_t n, std::uint64_t offset = 0) {
  McConfig cfg;
  cfg.n_samples = n;
  cfg.seed = kSeed;
  cfg.stream_offset = offset;
  return cfg;
}

int run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + (env.empty() ? "" : " ") + "'" + GKPEC_CLI_PATH + "' " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---------------------------------------------------------------------------

Outcome scheme_identity() {
  Findings f;
  const SchemeSpec p12 = SchemeSpec::PSteane(1.0, 2);
  const SchemeSpec me = SchemeSpec::MeSteane();
  double worst = 0.0;
  std::uint64_t stream = 0;
  int total = 0;
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      const NoiseModel noise(0.05 * i, 0.05 * j);
      const Corrector a(p12, noise), b(me, noise);
      ShiftSampler sampler({kSeed, stream++});
      for (int s = 0; s < 4000; ++s, ++total) {
        const ShiftVector x = sampler.Next(noise);
        const CorrectionOutcome oa = a(x), ob = b(x);
        worst = std::max({worst, std::abs(oa.u_out - ob.u_out), std::abs(oa.v_out - ob.v_out)});
      }
    }
  }
  if (worst > 1e-12) f.Fail("max |diff| = " + fmt(worst));
  f.Note(std::to_string(total) + " shift vectors, max |diff| = " + fmt(worst));
  return f.Done();
}

Outcome teleportation_equivalence() {
  Findings f;
  const NoiseModel noise(0.2, 0.15);
  const std::uint64_t n = 1'000'000;
  OutputSamples ps = collect_outputs(SchemeSpec::PSteane(kSqrt2, 1), noise, mc(n));
  OutputSamples tp = collect_outputs(SchemeSpec::Teleportation(), noise, mc(n, 1ULL << 41));
  auto reduce = [](std::vector<double>& v) {
    for (double& x : v) x = symmetric_mod(x, kTwoSqrtPi);
    std::sort(v.begin(), v.end());
  };
  reduce(ps.u), reduce(ps.v), reduce(tp.u), reduce(tp.v);
  const double crit = ks_critical_value(n, n, 1e-3);
  const double ks_u = ks_statistic(ps.u, tp.u);
  const double ks_v = ks_statistic(ps.v, tp.v);
  if (!(ks_u < crit)) f.Fail("KS(u) = " + fmt(ks_u) + " >= " + fmt(crit));
  if (!(ks_v < crit)) f.Fail("KS(v) = " + fmt(ks_v) + " >= " + fmt(crit));

  double worst = 0.0;
  ShiftSampler sampler({kSeed, 7});
  for (std::uint64_t i = 0; i < n; ++i) {
    const ShiftVector x = sampler.Next(noise);
    const CorrectionOutcome a = teleportation(x), b = teleportation_equiv_form(x);
    worst = std::max({worst, std::abs(symmetric_mod(a.u_out - b.u_out, kTwoSqrtPi)),
                      std::abs(symmetric_mod(a.v_out - b.v_out, kTwoSqrtPi))});
  }
  if (worst > 1e-12) f.Fail("equivalent form differs mod 2 sqrt(pi) by " + fmt(worst));
  f.Note("KS u = " + fmt(ks_u) + ", v = " + fmt(ks_v) + ", critical = " + fmt(crit) +
         ", equivalent form max |diff mod| = " + fmt(worst));
  return f.Done();
}

Outcome mle_cross_check() {
  Findings f;
  double worst = 0.0;
  int checked = 0;
  auto check = [&](const ScalingFactors& closed, const SchemeSpec& spec, const NoiseModel& noise) {
    const ScalingFactors g = mle_factors_from_rows(coefficient_rows(spec), noise);
    const double d = std::max(std::abs(closed.c_q - g.c_q), std::abs(closed.c_p - g.c_p));
    worst = std::max(worst, d);
    ++checked;
    if (d > 1e-12) f.Fail(spec.label() + " at (" + fmt(noise.sigma_data()) + ", " +
                          fmt(noise.sigma_ancilla()) + ")");
  };
  for (int i = 1; i <= 10; ++i) {
    for (int j = 1; j <= 10; ++j) {
      const NoiseModel noise(0.025 * i, 0.025 * j);
      check(me_scaling(noise), SchemeSpec::MeSteane(), noise);
      for (double b : {0.5, 1.0, kSqrt2, kSqrt3, 2.0}) {
        for (int m = 1; m <= 4; ++m) {
          const SchemeSpec spec = SchemeSpec::PSteane(b, m);
          check(p_steane_scaling(spec, noise), spec, noise);
        }
      }
    }
  }
  f.Note(std::to_string(checked) + " (scheme, noise) cases, max |diff| = " + fmt(worst));
  return f.Done();
}

Outcome small_noise_variances_match() {
  Findings f;
  const NoiseModel noise(0.05, 0.05);
  const double va = noise.var_ancilla();
  struct Case {
    SchemeSpec spec;
    double q, p;
  };
  const auto me = small_noise_variances(SchemeSpec::MeSteane(), noise);
  const Case cases[] = {
      {SchemeSpec::OriginalSteane(), 2.0 * va, va},
      {SchemeSpec::MeSteane(), me.first, me.second},
      {SchemeSpec::PSteane(kSqrt2, 1), 2.0 * va / 2.0, 2.0 * va / 2.0},
      {SchemeSpec::PSteane(kSqrt3, 1), 3.0 * va / 2.0, 2.0 * va / 3.0},
  };
  std::uint64_t offset = 0;
  for (const Case& c : cases) {
    const DeltaEstimate est = estimate_output_variance(c.spec, noise, mc(1'000'000, offset), true);
    offset += 1ULL << 40;
    const double zq = (est.q.mean - c.q) / est.q.std_error;
    const double zp = (est.p.mean - c.p) / est.p.std_error;
    if (std::abs(zq) > 3.0) f.Fail(c.spec.label() + " q off by " + fmt(zq, 3) + " SE");
    if (std::abs(zp) > 3.0) f.Fail(c.spec.label() + " p off by " + fmt(zp, 3) + " SE");
    f.Note(c.spec.label() + " z = (" + fmt(zq, 3) + ", " + fmt(zp, 3) + ")");
  }
  return f.Done();
}

Outcome variance_product_minimum() {
  Findings f;
  int checked = 0;
  for (double sa : {0.05, 0.1, 0.15, 0.2, 0.25}) {
    const double floor4 = std::pow(sa, 4);
    for (int ik = 0; ik < 20; ++ik) {
      const double k = 1.0 + 0.5 * ik;
      const NoiseModel noise = NoiseModel::FromRatio(k, sa);
      for (int ib = 0; ib < 50; ++ib) {
        const double b = 0.2 + 0.06 * ib;
        for (int m = 1; m <= 5; ++m, ++checked) {
          const double v = variance_product(b, m, noise);
          const bool equal = std::abs(v - floor4) <= 1e-12 * floor4;
          const bool expect_equal = m == 1 || k == 1.0;
          if (v < floor4 * (1.0 - 1e-12) || equal != expect_equal) {
            f.Fail("b=" + fmt(b) + " m=" + std::to_string(m) + " k=" + fmt(k) + " sA=" + fmt(sa));
          }
        }
      }
    }
  }
  f.Note(std::to_string(checked) + " grid points");
  return f.Done();
}

Outcome admissible_interval() {
  Findings f;
  const auto k1 = admissible_b_interval(1.0);
  const auto k3 = admissible_b_interval(3.0);
  if (k1.first != kSqrt3 || k1.second != kSqrt3) f.Fail("k=1 interval");
  if (k3.first != std::sqrt(2.5) || k3.second != std::sqrt(3.5)) f.Fail("k=3 interval");
  for (double k : {1.0, 2.0, 3.0, 5.0, 10.0}) {
    const NoiseModel noise = NoiseModel::FromRatio(k, 0.1);
    const auto me = small_noise_variances(SchemeSpec::MeSteane(), noise);
    const auto [lo, hi] = admissible_b_interval(k);
    for (int i = 0; i < 50; ++i) {
      const double b = lo + (hi - lo) * (i + 0.5) / 50.0;
      const auto p = small_noise_variances(SchemeSpec::PSteane(b, 1), noise);
      if (p.first > me.first * (1.0 + 1e-12) || p.second > me.second * (1.0 + 1e-12)) {
        f.Fail("k=" + fmt(k) + " b=" + fmt(b));
      }
    }
  }
  f.Note("k=3 interval [" + fmt(k3.first, 17) + ", " + fmt(k3.second, 17) + "]");
  return f.Done();
}

Outcome pdf_validation() {
  Findings f;
  const PdfSpec spec = PdfSpec::ForNoise(0.2, 0.15);
  const double mass = p_steane_sym_mass(-60.0, 60.0, spec);
  if (std::abs(mass - 1.0) > 1e-6) f.Fail("mass = " + fmt(mass, 12));
  double asym = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double x = 8.0 * kSqrtPi * i / 4000.0;
    asym = std::max(asym, std::abs(p_steane_sym_pdf(x, spec) - p_steane_sym_pdf(-x, spec)));
  }
  if (asym > 1e-12) f.Fail("asymmetry = " + fmt(asym));

  const double lo = -4.0 * kSqrtPi, hi = 4.0 * kSqrtPi;
  const int bins = 100;
  const auto counts = histogram_u_out(SchemeSpec::PSteane(kSqrt2, 1), NoiseModel(0.2, 0.15),
                                      mc(10'000'000, 3ULL << 40), lo, hi, bins);
  std::vector<double> probs(bins + 2);
  probs[0] = p_steane_sym_mass(-60.0, lo, spec);
  probs[bins + 1] = p_steane_sym_mass(hi, 60.0, spec);
  for (int i = 0; i < bins; ++i) {
    probs[i + 1] = p_steane_sym_mass(lo + (hi - lo) * i / bins, lo + (hi - lo) * (i + 1) / bins, spec);
  }
  const ChiSquareResult chi = chi_square_test(counts, probs);
  if (!(chi.p_value > 1e-3)) f.Fail("chi2 p = " + fmt(chi.p_value));
  f.Note("mass-1 = " + fmt(mass - 1.0, 3) + ", asymmetry = " + fmt(asym, 3) + ", chi2 = " +
         fmt(chi.statistic) + " on " + std::to_string(chi.dof) + " dof, p = " + fmt(chi.p_value));
  return f.Done();
}

// Sweep CSV rows keyed by scheme label, each in sigma_A order.
using SweepTable = std::map<std::string, std::vector<SweepCsvRow>>;

SweepTable read_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  SweepTable table;
  for (SweepCsvRow& r : read_sweep_csv(in)) table[row_label(r)].push_back(std::move(r));
  return table;
}

double comb_se(double a, double b) { return std::sqrt(a * a + b * b); }

// Runs the sweep configs through the CLI and checks the ordinal claims.
Outcome fig3_reproduction(const fs::path& out_dir) {
  Findings f;
  const std::string env = "GKPEC_OUTPUT_DIR='" + out_dir.string() + "'";
  const std::string configs = GKPEC_CONFIG_DIR;
  if (run_cli("sweep --config '" + configs + "/fig3a_k1.cfg' --output sweep_k1.csv --crn", env) != 0 ||
      run_cli("sweep --config '" + configs + "/fig3b_k3.cfg' --output sweep_k3.csv --crn", env) != 0) {
    f.Fail("sweep command failed");
    return f.Done();
  }
  const SweepTable k1 = read_table(out_dir / "sweep_k1.csv");
  const SweepTable k3 = read_table(out_dir / "sweep_k3.csv");
  const std::string orig = "original", me = "me";
  const std::string p2 = SchemeSpec::PSteane(kSqrt2, 1).label();
  const std::string p3 = SchemeSpec::PSteane(kSqrt3, 1).label();
  const std::string p52 = SchemeSpec::PSteane(std::sqrt(2.5), 1).label();
  for (const auto& name : {orig, me, p2, p3}) {
    if (!k1.count(name) || k1.at(name).size() != 21) {
      f.Fail("k=1 csv lacks " + name);
      return f.Done();
    }
  }
  for (const auto& name : {me, p52}) {
    if (!k3.count(name) || k3.at(name).size() != 21) {
      f.Fail("k=3 csv lacks " + name);
      return f.Done();
    }
  }

  // A scheme counts as the largest (smallest) when no other scheme exceeds
  // (undercuts) it by more than 3 combined standard errors.
  auto extreme = [&](const std::string& who, bool q, bool largest, const char* tag) {
    for (int i = 0; i < 21; ++i) {
      const SweepCsvRow& w = k1.at(who)[i];
      for (const auto& other : {orig, me, p2, p3}) {
        if (other == who) continue;
        const SweepCsvRow& o = k1.at(other)[i];
        const double dw = q ? w.delta_q : w.delta_p, sw = q ? w.delta_q_se : w.delta_p_se;
        const double dot = q ? o.delta_q : o.delta_p, so = q ? o.delta_q_se : o.delta_p_se;
        const double margin = largest ? dot - dw : dw - dot;
        if (margin > 3.0 * comb_se(sw, so)) {
          f.Fail(std::string(tag) + " at sA=" + fmt(w.sigma_A, 3) + " vs " + other);
        }
      }
    }
  };
  extreme(orig, true, true, "(i) q");
  extreme(orig, false, true, "(i) p");
  extreme(p2, true, false, "(ii)");
  extreme(p3, false, false, "(iii)");

  int iv_fail = 0;
  std::string iv_first;
  for (int i = 0; i < 21; ++i) {
    const SweepCsvRow& m = k1.at(me)[i];
    const SweepCsvRow& p = k1.at(p3)[i];
    const double sq = comb_se(m.delta_q_se, p.delta_q_se);
    const double sp = comb_se(m.delta_p_se, p.delta_p_se);
    const double dq = m.delta_q - p.delta_q, dp = m.delta_p - p.delta_p;
    bool ok = true;
    if (m.sigma_A <= 0.15 + 1e-12) {
      ok = std::abs(dq) <= 3.0 * sq && std::abs(dp) <= 3.0 * sp;
    } else if (m.sigma_A >= 0.2 - 1e-12) {
      // ME ahead in q, behind in p.
      ok = dq < -3.0 * sq && dp > 3.0 * sp;
    }
    if (!ok) {
      if (iv_fail++ == 0) {
        iv_first = "sA=" + fmt(m.sigma_A, 3) + " dq/se=" + fmt(dq / sq, 3) + " dp/se=" + fmt(dp / sp, 3);
      }
    }
  }
  if (iv_fail > 0) f.Fail("(iv) " + std::to_string(iv_fail) + " point(s), first " + iv_first);

  for (int i = 0; i < 21; ++i) {
    const SweepCsvRow& m = k3.at(me)[i];
    const SweepCsvRow& p = k3.at(p52)[i];
    if (p.delta_q - m.delta_q > 3.0 * comb_se(p.delta_q_se, m.delta_q_se)) {
      f.Fail("k=3 q at sA=" + fmt(m.sigma_A, 3));
    }
    if (p.delta_p - m.delta_p > 3.0 * comb_se(p.delta_p_se, m.delta_p_se)) {
      f.Fail("k=3 p at sA=" + fmt(m.sigma_A, 3));
    }
  }
  f.Note("csv in " + out_dir.string());
  return f.Done();
}

Outcome oracle_concordance() {
  Findings f;
  const std::vector<SchemeSpec> specs = {SchemeSpec::OriginalSteane(), SchemeSpec::MeSteane(),
                                         SchemeSpec::PSteane(kSqrt2, 1),
                                         SchemeSpec::PSteane(kSqrt3, 1)};
  double worst = 0.0;
  std::uint64_t offset = 0;
  for (double k : {1.0, 3.0}) {
    for (double sa : {0.05, 0.1, 0.15, 0.2, 0.25}) {
      const NoiseModel noise = NoiseModel::FromRatio(k, sa);
      const PanelResult panel = evaluate_panel(specs, noise, mc(1'000'000, offset));
      offset += 1ULL << 40;
      for (std::size_t s = 0; s < specs.size(); ++s) {
        const DeltaPair o = delta_oracle(specs[s], noise);
        const double zq = (panel.delta[s].q.mean - o.q) / panel.delta[s].q.std_error;
        const double zp = (panel.delta[s].p.mean - o.p) / panel.delta[s].p.std_error;
        worst = std::max({worst, std::abs(zq), std::abs(zp)});
        if (std::abs(zq) > 3.0) f.Fail(specs[s].label() + " q k=" + fmt(k) + " sA=" + fmt(sa) + " z=" + fmt(zq, 3));
        if (std::abs(zp) > 3.0) f.Fail(specs[s].label() + " p k=" + fmt(k) + " sA=" + fmt(sa) + " z=" + fmt(zp, 3));
      }
    }
  }
  f.Note("80 comparisons, max |z| = " + fmt(worst, 3));
  return f.Done();
}

Outcome verification_and_gates() {
  Findings f;
  struct Point {
    double a, b;
    bool pass;
  };
  const Point points[] = {{1.0, 1.0, true},
                          {1.0 / kSqrt2, kSqrt2, true},
                          {kSqrt3 / 2.0, kSqrt3, true},
                          {1.0, kSqrt2, false}};
  for (const Point& p : points) {
    const IdentityReport r = verify_preprocessing_identity(p.a, p.b);
    const bool ok = r.integral && r.identical;
    if (ok != p.pass) f.Fail("library verify(" + fmt(p.a) + ", " + fmt(p.b) + ")");
    const int code = run_cli("verify --a " + fmt(p.a, 17) + " --b " + fmt(p.b, 17));
    if (code != (p.pass ? 0 : 1)) f.Fail("cli verify(" + fmt(p.a) + ", " + fmt(p.b) + ") exit " + std::to_string(code));
  }
  double worst = 0.0;
  const std::vector<SymplecticMap> maps = {
      gate_squeeze(1, 0, 0.3),      gate_squeeze(3, 2, 2.7),  gate_sum(2, 0, 1),
      gate_sum(3, 2, 0),            gate_sum_inv(2, 1, 0),    gate_sum_inv(3, 0, 2),
      gate_bs50(2, 0, 1),           gate_bs50(3, 1, 2),       preprocessing_map(1.0, 1.0),
      preprocessing_map(0.7, 1.4),  preprocessing_with_ancilla_squeezers(kSqrt3 / 2, kSqrt3),
      steane_circuit(),             p_steane_circuit(1.0 / kSqrt2, kSqrt2),
      teleportation_circuit()};
  for (const SymplecticMap& s : maps) worst = std::max(worst, s.symplectic_defect());
  if (worst > 1e-12) f.Fail("symplectic defect " + fmt(worst));
  f.Note(std::to_string(maps.size()) + " maps, max defect = " + fmt(worst));
  return f.Done();
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const char* env_dir = std::getenv("GKPEC_OUTPUT_DIR");
  const fs::path out_dir = env_dir && *env_dir ? fs::path(env_dir) : fs::current_path() / "acceptance_output";
  fs::create_directories(out_dir);

  const std::vector<Criterion> criteria = {
      {"scheme-identity", 5, scheme_identity},
      {"teleportation-equivalence", 30, teleportation_equivalence},
      {"mle-cross-check", 1, mle_cross_check},
      {"small-noise-variances", 60, small_noise_variances_match},
      {"variance-product-minimum", 1, variance_product_minimum},
      {"admissible-interval", 1, admissible_interval},
      {"pdf-validation", 120, pdf_validation},
      {"fig3-ordering", 600, [&] { return fig3_reproduction(out_dir); }},
      {"oracle-concordance", 300, oracle_concordance},
      {"verify-and-gates", 1, verification_and_gates},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      if (o.pass) o.detail.clear();
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("over budget of ") + fmt(c.budget_s) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("%s %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
