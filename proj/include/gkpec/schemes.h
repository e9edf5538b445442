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

// Single-round GKP correction schemes in closed form.
//
// Every scheme reduces to four linear combinations of the input shifts,
//
//     xi_q  data q-shift to be corrected     m_q  measured q-shift
//     xi_p  data p-shift to be corrected     m_p  measured p-shift
//
// followed by the feedback u_out = xi_q - c_q R(m_q), v_out = xi_p - c_p R(m_p)
// (the teleportation scheme uses the binary Pauli branch instead of R).

#ifndef GKPEC_SCHEMES_H_
#define GKPEC_SCHEMES_H_

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>

#include "gkpec/quadrature.h"

namespace gkpec {

enum class SchemeKind { kOriginalSteane, kMeSteane, kPSteane, kTeleportation };

/// A correction scheme and its squeezing parameters. Only P-Steane carries
/// parameters: b > 0 and m = 2a/b a positive integer.
class SchemeSpec {
 public:
  static SchemeSpec OriginalSteane() { return SchemeSpec(SchemeKind::kOriginalSteane, 0.0, 0); }
  static SchemeSpec MeSteane() { return SchemeSpec(SchemeKind::kMeSteane, 0.0, 0); }
  static SchemeSpec Teleportation() { return SchemeSpec(SchemeKind::kTeleportation, 0.0, 0); }
  /// Throws std::invalid_argument for b <= 0 or m < 1.
  static SchemeSpec PSteane(double b, int m);

  SchemeKind kind() const { return kind_; }
  double b() const { return b_; }
  int m() const { return m_; }
  /// a = m b / 2.
  double a() const { return 0.5 * m_ * b_; }

  /// "original", "me", "psteane" or "teleportation".
  std::string name() const;
  /// name() plus parameters, e.g. "psteane(b=1.4142135623730951,m=1)".
  std::string label() const;

  bool operator==(const SchemeSpec&) const = default;

 private:
  SchemeSpec(SchemeKind kind, double b, int m) : kind_(kind), b_(b), m_(m) {}

  SchemeKind kind_;
  double b_;
  int m_;
};

struct ScalingFactors {
  double c_q = 1.0;
  double c_p = 1.0;
};

/// Residual shifts on the data mode after one round of correction, plus the
/// syndrome quantities they were built from.
struct CorrectionOutcome {
  double u_out = 0.0;
  double v_out = 0.0;
  double xi_q = 0.0;
  double xi_p = 0.0;
  double m_q = 0.0;
  double m_p = 0.0;
  std::int64_t n_q = 0;
  std::int64_t n_p = 0;

  bool logical_error() const { return n_q != 0 || n_p != 0; }
};

CorrectionOutcome original_steane(const ShiftVector& s);

/// eta_q = sD^2/(sD^2+sA^2), eta_p = (sD^2+sA^2)/(sD^2+2 sA^2).
ScalingFactors me_scaling(const NoiseModel& noise);
CorrectionOutcome me_steane(const ShiftVector& s, const NoiseModel& noise);

ScalingFactors p_steane_scaling(const SchemeSpec& spec, const NoiseModel& noise);
CorrectionOutcome p_steane(const ShiftVector& s, const SchemeSpec& spec,
                           const NoiseModel& noise);

/// Knill-style teleportation through a Bell resource; n_q / n_p flag whether
/// the X / Z Pauli branch was taken.
CorrectionOutcome teleportation(const ShiftVector& s);

/// Same measured shifts as teleportation() but with z - R(z) in place of the
/// binary branch; differs from it by a multiple of 2 sqrt(pi) per quadrature.
CorrectionOutcome teleportation_equiv_form(const ShiftVector& s);

/// Dispatch on spec.kind(). OriginalSteane and Teleportation ignore noise.
CorrectionOutcome correct(const SchemeSpec& spec, const ShiftVector& s,
                          const NoiseModel& noise);

/// Hot-loop form of correct(): scaling factors are computed once.
class Corrector {
 public:
  Corrector(const SchemeSpec& spec, const NoiseModel& noise);

  CorrectionOutcome operator()(const ShiftVector& s) const;

  const SchemeSpec& spec() const { return spec_; }
  const ScalingFactors& factors() const { return factors_; }

 private:
  SchemeSpec spec_;
  ScalingFactors factors_;
};

/// Closed-form rows (xi_q, m_q, xi_p, m_p) over (u1, v1, u2, v2, u3, v3).
Eigen::Matrix<double, 4, 6> coefficient_rows(const SchemeSpec& spec);

/// MLE factors Cov(xi, m)/Var(m) assembled from linear syndrome rows and
/// independent input variances.
ScalingFactors mle_factors_from_rows(const Eigen::Matrix<double, 4, 6>& rows,
                                     const NoiseModel& noise);

/// Cov(xi, m) / Var(m).
double generic_mle_factor(double cov_xm, double var_m);

// ---------------------------------------------------------------------------
// Small-noise parameter analysis.

/// Output variances (sigma_q^2, sigma_p^2) when no measured shift wraps.
std::pair<double, double> small_noise_variances(const SchemeSpec& spec,
                                                const NoiseModel& noise);

/// sigma_q^2 sigma_p^2 of P-Steane(b, m) in its factored closed form.
double variance_product(double b, int m, const NoiseModel& noise);

/// Variances (Sigma_q^2, Sigma_p^2) of the measured shifts. Supported for
/// ME-Steane and P-Steane with m = 1.
std::pair<double, double> measurement_variances(const SchemeSpec& spec,
                                                const NoiseModel& noise);

/// The b-range where P-Steane(b, m = 1) matches or beats ME-Steane in both
/// quadratures: b^2 in [3 - (k-1)/(k+1), 3 + (k-1)/(k+1)]. Requires k >= 1.
std::pair<double, double> admissible_b_interval(double k);

}  // namespace gkpec

#endif  // GKPEC_SCHEMES_H_
