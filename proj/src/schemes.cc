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

#include "gkpec/schemes.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gkpec {

namespace {

void require_psteane(const SchemeSpec& spec, const char* what) {
  if (spec.kind() != SchemeKind::kPSteane) {
    throw std::invalid_argument(std::string(what) + ": scheme must be P-Steane");
  }
}

// Feedback with R(m): n is the lattice index of the measured shift.
CorrectionOutcome rounding_feedback(double xi_q, double m_q, double xi_p, double m_p,
                                    const ScalingFactors& f) {
  CorrectionOutcome out;
  out.xi_q = xi_q;
  out.xi_p = xi_p;
  out.m_q = m_q;
  out.m_p = m_p;
  out.n_q = round_index(m_q);
  out.n_p = round_index(m_p);
  out.u_out = xi_q - f.c_q * (m_q - static_cast<double>(out.n_q) * kSqrtPi);
  out.v_out = xi_p - f.c_p * (m_p - static_cast<double>(out.n_p) * kSqrtPi);
  return out;
}

CorrectionOutcome steane_with(const ShiftVector& s, const ScalingFactors& f) {
  return rounding_feedback(s.u1 + s.u3, s.u1 + s.u2, s.v1 - s.v2, s.v1 - s.v2 - s.v3, f);
}

CorrectionOutcome p_steane_with(const ShiftVector& s, double b, int m,
                                const ScalingFactors& f) {
  const double bm = b * m;
  const double xi_q = s.u1 + b * s.u3;
  const double m_q = s.u1 + 0.5 * bm * s.u2 + 0.5 * (2.0 * b - bm) * s.u3;
  const double xi_p = s.v1 - 2.0 * s.v2 / bm;
  const double m_p = s.v1 - (s.v2 + s.v3) / b;
  return rounding_feedback(xi_q, m_q, xi_p, m_p, f);
}

struct TeleportationParts {
  double xi_q, m_q, xi_p, m_p;
};

TeleportationParts teleportation_parts(const ShiftVector& s) {
  return {(s.u2 + s.u3) / kSqrt2, s.u1 - (s.u2 - s.u3) / kSqrt2,
          (s.v2 + s.v3) / kSqrt2, s.v1 + (s.v2 - s.v3) / kSqrt2};
}

}  // namespace

SchemeSpec SchemeSpec::PSteane(double b, int m) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw std::invalid_argument("SchemeSpec: P-Steane requires finite b > 0");
  }
  if (m < 1) {
    throw std::invalid_argument("SchemeSpec: P-Steane requires integer m = 2a/b >= 1");
  }
  return SchemeSpec(SchemeKind::kPSteane, b, m);
}

std::string SchemeSpec::name() const {
  switch (kind_) {
    case SchemeKind::kOriginalSteane:
      return "original";
    case SchemeKind::kMeSteane:
      return "me";
    case SchemeKind::kPSteane:
      return "psteane";
    case SchemeKind::kTeleportation:
      return "teleportation";
  }
  return "unknown";
}

std::string SchemeSpec::label() const {
  if (kind_ != SchemeKind::kPSteane) return name();
  std::ostringstream out;
  out.precision(17);
  out << "psteane(b=" << b_ << ",m=" << m_ << ")";
  return out.str();
}

CorrectionOutcome original_steane(const ShiftVector& s) {
  return steane_with(s, ScalingFactors{1.0, 1.0});
}

ScalingFactors me_scaling(const NoiseModel& noise) {
  const double d = noise.var_data();
  const double a = noise.var_ancilla();
  return ScalingFactors{d / (d + a), (d + a) / (d + 2.0 * a)};
}

CorrectionOutcome me_steane(const ShiftVector& s, const NoiseModel& noise) {
  return steane_with(s, me_scaling(noise));
}

ScalingFactors p_steane_scaling(const SchemeSpec& spec, const NoiseModel& noise) {
  require_psteane(spec, "p_steane_scaling");
  const double d = noise.var_data();
  const double a = noise.var_ancilla();
  const double b2 = spec.b() * spec.b();
  const double m = spec.m();
  const double c_q = (2.0 * d + b2 * (2.0 - m) * a) / (2.0 * d + b2 * (m * m - 2.0 * m + 2.0) * a);
  const double c_p = (b2 * m * d + 2.0 * a) / (b2 * m * d + 2.0 * m * a);
  return ScalingFactors{c_q, c_p};
}

CorrectionOutcome p_steane(const ShiftVector& s, const SchemeSpec& spec,
                           const NoiseModel& noise) {
  return p_steane_with(s, spec.b(), spec.m(), p_steane_scaling(spec, noise));
}

CorrectionOutcome teleportation(const ShiftVector& s) {
  const TeleportationParts t = teleportation_parts(s);
  CorrectionOutcome out;
  out.xi_q = t.xi_q;
  out.xi_p = t.xi_p;
  out.m_q = t.m_q;
  out.m_p = t.m_p;
  const double branch_q = binary_shift(t.m_q);
  const double branch_p = binary_shift(t.m_p);
  out.n_q = branch_q != 0.0 ? 1 : 0;
  out.n_p = branch_p != 0.0 ? 1 : 0;
  out.u_out = t.xi_q + branch_q;
  out.v_out = t.xi_p + branch_p;
  return out;
}

CorrectionOutcome teleportation_equiv_form(const ShiftVector& s) {
  const TeleportationParts t = teleportation_parts(s);
  CorrectionOutcome out;
  out.xi_q = s.u1 + kSqrt2 * s.u3;
  out.xi_p = s.v1 + kSqrt2 * s.v2;
  out.m_q = t.m_q;
  out.m_p = t.m_p;
  out.n_q = round_index(t.m_q);
  out.n_p = round_index(t.m_p);
  out.u_out = out.xi_q - round_residual(t.m_q);
  out.v_out = out.xi_p - round_residual(t.m_p);
  return out;
}

CorrectionOutcome correct(const SchemeSpec& spec, const ShiftVector& s,
                          const NoiseModel& noise) {
  switch (spec.kind()) {
    case SchemeKind::kOriginalSteane:
      return original_steane(s);
    case SchemeKind::kMeSteane:
      return me_steane(s, noise);
    case SchemeKind::kPSteane:
      return p_steane(s, spec, noise);
    case SchemeKind::kTeleportation:
      return teleportation(s);
  }
  throw std::logic_error("correct: unknown scheme kind");
}

Corrector::Corrector(const SchemeSpec& spec, const NoiseModel& noise) : spec_(spec) {
  if (spec.kind() == SchemeKind::kMeSteane) {
    factors_ = me_scaling(noise);
  } else if (spec.kind() == SchemeKind::kPSteane) {
    factors_ = p_steane_scaling(spec, noise);
  }
}

CorrectionOutcome Corrector::operator()(const ShiftVector& s) const {
  switch (spec_.kind()) {
    case SchemeKind::kOriginalSteane:
    case SchemeKind::kMeSteane:
      return steane_with(s, factors_);
    case SchemeKind::kPSteane:
      return p_steane_with(s, spec_.b(), spec_.m(), factors_);
    case SchemeKind::kTeleportation:
      return teleportation(s);
  }
  throw std::logic_error("Corrector: unknown scheme kind");
}

Eigen::Matrix<double, 4, 6> coefficient_rows(const SchemeSpec& spec) {
  Eigen::Matrix<double, 4, 6> rows;
  // Columns: u1 v1 u2 v2 u3 v3.
  switch (spec.kind()) {
    case SchemeKind::kOriginalSteane:
    case SchemeKind::kMeSteane:
      rows << 1, 0, 0, 0, 1, 0,
              1, 0, 1, 0, 0, 0,
              0, 1, 0, -1, 0, 0,
              0, 1, 0, -1, 0, -1;
      break;
    case SchemeKind::kPSteane: {
      const double b = spec.b();
      const double bm = b * spec.m();
      rows << 1, 0, 0, 0, b, 0,
              1, 0, 0.5 * bm, 0, 0.5 * (2.0 * b - bm), 0,
              0, 1, 0, -2.0 / bm, 0, 0,
              0, 1, 0, -1.0 / b, 0, -1.0 / b;
      break;
    }
    case SchemeKind::kTeleportation: {
      const double h = 1.0 / kSqrt2;
      rows << 0, 0, h, 0, h, 0,
              1, 0, -h, 0, h, 0,
              0, 0, 0, h, 0, h,
              0, 1, 0, h, 0, -h;
      break;
    }
  }
  return rows;
}

double generic_mle_factor(double cov_xm, double var_m) {
  if (!(var_m > 0.0)) {
    throw std::invalid_argument("generic_mle_factor: Var(m) must be > 0");
  }
  return cov_xm / var_m;
}

ScalingFactors mle_factors_from_rows(const Eigen::Matrix<double, 4, 6>& rows,
                                     const NoiseModel& noise) {
  Eigen::Matrix<double, 6, 1> var;
  var << noise.var_data(), noise.var_data(), noise.var_ancilla(), noise.var_ancilla(),
      noise.var_ancilla(), noise.var_ancilla();
  auto cov = [&](int i, int j) { return (rows.row(i).transpose().cwiseProduct(var)).dot(rows.row(j).transpose()); };
  return ScalingFactors{generic_mle_factor(cov(0, 1), cov(1, 1)),
                        generic_mle_factor(cov(2, 3), cov(3, 3))};
}

std::pair<double, double> small_noise_variances(const SchemeSpec& spec,
                                                const NoiseModel& noise) {
  const double d = noise.var_data();
  const double a = noise.var_ancilla();
  switch (spec.kind()) {
    case SchemeKind::kOriginalSteane:
      return {2.0 * a, a};
    case SchemeKind::kMeSteane:
      return {a * (a + 2.0 * d) / (a + d), a * (a + d) / (2.0 * a + d)};
    case SchemeKind::kPSteane: {
      const double b2 = spec.b() * spec.b();
      const double m = spec.m();
      const double m2 = m * m;
      const double q = a * m2 * (b2 * b2 * a + 2.0 * b2 * d) /
                       (2.0 * b2 * (m2 - 2.0 * m + 2.0) * a + 4.0 * d);
      const double p = (4.0 * a * a + 2.0 * b2 * (2.0 - 2.0 * m + m2) * a * d) /
                       (b2 * m2 * (2.0 * a + b2 * d));
      return {q, p};
    }
    case SchemeKind::kTeleportation:
      return {a, a};
  }
  throw std::logic_error("small_noise_variances: unknown scheme kind");
}

double variance_product(double b, int m, const NoiseModel& noise) {
  if (!(b > 0.0)) throw std::invalid_argument("variance_product: b must be > 0");
  if (m < 1) throw std::invalid_argument("variance_product: m must be >= 1");
  const double d = noise.var_data();
  const double a = noise.var_ancilla();
  const double b2 = b * b;
  const double mm = m;
  const double num = 2.0 * b2 * (mm - 1.0) * (mm - 1.0) * (d * d - a * a);
  const double den = (b2 * (mm * mm - 2.0 * mm + 2.0) * a + 2.0 * d) * (2.0 * a + b2 * d);
  return a * a * (1.0 + num / den);
}

std::pair<double, double> measurement_variances(const SchemeSpec& spec,
                                                const NoiseModel& noise) {
  const double d = noise.var_data();
  const double a = noise.var_ancilla();
  if (spec.kind() == SchemeKind::kMeSteane) {
    return {d + a, d + 2.0 * a};
  }
  if (spec.kind() == SchemeKind::kPSteane && spec.m() == 1) {
    const double b2 = spec.b() * spec.b();
    return {d + 0.5 * b2 * a, d + 2.0 * a / b2};
  }
  throw std::invalid_argument(
      "measurement_variances: supported for ME-Steane and P-Steane with m = 1");
}

std::pair<double, double> admissible_b_interval(double k) {
  if (!(k >= 1.0) || !std::isfinite(k)) {
    throw std::invalid_argument("admissible_b_interval: requires finite k >= 1");
  }
  const double w = (k - 1.0) / (k + 1.0);
  return {std::sqrt(3.0 - w), std::sqrt(3.0 + w)};
}

}  // namespace gkpec
