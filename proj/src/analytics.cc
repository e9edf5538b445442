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

#include "gkpec/analytics.h"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gkpec {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;  // 1/sqrt(2 pi)

double normal_density(double z, double sigma) {
  const double t = z / sigma;
  return kInvSqrt2Pi / sigma * std::exp(-0.5 * t * t);
}

double normal_cdf(double z, double sigma) {
  return 0.5 * std::erfc(-z / (sigma * std::numbers::sqrt2));
}

// Probability that the measured shift Y ~ N(0, sY^2) falls in lattice cell n.
double cell_weight(int n, double sigma_y) {
  const double scale = std::sqrt(std::numbers::pi / 2.0) / (2.0 * sigma_y);
  return 0.5 * (std::erf((1.0 + 2.0 * n) * scale) - std::erf((2.0 * n - 1.0) * scale));
}

double sigma_y(const PdfSpec& spec) {
  return std::hypot(spec.sigma_data, spec.sigma_ancilla);
}

}  // namespace

PdfSpec PdfSpec::ForNoise(double sigma_data, double sigma_ancilla, double tol) {
  PdfSpec spec;
  spec.sigma_data = sigma_data;
  spec.sigma_ancilla = sigma_ancilla;
  spec.n_max = static_cast<int>(std::ceil(8.0 * std::max(sigma_data, sigma_ancilla) / kSqrtPi)) + 3;
  spec.tol = tol;
  return spec;
}

double PdfSpec::TailBound() const {
  // Dropped cells carry total probability P(|Y| >= (n_max + 1/2) sqrt(pi)),
  // and each multiplies a Gaussian of peak height 1/(sqrt(2 pi) sA).
  const double edge = (n_max + 0.5) * kSqrtPi;
  const double tail = std::erfc(edge / (sigma_y(*this) * std::numbers::sqrt2));
  return tail * kInvSqrt2Pi / sigma_ancilla;
}

void PdfSpec::Validate() const {
  if (!(sigma_data > 0.0) || !(sigma_ancilla > 0.0) || !std::isfinite(sigma_data) ||
      !std::isfinite(sigma_ancilla)) {
    throw std::invalid_argument("PdfSpec: sigmas must be finite and > 0");
  }
  if (n_max < 1) throw std::invalid_argument("PdfSpec: n_max must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("PdfSpec: tol must be > 0");
  if (TailBound() > tol) {
    std::ostringstream msg;
    msg << "PdfSpec: truncation tail bound " << TailBound() << " exceeds tol " << tol
        << "; raise n_max";
    throw std::invalid_argument(msg.str());
  }
}

double p_steane_sym_pdf(double x, const PdfSpec& spec) {
  spec.Validate();
  const double sy = sigma_y(spec);
  double sum = 0.0;
  // Pair n with -n so that f(x) = f(-x) holds to rounding.
  sum += cell_weight(0, sy) * normal_density(x, spec.sigma_ancilla);
  for (int n = 1; n <= spec.n_max; ++n) {
    const double w = cell_weight(n, sy);
    sum += w * (normal_density(x - n * kSqrtPi, spec.sigma_ancilla) +
                normal_density(x + n * kSqrtPi, spec.sigma_ancilla));
  }
  return sum;
}

double p_steane_sym_mass(double lo, double hi, const PdfSpec& spec) {
  spec.Validate();
  if (!(hi >= lo)) throw std::invalid_argument("p_steane_sym_mass: requires lo <= hi");
  const double sy = sigma_y(spec);
  double sum = 0.0;
  for (int n = -spec.n_max; n <= spec.n_max; ++n) {
    const double c = n * kSqrtPi;
    sum += cell_weight(n, sy) *
           (normal_cdf(hi - c, spec.sigma_ancilla) - normal_cdf(lo - c, spec.sigma_ancilla));
  }
  return sum;
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  // Returns (P_n(x), P_n'(x)) by the three-term recurrence.
  auto legendre = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

void QuadratureGrid::Validate() const {
  if (nodes_per_axis < 1 || panels_per_axis < 1 || !(half_width_sigmas > 0.0)) {
    throw std::invalid_argument(
        "QuadratureGrid: needs nodes_per_axis >= 1, panels_per_axis >= 1, half width > 0");
  }
}

std::pair<std::vector<double>, std::vector<double>> QuadratureGrid::AxisRule(
    std::span<const double> breakpoints) const {
  Validate();
  const double h = half_width_sigmas;
  std::vector<double> edges;
  for (int i = 0; i <= panels_per_axis; ++i) edges.push_back(-h + 2.0 * h * i / panels_per_axis);
  for (const double b : breakpoints) {
    if (b > -h && b < h) edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());

  const GaussLegendreRule rule = gauss_legendre(nodes_per_axis);
  std::vector<double> t;
  std::vector<double> w;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double half = 0.5 * (edges[e + 1] - edges[e]);
    if (!(half > 0.0)) continue;
    const double mid = 0.5 * (edges[e + 1] + edges[e]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = mid + half * rule.nodes[i];
      t.push_back(x);
      w.push_back(half * rule.weights[i] * normal_density(x, 1.0));
    }
  }
  return {std::move(t), std::move(w)};
}

namespace {

// int_a^b y phi(y; nu, tau) dy.
double first_moment(double a, double b, double nu, double tau) {
  const double za = (a - nu) / tau;
  const double zb = (b - nu) / tau;
  const double mass = 0.5 * (std::erfc(-zb / kSqrt2) - std::erfc(-za / kSqrt2));
  return nu * mass + tau * (normal_density(za, 1.0) - normal_density(zb, 1.0));
}

// E|symmetric_mod(mu + tau Z, 2 sqrt(pi))| for standard normal Z: the
// triangle wave integrated cell by cell.
double expected_abs_mod(double mu, double tau) {
  if (tau == 0.0) return std::abs(symmetric_mod(mu, kTwoSqrtPi));
  const double reach = 9.0 * tau + kSqrtPi;
  const auto k_lo = static_cast<std::int64_t>(std::floor((mu - reach) / kTwoSqrtPi));
  const auto k_hi = static_cast<std::int64_t>(std::ceil((mu + reach) / kTwoSqrtPi));
  double sum = 0.0;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const double nu = mu - static_cast<double>(k) * kTwoSqrtPi;
    sum += first_moment(0.0, kSqrtPi, nu, tau) - first_moment(-kSqrtPi, 0.0, nu, tau);
  }
  return sum;
}

// Cell edges (n + 1/2) sqrt(pi) of alpha + beta s, as s values in [-h, h].
std::vector<double> crossing_points(double alpha, double beta, double h) {
  std::vector<double> out;
  if (beta == 0.0) return out;
  const double lo = std::min(alpha - beta * h, alpha + beta * h);
  const double hi = std::max(alpha - beta * h, alpha + beta * h);
  for (auto n = static_cast<std::int64_t>(std::floor(lo / kSqrtPi - 0.5));
       (static_cast<double>(n) + 0.5) * kSqrtPi <= hi; ++n) {
    out.push_back(((static_cast<double>(n) + 0.5) * kSqrtPi - alpha) / beta);
  }
  return out;
}

// One quadrature. cols = (x1, x2, x3) columns of the coefficient rows and
// place(x1, x2, x3) builds the full ShiftVector.
template <class Place, class Output>
double delta_one_quadrature(const Corrector& corrector, const Eigen::Matrix<double, 4, 6>& rows,
                            int m_row, const int cols[3], double sd, double sa,
                            const QuadratureGrid& grid, Place place, Output output) {
  const double m1 = rows(m_row, cols[0]);
  const double m2 = rows(m_row, cols[1]);
  const double m3 = rows(m_row, cols[2]);
  const double norm = std::hypot(m2, m3);
  // Unit vectors for s (along (m2, m3)) and t.
  const double es2 = norm > 0.0 ? m2 / norm : 1.0;
  const double es3 = norm > 0.0 ? m3 / norm : 0.0;
  const double et2 = -es3;
  const double et3 = es2;

  const double h = grid.half_width_sigmas;
  std::vector<double> x1_breaks;
  for (const double b : crossing_points(0.0, sd, h)) x1_breaks.push_back(b);
  const auto [t1, w1] = grid.AxisRule(x1_breaks);

  double total = 0.0;
  for (std::size_t i = 0; i < t1.size(); ++i) {
    const double x1 = sd * t1[i];
    const double ideal = x1 - round_residual(x1);
    const auto s_breaks = crossing_points(m1 * x1, sa * norm, h);
    const auto [ts, ws] = grid.AxisRule(s_breaks);
    double row = 0.0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const double s = sa * ts[j];
      const double base = output(corrector(place(x1, s * es2, s * es3))) - ideal;
      const double unit = output(corrector(place(x1, s * es2 + sa * et2, s * es3 + sa * et3))) - ideal;
      row += ws[j] * expected_abs_mod(base, std::abs(unit - base));
    }
    total += w1[i] * row;
  }
  return total;
}

}  // namespace

DeltaPair delta_quadrature(const SchemeSpec& spec, const NoiseModel& noise,
                           const QuadratureGrid& grid) {
  grid.Validate();
  const Corrector corrector(spec, noise);
  const Eigen::Matrix<double, 4, 6> rows = coefficient_rows(spec);
  const double sd = noise.sigma_data();
  const double sa = noise.sigma_ancilla();

  static constexpr int kQCols[3] = {0, 2, 4};
  static constexpr int kPCols[3] = {1, 3, 5};
  DeltaPair result;
  result.q = delta_one_quadrature(
      corrector, rows, 1, kQCols, sd, sa, grid,
      [](double x1, double x2, double x3) { return ShiftVector{x1, 0.0, x2, 0.0, x3, 0.0}; },
      [](const CorrectionOutcome& o) { return o.u_out; });
  result.p = delta_one_quadrature(
      corrector, rows, 3, kPCols, sd, sa, grid,
      [](double x1, double x2, double x3) { return ShiftVector{0.0, x1, 0.0, x2, 0.0, x3}; },
      [](const CorrectionOutcome& o) { return o.v_out; });
  return result;
}

DeltaPair delta_oracle(const SchemeSpec& spec, const NoiseModel& noise,
                       const QuadratureGrid& grid, double refine_tol) {
  const DeltaPair coarse = delta_quadrature(spec, noise, grid);
  QuadratureGrid fine = grid;
  fine.nodes_per_axis = 2 * grid.nodes_per_axis;
  const DeltaPair refined = delta_quadrature(spec, noise, fine);
  const double gap = std::max(std::abs(refined.q - coarse.q), std::abs(refined.p - coarse.p));
  if (gap > refine_tol) {
    std::ostringstream msg;
    msg << "delta_oracle: " << grid.nodes_per_axis << " and " << fine.nodes_per_axis
        << " nodes per axis disagree by " << gap << " for " << spec.label();
    throw QuadratureRefinementError(msg.str());
  }
  return refined;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
  if (n == 0 || m == 0) throw std::invalid_argument("ks_critical_value: empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ks_critical_value: alpha in (0, 1)");
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.empty()) {
    throw std::invalid_argument("chi_square_test: observed and probabilities must match");
  }
  double total = 0.0;
  for (std::uint64_t c : observed) total += static_cast<double>(c);
  if (total <= 0.0) throw std::invalid_argument("chi_square_test: no observations");

  std::vector<double> obs;
  std::vector<double> exp;
  double acc_obs = 0.0;
  double acc_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_obs += static_cast<double>(observed[i]);
    acc_exp += total * probabilities[i];
    if (acc_exp >= 5.0) {
      obs.push_back(acc_obs);
      exp.push_back(acc_exp);
      acc_obs = 0.0;
      acc_exp = 0.0;
    }
  }
  if (acc_exp > 0.0 || acc_obs > 0.0) {
    if (exp.empty()) {
      obs.push_back(acc_obs);
      exp.push_back(acc_exp);
    } else {
      obs.back() += acc_obs;
      exp.back() += acc_exp;
    }
  }
  ChiSquareResult result;
  result.bins_used = static_cast<int>(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double diff = obs[i] - exp[i];
    result.statistic += diff * diff / exp[i];
  }
  result.dof = result.bins_used - 1;
  if (result.dof < 1) throw std::invalid_argument("chi_square_test: fewer than two usable bins");
  result.p_value = boost::math::gamma_q(0.5 * result.dof, 0.5 * result.statistic);
  return result;
}

}  // namespace gkpec
