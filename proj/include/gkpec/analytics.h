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

// Deterministic evaluation: the closed-form output density of the
// symmetric P-Steane scheme, tensor-product Gauss-Legendre oracles for the
// Delta metrics, and two-sample / goodness-of-fit statistics.

#ifndef GKPEC_ANALYTICS_H_
#define GKPEC_ANALYTICS_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gkpec/quadrature.h"
#include "gkpec/schemes.h"

namespace gkpec {

/// Parameters of the lattice-sum density of u_out for P-Steane(b = sqrt2,
/// m = 1). Terms with |n| > n_max are dropped.
struct PdfSpec {
  double sigma_data = 0.0;
  double sigma_ancilla = 0.0;
  int n_max = 0;
  double tol = 1e-12;

  /// n_max = ceil(8 max(sigma_D, sigma_A) / sqrt(pi)) + 3.
  static PdfSpec ForNoise(double sigma_data, double sigma_ancilla, double tol = 1e-12);

  /// Throws std::invalid_argument for non-positive sigmas, n_max < 1, or when
  /// the truncation tail bound exceeds tol.
  void Validate() const;

  /// Upper bound on the density contributed by the dropped |n| > n_max terms.
  double TailBound() const;
};

/// f(x) = 1/2 sum_n p[sA^2](x - n sqrt(pi)) [Erf((1+2n) sqrt(pi/2) / (2 sY))
///        - Erf((2n-1) sqrt(pi/2) / (2 sY))],  sY^2 = sD^2 + sA^2.
///
/// Erf is the C library's std::erf (glibc, derived from Sun's fdlibm
/// s_erf.c, rational approximations with < 1 ulp error).
double p_steane_sym_pdf(double x, const PdfSpec& spec);

/// Integral of p_steane_sym_pdf over [lo, hi].
double p_steane_sym_mass(double lo, double hi, const PdfSpec& spec);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Newton iteration on P_n from Chebyshev initial guesses; nodes and weights
/// are accurate to a few ulp for n up to several thousand.
GaussLegendreRule gauss_legendre(int n);

/// Composite Gauss-Legendre rule for one standard-normal axis truncated to
/// [-h, h]: panels_per_axis equal panels, each further cut at any supplied
/// breakpoints, with nodes_per_axis nodes on every resulting piece.
struct QuadratureGrid {
  int nodes_per_axis = 12;
  int panels_per_axis = 16;
  double half_width_sigmas = 8.0;

  void Validate() const;

  /// Nodes and weights in standard-normal units; weights include the
  /// Gaussian density, so they sum to erf(h / sqrt2). Breakpoints outside
  /// (-h, h) are ignored.
  std::pair<std::vector<double>, std::vector<double>> AxisRule(
      std::span<const double> breakpoints = {}) const;
};

class QuadratureRefinementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DeltaPair {
  double q = 0.0;
  double p = 0.0;
};

/// Delta_q, Delta_p on one grid, without the refinement check.
///
/// Per quadrature the ancilla pair (x2, x3) is rotated into s, along the
/// measured combination, and t orthogonal to it. Given (x1, s) every rounding
/// decision is fixed and the residual is exactly linear in t, so the t
/// integral of |symmetric_mod| is done in closed form. The (x1, s) plane is
/// integrated by composite Gauss-Legendre with x1 cut at the cell edges of
/// R(x1) and s cut where the measured shift crosses a cell edge, leaving
/// only smooth integrands on every piece.
DeltaPair delta_quadrature(const SchemeSpec& spec, const NoiseModel& noise,
                           const QuadratureGrid& grid);

/// Delta_q = E|symmetric_mod(u_N - u_I, 2 sqrt(pi))| with u_I = u1 - R(u1),
/// likewise Delta_p. Evaluated with N and 2N nodes per piece; throws
/// QuadratureRefinementError if the two disagree by more than refine_tol.
/// Returns the 2N values.
DeltaPair delta_oracle(const SchemeSpec& spec, const NoiseModel& noise,
                       const QuadratureGrid& grid = {}, double refine_tol = 1e-4);

/// Two-sample Kolmogorov-Smirnov sup distance. Inputs must be sorted.
double ks_statistic(std::span<const double> sorted_a, std::span<const double> sorted_b);

/// Asymptotic two-sample critical value c(alpha) sqrt((n + m) / (n m)) with
/// c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
  int bins_used = 0;
};

/// Pearson goodness-of-fit of observed counts against cell probabilities
/// (which must cover all outcomes, i.e. include overflow cells). Adjacent
/// cells are merged left to right until each expected count is >= 5.
ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> probabilities);

}  // namespace gkpec

#endif  // GKPEC_ANALYTICS_H_
