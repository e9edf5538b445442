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

// Scalar quadrature arithmetic shared by every correction scheme: lattice
// residues modulo sqrt(pi), the binary Pauli-branch function of the
// teleportation circuit, and the Gaussian shift sampler.
//
// Units: hbar = 1, so the GKP lattice spacing is sqrt(pi) and the stabilizer
// period is 2 sqrt(pi).

#ifndef GKPEC_QUADRATURE_H_
#define GKPEC_QUADRATURE_H_

#include <array>
#include <cstdint>
#include <numbers>
#include <random>

namespace gkpec {

inline constexpr double kSqrtPi = 1.7724538509055160273;  // sqrt(pi)
inline constexpr double kTwoSqrtPi = 2.0 * kSqrtPi;
inline constexpr double kHalfSqrtPi = 0.5 * kSqrtPi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;

/// Displacement errors (u_i, v_i) on the data mode (1) and the two ancilla
/// modes (2, 3), in the order they enter the correction circuits.
struct ShiftVector {
  double u1 = 0.0;
  double v1 = 0.0;
  double u2 = 0.0;
  double v2 = 0.0;
  double u3 = 0.0;
  double v3 = 0.0;

  bool operator==(const ShiftVector&) const = default;
};

/// Gaussian shift-error strengths of the data (sigma_D) and ancilla (sigma_A)
/// modes. Zero is accepted so that the noiseless limit can be sampled.
class NoiseModel {
 public:
  NoiseModel(double sigma_data, double sigma_ancilla);

  /// sigma_D = sqrt(k) * sigma_A.
  static NoiseModel FromRatio(double k, double sigma_ancilla);

  double sigma_data() const { return sigma_data_; }
  double sigma_ancilla() const { return sigma_ancilla_; }
  double var_data() const { return sigma_data_ * sigma_data_; }
  double var_ancilla() const { return sigma_ancilla_ * sigma_ancilla_; }

  /// k = sigma_D^2 / sigma_A^2. Throws if sigma_A is zero.
  double ratio() const;

 private:
  double sigma_data_;
  double sigma_ancilla_;
};

/// Identifies one independent random stream. Streams with equal
/// (seed, stream_index) produce identical sequences; distinct indices are
/// decorrelated through std::seed_seq.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

/// The engine owned by one worker for one stream.
class ShiftSampler {
 public:
  explicit ShiftSampler(RngStream stream);

  /// Six independent standard normals in ShiftVector order.
  std::array<double, 6> NextStandard();

  ShiftVector Next(const NoiseModel& noise);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// R(z) = z - n sqrt(pi) with (n - 1/2) sqrt(pi) <= z < (n + 1/2) sqrt(pi).
double round_residual(double z);

/// The integer n selected by round_residual.
std::int64_t round_index(double z);

/// 0 if |z mod 2 sqrt(pi)| < sqrt(pi)/2 (symmetric residue), else sqrt(pi).
double binary_shift(double z);

/// Representative of z modulo period in [-period/2, period/2).
double symmetric_mod(double z, double period);

/// Scales a standard-normal draw into a ShiftVector.
ShiftVector scale_shifts(const std::array<double, 6>& standard,
                         const NoiseModel& noise);

/// One draw from the stream; u1, v1 ~ N(0, sigma_D^2), the rest
/// ~ N(0, sigma_A^2).
ShiftVector sample_shifts(const NoiseModel& noise, ShiftSampler& sampler);

}  // namespace gkpec

#endif  // GKPEC_QUADRATURE_H_
