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

#include "gkpec/quadrature.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gkpec {

namespace {

void require_finite(double z, const char* what) {
  if (!std::isfinite(z)) {
    throw std::invalid_argument(std::string(what) + ": non-finite input");
  }
}

std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

}  // namespace

NoiseModel::NoiseModel(double sigma_data, double sigma_ancilla)
    : sigma_data_(sigma_data), sigma_ancilla_(sigma_ancilla) {
  if (!std::isfinite(sigma_data) || !std::isfinite(sigma_ancilla) ||
      sigma_data < 0.0 || sigma_ancilla < 0.0) {
    throw std::invalid_argument("NoiseModel: standard deviations must be finite and >= 0");
  }
}

NoiseModel NoiseModel::FromRatio(double k, double sigma_ancilla) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("NoiseModel: noise ratio k must be finite and > 0");
  }
  return NoiseModel(std::sqrt(k) * sigma_ancilla, sigma_ancilla);
}

double NoiseModel::ratio() const {
  if (sigma_ancilla_ == 0.0) {
    throw std::invalid_argument("NoiseModel: ratio undefined for sigma_A = 0");
  }
  return var_data() / var_ancilla();
}

ShiftSampler::ShiftSampler(RngStream stream) : normal_(0.0, 1.0) {
  std::seed_seq seq{lo32(stream.seed), hi32(stream.seed),
                    lo32(stream.stream_index), hi32(stream.stream_index)};
  engine_.seed(seq);
}

std::array<double, 6> ShiftSampler::NextStandard() {
  std::array<double, 6> z;
  for (double& x : z) x = normal_(engine_);
  return z;
}

ShiftVector ShiftSampler::Next(const NoiseModel& noise) {
  return scale_shifts(NextStandard(), noise);
}

std::int64_t round_index(double z) {
  require_finite(z, "round_residual");
  auto n = static_cast<std::int64_t>(std::floor(z / kSqrtPi + 0.5));
  // Division rounding can land one cell off near the half-integer boundaries.
  const double r = z - static_cast<double>(n) * kSqrtPi;
  if (r >= kHalfSqrtPi) {
    ++n;
  } else if (r < -kHalfSqrtPi) {
    --n;
  }
  return n;
}

double round_residual(double z) {
  return z - static_cast<double>(round_index(z)) * kSqrtPi;
}

double symmetric_mod(double z, double period) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw std::invalid_argument("symmetric_mod: period must be finite and > 0");
  }
  require_finite(z, "symmetric_mod");
  double r = z - period * std::floor(z / period + 0.5);
  const double half = 0.5 * period;
  if (r >= half) {
    r -= period;
  } else if (r < -half) {
    r += period;
  }
  return r;
}

double binary_shift(double z) {
  require_finite(z, "binary_shift");
  return std::abs(symmetric_mod(z, kTwoSqrtPi)) < kHalfSqrtPi ? 0.0 : kSqrtPi;
}

ShiftVector scale_shifts(const std::array<double, 6>& standard,
                         const NoiseModel& noise) {
  const double d = noise.sigma_data();
  const double a = noise.sigma_ancilla();
  return ShiftVector{d * standard[0], d * standard[1], a * standard[2],
                     a * standard[3], a * standard[4], a * standard[5]};
}

ShiftVector sample_shifts(const NoiseModel& noise, ShiftSampler& sampler) {
  return sampler.Next(noise);
}

}  // namespace gkpec
