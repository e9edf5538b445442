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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

using namespace gkpec;

TEST_CASE("round_residual examples") {
  CHECK(round_residual(0.0) == 0.0);
  CHECK(round_residual(kSqrtPi) == 0.0);
  CHECK(round_index(kSqrtPi) == 1);
  CHECK(round_residual(0.6 * kSqrtPi) == doctest::Approx(-0.4 * kSqrtPi).epsilon(1e-14));
  CHECK(round_index(0.6 * kSqrtPi) == 1);
}

TEST_CASE("round_residual half-open boundary") {
  // (n + 1/2) sqrt(pi) belongs to cell n + 1.
  CHECK(round_index(kHalfSqrtPi) == 1);
  CHECK(round_residual(kHalfSqrtPi) == doctest::Approx(-kHalfSqrtPi).epsilon(1e-15));
  CHECK(round_index(-kHalfSqrtPi) == 0);
  CHECK(round_index(std::nextafter(kHalfSqrtPi, 0.0)) == 0);
  // Products like 2.5 * kSqrtPi are rounded, so only the half-open range of
  // the residual is pinned near the far boundaries.
  for (double z : {2.5 * kSqrtPi, -2.5 * kSqrtPi, 7.5 * kSqrtPi, -7.5 * kSqrtPi}) {
    for (double y : {std::nextafter(z, -1e300), z, std::nextafter(z, 1e300)}) {
      const double r = round_residual(y);
      CHECK(r >= -kHalfSqrtPi);
      CHECK(r < kHalfSqrtPi);
    }
  }
}

TEST_CASE("round_residual rejects non-finite input") {
  CHECK_THROWS_AS(round_residual(std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK_THROWS_AS(round_residual(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(binary_shift(std::nan("")), std::invalid_argument);
}

TEST_CASE("binary_shift examples") {
  CHECK(binary_shift(0.0) == 0.0);
  CHECK(binary_shift(kSqrtPi) == kSqrtPi);
  CHECK(binary_shift(kTwoSqrtPi) == 0.0);
  CHECK(binary_shift(-kSqrtPi) == kSqrtPi);
  CHECK(binary_shift(0.49 * kSqrtPi) == 0.0);
  CHECK(binary_shift(0.5 * kSqrtPi) == kSqrtPi);
}

TEST_CASE("symmetric_mod examples") {
  CHECK(symmetric_mod(0.0, kTwoSqrtPi) == 0.0);
  CHECK(symmetric_mod(kTwoSqrtPi, kTwoSqrtPi) == 0.0);
  CHECK(symmetric_mod(1.2 * kSqrtPi, kTwoSqrtPi) ==
        doctest::Approx(-0.8 * kSqrtPi).epsilon(1e-14));
  // Left end of the representative interval is included, right end is not.
  CHECK(symmetric_mod(-1.0, 2.0) == -1.0);
  CHECK(symmetric_mod(1.0, 2.0) == -1.0);
  CHECK_THROWS_AS(symmetric_mod(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_mod(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("lattice properties on random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-40.0, 40.0);
  for (int i = 0; i < 100000; ++i) {
    const double z = dist(rng);
    const double r = round_residual(z);
    REQUIRE(r >= -kHalfSqrtPi);
    REQUIRE(r < kHalfSqrtPi);
    const double n = (z - r) / kSqrtPi;
    REQUIRE(std::abs(n - std::round(n)) < 1e-9);

    const double wrapped = ((z - r) - binary_shift(z)) / kTwoSqrtPi;
    REQUIRE(std::abs(wrapped - std::round(wrapped)) < 1e-9);

    const double period = 0.1 + std::abs(dist(rng));
    const double s = symmetric_mod(z, period);
    REQUIRE(s >= -0.5 * period);
    REQUIRE(s < 0.5 * period);
    const double k = (z - s) / period;
    REQUIRE(std::abs(k - std::round(k)) < 1e-9);
  }
}

TEST_CASE("NoiseModel") {
  const NoiseModel n(0.2, 0.1);
  CHECK(n.ratio() == doctest::Approx(4.0));
  const NoiseModel r = NoiseModel::FromRatio(3.0, 0.1);
  CHECK(r.sigma_data() == doctest::Approx(std::sqrt(3.0) * 0.1));
  CHECK_THROWS_AS(NoiseModel(-0.1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel(0.1, std::nan("")), std::invalid_argument);
  CHECK_THROWS(NoiseModel(0.1, 0.0).ratio());
}

TEST_CASE("sample_shifts zero noise gives zeros") {
  ShiftSampler sampler(RngStream{1, 0});
  const NoiseModel zero(0.0, 0.0);
  for (int i = 0; i < 100; ++i) {
    const ShiftVector s = sample_shifts(zero, sampler);
    REQUIRE(s.u1 == 0.0);
    REQUIRE(s.v1 == 0.0);
    REQUIRE(s.u2 == 0.0);
    REQUIRE(s.v2 == 0.0);
    REQUIRE(s.u3 == 0.0);
    REQUIRE(s.v3 == 0.0);
  }
}

TEST_CASE("sample_shifts moments") {
  const NoiseModel noise(0.2, 0.1);
  ShiftSampler sampler(RngStream{20261015, 0});
  const int n = 1000000;
  double sum[6] = {};
  double sum_u1_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const ShiftVector s = sample_shifts(noise, sampler);
    const double x[6] = {s.u1, s.v1, s.u2, s.v2, s.u3, s.v3};
    for (int j = 0; j < 6; ++j) sum[j] += x[j];
    sum_u1_sq += s.u1 * s.u1;
  }
  const double sigma[6] = {0.2, 0.2, 0.1, 0.1, 0.1, 0.1};
  for (int j = 0; j < 6; ++j) {
    CHECK(std::abs(sum[j] / n) < 4.0 * sigma[j] / 1e3);
  }
  CHECK(sum_u1_sq / n == doctest::Approx(0.04).epsilon(0.01));
}

TEST_CASE("sampler reproducibility and stream separation") {
  ShiftSampler a(RngStream{5, 3});
  ShiftSampler b(RngStream{5, 3});
  ShiftSampler c(RngStream{5, 4});
  bool any_different = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.NextStandard();
    const auto y = b.NextStandard();
    const auto z = c.NextStandard();
    REQUIRE(x == y);
    any_different = any_different || x != z;
  }
  CHECK(any_different);
}
