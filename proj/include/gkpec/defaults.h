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

// Every tunable default of the toolkit. Precedence at run time is
// command-line flag > config file > this table.

#ifndef GKPEC_DEFAULTS_H_
#define GKPEC_DEFAULTS_H_

#include <cstdint>

namespace gkpec::defaults {

// Monte Carlo.
inline constexpr std::uint64_t kSamples = 1'000'000;
inline constexpr std::uint64_t kChunkSize = 1 << 16;
inline constexpr unsigned kWorkers = 0;  // hardware concurrency
inline constexpr bool kCommonRandomNumbers = true;

// sigma_A grid of the comparison sweeps.
inline constexpr double kGridStart = 0.05;
inline constexpr double kGridStop = 0.25;
inline constexpr int kGridCount = 21;

// Deterministic quadrature.
inline constexpr int kQuadratureNodes = 12;  // per panel piece
inline constexpr int kQuadraturePanels = 16;
inline constexpr double kQuadratureHalfWidth = 8.0;
inline constexpr double kQuadratureRefineTol = 1e-4;

// Equivalence checks.
inline constexpr double kIdentityTol = 1e-12;
inline constexpr double kKsAlpha = 1e-3;

// pdf subcommand.
inline constexpr int kPdfPoints = 801;
inline constexpr double kPdfHalfRangeLattice = 6.0;  // x range is +-6 sqrt(pi)

// Relative output paths are resolved against this directory when set.
inline constexpr const char* kOutputDirEnv = "GKPEC_OUTPUT_DIR";

}  // namespace gkpec::defaults

#endif  // GKPEC_DEFAULTS_H_
