// Copyright 2026 The phaseperturb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace phaseperturb {

// Direct O(N^2) one-sided DFT. Independent of FftPlan; used as the reference
// in tests and in the `verify` self-check.
inline std::vector<std::complex<double>> naive_dft_frame(
    std::span<const double> frame) {
  const std::size_t n = frame.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      // Reduce k*t mod n first so the angle stays small and exact.
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>((k * t) % n) /
                           static_cast<double>(n);
      re += frame[t] * std::cos(angle);
      im += frame[t] * std::sin(angle);
    }
    out[k] = {re, im};
  }
  return out;
}

}  // namespace phaseperturb
