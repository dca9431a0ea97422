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

#include "phaseperturb/errors.hpp"

namespace phaseperturb {

constexpr bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

// Iterative radix-2 complex FFT of a fixed power-of-two size. Twiddles and the
// bit-reversal permutation are computed once; transforms are const and may be
// shared across threads.
template <typename Real = double>
class FftPlan {
 public:
  using Complex = std::complex<Real>;

  explicit FftPlan(std::size_t size) : size_(size) {
    if (!is_power_of_two(size)) {
      throw UnsupportedConfig("FFT size " + std::to_string(size) +
                              " is not a power of two");
    }
    twiddles_.resize(size / 2);
    for (std::size_t i = 0; i < size / 2; ++i) {
      const Real angle = -2 * std::numbers::pi_v<Real> * static_cast<Real>(i) /
                         static_cast<Real>(size);
      twiddles_[i] = Complex(std::cos(angle), std::sin(angle));
    }
    reversed_.resize(size);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < size) ++bits;
    for (std::size_t i = 0; i < size; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b) {
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      }
      reversed_[i] = r;
    }
  }

  std::size_t size() const noexcept { return size_; }

  // In-place forward transform, X[k] = sum_n x[n] e^{-j 2 pi k n / N}.
  void forward(std::span<Complex> data) const { transform(data, false); }

  // In-place inverse transform including the 1/N factor.
  void inverse(std::span<Complex> data) const {
    transform(data, true);
    const Real scale = Real(1) / static_cast<Real>(size_);
    for (auto& x : data) x *= scale;
  }

  // One-sided spectrum (N/2 + 1 bins) of a real frame.
  void forward_real(std::span<const Real> frame, std::span<Complex> out,
                    std::vector<Complex>& scratch) const {
    scratch.assign(frame.begin(), frame.end());
    forward(scratch);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = scratch[k];
  }

  // Real frame from a one-sided spectrum. The full spectrum is rebuilt with
  // Hermitian symmetry; imaginary parts of the DC and Nyquist bins are dropped.
  void inverse_real(std::span<const Complex> half, std::span<Real> out,
                    std::vector<Complex>& scratch) const {
    const std::size_t n = size_;
    scratch.resize(n);
    scratch[0] = Complex(half[0].real(), 0);
    for (std::size_t k = 1; k < n / 2; ++k) {
      scratch[k] = half[k];
      scratch[n - k] = std::conj(half[k]);
    }
    if (n > 1) scratch[n / 2] = Complex(half[n / 2].real(), 0);
    inverse(scratch);
    for (std::size_t i = 0; i < n; ++i) out[i] = scratch[i].real();
  }

 private:
  void transform(std::span<Complex> data, bool inverse) const {
    if (data.size() != size_) {
      throw InvalidInput("FFT input has " + std::to_string(data.size()) +
                         " points, plan expects " + std::to_string(size_));
    }
    for (std::size_t i = 0; i < size_; ++i) {
      if (i < reversed_[i]) std::swap(data[i], data[reversed_[i]]);
    }
    for (std::size_t len = 2; len <= size_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = size_ / len;
      for (std::size_t start = 0; start < size_; start += len) {
        for (std::size_t j = 0; j < half; ++j) {
          Complex w = twiddles_[j * stride];
          if (inverse) w = std::conj(w);
          const Complex t = w * data[start + j + half];
          data[start + j + half] = data[start + j] - t;
          data[start + j] += t;
        }
      }
    }
  }

  std::size_t size_;
  std::vector<Complex> twiddles_;
  std::vector<std::size_t> reversed_;
};

}  // namespace phaseperturb
