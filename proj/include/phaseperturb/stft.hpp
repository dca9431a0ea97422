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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "phaseperturb/errors.hpp"
#include "phaseperturb/fft.hpp"
#include "phaseperturb/matrix.hpp"

namespace phaseperturb {

using Complex = std::complex<double>;

// Mono PCM signal, nominally in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 16000;

  std::size_t size() const noexcept { return samples.size(); }
  double duration_seconds() const noexcept {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

inline void validate(const AudioBuffer& audio) {
  if (audio.sample_rate <= 0) {
    throw InvalidInput("sample rate must be positive, got " +
                       std::to_string(audio.sample_rate));
  }
  for (std::size_t i = 0; i < audio.samples.size(); ++i) {
    if (!std::isfinite(audio.samples[i])) {
      throw InvalidInput("non-finite sample at index " + std::to_string(i));
    }
  }
}

enum class WindowKind { kHann };

struct StftConfig {
  std::size_t n_fft = 1024;
  std::size_t hop = 256;
  WindowKind window = WindowKind::kHann;
  bool one_sided = true;

  std::size_t bins() const noexcept { return n_fft / 2 + 1; }

  friend bool operator==(const StftConfig&, const StftConfig&) = default;
};

// Periodic Hann, w[n] = 0.5 (1 - cos(2 pi n / N)).
inline std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                 static_cast<double>(n)));
  }
  return w;
}

inline std::vector<double> make_window(const StftConfig& config) {
  switch (config.window) {
    case WindowKind::kHann:
      return hann_window(config.n_fft);
  }
  throw UnsupportedConfig("unknown window kind");
}

// Smallest steady-state value of C[n] = sum_m w[n - m hop].
inline double min_window_overlap(std::span<const double> window,
                                 std::size_t hop) {
  double lowest = INFINITY;
  for (std::size_t phase = 0; phase < hop; ++phase) {
    double sum = 0.0;
    for (std::size_t i = phase; i < window.size(); i += hop) sum += window[i];
    lowest = std::min(lowest, sum);
  }
  return lowest;
}

inline constexpr double kWindowSumFloor = 1e-8;

inline void validate(const StftConfig& config) {
  if (!is_power_of_two(config.n_fft) || config.n_fft < 2) {
    throw UnsupportedConfig("n_fft must be a power of two >= 2, got " +
                            std::to_string(config.n_fft));
  }
  if (config.hop == 0 || config.hop > config.n_fft) {
    throw UnsupportedConfig("hop must be in (0, n_fft], got " +
                            std::to_string(config.hop));
  }
  if (!config.one_sided) {
    throw UnsupportedConfig("only one-sided spectra are supported");
  }
  if (min_window_overlap(make_window(config), config.hop) <= kWindowSumFloor) {
    throw UnsupportedConfig("window does not overlap-add to a nonzero sum at hop " +
                            std::to_string(config.hop));
  }
}

// Frames produced by center-padded framing of `length` samples.
inline std::size_t frame_count(std::size_t length, const StftConfig& config) {
  const std::size_t pad = config.n_fft / 2;
  return 1 + (length + 2 * pad - config.n_fft) / config.hop;
}

// One-sided STFT, bins x frames. Keeps the analysis config and the source
// length so that synthesis can trim back to the exact input size.
struct ComplexSpectrogram {
  Matrix<Complex> data;
  StftConfig config;
  std::size_t original_length = 0;
  int sample_rate = 16000;

  std::size_t bins() const noexcept { return data.bins(); }
  std::size_t frames() const noexcept { return data.frames(); }
};

inline void validate(const ComplexSpectrogram& spec) {
  validate(spec.config);
  if (spec.bins() != spec.config.bins()) {
    throw InvalidInput("spectrogram has " + std::to_string(spec.bins()) +
                       " bins, config implies " +
                       std::to_string(spec.config.bins()));
  }
  const std::size_t expected = frame_count(spec.original_length, spec.config);
  if (spec.frames() != expected) {
    throw InvalidInput("spectrogram has " + std::to_string(spec.frames()) +
                       " frames, original length implies " +
                       std::to_string(expected));
  }
}

namespace detail {

// Maps an index of the conceptually reflection-padded signal back into
// [0, length). Reflection repeats for signals shorter than the pad.
inline std::size_t reflect_index(std::ptrdiff_t i, std::size_t length) {
  if (length == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (length - 1));
  std::ptrdiff_t r = i % period;
  if (r < 0) r += period;
  if (r >= static_cast<std::ptrdiff_t>(length)) r = period - r;
  return static_cast<std::size_t>(r);
}

}  // namespace detail

// Windowed frame m of the padded signal, written into `frame`.
inline void extract_frame(const AudioBuffer& audio, const StftConfig& config,
                          std::span<const double> window, std::size_t m,
                          std::span<double> frame) {
  const auto pad = static_cast<std::ptrdiff_t>(config.n_fft / 2);
  const auto start = static_cast<std::ptrdiff_t>(m * config.hop) - pad;
  for (std::size_t i = 0; i < config.n_fft; ++i) {
    const auto src = detail::reflect_index(start + static_cast<std::ptrdiff_t>(i),
                                           audio.samples.size());
    frame[i] = audio.samples[src] * window[i];
  }
}

// STFT with an explicit analysis window. stft() is the normal entry point;
// this overload exists so self-tests can analyse with a different window.
inline ComplexSpectrogram stft_with_window(const AudioBuffer& audio,
                                           const StftConfig& config,
                                           std::span<const double> window) {
  if (audio.samples.empty()) throw InvalidInput("stft: empty audio");
  validate(config);
  validate(audio);
  if (window.size() != config.n_fft) {
    throw InvalidInput("stft: window length does not match n_fft");
  }

  const std::size_t frames = frame_count(audio.size(), config);
  ComplexSpectrogram spec{Matrix<Complex>(config.bins(), frames), config,
                          audio.size(), audio.sample_rate};
  const FftPlan<double> plan(config.n_fft);
  std::vector<double> frame(config.n_fft);
  std::vector<Complex> scratch;
  for (std::size_t m = 0; m < frames; ++m) {
    extract_frame(audio, config, window, m, frame);
    plan.forward_real(frame, spec.data.column(m), scratch);
  }
  return spec;
}

inline ComplexSpectrogram stft(const AudioBuffer& audio,
                               const StftConfig& config) {
  validate(config);
  const auto window = make_window(config);
  return stft_with_window(audio, config, window);
}

// Overlap-add synthesis normalised per sample by C[n] = sum_m w[n - m hop].
// Frames are not re-windowed: each inverse frame already carries the analysis
// window, so the sum divided by C[n] recovers the signal.
inline AudioBuffer istft_with_window(const ComplexSpectrogram& spec,
                                     std::span<const double> window) {
  validate(spec);
  const StftConfig& config = spec.config;
  if (window.size() != config.n_fft) {
    throw InvalidInput("istft: window length does not match n_fft");
  }
  const std::size_t pad = config.n_fft / 2;
  const std::size_t padded = (spec.frames() - 1) * config.hop + config.n_fft;

  std::vector<double> sum(padded, 0.0);
  std::vector<double> weight(padded, 0.0);
  const FftPlan<double> plan(config.n_fft);
  std::vector<double> frame(config.n_fft);
  std::vector<Complex> scratch;
  for (std::size_t m = 0; m < spec.frames(); ++m) {
    plan.inverse_real(spec.data.column(m), frame, scratch);
    const std::size_t offset = m * config.hop;
    for (std::size_t i = 0; i < config.n_fft; ++i) {
      sum[offset + i] += frame[i];
      weight[offset + i] += window[i];
    }
  }

  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  out.samples.assign(spec.original_length, 0.0);
  for (std::size_t n = 0; n < spec.original_length; ++n) {
    const std::size_t p = n + pad;
    if (p >= padded) break;
    out.samples[n] = sum[p] / std::max(weight[p], kWindowSumFloor);
  }
  return out;
}

inline AudioBuffer istft(const ComplexSpectrogram& spec) {
  validate(spec.config);
  const auto window = make_window(spec.config);
  return istft_with_window(spec, window);
}

}  // namespace phaseperturb
