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
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "phaseperturb/errors.hpp"
#include "phaseperturb/phase_augment.hpp"
#include "phaseperturb/polar.hpp"
#include "phaseperturb/random.hpp"

namespace phaseperturb {

// Piecewise-linear vocal tract length warp: slope alpha below boundary_freq,
// then a straight segment that pins Nyquist to Nyquist.
struct VtlpPolicy {
  double warp_min = 0.9;
  double warp_max = 1.1;
  double boundary_freq = 4800.0;  // Hz

  friend bool operator==(const VtlpPolicy&, const VtlpPolicy&) = default;
};

inline void validate(const VtlpPolicy& policy) {
  if (!(policy.warp_min > 0.0 && policy.warp_min <= policy.warp_max) ||
      !std::isfinite(policy.warp_max)) {
    throw InvalidPolicy("VTLP requires 0 < warp_min <= warp_max");
  }
  if (!(policy.boundary_freq > 0.0) || !std::isfinite(policy.boundary_freq)) {
    throw InvalidPolicy("VTLP boundary_freq must be positive");
  }
}

inline void validate(const VtlpPolicy& policy, int sample_rate) {
  validate(policy);
  if (!(policy.boundary_freq < 0.5 * sample_rate)) {
    throw InvalidPolicy("VTLP boundary_freq " +
                        std::to_string(policy.boundary_freq) +
                        " Hz is not below Nyquist");
  }
}

namespace detail {

inline void check_alpha(double alpha, const VtlpPolicy& policy, int sample_rate) {
  validate(policy, sample_rate);
  if (!(alpha >= policy.warp_min && alpha <= policy.warp_max)) {
    throw InvalidInput("VTLP alpha " + std::to_string(alpha) +
                       " outside [" + std::to_string(policy.warp_min) + ", " +
                       std::to_string(policy.warp_max) + "]");
  }
  if (!(alpha * policy.boundary_freq < 0.5 * sample_rate)) {
    throw InvalidInput("VTLP alpha maps boundary_freq past Nyquist");
  }
}

}  // namespace detail

// Source frequency -> warped frequency, in Hz.
inline double vtlp_frequency_map(double freq, double alpha,
                                 const VtlpPolicy& policy, int sample_rate) {
  const double nyquist = 0.5 * sample_rate;
  const double b = policy.boundary_freq;
  if (freq <= b) return alpha * freq;
  return nyquist - (nyquist - freq) * (nyquist - alpha * b) / (nyquist - b);
}

// Warped frequency -> source frequency, the inverse of vtlp_frequency_map.
inline double vtlp_inverse_map(double warped, double alpha,
                               const VtlpPolicy& policy, int sample_rate) {
  const double nyquist = 0.5 * sample_rate;
  const double b = policy.boundary_freq;
  if (warped <= alpha * b) return warped / alpha;
  return nyquist - (nyquist - warped) * (nyquist - b) / (nyquist - alpha * b);
}

// Output bin j reads the source spectrum at the pre-image of its centre
// frequency (linear interpolation between neighbouring bins) and is scaled by
// sqrt of the local slope of that pre-image, so per-frame energy
// sum |A|^2 is carried over by the warp.
inline AmplitudeSpectrum vtlp_warp(const AmplitudeSpectrum& amplitude,
                                   double alpha, const VtlpPolicy& policy,
                                   int sample_rate) {
  detail::check_alpha(alpha, policy, sample_rate);
  const std::size_t bins = amplitude.bins();
  AmplitudeSpectrum out{Matrix<double>(bins, amplitude.frames())};
  if (bins == 0) return out;

  // Work in bin units (bin bins-1 is Nyquist) so that alpha == 1 maps every
  // bin exactly onto itself.
  const double last = static_cast<double>(bins - 1);
  const double boundary = policy.boundary_freq * last / (0.5 * sample_rate);
  const double upper_slope = (last - boundary) / (last - alpha * boundary);

  std::vector<std::size_t> lo(bins);
  std::vector<double> frac(bins);
  std::vector<double> gain(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    const double warped = static_cast<double>(j);
    const bool lower = warped <= alpha * boundary;
    double src = lower ? warped / alpha : last - (last - warped) * upper_slope;
    src = std::clamp(src, 0.0, last);
    const double base = std::floor(src);
    lo[j] = static_cast<std::size_t>(base);
    frac[j] = src - base;
    if (lo[j] >= bins - 1) {
      lo[j] = bins - 1;
      frac[j] = 0.0;
    }
    gain[j] = std::sqrt(lower ? 1.0 / alpha : upper_slope);
  }

  for (std::size_t m = 0; m < amplitude.frames(); ++m) {
    auto src = amplitude.data.column(m);
    auto dst = out.data.column(m);
    for (std::size_t j = 0; j < bins; ++j) {
      double value = src[lo[j]];
      if (frac[j] != 0.0) value += frac[j] * (src[lo[j] + 1] - src[lo[j]]);
      dst[j] = gain[j] * value;
    }
  }
  return out;
}

// SpecAugment-style masking of the magnitudes (no time warping). Frequency
// masks are sampled first, then time masks, from the shared mask sampler.
inline AmplitudeSpectrum spec_mask_amplitude(const AmplitudeSpectrum& amplitude,
                                             const MaskPolicy& policy,
                                             RandomSource& rng) {
  AmplitudeSpectrum out = amplitude;
  const auto freq = sample_freq_masks(out.bins(), policy, rng);
  const auto time = sample_time_masks(out.frames(), policy, rng);
  apply_masks_in_place(out.data, std::span<const SampledMask>(freq), 0.0);
  apply_masks_in_place(out.data, std::span<const SampledMask>(time), 0.0);
  return out;
}

enum class AmplitudeOp { kSpecAug, kVtlp };

struct AmplitudeAugmentParams {
  MaskPolicy mask;
  VtlpPolicy vtlp;
};

// Amplitude-only edit; the phase matrix is carried over untouched. For VTLP
// the warp factor is drawn uniformly from [warp_min, warp_max].
inline PolarSpectrum amplitude_augment(const PolarSpectrum& polar,
                                       AmplitudeOp which,
                                       const AmplitudeAugmentParams& params,
                                       RandomSource& rng) {
  PolarSpectrum out = polar;
  switch (which) {
    case AmplitudeOp::kSpecAug:
      out.amplitude = spec_mask_amplitude(polar.amplitude, params.mask, rng);
      break;
    case AmplitudeOp::kVtlp: {
      validate(params.vtlp, polar.sample_rate);
      const double alpha =
          rng.uniform_real(params.vtlp.warp_min, params.vtlp.warp_max);
      out.amplitude =
          vtlp_warp(polar.amplitude, alpha, params.vtlp, polar.sample_rate);
      break;
    }
  }
  return out;
}

inline AudioBuffer amplitude_augment(const AudioBuffer& audio,
                                     const StftConfig& config, AmplitudeOp which,
                                     const AmplitudeAugmentParams& params,
                                     RandomSource& rng) {
  return synthesize(amplitude_augment(analyze(audio, config), which, params, rng));
}

}  // namespace phaseperturb
