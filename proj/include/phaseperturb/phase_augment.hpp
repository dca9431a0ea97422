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
#include "phaseperturb/polar.hpp"
#include "phaseperturb/random.hpp"

namespace phaseperturb {

struct PhaseRandomizationPolicy {
  double sigma = 0.1;  // stddev of the per-frame multiplier mu ~ N(1, sigma^2)

  friend bool operator==(const PhaseRandomizationPolicy&,
                         const PhaseRandomizationPolicy&) = default;
};

// Mask sampling parameters. Defaults are F=10, m_F=2, T=45, m_T=2, p=0.1.
struct MaskPolicy {
  std::size_t freq_mask_max = 10;
  std::size_t freq_mask_count = 2;
  std::size_t time_mask_max = 45;
  std::size_t time_mask_count = 2;
  double time_mask_ratio_cap = 0.1;

  friend bool operator==(const MaskPolicy&, const MaskPolicy&) = default;
};

inline void validate(const MaskPolicy& policy) {
  if (!(policy.time_mask_ratio_cap >= 0.0 && policy.time_mask_ratio_cap <= 1.0)) {
    throw InvalidPolicy("time_mask_ratio_cap must be in [0, 1]");
  }
}

inline void validate(const PhaseRandomizationPolicy& policy) {
  if (!(policy.sigma >= 0.0) || !std::isfinite(policy.sigma)) {
    throw InvalidPolicy("sigma must be finite and >= 0");
  }
}

enum class MaskAxis { kFrequency, kTime };

// Half-open span [start, start + width) along one axis.
struct SampledMask {
  MaskAxis axis = MaskAxis::kFrequency;
  std::size_t start = 0;
  std::size_t width = 0;

  friend bool operator==(const SampledMask&, const SampledMask&) = default;
};

// Scales every phase in frame i by mu_i ~ N(1, sigma^2). Draws exactly one
// Gaussian per frame, in frame order.
inline PhaseSpectrum randomize_phase(const PhaseSpectrum& phase,
                                     const PhaseRandomizationPolicy& policy,
                                     RandomSource& rng) {
  validate(policy);
  PhaseSpectrum out = phase;
  for (std::size_t i = 0; i < out.frames(); ++i) {
    const double mu = rng.gaussian(1.0, policy.sigma);
    for (double& value : out.data.column(i)) value *= mu;
  }
  return out;
}

namespace detail {

inline std::vector<SampledMask> sample_masks(MaskAxis axis, std::size_t length,
                                             std::size_t max_width,
                                             std::size_t count,
                                             RandomSource& rng) {
  std::vector<SampledMask> masks;
  masks.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto width = static_cast<std::size_t>(rng.uniform_int(0, max_width));
    const auto start = static_cast<std::size_t>(rng.uniform_int(0, length - width));
    masks.push_back({axis, start, width});
  }
  return masks;
}

}  // namespace detail

// m_F masks over `bins` rows; width ~ U{0..F}, start ~ U{0..bins-width}.
inline std::vector<SampledMask> sample_freq_masks(std::size_t bins,
                                                  const MaskPolicy& policy,
                                                  RandomSource& rng) {
  validate(policy);
  if (policy.freq_mask_max > bins) {
    throw InvalidPolicy("freq_mask_max " + std::to_string(policy.freq_mask_max) +
                        " exceeds bin count " + std::to_string(bins));
  }
  return detail::sample_masks(MaskAxis::kFrequency, bins, policy.freq_mask_max,
                              policy.freq_mask_count, rng);
}

// Largest time-mask width for `frames` frames: min(T, floor(p * frames)).
inline std::size_t effective_time_mask_max(std::size_t frames,
                                           const MaskPolicy& policy) {
  const auto cap = static_cast<std::size_t>(
      std::floor(policy.time_mask_ratio_cap * static_cast<double>(frames)));
  return std::min(policy.time_mask_max, cap);
}

inline std::vector<SampledMask> sample_time_masks(std::size_t frames,
                                                  const MaskPolicy& policy,
                                                  RandomSource& rng) {
  validate(policy);
  return detail::sample_masks(MaskAxis::kTime, frames,
                              effective_time_mask_max(frames, policy),
                              policy.time_mask_count, rng);
}

// Sets every entry covered by a mask to `fill`. Works on any bins x frames
// matrix; the phase and amplitude wrappers below are the public entry points.
template <typename T>
void apply_masks_in_place(Matrix<T>& matrix, std::span<const SampledMask> masks,
                          const T& fill) {
  for (const auto& mask : masks) {
    const std::size_t extent =
        mask.axis == MaskAxis::kFrequency ? matrix.bins() : matrix.frames();
    if (mask.start > extent || mask.width > extent - mask.start) {
      throw InvalidInput("mask [" + std::to_string(mask.start) + ", " +
                         std::to_string(mask.start + mask.width) +
                         ") exceeds axis length " + std::to_string(extent));
    }
  }
  for (const auto& mask : masks) {
    if (mask.axis == MaskAxis::kFrequency) {
      for (std::size_t m = 0; m < matrix.frames(); ++m) {
        auto col = matrix.column(m);
        std::fill_n(col.begin() + static_cast<std::ptrdiff_t>(mask.start),
                    mask.width, fill);
      }
    } else {
      for (std::size_t m = mask.start; m < mask.start + mask.width; ++m) {
        auto col = matrix.column(m);
        std::fill(col.begin(), col.end(), fill);
      }
    }
  }
}

inline PhaseSpectrum apply_masks(const PhaseSpectrum& phase,
                                 std::span<const SampledMask> masks) {
  PhaseSpectrum out = phase;
  apply_masks_in_place(out.data, masks, 0.0);
  return out;
}

// Constant rotation of every bin, the static baseline.
inline PhaseSpectrum rotate_phase_static(const PhaseSpectrum& phase,
                                         double angle) {
  PhaseSpectrum out = phase;
  for (double& value : out.data.flat()) value += angle;
  return out;
}

enum class PhaseOp { kRandomize, kFreqMask, kTimeMask };

struct PhasePerturbationPolicy {
  MaskPolicy mask;
  PhaseRandomizationPolicy randomization;
  std::vector<PhaseOp> order = {PhaseOp::kRandomize, PhaseOp::kFreqMask,
                                PhaseOp::kTimeMask};

  friend bool operator==(const PhasePerturbationPolicy&,
                         const PhasePerturbationPolicy&) = default;
};

// Applies the phase operations in policy order. Random draws are consumed in
// that same order: frame multipliers, then (width, start) per mask.
inline PhaseSpectrum perturb_phase(const PhaseSpectrum& phase,
                                   const PhasePerturbationPolicy& policy,
                                   RandomSource& rng) {
  PhaseSpectrum out = phase;
  for (PhaseOp op : policy.order) {
    switch (op) {
      case PhaseOp::kRandomize:
        out = randomize_phase(out, policy.randomization, rng);
        break;
      case PhaseOp::kFreqMask: {
        const auto masks = sample_freq_masks(out.bins(), policy.mask, rng);
        apply_masks_in_place(out.data, std::span<const SampledMask>(masks), 0.0);
        break;
      }
      case PhaseOp::kTimeMask: {
        const auto masks = sample_time_masks(out.frames(), policy.mask, rng);
        apply_masks_in_place(out.data, std::span<const SampledMask>(masks), 0.0);
        break;
      }
    }
  }
  return out;
}

// Phase-only edit of a polar spectrum; the amplitude matrix is carried over
// untouched.
inline PolarSpectrum phase_perturb(const PolarSpectrum& polar,
                                   const PhasePerturbationPolicy& policy,
                                   RandomSource& rng) {
  PolarSpectrum out = polar;
  out.phase = perturb_phase(polar.phase, policy, rng);
  return out;
}

// stft -> decompose -> phase operations -> recompose with the original
// amplitude -> istft. Output length equals input length.
inline AudioBuffer phase_perturb(const AudioBuffer& audio,
                                 const StftConfig& config,
                                 const MaskPolicy& mask_policy,
                                 const PhaseRandomizationPolicy& rand_policy,
                                 RandomSource& rng) {
  const PhasePerturbationPolicy policy{mask_policy, rand_policy};
  return synthesize(phase_perturb(analyze(audio, config), policy, rng));
}

}  // namespace phaseperturb
