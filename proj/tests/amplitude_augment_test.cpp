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

#include <cmath>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "phaseperturb/amplitude_augment.hpp"
#include "test_util.hpp"

namespace phaseperturb {
namespace {

using testing::white_noise;

const MaskPolicy kTable1{10, 2, 45, 2, 0.1};

// Positive, slowly varying magnitudes: an offset plus a few low-order cosines
// with random amplitudes and phases, independently per frame.
AmplitudeSpectrum smooth_spectrum(std::size_t bins, std::size_t frames,
                                  std::uint64_t seed) {
  RandomSource rng(seed);
  AmplitudeSpectrum amp{Matrix<double>(bins, frames)};
  for (std::size_t m = 0; m < frames; ++m) {
    double coeff[3];
    double shift[3];
    for (int i = 0; i < 3; ++i) {
      coeff[i] = rng.uniform_real(0.0, 0.3);
      shift[i] = rng.uniform_real(0.0, 2 * std::numbers::pi);
    }
    for (std::size_t k = 0; k < bins; ++k) {
      const double x = static_cast<double>(k) / static_cast<double>(bins - 1);
      double v = 1.0;
      for (int i = 0; i < 3; ++i) {
        v += coeff[i] * std::cos(2 * std::numbers::pi * (i + 1) * x + shift[i]);
      }
      amp.data(k, m) = v;
    }
  }
  return amp;
}

double frame_energy(const AmplitudeSpectrum& amp, std::size_t m) {
  double e = 0.0;
  for (double v : amp.data.column(m)) e += v * v;
  return e;
}

TEST(SpecMaskAmplitude, ZeroCountIsIdentity) {
  const auto amp = smooth_spectrum(513, 40, 1);
  MaskPolicy none = kTable1;
  none.freq_mask_count = 0;
  none.time_mask_count = 0;
  RandomSource rng(3);
  EXPECT_EQ(spec_mask_amplitude(amp, none, rng), amp);
}

TEST(SpecMaskAmplitude, ZeroesExactlyTheSampledMasks) {
  const AmplitudeSpectrum ones{Matrix<double>(513, 100, 1.0)};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomSource rng(seed);
    const auto out = spec_mask_amplitude(ones, kTable1, rng);

    RandomSource replay(seed);
    const auto freq = sample_freq_masks(513, kTable1, replay);
    const auto time = sample_time_masks(100, kTable1, replay);
    std::set<std::size_t> rows;
    std::set<std::size_t> cols;
    for (const auto& m : freq) for (std::size_t k = m.start; k < m.start + m.width; ++k) rows.insert(k);
    for (const auto& m : time) {
      ASSERT_LE(m.width, 10u);
      for (std::size_t t = m.start; t < m.start + m.width; ++t) cols.insert(t);
    }
    std::size_t zeros = 0;
    for (std::size_t k = 0; k < 513; ++k) {
      for (std::size_t t = 0; t < 100; ++t) {
        const bool masked = rows.count(k) || cols.count(t);
        ASSERT_EQ(out.data(k, t), masked ? 0.0 : 1.0);
        zeros += masked;
      }
    }
    EXPECT_EQ(zeros, rows.size() * 100 + cols.size() * 513 - rows.size() * cols.size());
  }
}

TEST(SpecMaskAmplitude, PhaseSurvivesPolarRoundTrip) {
  const auto polar = analyze(white_noise(16000, 2), StftConfig{});
  RandomSource rng(8);
  const auto masked = spec_mask_amplitude(polar.amplitude, kTable1, rng);
  const auto [amp, phase] = decompose(recompose(masked, polar.phase, polar.config,
                                                polar.original_length));
  for (std::size_t i = 0; i < phase.data.size(); ++i) {
    if (masked.data.flat()[i] > 0.0) {
      // +pi and -pi are the same angle.
      const double d = std::remainder(phase.data.flat()[i] - polar.phase.data.flat()[i],
                                      2 * std::numbers::pi);
      ASSERT_LE(std::abs(d), 1e-12);
    }
  }
}

TEST(Vtlp, UnitWarpIsIdentity) {
  const auto amp = smooth_spectrum(513, 20, 4);
  const auto out = vtlp_warp(amp, 1.0, VtlpPolicy{}, 16000);
  for (std::size_t i = 0; i < amp.data.size(); ++i) {
    ASSERT_LE(std::abs(out.data.flat()[i] - amp.data.flat()[i]), 1e-12);
  }
  // Real STFT magnitudes span several orders of magnitude.
  const auto polar = analyze(white_noise(8000, 4), StftConfig{});
  const auto warped = vtlp_warp(polar.amplitude, 1.0, VtlpPolicy{}, 16000);
  for (std::size_t i = 0; i < warped.data.size(); ++i) {
    ASSERT_LE(std::abs(warped.data.flat()[i] - polar.amplitude.data.flat()[i]), 1e-12);
  }
}

TEST(Vtlp, PreservesFrameEnergyWithinTwoPercent) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto amp = smooth_spectrum(513, 10, seed);
    for (int step = 0; step <= 20; ++step) {
      const double alpha = 0.9 + 0.01 * step;
      const auto out = vtlp_warp(amp, alpha, VtlpPolicy{}, 16000);
      for (std::size_t m = 0; m < amp.frames(); ++m) {
        const double ratio = frame_energy(out, m) / frame_energy(amp, m);
        ASSERT_NEAR(ratio, 1.0, 0.02) << "alpha " << alpha << " frame " << m;
      }
    }
  }
}

TEST(Vtlp, FrequencyMapIsMonotoneAndPinsEndpoints) {
  const VtlpPolicy policy;
  for (double alpha : {0.9, 0.95, 1.0, 1.05, 1.1}) {
    EXPECT_DOUBLE_EQ(vtlp_frequency_map(0.0, alpha, policy, 16000), 0.0);
    EXPECT_NEAR(vtlp_frequency_map(8000.0, alpha, policy, 16000), 8000.0, 1e-9);
    double previous = -1.0;
    for (int k = 0; k <= 512; ++k) {
      const double f = 8000.0 * k / 512.0;
      const double warped = vtlp_frequency_map(f, alpha, policy, 16000);
      ASSERT_GE(warped, previous);
      ASSERT_NEAR(vtlp_inverse_map(warped, alpha, policy, 16000), f, 1e-9);
      previous = warped;
    }
  }
}

TEST(Vtlp, RejectsOutOfRangeWarp) {
  const auto amp = smooth_spectrum(513, 2, 1);
  EXPECT_THROW(vtlp_warp(amp, 1.2, VtlpPolicy{}, 16000), InvalidInput);
  EXPECT_THROW(vtlp_warp(amp, 0.5, VtlpPolicy{}, 16000), InvalidInput);
  EXPECT_THROW(vtlp_warp(amp, 1.0, VtlpPolicy{0.9, 1.1, 9000.0}, 16000), InvalidPolicy);
  EXPECT_THROW(vtlp_warp(amp, 1.0, VtlpPolicy{1.1, 0.9, 4800.0}, 16000), InvalidPolicy);
}

TEST(AmplitudeAugment, IdentityParametersReproduceInput) {
  const auto audio = white_noise(9000, 13);
  AmplitudeAugmentParams params;
  params.vtlp.warp_min = params.vtlp.warp_max = 1.0;
  params.mask.freq_mask_count = 0;
  params.mask.time_mask_count = 0;
  for (AmplitudeOp op : {AmplitudeOp::kVtlp, AmplitudeOp::kSpecAug}) {
    RandomSource rng(1);
    const auto out = amplitude_augment(audio, StftConfig{}, op, params, rng);
    ASSERT_EQ(out.size(), audio.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
      ASSERT_NEAR(out.samples[n], audio.samples[n], 1e-6);
    }
  }
}

TEST(AmplitudeAugment, PhaseIsBitIdentical) {
  const auto polar = analyze(white_noise(12000, 14), StftConfig{});
  for (AmplitudeOp op : {AmplitudeOp::kVtlp, AmplitudeOp::kSpecAug}) {
    RandomSource rng(2);
    const auto out = amplitude_augment(polar, op, AmplitudeAugmentParams{}, rng);
    EXPECT_EQ(out.phase, polar.phase);
    EXPECT_NE(out.amplitude, polar.amplitude);
  }
}

TEST(AmplitudeAugment, SeedDeterministic) {
  const auto audio = white_noise(7000, 15);
  for (AmplitudeOp op : {AmplitudeOp::kVtlp, AmplitudeOp::kSpecAug}) {
    RandomSource a(3);
    RandomSource b(3);
    EXPECT_EQ(amplitude_augment(audio, StftConfig{}, op, {}, a).samples,
              amplitude_augment(audio, StftConfig{}, op, {}, b).samples);
  }
}

}  // namespace
}  // namespace phaseperturb
