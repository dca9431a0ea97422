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

#include <gtest/gtest.h>

#include "phaseperturb/polar.hpp"
#include "test_util.hpp"

namespace phaseperturb {
namespace {

ComplexSpectrogram single_bin(Complex value) {
  ComplexSpectrogram spec;
  spec.data = Matrix<Complex>(1, 1, value);
  return spec;
}

ComplexSpectrogram random_spectrogram(std::size_t bins, std::size_t frames,
                                      std::uint64_t seed) {
  RandomSource rng(seed);
  ComplexSpectrogram spec;
  spec.data = Matrix<Complex>(bins, frames);
  for (auto& v : spec.data.flat()) {
    v = Complex(rng.uniform_real(-3, 3), rng.uniform_real(-3, 3));
  }
  return spec;
}

TEST(Decompose, ZeroHasZeroPhase) {
  const auto [amp, phase] = decompose(single_bin({0.0, 0.0}));
  EXPECT_EQ(amp.data(0, 0), 0.0);
  EXPECT_EQ(phase.data(0, 0), 0.0);
}

TEST(Decompose, NegativeRealHasPhasePi) {
  const auto [amp, phase] = decompose(single_bin({-1.0, 0.0}));
  EXPECT_EQ(amp.data(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(phase.data(0, 0), std::numbers::pi);
}

TEST(Decompose, CoversAllFourQuadrants) {
  const auto [a1, p1] = decompose(single_bin({-1.0, -1.0}));
  EXPECT_DOUBLE_EQ(p1.data(0, 0), -3 * std::numbers::pi / 4);
  const auto [a2, p2] = decompose(single_bin({-1.0, 1.0}));
  EXPECT_DOUBLE_EQ(p2.data(0, 0), 3 * std::numbers::pi / 4);
  EXPECT_DOUBLE_EQ(a2.data(0, 0), std::sqrt(2.0));
}

TEST(Recompose, UnitAmplitudeZeroPhase) {
  const AmplitudeSpectrum amp{Matrix<double>(3, 4, 1.0)};
  const PhaseSpectrum phase{Matrix<double>(3, 4, 0.0)};
  const auto spec = recompose(amp, phase, StftConfig{}, 0);
  for (const auto& v : spec.data.flat()) EXPECT_EQ(v, Complex(1.0, 0.0));
}

TEST(Recompose, PhaseIsPeriodic) {
  const AmplitudeSpectrum amp{Matrix<double>(1, 1, 0.7)};
  const auto a = recompose(amp, PhaseSpectrum{Matrix<double>(1, 1, 0.3)}, {}, 0);
  const auto b = recompose(
      amp, PhaseSpectrum{Matrix<double>(1, 1, 2 * std::numbers::pi + 0.3)}, {}, 0);
  EXPECT_LE(std::abs(a.data(0, 0) - b.data(0, 0)), 1e-12);
}

TEST(Recompose, RejectsBadInput) {
  const AmplitudeSpectrum amp{Matrix<double>(2, 2, 1.0)};
  EXPECT_THROW(recompose(amp, PhaseSpectrum{Matrix<double>(2, 3)}, {}, 0),
               InvalidInput);
  AmplitudeSpectrum negative = amp;
  negative.data(1, 1) = -0.5;
  EXPECT_THROW(recompose(negative, PhaseSpectrum{Matrix<double>(2, 2)}, {}, 0),
               InvalidInput);
}

TEST(Polar, RecomposeOfDecomposeIsIdentity) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto spec = random_spectrogram(33, 17, seed);
    const auto [amp, phase] = decompose(spec);
    for (double v : phase.data.flat()) {
      EXPECT_GE(v, -std::numbers::pi);
      EXPECT_LE(v, std::numbers::pi);
    }
    const auto back = recompose(amp, phase, {}, 0);
    for (std::size_t i = 0; i < spec.data.size(); ++i) {
      ASSERT_LE(std::abs(back.data.flat()[i] - spec.data.flat()[i]), 1e-12);
    }
  }
}

TEST(Polar, DecomposeOfRecomposeIsIdentity) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const AmplitudeSpectrum amp{testing::random_matrix(21, 9, seed, 0.01, 4.0)};
    const PhaseSpectrum phase{
        testing::random_matrix(21, 9, seed + 100, -std::numbers::pi + 1e-9,
                               std::numbers::pi - 1e-9)};
    const auto [amp2, phase2] = decompose(recompose(amp, phase, {}, 0));
    for (std::size_t i = 0; i < amp.data.size(); ++i) {
      ASSERT_LE(std::abs(amp2.data.flat()[i] - amp.data.flat()[i]), 1e-12);
      ASSERT_LE(std::abs(phase2.data.flat()[i] - phase.data.flat()[i]), 1e-12);
    }
  }
}

TEST(Polar, AnalyzeSynthesizeRoundTrip) {
  const auto audio = testing::white_noise(9000, 8);
  const auto polar = analyze(audio, StftConfig{});
  EXPECT_EQ(polar.original_length, audio.size());
  const auto back = synthesize(polar);
  for (std::size_t n = 0; n < audio.size(); ++n) {
    ASSERT_NEAR(back.samples[n], audio.samples[n], 1e-6);
  }
}

}  // namespace
}  // namespace phaseperturb
