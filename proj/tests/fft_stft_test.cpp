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
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "phaseperturb/fft.hpp"
#include "phaseperturb/naive_dft.hpp"
#include "phaseperturb/stft.hpp"
#include "test_util.hpp"

namespace phaseperturb {
namespace {

using testing::white_noise;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
  return err;
}

TEST(NaiveDft, ConstantFrameIsAllDc) {
  const std::vector<double> frame(8, 0.3);
  const auto bins = naive_dft_frame(frame);
  ASSERT_EQ(bins.size(), 5u);
  EXPECT_NEAR(bins[0].real(), 8 * 0.3, 1e-12);
  EXPECT_NEAR(bins[0].imag(), 0.0, 1e-12);
  for (std::size_t k = 1; k < bins.size(); ++k) EXPECT_NEAR(std::abs(bins[k]), 0.0, 1e-12);
}

TEST(NaiveDft, ImpulseIsFlat) {
  std::vector<double> frame(8, 0.0);
  frame[0] = 1.0;
  for (const auto& b : naive_dft_frame(frame)) {
    EXPECT_NEAR(b.real(), 1.0, 1e-12);
    EXPECT_NEAR(b.imag(), 0.0, 1e-12);
  }
}

TEST(Fft, MatchesNaiveDftOnRandomFrame) {
  const auto noise = white_noise(1024, 7, 1.0);
  const FftPlan<double> plan(1024);
  std::vector<std::complex<double>> fast(513);
  std::vector<std::complex<double>> scratch;
  plan.forward_real(noise.samples, fast, scratch);
  const auto slow = naive_dft_frame(noise.samples);
  for (std::size_t k = 0; k < fast.size(); ++k) {
    EXPECT_LE(std::abs(fast[k] - slow[k]), 1e-9) << "bin " << k;
  }
}

TEST(Fft, InverseRealUndoesForward) {
  const auto noise = white_noise(256, 3, 1.0);
  const FftPlan<double> plan(256);
  std::vector<std::complex<double>> half(129);
  std::vector<std::complex<double>> scratch;
  plan.forward_real(noise.samples, half, scratch);
  std::vector<double> back(256);
  plan.inverse_real(half, back, scratch);
  EXPECT_LE(max_abs_diff(back, noise.samples), 1e-13);
}

TEST(Fft, RejectsNonPowerOfTwo) {
  EXPECT_THROW(FftPlan<double>(1000), UnsupportedConfig);
  EXPECT_THROW(FftPlan<double>(0), UnsupportedConfig);
}

TEST(Stft, RejectsBadInput) {
  EXPECT_THROW(stft(AudioBuffer{}, StftConfig{}), InvalidInput);
  const auto audio = white_noise(4096, 1);
  EXPECT_THROW(stft(audio, StftConfig{1000, 250}), UnsupportedConfig);
  EXPECT_THROW(stft(audio, StftConfig{1024, 0}), UnsupportedConfig);
  EXPECT_THROW(stft(audio, StftConfig{1024, 2048}), UnsupportedConfig);
  // Periodic Hann at hop == N has C[n] = 0 at frame boundaries.
  EXPECT_THROW(stft(audio, StftConfig{1024, 1024}), UnsupportedConfig);
  StftConfig two_sided;
  two_sided.one_sided = false;
  EXPECT_THROW(stft(audio, two_sided), UnsupportedConfig);

  AudioBuffer bad = audio;
  bad.samples[10] = NAN;
  EXPECT_THROW(stft(bad, StftConfig{}), InvalidInput);
}

TEST(Stft, ShapeFollowsCenterPaddedFraming) {
  const StftConfig config;
  for (std::size_t len : {1u, 255u, 256u, 500u, 1024u, 4096u, 16000u}) {
    const auto spec = stft(white_noise(len, len), config);
    EXPECT_EQ(spec.bins(), 513u);
    EXPECT_EQ(spec.frames(), 1 + len / 256) << len;
    EXPECT_EQ(spec.original_length, len);
  }
}

TEST(Stft, ZeroSignalGivesZeroSpectrogram) {
  AudioBuffer zeros;
  zeros.samples.assign(4096, 0.0);
  const auto spec = stft(zeros, StftConfig{});
  for (const auto& v : spec.data.flat()) EXPECT_EQ(std::abs(v), 0.0);
  const auto back = istft(spec);
  EXPECT_EQ(back.samples, zeros.samples);
}

// Expected values come from the direct DFT: a bin-centred tone of amplitude A
// under a periodic Hann window of length N has |X[k0]| = A N / 4 = 128 and
// |X[k0 +- 1]| = A N / 8 = 64; all other bins vanish.
TEST(Stft, ToneAt437HzPeaksAtBin28) {
  AudioBuffer tone;
  tone.samples.resize(16000);
  for (std::size_t n = 0; n < tone.samples.size(); ++n) {
    tone.samples[n] = 0.5 * std::sin(2 * std::numbers::pi * 437.5 * n / 16000.0);
  }
  const StftConfig config;
  const auto spec = stft(tone, config);
  const auto window = hann_window(1024);
  std::vector<double> frame(1024);
  for (std::size_t m = 4; m + 4 < spec.frames(); ++m) {
    extract_frame(tone, config, window, m, frame);
    const auto oracle = naive_dft_frame(frame);
    EXPECT_NEAR(std::abs(oracle[28]), 128.0, 1e-9);
    const auto col = spec.data.column(m);
    EXPECT_NEAR(std::abs(col[28]), 128.0, 1e-9);
    EXPECT_NEAR(std::abs(col[27]), 64.0, 1e-9);
    EXPECT_NEAR(std::abs(col[29]), 64.0, 1e-9);
    for (std::size_t k = 0; k < col.size(); ++k) {
      if (k >= 27 && k <= 29) continue;
      EXPECT_GT(20 * std::log10(std::abs(col[28]) / std::abs(col[k])), 20.0)
          << "frame " << m << " bin " << k;
    }
  }
}

TEST(Stft, EveryFrameMatchesNaiveDft) {
  const auto audio = white_noise(5000, 11);
  const StftConfig config;
  const auto spec = stft(audio, config);
  const auto window = hann_window(config.n_fft);
  std::vector<double> frame(config.n_fft);
  double err = 0.0;
  for (std::size_t m = 0; m < spec.frames(); ++m) {
    extract_frame(audio, config, window, m, frame);
    const auto oracle = naive_dft_frame(frame);
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      err = std::max(err, std::abs(spec.data(k, m) - oracle[k]));
    }
  }
  EXPECT_LE(err, 1e-9);
}

TEST(Stft, ParsevalHoldsPerFrame) {
  const auto audio = white_noise(8192, 5);
  const StftConfig config;
  const auto spec = stft(audio, config);
  const auto window = hann_window(config.n_fft);
  std::vector<double> frame(config.n_fft);
  for (std::size_t m = 0; m < spec.frames(); ++m) {
    extract_frame(audio, config, window, m, frame);
    double time_energy = 0.0;
    for (double x : frame) time_energy += x * x;
    const auto col = spec.data.column(m);
    double freq = std::norm(col[0]) + std::norm(col[512]);
    for (std::size_t k = 1; k < 512; ++k) freq += 2 * std::norm(col[k]);
    freq /= 1024.0;
    EXPECT_NEAR(freq / time_energy, 1.0, 1e-6) << "frame " << m;
  }
}

TEST(Istft, RoundTripOnWhiteNoise) {
  const auto audio = white_noise(16000, 99);
  const auto back = istft(stft(audio, StftConfig{}));
  ASSERT_EQ(back.size(), audio.size());
  EXPECT_LE(max_abs_diff(back.samples, audio.samples), 1e-6);
}

TEST(Istft, RoundTripOnInputShorterThanOneFrame) {
  for (std::size_t len : {1u, 2u, 3u, 100u, 500u, 1023u}) {
    const auto audio = white_noise(len, 1000 + len);
    const auto back = istft(stft(audio, StftConfig{}));
    ASSERT_EQ(back.size(), len);
    EXPECT_LE(max_abs_diff(back.samples, audio.samples), 1e-6) << len;
  }
}

TEST(Istft, RoundTripAcrossHops) {
  const auto audio = white_noise(6000, 17);
  for (std::size_t hop : {64u, 128u, 256u, 300u, 512u}) {
    const auto back = istft(stft(audio, StftConfig{1024, hop}));
    EXPECT_LE(max_abs_diff(back.samples, audio.samples), 1e-6) << hop;
  }
  const auto small = istft(stft(audio, StftConfig{16, 4}));
  EXPECT_LE(max_abs_diff(small.samples, audio.samples), 1e-6);
}

TEST(Istft, RejectsInconsistentDimensions) {
  auto spec = stft(white_noise(4096, 2), StftConfig{});
  auto wrong_length = spec;
  wrong_length.original_length = 9000;
  EXPECT_THROW(istft(wrong_length), InvalidInput);
  auto wrong_bins = spec;
  wrong_bins.data = Matrix<Complex>(100, spec.frames());
  EXPECT_THROW(istft(wrong_bins), InvalidInput);
}

TEST(Stft, IsDeterministic) {
  const auto audio = white_noise(7000, 4);
  const auto a = stft(audio, StftConfig{});
  const auto b = stft(audio, StftConfig{});
  EXPECT_TRUE(a.data == b.data);
  EXPECT_EQ(istft(a).samples, istft(b).samples);
}

}  // namespace
}  // namespace phaseperturb
