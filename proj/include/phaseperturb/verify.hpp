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
#include <cstdio>
#include <string>
#include <vector>

#include "phaseperturb/amplitude_augment.hpp"
#include "phaseperturb/naive_dft.hpp"
#include "phaseperturb/phase_augment.hpp"
#include "phaseperturb/polar.hpp"
#include "phaseperturb/random.hpp"
#include "phaseperturb/stft.hpp"

namespace phaseperturb {

struct VerifyCheck {
  std::string name;
  double value = 0.0;      // measured error (0 or 1 for exact checks)
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.passed; });
  }
};

struct VerifyOptions {
  StftConfig stft;
  // Negative control: analyse with a damaged window while synthesis and the
  // reference DFT keep the correct one, so the reconstruction, oracle and
  // Parseval checks fail.
  bool corrupt_window = false;
  std::uint64_t seed = 20240917;
};

// Deterministic white noise in [-0.5, 0.5).
inline AudioBuffer synth_noise(std::size_t length, int sample_rate,
                               std::uint64_t seed) {
  RandomSource rng(seed);
  AudioBuffer audio;
  audio.sample_rate = sample_rate;
  audio.samples.resize(length);
  for (double& x : audio.samples) x = rng.uniform01() - 0.5;
  return audio;
}

inline std::vector<double> corrupted_window(std::size_t n) {
  auto w = hann_window(n);
  for (std::size_t i = 0; i < n; i += 7) w[i] *= 1.1;
  return w;
}

inline VerifyReport verify(const AudioBuffer& audio, const VerifyOptions& options = {}) {
  VerifyReport report;
  auto record = [&](std::string name, double value, double tolerance) {
    report.checks.push_back({std::move(name), value, tolerance,
                             std::isfinite(value) && value <= tolerance});
  };

  const StftConfig& config = options.stft;
  const auto reference = make_window(config);
  const auto analysis =
      options.corrupt_window ? corrupted_window(config.n_fft) : reference;
  const ComplexSpectrogram spec = stft_with_window(audio, config, analysis);

  {
    const AudioBuffer back = istft_with_window(spec, reference);
    double err = 0.0;
    for (std::size_t n = 0; n < audio.size(); ++n) {
      err = std::max(err, std::abs(back.samples[n] - audio.samples[n]));
    }
    record("stft_round_trip", err, 1e-6);
  }

  {
    double dft_err = 0.0;
    double parseval_err = 0.0;
    std::vector<double> frame(config.n_fft);
    const std::size_t step = std::max<std::size_t>(1, spec.frames() / 16);
    for (std::size_t m = 0; m < spec.frames(); m += step) {
      extract_frame(audio, config, reference, m, frame);
      const auto expected = naive_dft_frame(frame);
      const auto col = spec.data.column(m);
      double time_energy = 0.0;
      for (double x : frame) time_energy += x * x;
      double freq_energy = 0.0;
      for (std::size_t k = 0; k < col.size(); ++k) {
        dft_err = std::max(dft_err, std::abs(col[k] - expected[k]));
        const double e = std::norm(col[k]);
        freq_energy += (k == 0 || k + 1 == col.size()) ? e : 2.0 * e;
      }
      freq_energy /= static_cast<double>(config.n_fft);
      if (time_energy > 0.0) {
        parseval_err = std::max(parseval_err,
                                std::abs(freq_energy - time_energy) / time_energy);
      }
    }
    record("naive_dft_oracle", dft_err, 1e-9);
    record("parseval", parseval_err, 1e-6);
  }

  auto [amplitude, phase] = decompose(spec);
  {
    const auto back = recompose(amplitude, phase, config, spec.original_length,
                                spec.sample_rate);
    double err = 0.0;
    for (std::size_t i = 0; i < spec.data.size(); ++i) {
      err = std::max(err, std::abs(back.data.flat()[i] - spec.data.flat()[i]));
    }
    record("polar_round_trip", err, 1e-12);
  }

  const PolarSpectrum polar{amplitude, phase, config, spec.original_length,
                            spec.sample_rate};
  {
    RandomSource rng(options.seed);
    const auto perturbed = phase_perturb(polar, PhasePerturbationPolicy{}, rng);
    record("phase_only_invariance",
           perturbed.amplitude == polar.amplitude ? 0.0 : 1.0, 0.0);
  }
  {
    RandomSource rng(options.seed);
    const auto masked =
        amplitude_augment(polar, AmplitudeOp::kSpecAug, AmplitudeAugmentParams{}, rng);
    record("amplitude_only_invariance", masked.phase == polar.phase ? 0.0 : 1.0,
           0.0);
  }
  {
    RandomSource a(options.seed);
    RandomSource b(options.seed);
    const auto first = synthesize(phase_perturb(polar, PhasePerturbationPolicy{}, a));
    const auto second = synthesize(phase_perturb(polar, PhasePerturbationPolicy{}, b));
    record("seed_determinism", first.samples == second.samples ? 0.0 : 1.0, 0.0);
  }
  return report;
}

inline std::string format_report(const VerifyReport& report) {
  std::string out;
  char buf[160];
  for (const auto& c : report.checks) {
    std::snprintf(buf, sizeof(buf), "%-26s %s  max_error=%.3e  tolerance=%.1e\n",
                  c.name.c_str(), c.passed ? "PASS" : "FAIL", c.value, c.tolerance);
    out += buf;
  }
  out += report.passed() ? "verify: all checks passed\n" : "verify: FAILED\n";
  return out;
}

}  // namespace phaseperturb
