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
#include <utility>

#include "phaseperturb/matrix.hpp"
#include "phaseperturb/stft.hpp"

namespace phaseperturb {

// |S[k,m]|, all entries >= 0.
struct AmplitudeSpectrum {
  Matrix<double> data;

  std::size_t bins() const noexcept { return data.bins(); }
  std::size_t frames() const noexcept { return data.frames(); }
  friend bool operator==(const AmplitudeSpectrum&,
                         const AmplitudeSpectrum&) = default;
};

// Phase angles in radians. Freshly decomposed values lie in [-pi, pi];
// perturbed values may leave that range and are wrapped by recompose().
struct PhaseSpectrum {
  Matrix<double> data;

  std::size_t bins() const noexcept { return data.bins(); }
  std::size_t frames() const noexcept { return data.frames(); }
  friend bool operator==(const PhaseSpectrum&, const PhaseSpectrum&) = default;
};

// Polar form of a spectrogram together with what is needed to resynthesise it.
struct PolarSpectrum {
  AmplitudeSpectrum amplitude;
  PhaseSpectrum phase;
  StftConfig config;
  std::size_t original_length = 0;
  int sample_rate = 16000;
};

// Four-quadrant decomposition. 0 + 0j maps to amplitude 0, phase 0.
inline std::pair<AmplitudeSpectrum, PhaseSpectrum> decompose(
    const ComplexSpectrogram& spec) {
  AmplitudeSpectrum amplitude{Matrix<double>(spec.bins(), spec.frames())};
  PhaseSpectrum phase{Matrix<double>(spec.bins(), spec.frames())};
  auto src = spec.data.flat();
  auto amp = amplitude.data.flat();
  auto ph = phase.data.flat();
  for (std::size_t i = 0; i < src.size(); ++i) {
    amp[i] = std::abs(src[i]);
    ph[i] = std::atan2(src[i].imag(), src[i].real());
  }
  return {std::move(amplitude), std::move(phase)};
}

inline ComplexSpectrogram recompose(const AmplitudeSpectrum& amplitude,
                                    const PhaseSpectrum& phase,
                                    const StftConfig& config,
                                    std::size_t original_length,
                                    int sample_rate = 16000) {
  require_same_shape(amplitude.data, phase.data, "recompose");
  ComplexSpectrogram spec{
      Matrix<Complex>(amplitude.bins(), amplitude.frames()), config,
      original_length, sample_rate};
  auto amp = amplitude.data.flat();
  auto ph = phase.data.flat();
  auto out = spec.data.flat();
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if (!(amp[i] >= 0.0)) {
      throw InvalidInput("recompose: negative or NaN amplitude at flat index " +
                         std::to_string(i));
    }
    out[i] = Complex(amp[i] * std::cos(ph[i]), amp[i] * std::sin(ph[i]));
  }
  return spec;
}

inline PolarSpectrum analyze(const AudioBuffer& audio, const StftConfig& config) {
  auto spec = stft(audio, config);
  auto [amplitude, phase] = decompose(spec);
  return {std::move(amplitude), std::move(phase), config, spec.original_length,
          spec.sample_rate};
}

inline ComplexSpectrogram recompose(const PolarSpectrum& polar) {
  return recompose(polar.amplitude, polar.phase, polar.config,
                   polar.original_length, polar.sample_rate);
}

inline AudioBuffer synthesize(const PolarSpectrum& polar) {
  return istft(recompose(polar));
}

}  // namespace phaseperturb
