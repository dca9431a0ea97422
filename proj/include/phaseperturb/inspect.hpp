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

#include <cstdint>
#include <filesystem>
#include <optional>

#include "phaseperturb/matrix_dump.hpp"
#include "phaseperturb/policy.hpp"
#include "phaseperturb/polar.hpp"
#include "phaseperturb/random.hpp"
#include "phaseperturb/wav.hpp"

namespace phaseperturb {

struct InspectRequest {
  SpectrumKind what = SpectrumKind::kPhase;
  StftConfig stft;
  // When set, the dump shows the spectrum after this policy was applied with
  // a RandomSource seeded directly from `seed`.
  std::optional<AugmentPolicy> policy;
  std::uint64_t seed = 0;
};

inline MatrixDump inspect_audio(const AudioBuffer& audio,
                                const InspectRequest& request) {
  const StftConfig& config = request.policy ? request.policy->stft : request.stft;
  PolarSpectrum polar = analyze(audio, config);
  if (request.policy) {
    RandomSource rng(request.seed);
    polar = augment_spectrum(polar, *request.policy, rng);
  }
  MatrixDump dump;
  dump.kind = request.what;
  dump.n_fft = config.n_fft;
  dump.hop = config.hop;
  dump.sample_rate = audio.sample_rate;
  dump.matrix = request.what == SpectrumKind::kAmplitude ? polar.amplitude.data
                                                          : polar.phase.data;
  return dump;
}

inline MatrixDump inspect(const std::filesystem::path& file,
                          const InspectRequest& request,
                          const std::filesystem::path& out_path) {
  const WavData input = read_wav(file);
  MatrixDump dump = inspect_audio(input.audio, request);
  dump_matrix(out_path, dump);
  return dump;
}

}  // namespace phaseperturb
