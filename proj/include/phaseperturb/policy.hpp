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

#include <array>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phaseperturb/amplitude_augment.hpp"
#include "phaseperturb/errors.hpp"
#include "phaseperturb/phase_augment.hpp"
#include "phaseperturb/polar.hpp"
#include "phaseperturb/random.hpp"
#include "phaseperturb/stft.hpp"

namespace phaseperturb {

// The seven augmentation arms.
enum class PolicyName {
  kNone,
  kPhaseAugStatic,
  kVtlp,
  kPhasePerturbation,
  kPhasePerturbationVtlp,
  kSpecAug,
  kPhasePerturbationSpecAug,
};

inline constexpr std::array<std::pair<PolicyName, std::string_view>, 7>
    kPolicyNames = {{
        {PolicyName::kNone, "none"},
        {PolicyName::kPhaseAugStatic, "phaseaug_static"},
        {PolicyName::kVtlp, "vtlp"},
        {PolicyName::kPhasePerturbation, "phase_perturbation"},
        {PolicyName::kPhasePerturbationVtlp, "phase_perturbation+vtlp"},
        {PolicyName::kSpecAug, "specaug"},
        {PolicyName::kPhasePerturbationSpecAug, "phase_perturbation+specaug"},
    }};

inline std::string_view to_string(PolicyName name) {
  for (const auto& [value, text] : kPolicyNames) {
    if (value == name) return text;
  }
  return "?";
}

inline PolicyName parse_policy_name(std::string_view text) {
  for (const auto& [value, name] : kPolicyNames) {
    if (name == text) return value;
  }
  throw InvalidPolicy("unknown policy '" + std::string(text) + "'");
}

struct AugmentPolicy {
  PolicyName name = PolicyName::kPhasePerturbation;
  StftConfig stft;
  MaskPolicy mask;
  PhaseRandomizationPolicy rand;
  std::vector<PhaseOp> phase_order = {PhaseOp::kRandomize, PhaseOp::kFreqMask,
                                      PhaseOp::kTimeMask};
  VtlpPolicy vtlp;
  double static_angle = std::numbers::pi / 4;
  std::size_t copies_per_input = 1;

  friend bool operator==(const AugmentPolicy&, const AugmentPolicy&) = default;

  PhasePerturbationPolicy phase_policy() const { return {mask, rand, phase_order}; }
  AmplitudeAugmentParams amplitude_params() const { return {mask, vtlp}; }
};

inline bool uses_phase_perturbation(PolicyName name) {
  return name == PolicyName::kPhasePerturbation ||
         name == PolicyName::kPhasePerturbationVtlp ||
         name == PolicyName::kPhasePerturbationSpecAug;
}

// Applies one arm to a polar spectrum. Composite arms run the amplitude
// operation first and the phase operations second, drawing from `rng` in that
// order, within a single analysis/synthesis pass.
inline PolarSpectrum augment_spectrum(const PolarSpectrum& polar,
                                      const AugmentPolicy& policy,
                                      RandomSource& rng) {
  switch (policy.name) {
    case PolicyName::kNone:
      return polar;
    case PolicyName::kPhaseAugStatic: {
      PolarSpectrum out = polar;
      out.phase = rotate_phase_static(polar.phase, policy.static_angle);
      return out;
    }
    case PolicyName::kVtlp:
      return amplitude_augment(polar, AmplitudeOp::kVtlp, policy.amplitude_params(), rng);
    case PolicyName::kSpecAug:
      return amplitude_augment(polar, AmplitudeOp::kSpecAug, policy.amplitude_params(), rng);
    case PolicyName::kPhasePerturbation:
      return phase_perturb(polar, policy.phase_policy(), rng);
    case PolicyName::kPhasePerturbationVtlp:
      return phase_perturb(
          amplitude_augment(polar, AmplitudeOp::kVtlp, policy.amplitude_params(), rng),
          policy.phase_policy(), rng);
    case PolicyName::kPhasePerturbationSpecAug:
      return phase_perturb(
          amplitude_augment(polar, AmplitudeOp::kSpecAug, policy.amplitude_params(), rng),
          policy.phase_policy(), rng);
  }
  throw InvalidPolicy("unhandled policy");
}

// Every arm, `none` included, goes through analyze -> polar -> synthesize so
// all outputs share the same resynthesis path.
inline AudioBuffer augment(const AudioBuffer& audio, const AugmentPolicy& policy,
                           RandomSource& rng) {
  return synthesize(augment_spectrum(analyze(audio, policy.stft), policy, rng));
}

}  // namespace phaseperturb
