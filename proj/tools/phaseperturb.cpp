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

// Batch phase-spectrum augmentation tool.
//
//   phaseperturb augment --in DIR --out DIR --policy NAME --seed U64
//                        [--config FILE] [--copies N] [--jobs N]
//   phaseperturb inspect --in FILE --what amplitude|phase
//                        [--policy NAME --seed U64] [--config FILE] --out FILE
//   phaseperturb verify [--in FILE]

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "phaseperturb.hpp"

namespace pp = phaseperturb;

namespace {

pp::AugmentPolicy policy_from(const std::string& config_path,
                              const std::string& policy_name) {
  pp::AugmentPolicy policy =
      config_path.empty() ? pp::AugmentPolicy{} : pp::load_config(config_path);
  if (!policy_name.empty()) policy.name = pp::parse_policy_name(policy_name);
  return policy;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-spectrum speech data augmentation"};
  app.require_subcommand(1);

  std::string in_path;
  std::string out_path;
  std::string policy_name;
  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t copies = 0;
  unsigned jobs = 1;
  std::string what;
  bool corrupt_window = false;

  auto* augment = app.add_subcommand("augment", "Augment every WAV under a directory");
  augment->add_option("--in", in_path, "Input directory")->required();
  augment->add_option("--out", out_path, "Output directory")->required();
  augment->add_option("--policy", policy_name, "Augmentation arm")->required();
  augment->add_option("--seed", seed, "Master seed")->required();
  augment->add_option("--config", config_path, "Policy config file");
  augment->add_option("--copies", copies, "Augmented copies per input");
  augment->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* inspect = app.add_subcommand("inspect", "Dump an amplitude or phase spectrum");
  inspect->add_option("--in", in_path, "Input WAV")->required();
  inspect->add_option("--what", what, "amplitude or phase")
      ->required()
      ->check(CLI::IsMember({"amplitude", "phase"}));
  inspect->add_option("--out", out_path, "Output text file")->required();
  auto* inspect_policy =
      inspect->add_option("--policy", policy_name, "Dump after applying this arm");
  inspect->add_option("--seed", seed, "Seed for --policy")->needs(inspect_policy);
  inspect->add_option("--config", config_path, "Policy config file");

  auto* verify = app.add_subcommand("verify", "Run numerical self-checks");
  verify->add_option("--in", in_path, "WAV to check instead of synthetic noise");
  verify->add_flag("--corrupt-window", corrupt_window,
                   "Negative control: analyse with a damaged window")
      ->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*augment) {
      pp::AugmentPolicy policy = policy_from(config_path, policy_name);
      if (copies > 0) policy.copies_per_input = copies;
      const auto manifest = pp::run_batch(in_path, out_path, policy, seed, jobs);
      std::cout << "augmented " << manifest.inputs - manifest.skipped.size() << "/"
                << manifest.inputs << " inputs into " << manifest.entries.size()
                << " outputs (" << pp::to_string(policy.name) << ")\n";
      return 0;
    }
    if (*inspect) {
      pp::InspectRequest request;
      request.what = pp::parse_spectrum_kind(what);
      if (!config_path.empty()) request.stft = pp::load_config(config_path).stft;
      if (!policy_name.empty()) {
        request.policy = policy_from(config_path, policy_name);
        request.seed = seed;
      }
      const auto dump = pp::inspect(in_path, request, out_path);
      std::cout << "wrote " << pp::to_string(dump.kind) << " " << dump.matrix.bins()
                << "x" << dump.matrix.frames() << " to " << out_path << "\n";
      return 0;
    }
    if (*verify) {
      pp::VerifyOptions options;
      options.corrupt_window = corrupt_window;
      const pp::AudioBuffer audio =
          in_path.empty() ? pp::synth_noise(16000, 16000, options.seed)
                          : pp::read_wav(in_path).audio;
      const auto report = pp::verify(audio, options);
      std::cout << pp::format_report(report);
      if (!report.passed()) {
        for (const auto& c : report.checks) {
          if (!c.passed) std::cerr << "verify: check failed: " << c.name << "\n";
        }
        return 1;
      }
      return 0;
    }
  } catch (const pp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
