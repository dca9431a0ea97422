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
#include <atomic>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "phaseperturb/config.hpp"
#include "phaseperturb/errors.hpp"
#include "phaseperturb/log.hpp"
#include "phaseperturb/policy.hpp"
#include "phaseperturb/random.hpp"
#include "phaseperturb/wav.hpp"

namespace phaseperturb {

// Seed for one (input, copy) pair. Depends only on the master seed, the
// input's path relative to the batch root ('/'-separated) and the copy index,
// never on processing order.
inline std::uint64_t derive_file_seed(std::uint64_t master_seed,
                                      std::string_view relative_path,
                                      std::uint64_t copy_index) {
  std::uint64_t state = master_seed;
  state = splitmix64(state) ^ fnv1a64(relative_path);
  state = splitmix64(state) ^ copy_index;
  return splitmix64(state);
}

struct ManifestEntry {
  std::string input;   // relative to the input root
  std::string output;  // relative to the output root
  std::string policy;
  std::uint64_t master_seed = 0;
  std::uint64_t file_seed = 0;
  std::size_t clip_count = 0;
  double input_duration = 0.0;   // seconds
  double output_duration = 0.0;  // seconds
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::vector<std::string> skipped;
  std::size_t inputs = 0;
};

inline constexpr const char* kManifestFileName = "manifest.tsv";
inline constexpr const char* kManifestHeader =
    "input\toutput\tpolicy\tmaster_seed\tfile_seed\tclip_count\t"
    "input_duration\toutput_duration";

inline std::string format_manifest(const Manifest& manifest) {
  std::string out = kManifestHeader;
  out += '\n';
  char buf[64];
  for (const auto& e : manifest.entries) {
    out += e.input + '\t' + e.output + '\t' + e.policy + '\t' +
           std::to_string(e.master_seed) + '\t' + std::to_string(e.file_seed) +
           '\t' + std::to_string(e.clip_count) + '\t';
    std::snprintf(buf, sizeof(buf), "%.6f\t%.6f\n", e.input_duration,
                  e.output_duration);
    out += buf;
  }
  out += "# inputs=" + std::to_string(manifest.inputs) +
         " processed=" + std::to_string(manifest.inputs - manifest.skipped.size()) +
         " skipped=" + std::to_string(manifest.skipped.size()) + '\n';
  return out;
}

namespace batch_detail {

inline bool has_wav_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".wav";
}

inline bool is_within(const std::filesystem::path& path,
                      const std::filesystem::path& root) {
  auto rel = path.lexically_relative(root);
  return !rel.empty() && *rel.begin() != "..";
}

// Relative paths of every .wav below `root`, sorted.
inline std::vector<std::string> find_wavs(const std::filesystem::path& root,
                                          const std::filesystem::path& exclude) {
  std::vector<std::string> found;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file() || !has_wav_extension(entry.path())) continue;
    if (!exclude.empty() && is_within(entry.path(), exclude)) continue;
    found.push_back(entry.path().lexically_relative(root).generic_string());
  }
  std::sort(found.begin(), found.end());
  return found;
}

inline std::string output_name(const std::string& relative_input,
                               std::string_view policy, std::size_t copy) {
  const std::filesystem::path in(relative_input);
  std::filesystem::path out = in.parent_path();
  out /= in.stem().string() + "." + std::string(policy) + "." +
         std::to_string(copy) + ".wav";
  return out.generic_string();
}

struct FileResult {
  std::vector<ManifestEntry> entries;
  bool skipped = false;
};

inline FileResult process_file(const std::filesystem::path& in_dir,
                               const std::filesystem::path& out_dir,
                               const std::string& relative,
                               const AugmentPolicy& policy,
                               std::uint64_t master_seed) {
  FileResult result;
  WavData input;
  try {
    input = read_wav(in_dir / relative);
  } catch (const Error& e) {
    log::error("skipping ", relative, ": ", e.what());
    result.skipped = true;
    return result;
  }
  const std::string_view policy_name = to_string(policy.name);
  for (std::size_t copy = 0; copy < policy.copies_per_input; ++copy) {
    ManifestEntry entry;
    entry.input = relative;
    entry.output = output_name(relative, policy_name, copy);
    entry.policy = std::string(policy_name);
    entry.master_seed = master_seed;
    entry.file_seed = derive_file_seed(master_seed, relative, copy);

    RandomSource rng(entry.file_seed);
    const AudioBuffer augmented = augment(input.audio, policy, rng);

    const auto target = out_dir / entry.output;
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
    entry.clip_count = write_wav(target, augmented, input.meta.format);
    if (entry.clip_count > 0) {
      log::info(entry.output, ": clipped ", entry.clip_count, " samples");
    }
    entry.input_duration = input.audio.duration_seconds();
    entry.output_duration = augmented.duration_seconds();
    log::debug("wrote ", entry.output);
    result.entries.push_back(std::move(entry));
  }
  return result;
}

}  // namespace batch_detail

// Augments every .wav below in_dir (recursively) into out_dir, mirroring the
// directory layout, and writes out_dir/manifest.tsv. Files are spread over
// `jobs` workers; output bytes do not depend on the worker count.
inline Manifest run_batch(const std::filesystem::path& in_dir,
                          const std::filesystem::path& out_dir,
                          const AugmentPolicy& policy, std::uint64_t master_seed,
                          unsigned jobs = 1) {
  if (!std::filesystem::is_directory(in_dir)) {
    throw InvalidInput("input directory " + in_dir.string() + " does not exist");
  }
  validate(policy);
  std::filesystem::create_directories(out_dir);
  const auto in_root = std::filesystem::weakly_canonical(in_dir);
  const auto out_root = std::filesystem::weakly_canonical(out_dir);
  const auto files = batch_detail::find_wavs(
      in_root, out_root == in_root ? std::filesystem::path() : out_root);
  if (files.empty()) throw EmptyInput("no .wav files under " + in_dir.string());

  std::vector<batch_detail::FileResult> results(files.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(files.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        results[i] = batch_detail::process_file(in_root, out_root, files[i],
                                                policy, master_seed);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned workers =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  Manifest manifest;
  manifest.inputs = files.size();
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (results[i].skipped) {
      manifest.skipped.push_back(files[i]);
      continue;
    }
    for (auto& e : results[i].entries) manifest.entries.push_back(std::move(e));
  }

  const auto manifest_path = out_root / kManifestFileName;
  std::ofstream file(manifest_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + manifest_path.string());
  file << format_manifest(manifest);
  file.close();
  if (!file) throw IoError("error writing " + manifest_path.string());
  log::info("processed ", files.size() - manifest.skipped.size(), " of ",
            files.size(), " inputs, ", manifest.entries.size(), " outputs");
  return manifest;
}

}  // namespace phaseperturb
