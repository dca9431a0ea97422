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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "phaseperturb/errors.hpp"
#include "phaseperturb/policy.hpp"

namespace phaseperturb {

namespace config_detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::size_t to_size(std::string_view key, std::string_view value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" +
                      std::string(value) + "'");
  }
  return out;
}

inline double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out)) {
    throw ConfigError(std::string(key) + ": expected a number, got '" +
                      std::string(value) + "'");
  }
  return out;
}

inline bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" +
                    std::string(value) + "'");
}

inline std::string_view to_string(PhaseOp op) {
  switch (op) {
    case PhaseOp::kRandomize: return "randomize";
    case PhaseOp::kFreqMask: return "freq_mask";
    case PhaseOp::kTimeMask: return "time_mask";
  }
  return "?";
}

inline std::vector<PhaseOp> to_order(std::string_view key, std::string_view value) {
  std::vector<PhaseOp> order;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto token = trim(value.substr(0, comma));
    if (token == "randomize") {
      order.push_back(PhaseOp::kRandomize);
    } else if (token == "freq_mask") {
      order.push_back(PhaseOp::kFreqMask);
    } else if (token == "time_mask") {
      order.push_back(PhaseOp::kTimeMask);
    } else {
      throw ConfigError(std::string(key) + ": unknown phase operation '" +
                        std::string(token) + "'");
    }
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return order;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

using Setter = std::function<void(AugmentPolicy&, std::string_view key,
                                  std::string_view value)>;

inline const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"policy.name",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         try {
           p.name = parse_policy_name(v);
         } catch (const InvalidPolicy& e) {
           throw ConfigError(std::string(k) + ": " + e.what());
         }
       }},
      {"policy.copies_per_input",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.copies_per_input = to_size(k, v);
       }},
      {"policy.static_angle",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.static_angle = to_double(k, v);
       }},
      {"stft.n_fft",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.stft.n_fft = to_size(k, v);
       }},
      {"stft.hop",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.stft.hop = to_size(k, v);
       }},
      {"stft.window",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         if (v != "hann" && v != "hanning") {
           throw ConfigError(std::string(k) + ": only 'hann' is supported");
         }
         p.stft.window = WindowKind::kHann;
       }},
      {"stft.one_sided",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.stft.one_sided = to_bool(k, v);
       }},
      {"phase.freq_mask_max",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.mask.freq_mask_max = to_size(k, v);
       }},
      {"phase.freq_mask_count",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.mask.freq_mask_count = to_size(k, v);
       }},
      {"phase.time_mask_max",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.mask.time_mask_max = to_size(k, v);
       }},
      {"phase.time_mask_count",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.mask.time_mask_count = to_size(k, v);
       }},
      {"phase.time_mask_ratio_cap",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.mask.time_mask_ratio_cap = to_double(k, v);
       }},
      {"phase.sigma",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.rand.sigma = to_double(k, v);
       }},
      {"phase.order",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.phase_order = to_order(k, v);
       }},
      {"vtlp.warp_min",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.vtlp.warp_min = to_double(k, v);
       }},
      {"vtlp.warp_max",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.vtlp.warp_max = to_double(k, v);
       }},
      {"vtlp.boundary_freq",
       [](AugmentPolicy& p, std::string_view k, std::string_view v) {
         p.vtlp.boundary_freq = to_double(k, v);
       }},
  };
  return table;
}

}  // namespace config_detail

// Range checks that do not depend on the input audio.
inline void validate(const AugmentPolicy& policy) {
  try {
    validate(policy.stft);
    validate(policy.mask);
    validate(policy.rand);
    validate(policy.vtlp);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (policy.mask.freq_mask_max > policy.stft.bins()) {
    throw ConfigError("phase.freq_mask_max exceeds the number of frequency bins");
  }
  if (policy.copies_per_input < 1) {
    throw ConfigError("policy.copies_per_input must be >= 1");
  }
  if (!std::isfinite(policy.static_angle)) {
    throw ConfigError("policy.static_angle must be finite");
  }
}

// Flat `section.key = value` text; '#' starts a comment line. Keys not present
// keep their defaults (1024/256 Hann one-sided STFT, F=10, m_F=2, T=45, m_T=2,
// p=0.1, sigma=0.1).
inline AugmentPolicy parse_config(std::string_view text) {
  AugmentPolicy policy;
  const auto& table = config_detail::setters();
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto newline = text.find('\n');
    const auto line = config_detail::trim(text.substr(0, newline));
    text.remove_prefix(newline == std::string_view::npos ? text.size() : newline + 1);
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = config_detail::trim(line.substr(0, eq));
    const auto value = config_detail::trim(line.substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end()) {
      throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
    it->second(policy, key, value);
  }
  if (!(policy.mask.time_mask_ratio_cap >= 0.0 && policy.mask.time_mask_ratio_cap <= 1.0)) {
    throw ConfigError("phase.time_mask_ratio_cap must be in [0, 1]");
  }
  if (policy.rand.sigma < 0.0) throw ConfigError("phase.sigma must be >= 0");
  validate(policy);
  return policy;
}

inline AugmentPolicy load_config(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << file.rdbuf();
  return parse_config(ss.str());
}

// Canonical form: every key, fixed order, doubles at full precision.
inline std::string serialize_config(const AugmentPolicy& policy) {
  using config_detail::format_double;
  std::string order;
  for (PhaseOp op : policy.phase_order) {
    if (!order.empty()) order += ',';
    order += config_detail::to_string(op);
  }
  std::ostringstream out;
  out << "policy.name = " << to_string(policy.name) << '\n'
      << "policy.copies_per_input = " << policy.copies_per_input << '\n'
      << "policy.static_angle = " << format_double(policy.static_angle) << '\n'
      << "stft.n_fft = " << policy.stft.n_fft << '\n'
      << "stft.hop = " << policy.stft.hop << '\n'
      << "stft.window = hann\n"
      << "stft.one_sided = " << (policy.stft.one_sided ? "true" : "false") << '\n'
      << "phase.freq_mask_max = " << policy.mask.freq_mask_max << '\n'
      << "phase.freq_mask_count = " << policy.mask.freq_mask_count << '\n'
      << "phase.time_mask_max = " << policy.mask.time_mask_max << '\n'
      << "phase.time_mask_count = " << policy.mask.time_mask_count << '\n'
      << "phase.time_mask_ratio_cap = " << format_double(policy.mask.time_mask_ratio_cap) << '\n'
      << "phase.sigma = " << format_double(policy.rand.sigma) << '\n'
      << "phase.order = " << order << '\n'
      << "vtlp.warp_min = " << format_double(policy.vtlp.warp_min) << '\n'
      << "vtlp.warp_max = " << format_double(policy.vtlp.warp_max) << '\n'
      << "vtlp.boundary_freq = " << format_double(policy.vtlp.boundary_freq) << '\n';
  return out.str();
}

}  // namespace phaseperturb
