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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "phaseperturb/errors.hpp"
#include "phaseperturb/matrix.hpp"

namespace phaseperturb {

enum class SpectrumKind { kAmplitude, kPhase };

inline std::string_view to_string(SpectrumKind kind) {
  return kind == SpectrumKind::kAmplitude ? "amplitude" : "phase";
}

inline SpectrumKind parse_spectrum_kind(std::string_view text) {
  if (text == "amplitude") return SpectrumKind::kAmplitude;
  if (text == "phase") return SpectrumKind::kPhase;
  throw InvalidInput("unknown spectrum kind '" + std::string(text) + "'");
}

struct MatrixDump {
  SpectrumKind kind = SpectrumKind::kAmplitude;
  std::size_t n_fft = 0;
  std::size_t hop = 0;
  int sample_rate = 0;
  Matrix<double> matrix;
};

// Text layout:
//   #<kind> <bins> <frames> <n_fft> <hop> <sample_rate>
//   one line per frequency bin, <frames> values in %.8e, space separated.
inline std::string format_matrix(const MatrixDump& dump) {
  std::string out;
  out += '#';
  out += to_string(dump.kind);
  out += ' ' + std::to_string(dump.matrix.bins()) + ' ' +
         std::to_string(dump.matrix.frames()) + ' ' + std::to_string(dump.n_fft) +
         ' ' + std::to_string(dump.hop) + ' ' + std::to_string(dump.sample_rate) +
         '\n';
  char buf[32];
  for (std::size_t k = 0; k < dump.matrix.bins(); ++k) {
    for (std::size_t m = 0; m < dump.matrix.frames(); ++m) {
      const double v = dump.matrix(k, m);
      if (!std::isfinite(v)) {
        throw InvalidInput("cannot dump non-finite value at (" + std::to_string(k) +
                           ", " + std::to_string(m) + ")");
      }
      // Normalise -0 so phase rows of positive reals print as plain zeros.
      std::snprintf(buf, sizeof(buf), "%.8e", v == 0.0 ? 0.0 : v);
      if (m) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

inline void dump_matrix(const std::filesystem::path& path, const MatrixDump& dump) {
  const std::string text = format_matrix(dump);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << text;
  file.close();
  if (!file) throw IoError("error writing " + path.string());
}

inline MatrixDump parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag;
  MatrixDump dump;
  std::size_t bins = 0;
  std::size_t frames = 0;
  if (!(in >> tag) || tag.size() < 2 || tag[0] != '#') {
    throw FormatError("matrix dump: missing '#kind' header", 0);
  }
  dump.kind = parse_spectrum_kind(std::string_view(tag).substr(1));
  if (!(in >> bins >> frames >> dump.n_fft >> dump.hop >> dump.sample_rate)) {
    throw FormatError("matrix dump: malformed header", 0);
  }
  dump.matrix = Matrix<double>(bins, frames);
  for (std::size_t k = 0; k < bins; ++k) {
    for (std::size_t m = 0; m < frames; ++m) {
      if (!(in >> dump.matrix(k, m))) {
        throw FormatError("matrix dump: missing value at row " + std::to_string(k),
                          static_cast<std::size_t>(std::max<std::streamoff>(0, in.tellg())));
      }
    }
  }
  return dump;
}

inline MatrixDump read_matrix(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << file.rdbuf();
  return parse_matrix(ss.str());
}

}  // namespace phaseperturb
