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

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>

namespace phaseperturb::log {

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Parses a PHASEPERTURB_LOG value. Unknown or empty strings give kWarn.
inline Level parse_level(std::string_view text) {
  if (text == "error" || text == "0") return Level::kError;
  if (text == "info" || text == "2") return Level::kInfo;
  if (text == "debug" || text == "3") return Level::kDebug;
  return Level::kWarn;
}

inline Level threshold() {
  static const Level level = [] {
    const char* env = std::getenv("PHASEPERTURB_LOG");
    return parse_level(env ? env : "");
  }();
  return level;
}

inline bool enabled(Level level) {
  return static_cast<int>(level) <= static_cast<int>(threshold());
}

inline void write(Level level, const std::string& message) {
  if (!enabled(level)) return;
  static std::mutex mutex;
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  std::lock_guard<std::mutex> lock(mutex);
  std::cerr << "[" << kNames[static_cast<int>(level)] << "] " << message << '\n';
}

template <typename... Args>
void emit(Level level, Args&&... args) {
  if (!enabled(level)) return;
  std::ostringstream oss;
  (oss << ... << std::forward<Args>(args));
  write(level, oss.str());
}

template <typename... Args>
void error(Args&&... args) { emit(Level::kError, std::forward<Args>(args)...); }
template <typename... Args>
void warn(Args&&... args) { emit(Level::kWarn, std::forward<Args>(args)...); }
template <typename... Args>
void info(Args&&... args) { emit(Level::kInfo, std::forward<Args>(args)...); }
template <typename... Args>
void debug(Args&&... args) { emit(Level::kDebug, std::forward<Args>(args)...); }

}  // namespace phaseperturb::log
