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
#include <cstddef>
#include <span>
#include <vector>

#include "phaseperturb/errors.hpp"

namespace phaseperturb {

// Dense bins x frames matrix. Storage is frame-major: the `bins()` values of
// one frame (one time column) are contiguous, so column(m) is a cheap span.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t bins, std::size_t frames, const T& fill = T{})
      : bins_(bins), frames_(frames), data_(bins * frames, fill) {}

  std::size_t bins() const noexcept { return bins_; }
  std::size_t frames() const noexcept { return frames_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t bin, std::size_t frame) {
    return data_[frame * bins_ + bin];
  }
  const T& operator()(std::size_t bin, std::size_t frame) const {
    return data_[frame * bins_ + bin];
  }

  std::span<T> column(std::size_t frame) {
    return {data_.data() + frame * bins_, bins_};
  }
  std::span<const T> column(std::size_t frame) const {
    return {data_.data() + frame * bins_, bins_};
  }

  std::span<T> flat() noexcept { return data_; }
  std::span<const T> flat() const noexcept { return data_; }

  bool same_shape(const Matrix& other) const noexcept {
    return bins_ == other.bins_ && frames_ == other.frames_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t bins_ = 0;
  std::size_t frames_ = 0;
  std::vector<T> data_;
};

template <typename T, typename U>
void require_same_shape(const Matrix<T>& a, const Matrix<U>& b,
                        const char* what) {
  if (a.bins() != b.bins() || a.frames() != b.frames()) {
    throw InvalidInput(std::string(what) + ": shape mismatch (" +
                       std::to_string(a.bins()) + "x" +
                       std::to_string(a.frames()) + " vs " +
                       std::to_string(b.bins()) + "x" +
                       std::to_string(b.frames()) + ")");
  }
}

}  // namespace phaseperturb
