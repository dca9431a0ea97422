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
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaseperturb/errors.hpp"
#include "phaseperturb/log.hpp"
#include "phaseperturb/stft.hpp"

namespace phaseperturb {

enum class SampleFormat { kPcm16, kPcm24, kFloat32 };

constexpr int bits_per_sample(SampleFormat format) noexcept {
  switch (format) {
    case SampleFormat::kPcm16: return 16;
    case SampleFormat::kPcm24: return 24;
    case SampleFormat::kFloat32: return 32;
  }
  return 0;
}

struct WavMeta {
  int sample_rate = 16000;
  int channels = 1;
  SampleFormat format = SampleFormat::kPcm16;
  std::size_t frame_count = 0;

  int bit_depth() const noexcept { return bits_per_sample(format); }
};

struct WavData {
  AudioBuffer audio;
  WavMeta meta;
};

namespace detail {

inline constexpr std::uint16_t kFormatPcm = 0x0001;
inline constexpr std::uint16_t kFormatFloat = 0x0003;
inline constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  void require(std::size_t n, const char* what) const {
    if (remaining() < n) {
      throw FormatError(std::string("truncated ") + what, pos_);
    }
  }
  std::uint16_t u16(const char* what) {
    require(2, what);
    const std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] |
                                                       (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32(const char* what) {
    require(4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | bytes_[pos_ + i];
    pos_ += 4;
    return v;
  }
  std::string fourcc(const char* what) {
    require(4, what);
    std::string id(reinterpret_cast<const char*>(bytes_.data() + pos_), 4);
    pos_ += 4;
    return id;
  }
  void skip(std::size_t n) { pos_ += n; }
  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    require(n, what);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

inline std::int32_t load_pcm(const std::uint8_t* p, int bytes) {
  if (bytes == 2) {
    return static_cast<std::int16_t>(static_cast<std::uint16_t>(p[0] | (p[1] << 8)));
  }
  // 24-bit: sign-extend from bit 23.
  std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
  if (v & 0x800000) v -= 0x1000000;
  return v;
}

inline float load_f32(const std::uint8_t* p) {
  const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                             (static_cast<std::uint32_t>(p[1]) << 8) |
                             (static_cast<std::uint32_t>(p[2]) << 16) |
                             (static_cast<std::uint32_t>(p[3]) << 24);
  return std::bit_cast<float>(bits);
}

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_fourcc(std::vector<std::uint8_t>& out, const char* id) {
  out.insert(out.end(), id, id + 4);
}

}  // namespace detail

// Decodes an in-memory RIFF/WAVE image (PCM16, PCM24 or float32, including
// WAVE_FORMAT_EXTENSIBLE wrappers). Channels are averaged down to mono and
// integer samples are divided by 2^(bits-1).
inline WavData decode_wav(std::span<const std::uint8_t> bytes) {
  detail::ByteReader in(bytes);
  if (in.fourcc("RIFF header") != "RIFF") throw FormatError("missing RIFF tag", 0);
  in.u32("RIFF size");
  if (in.fourcc("WAVE tag") != "WAVE") throw FormatError("missing WAVE tag", 8);

  bool have_fmt = false;
  std::uint16_t format_tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;

  while (true) {
    if (in.remaining() == 0) throw FormatError("no data chunk", in.offset());
    const std::size_t chunk_start = in.offset();
    const std::string id = in.fourcc("chunk header");
    const std::uint32_t size = in.u32("chunk header");
    if (size > in.remaining()) {
      throw FormatError("chunk '" + id + "' extends past end of file", chunk_start);
    }

    if (id == "fmt ") {
      if (size < 16) throw FormatError("fmt chunk too small", chunk_start);
      const std::size_t body = in.offset();
      format_tag = in.u16("fmt");
      channels = in.u16("fmt");
      sample_rate = in.u32("fmt");
      in.u32("fmt");  // byte rate
      block_align = in.u16("fmt");
      bits = in.u16("fmt");
      if (format_tag == detail::kFormatExtensible) {
        if (size < 40) throw FormatError("extensible fmt chunk too small", chunk_start);
        in.u16("fmt");  // cbSize
        in.u16("fmt");  // valid bits
        in.u32("fmt");  // channel mask
        format_tag = in.u16("fmt");  // first two bytes of the sub-format GUID
      }
      in.skip(size - (in.offset() - body));
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw FormatError("data chunk before fmt chunk", chunk_start);
      if (channels == 0) throw FormatError("zero channels", chunk_start);
      if (sample_rate == 0) throw FormatError("zero sample rate", chunk_start);

      SampleFormat format;
      if (format_tag == detail::kFormatPcm && bits == 16) {
        format = SampleFormat::kPcm16;
      } else if (format_tag == detail::kFormatPcm && bits == 24) {
        format = SampleFormat::kPcm24;
      } else if (format_tag == detail::kFormatFloat && bits == 32) {
        format = SampleFormat::kFloat32;
      } else {
        throw UnsupportedFormat("unsupported WAV encoding: format tag " +
                                std::to_string(format_tag) + ", " +
                                std::to_string(bits) + " bits");
      }
      const int sample_bytes = bits / 8;
      const std::size_t frame_bytes = static_cast<std::size_t>(sample_bytes) * channels;
      if (block_align != frame_bytes) {
        throw FormatError("block align " + std::to_string(block_align) +
                              " does not match channels x sample size",
                          chunk_start);
      }
      if (size % frame_bytes != 0) {
        throw FormatError("data chunk is not a whole number of frames", chunk_start);
      }

      const std::size_t data_start = in.offset();
      auto payload = in.take(size, "data chunk");
      WavData out;
      out.meta.sample_rate = static_cast<int>(sample_rate);
      out.meta.channels = channels;
      out.meta.format = format;
      out.meta.frame_count = size / frame_bytes;
      out.audio.sample_rate = static_cast<int>(sample_rate);
      out.audio.samples.resize(out.meta.frame_count);

      const double scale = format == SampleFormat::kFloat32
                               ? 1.0
                               : 1.0 / static_cast<double>(1 << (bits - 1));
      for (std::size_t f = 0; f < out.meta.frame_count; ++f) {
        double sum = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
          const std::size_t at = f * frame_bytes + c * sample_bytes;
          if (format == SampleFormat::kFloat32) {
            const float v = detail::load_f32(payload.data() + at);
            if (!std::isfinite(v)) {
              throw FormatError("non-finite float sample", data_start + at);
            }
            sum += v;
          } else {
            sum += detail::load_pcm(payload.data() + at, sample_bytes) * scale;
          }
        }
        out.audio.samples[f] = sum / channels;
      }
      return out;
    } else {
      in.skip(size);
    }
    if ((size & 1) && in.remaining() > 0) in.skip(1);  // RIFF pad byte
  }
}

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                                  std::istreambuf_iterator<char>());
  if (file.bad()) throw IoError("error reading " + path.string());
  return bytes;
}

inline WavData read_wav(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  WavData data = decode_wav(bytes);
  if (data.meta.sample_rate != 16000) {
    log::warn(path.string(), ": sample rate ", data.meta.sample_rate,
              " Hz; mask widths are tuned for 16000 Hz");
  }
  return data;
}

struct EncodedWav {
  std::vector<std::uint8_t> bytes;
  std::size_t clip_count = 0;
};

// Mono RIFF/WAVE image. Samples outside [-1, 1] are clipped and counted;
// integer formats round to nearest.
inline EncodedWav encode_wav(const AudioBuffer& audio, SampleFormat format) {
  validate(audio);
  const int bits = bits_per_sample(format);
  const int sample_bytes = bits / 8;
  const std::size_t data_size = audio.samples.size() * sample_bytes;
  if (data_size > 0xFFFFFFFFull - 36) throw InvalidInput("audio too long for WAV");

  EncodedWav out;
  auto& b = out.bytes;
  b.reserve(44 + data_size);
  detail::put_fourcc(b, "RIFF");
  detail::put_u32(b, static_cast<std::uint32_t>(36 + data_size));
  detail::put_fourcc(b, "WAVE");
  detail::put_fourcc(b, "fmt ");
  detail::put_u32(b, 16);
  detail::put_u16(b, format == SampleFormat::kFloat32 ? detail::kFormatFloat
                                                      : detail::kFormatPcm);
  detail::put_u16(b, 1);
  detail::put_u32(b, static_cast<std::uint32_t>(audio.sample_rate));
  detail::put_u32(b, static_cast<std::uint32_t>(audio.sample_rate * sample_bytes));
  detail::put_u16(b, static_cast<std::uint16_t>(sample_bytes));
  detail::put_u16(b, static_cast<std::uint16_t>(bits));
  detail::put_fourcc(b, "data");
  detail::put_u32(b, static_cast<std::uint32_t>(data_size));

  const double full_scale = static_cast<double>(std::int64_t{1} << (bits - 1));
  const auto max_code = static_cast<std::int64_t>(full_scale) - 1;
  const auto min_code = -static_cast<std::int64_t>(full_scale);
  for (double x : audio.samples) {
    if (x > 1.0 || x < -1.0) {
      ++out.clip_count;
      x = std::clamp(x, -1.0, 1.0);
    }
    if (format == SampleFormat::kFloat32) {
      detail::put_u32(b, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
      continue;
    }
    const std::int64_t code =
        std::clamp<std::int64_t>(std::llround(x * full_scale), min_code, max_code);
    const auto u = static_cast<std::uint32_t>(code);
    for (int i = 0; i < sample_bytes; ++i) {
      b.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
    }
  }
  return out;
}

// Returns the number of clipped samples.
inline std::size_t write_wav(const std::filesystem::path& path,
                             const AudioBuffer& audio, SampleFormat format) {
  const EncodedWav encoded = encode_wav(audio, format);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file.write(reinterpret_cast<const char*>(encoded.bytes.data()),
             static_cast<std::streamsize>(encoded.bytes.size()));
  file.close();
  if (!file) throw IoError("error writing " + path.string());
  return encoded.clip_count;
}

}  // namespace phaseperturb
