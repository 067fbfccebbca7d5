// Copyright (c) 2026 The voxsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "voxsel/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace voxsel {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

std::uint32_t read_u32(std::istream& in, const char* what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    fail(std::string("truncated wav file (") + what + ")");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t read_u16(std::istream& in, const char* what) {
  unsigned char b[2];
  if (!in.read(reinterpret_cast<char*>(b), 2))
    fail(std::string("truncated wav file (") + what + ")");
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u16(std::ostream& out, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 2);
}

}  // namespace

void AudioBuffer::validate() const {
  if (sample_rate_hz == 0) fail("audio sample rate must be positive");
  if (!all_finite(std::span<const double>(samples)))
    fail("audio contains NaN or Inf samples");
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open wav file: " + path.string());

  char tag[4];
  if (!in.read(tag, 4) || std::memcmp(tag, "RIFF", 4) != 0)
    fail("not a RIFF file: " + path.string());
  read_u32(in, "riff size");
  if (!in.read(tag, 4) || std::memcmp(tag, "WAVE", 4) != 0)
    fail("not a WAVE file: " + path.string());

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  bool have_fmt = false;
  std::vector<char> data;

  while (in.read(tag, 4)) {
    std::uint32_t chunk_size = read_u32(in, "chunk size");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      format = read_u16(in, "format");
      channels = read_u16(in, "channels");
      sample_rate = read_u32(in, "sample rate");
      read_u32(in, "byte rate");
      read_u16(in, "block align");
      bits = read_u16(in, "bits per sample");
      if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data.resize(chunk_size);
      if (chunk_size > 0 && !in.read(data.data(), chunk_size))
        fail("truncated wav data chunk: " + path.string());
    } else {
      in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
      continue;
    }
    if (chunk_size & 1) in.seekg(1, std::ios::cur);
  }

  if (!have_fmt) fail("wav file has no fmt chunk: " + path.string());
  if (channels != 1)
    fail("only mono wav is supported; got " + std::to_string(channels) +
         " channels: " + path.string());
  if (sample_rate == 0) fail("wav sample rate is zero: " + path.string());

  AudioBuffer audio;
  audio.sample_rate_hz = sample_rate;

  if (format == kFormatPcm && bits == 16) {
    std::size_t n = data.size() / 2;
    audio.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::int16_t s;
      std::memcpy(&s, data.data() + 2 * i, 2);
      audio.samples[i] = static_cast<double>(s) / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    std::size_t n = data.size() / 4;
    audio.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      float s;
      std::memcpy(&s, data.data() + 4 * i, 4);
      audio.samples[i] = static_cast<double>(s);
    }
  } else {
    fail("unsupported wav encoding (format " + std::to_string(format) + ", " +
         std::to_string(bits) + " bits): " + path.string());
  }

  audio.validate();
  return audio;
}

void write_wav(const AudioBuffer& audio, const std::filesystem::path& path,
               WavEncoding encoding) {
  audio.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write wav file: " + path.string());

  std::uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  std::uint16_t format = encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat;
  std::uint32_t bytes_per_sample = bits / 8;
  auto data_size = static_cast<std::uint32_t>(audio.samples.size() * bytes_per_sample);

  out.write("RIFF", 4);
  write_u32(out, 36 + data_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_u32(out, 16);
  write_u16(out, format);
  write_u16(out, 1);
  write_u32(out, audio.sample_rate_hz);
  write_u32(out, audio.sample_rate_hz * bytes_per_sample);
  write_u16(out, static_cast<std::uint16_t>(bytes_per_sample));
  write_u16(out, bits);
  out.write("data", 4);
  write_u32(out, data_size);

  if (encoding == WavEncoding::kPcm16) {
    for (double v : audio.samples) {
      double clamped = std::clamp(v, -1.0, 32767.0 / 32768.0);
      auto s = static_cast<std::int16_t>(std::lrint(clamped * 32768.0));
      char b[2];
      std::memcpy(b, &s, 2);
      out.write(b, 2);
    }
  } else {
    for (double v : audio.samples) {
      auto s = static_cast<float>(v);
      char b[4];
      std::memcpy(b, &s, 4);
      out.write(b, 4);
    }
  }
  if (!out) fail("write failed: " + path.string());
}

}  // namespace voxsel
