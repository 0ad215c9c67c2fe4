// Copyright (c) 2026, the ordersynth authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ordersynth/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

namespace ordersynth {

namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

std::int16_t sample_to_pcm16(double x) {
  double scaled = std::round(x * 32768.0);
  scaled = std::clamp(scaled, -32768.0, 32767.0);
  return static_cast<std::int16_t>(scaled);
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  if (f.bad()) throw IoError("read failed for " + path.string());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw FormatError(path.string() + " is not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data_ptr = nullptr;
  std::size_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    std::uint32_t chunk_len = read_u32(hdr + 4);
    pos += 8;
    if (pos + chunk_len > bytes.size())
      throw FormatError(path.string() + ": chunk extends past end of file");
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw FormatError(path.string() + ": fmt chunk too short");
      const unsigned char* p = bytes.data() + pos;
      std::uint16_t format = read_u16(p);
      channels = read_u16(p + 2);
      rate = read_u32(p + 4);
      bits = read_u16(p + 14);
      if (format != kFormatPcm)
        throw FormatError(path.string() + ": only PCM format supported");
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data_ptr = bytes.data() + pos;
      data_len = chunk_len;
    }
    pos += chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data_ptr == nullptr)
    throw FormatError(path.string() + ": missing fmt or data chunk");
  if (bits != 16)
    throw FormatError(path.string() + ": unsupported bit depth " + std::to_string(bits));
  if (channels < 1 || channels > 4)
    throw FormatError(path.string() + ": unsupported channel count " +
                      std::to_string(channels));

  const std::size_t frame_bytes = static_cast<std::size_t>(channels) * 2;
  const std::size_t n_frames = data_len / frame_bytes;
  AudioBuffer buf(channels, n_frames, static_cast<double>(rate));
  for (std::size_t i = 0; i < n_frames; ++i) {
    const unsigned char* p = data_ptr + i * frame_bytes;
    for (int c = 0; c < channels; ++c) {
      auto word = static_cast<std::int16_t>(read_u16(p + 2 * c));
      buf.channel(c)[i] = pcm16_to_sample(word);
    }
  }
  return buf;
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& buffer) {
  buffer.check_consistent();
  const int channels = buffer.channel_count();
  if (channels < 1 || channels > 4)
    throw ParameterError("write_wav supports 1-4 channels, got " + std::to_string(channels));
  if (buffer.sample_rate() <= 0) throw InputError("buffer has no sample rate");

  const std::size_t n = buffer.frame_count();
  const std::uint32_t data_len = static_cast<std::uint32_t>(n * channels * 2);
  const auto rate = static_cast<std::uint32_t>(std::llround(buffer.sample_rate()));

  std::vector<unsigned char> out;
  out.reserve(44 + data_len);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_len);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, rate);
  put_u32(out, rate * static_cast<std::uint32_t>(channels) * 2);  // byte rate
  put_u16(out, static_cast<std::uint16_t>(channels * 2));         // block align
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_len);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < channels; ++c) {
      auto word = static_cast<std::uint16_t>(sample_to_pcm16(buffer.channel(c)[i]));
      out.push_back(static_cast<unsigned char>(word & 0xff));
      out.push_back(static_cast<unsigned char>(word >> 8));
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot create " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("write failed for " + path.string());
}

}  // namespace ordersynth
