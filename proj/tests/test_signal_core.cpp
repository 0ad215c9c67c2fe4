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

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "ordersynth/framing.hpp"
#include "ordersynth/wav_io.hpp"
#include "test_support.hpp"

using namespace ordersynth;
using testsupport::TempDir;

namespace {

ControlTrace constant_trace(std::size_t n, double rpm, double torque, double rate) {
  ControlTrace t;
  t.sample_rate = rate;
  t.rpm.assign(n, rpm);
  t.torque.assign(n, torque);
  return t;
}

}  // namespace

TEST_CASE("segment_frames: exact multiple yields full frame count") {
  AudioBuffer audio(1, 131072, 16000.0);
  ControlTrace trace = constant_trace(131072, 3000.0, 100.0, 16000.0);
  const auto frames = segment_frames(audio, trace, FrameSpec{});
  CHECK(frames.size() == 2);
  CHECK(frames[0].start_sample == 0);
  CHECK(frames[1].start_sample == 65536);
  CHECK(frames[0].audio.frame_count() == 65536);
}

TEST_CASE("segment_frames: zero-RPM frames are excluded") {
  AudioBuffer audio(1, 131072, 16000.0);
  ControlTrace trace = constant_trace(131072, 3000.0, 0.0, 16000.0);
  std::fill(trace.rpm.begin() + 65536, trace.rpm.end(), 0.0);
  const auto frames = segment_frames(audio, trace, FrameSpec{});
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].start_sample == 0);
}

TEST_CASE("segment_frames: input shorter than one frame yields nothing") {
  AudioBuffer audio(1, 60000, 16000.0);
  ControlTrace trace = constant_trace(60000, 3000.0, 0.0, 16000.0);
  CHECK(segment_frames(audio, trace, FrameSpec{}).empty());
}

TEST_CASE("segment_frames: length mismatch is an input error") {
  AudioBuffer audio(1, 1000, 16000.0);
  ControlTrace trace = constant_trace(999, 3000.0, 0.0, 16000.0);
  CHECK_THROWS_AS(segment_frames(audio, trace, FrameSpec{}), InputError);
}

TEST_CASE("segment_frames: kept/excluded frames partition the truncated input") {
  std::mt19937_64 rng(42);
  FrameSpec spec;
  spec.frame_length = 100;

  const std::size_t n = 1571;  // ends with a partial frame
  AudioBuffer audio(1, n, 16000.0);
  ControlTrace trace = constant_trace(n, 2000.0, 0.0, 16000.0);
  for (std::size_t i = 0; i < n; ++i) {
    audio.channel(0)[i] = std::uniform_real_distribution<double>(-1, 1)(rng);
    if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.01) trace.rpm[i] = 0.0;
  }

  const auto frames = segment_frames(audio, trace, spec);
  const std::size_t full = n / 100;

  // Expected keep/drop decision per frame, derived independently.
  std::vector<bool> expected_kept(full, true);
  for (std::size_t fi = 0; fi < full; ++fi)
    for (std::size_t i = fi * 100; i < (fi + 1) * 100; ++i)
      if (trace.rpm[i] < kZeroRpmThreshold) expected_kept[fi] = false;

  std::size_t want = 0;
  for (bool k : expected_kept)
    if (k) ++want;
  REQUIRE(frames.size() == want);

  std::size_t fi = 0;
  for (const Frame& frame : frames) {
    while (!expected_kept[fi]) ++fi;
    CHECK(frame.start_sample == fi * 100);
    for (std::size_t i = 0; i < 100; ++i) {
      CHECK(frame.audio.channel(0)[i] == audio.channel(0)[fi * 100 + i]);
      CHECK(frame.trace.rpm[i] == trace.rpm[fi * 100 + i]);
      CHECK(frame.trace.torque[i] == trace.torque[fi * 100 + i]);
    }
    ++fi;
  }
}

TEST_CASE("wav: 4-channel round trip is bit-exact at the integer level") {
  TempDir dir("ordersynth-wav");
  std::mt19937_64 rng(7);
  AudioBuffer buf(4, 4096, 48000.0);
  for (int c = 0; c < 4; ++c)
    for (auto& v : buf.channel(c)) {
      const auto word = static_cast<std::int16_t>(
          std::uniform_int_distribution<int>(-32768, 32767)(rng));
      v = pcm16_to_sample(word);
    }

  const auto path = dir / "roundtrip.wav";
  write_wav(path, buf);
  const AudioBuffer back = read_wav(path);
  REQUIRE(back.channel_count() == 4);
  REQUIRE(back.frame_count() == 4096);
  CHECK(back.sample_rate() == 48000.0);
  for (int c = 0; c < 4; ++c)
    for (std::size_t i = 0; i < 4096; ++i)
      CHECK(sample_to_pcm16(back.channel(c)[i]) == sample_to_pcm16(buf.channel(c)[i]));
}

TEST_CASE("wav: full-scale sine at 1 - 2^-15 round-trips exactly") {
  TempDir dir("ordersynth-wav");
  const double amp = 1.0 - std::pow(2.0, -15);
  AudioBuffer buf(1, 1600, 16000.0);
  buf.channel(0) = testsupport::sine(50.0, 16000.0, 1600, amp);

  const auto path = dir / "fullscale.wav";
  write_wav(path, buf);
  const AudioBuffer back = read_wav(path);
  for (std::size_t i = 0; i < 1600; ++i) {
    CHECK(sample_to_pcm16(back.channel(0)[i]) == sample_to_pcm16(buf.channel(0)[i]));
    // Re-quantization of already-quantized samples is the identity.
    CHECK(back.channel(0)[i] == pcm16_to_sample(sample_to_pcm16(buf.channel(0)[i])));
  }
}

TEST_CASE("wav: storage arithmetic matches the 16-bit 4-channel layout") {
  // 19 hours of 4-channel 16-bit 48 kHz audio occupies ~24.5 GiB.
  const double bytes = 19.0 * 3600.0 * 48000.0 * 4.0 * 2.0;
  const double gib = bytes / (1024.0 * 1024.0 * 1024.0);
  CHECK(gib > 24.2);
  CHECK(gib < 24.7);
}

TEST_CASE("wav: malformed inputs raise format errors") {
  TempDir dir("ordersynth-wav");

  SUBCASE("missing file is an io error") {
    CHECK_THROWS_AS(read_wav(dir / "absent.wav"), IoError);
  }
  SUBCASE("garbage header") {
    const auto path = dir / "garbage.wav";
    std::ofstream(path) << "definitely not a wav file";
    CHECK_THROWS_AS(read_wav(path), FormatError);
  }
  SUBCASE("unsupported bit depth") {
    // Minimal 8-bit PCM header.
    const auto path = dir / "eightbit.wav";
    std::ofstream f(path, std::ios::binary);
    const unsigned char hdr[] = {
        'R', 'I', 'F', 'F', 36, 0, 0, 0, 'W', 'A', 'V', 'E', 'f', 'm', 't', ' ',
        16,  0,   0,   0,   1,  0, 1, 0, 0x80, 0x3e, 0, 0, 0x80, 0x3e, 0, 0,
        1,   0,   8,   0,   'd', 'a', 't', 'a', 0, 0, 0, 0};
    f.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
    f.close();
    CHECK_THROWS_AS(read_wav(path), FormatError);
  }
  SUBCASE("five channels rejected on write") {
    AudioBuffer buf(5, 16, 16000.0);
    CHECK_THROWS_AS(write_wav(dir / "five.wav", buf), ParameterError);
  }
}

TEST_CASE("wav: reader skips unknown chunks") {
  TempDir dir("ordersynth-wav");
  const auto path = dir / "extra_chunk.wav";
  // RIFF with a LIST chunk between fmt and data.
  std::vector<unsigned char> bytes = {
      'R', 'I', 'F', 'F', 0, 0, 0, 0, 'W', 'A', 'V', 'E',
      'f', 'm', 't', ' ', 16, 0, 0, 0, 1, 0, 1, 0,
      0x80, 0x3e, 0, 0, 0, 0x7d, 0, 0, 2, 0, 16, 0,
      'L', 'I', 'S', 'T', 4, 0, 0, 0, 'I', 'N', 'F', 'O',
      'd', 'a', 't', 'a', 4, 0, 0, 0, 0x00, 0x40, 0x00, 0xc0};
  const std::uint32_t riff_len = static_cast<std::uint32_t>(bytes.size()) - 8;
  bytes[4] = static_cast<unsigned char>(riff_len & 0xff);
  bytes[5] = static_cast<unsigned char>((riff_len >> 8) & 0xff);
  std::ofstream f(path, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  f.close();

  const AudioBuffer buf = read_wav(path);
  CHECK(buf.channel_count() == 1);
  REQUIRE(buf.frame_count() == 2);
  CHECK(sample_to_pcm16(buf.channel(0)[0]) == 16384);
  CHECK(sample_to_pcm16(buf.channel(0)[1]) == -16384);
}

TEST_CASE("resample_trace: linear upsample holds endpoints and slope") {
  ControlTrace t;
  t.sample_rate = 16000.0;
  t.rpm = {1000.0, 2000.0, 3000.0, 4000.0};
  t.torque = {0.0, 10.0, 20.0, 30.0};

  const ControlTrace up = resample_trace(t, 48000.0);
  CHECK(up.sample_rate == 48000.0);
  CHECK(up.size() == 12);
  CHECK(up.rpm[0] == doctest::Approx(1000.0));
  CHECK(up.rpm[3] == doctest::Approx(2000.0));
  CHECK(up.rpm[1] == doctest::Approx(1000.0 + 1000.0 / 3.0));
  CHECK(up.rpm[11] == doctest::Approx(4000.0));  // held endpoint
  CHECK(up.torque[6] == doctest::Approx(20.0));
}
