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

#include <cmath>
#include <random>

#include "ordersynth/annotation_codec.hpp"
#include "ordersynth/wav_io.hpp"
#include "test_support.hpp"

using namespace ordersynth;
using testsupport::TempDir;

TEST_CASE("encode: documented example codes") {
  CHECK(encode_rpm(5000.0) == 16384);  // round(0.5 * 32767)
  CHECK(encode_rpm(0.0) == 0);
  CHECK(encode_torque(0.0) == 0);
  CHECK(encode_rpm(10000.0) == 32767);
  CHECK(encode_torque(-1000.0) == -32767);
  CHECK(encode_torque(-100.0) == -3277);
}

TEST_CASE("decode: documented example values") {
  CHECK(decode_rpm(32767) == doctest::Approx(10000.0));
  CHECK(decode_torque(-3277) == doctest::Approx(-100.0).epsilon(1e-3));
  CHECK(decode_rpm(0) == 0.0);
}

TEST_CASE("codec: exhaustive code sweep round-trips exactly") {
  // All codes the encoder can produce regenerate themselves; decoded
  // values sit strictly within the codec bounds.
  for (int c = -32767; c <= 32767; ++c) {
    const auto code = static_cast<std::int16_t>(c);
    const double torque = decode_torque(code);
    CHECK(encode_torque(torque) == code);
    if (c >= 0) {
      const double rpm = decode_rpm(code);
      CHECK(encode_rpm(rpm) == code);
    }
  }
}

TEST_CASE("codec: dense value sweep stays within half a quantization step") {
  const double rpm_half_step = kRpmBound / 32767.0 / 2.0;     // ~0.1526
  const double torque_half_step = kTorqueBound / 32767.0 / 2.0;
  CHECK(rpm_half_step <= 0.153);
  CHECK(torque_half_step <= 0.0153);

  for (int i = 0; i <= 20000; ++i) {
    const double rpm = 10000.0 * static_cast<double>(i) / 20000.0;
    CHECK(std::abs(decode_rpm(encode_rpm(rpm)) - rpm) <= rpm_half_step + 1e-12);
  }
  for (int i = 0; i <= 20000; ++i) {
    const double torque = -1000.0 + 2000.0 * static_cast<double>(i) / 20000.0;
    CHECK(std::abs(decode_torque(encode_torque(torque)) - torque) <= torque_half_step + 1e-12);
  }
}

TEST_CASE("codec: out-of-bound values are hard input errors") {
  CHECK_THROWS_AS(encode_rpm(10000.1), InputError);
  CHECK_THROWS_AS(encode_rpm(-0.1), InputError);
  CHECK_THROWS_AS(encode_torque(1000.5), InputError);
  CHECK_THROWS_AS(encode_torque(-1000.5), InputError);
}

TEST_CASE("mux/demux: audio passes through, controls quantize") {
  std::mt19937_64 rng(37);
  const std::size_t n = 4800;
  AudioBuffer stereo(2, n, 48000.0);
  ControlTrace trace;
  trace.sample_rate = 48000.0;
  trace.rpm.resize(n);
  trace.torque.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    stereo.channel(0)[i] = std::uniform_real_distribution<double>(-1, 1)(rng);
    stereo.channel(1)[i] = std::uniform_real_distribution<double>(-1, 1)(rng);
    trace.rpm[i] = std::uniform_real_distribution<double>(0.0, 10000.0)(rng);
    trace.torque[i] = std::uniform_real_distribution<double>(-1000.0, 1000.0)(rng);
  }

  const AudioBuffer four = mux(stereo, trace);
  REQUIRE(four.channel_count() == 4);
  auto [audio_back, trace_back] = demux(four);

  for (std::size_t i = 0; i < n; ++i) {
    CHECK(audio_back.channel(0)[i] == stereo.channel(0)[i]);
    CHECK(audio_back.channel(1)[i] == stereo.channel(1)[i]);
    CHECK(std::abs(trace_back.rpm[i] - trace.rpm[i]) <= kRpmBound / 32767.0 / 2.0 + 1e-12);
    CHECK(std::abs(trace_back.torque[i] - trace.torque[i]) <=
          kTorqueBound / 32767.0 / 2.0 + 1e-12);
  }
}

TEST_CASE("mux/demux: sample alignment is exact (no codec lag)") {
  // A single-sample RPM spike must come back at the same index.
  const std::size_t n = 101;
  AudioBuffer stereo(2, n, 48000.0);
  ControlTrace trace;
  trace.sample_rate = 48000.0;
  trace.rpm.assign(n, 1000.0);
  trace.torque.assign(n, 0.0);
  trace.rpm[57] = 6543.0;
  trace.torque[57] = 321.0;

  auto [audio_back, trace_back] = demux(mux(stereo, trace));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 57) {
      CHECK(trace_back.rpm[i] == doctest::Approx(6543.0).epsilon(1e-4));
      CHECK(trace_back.torque[i] == doctest::Approx(321.0).epsilon(1e-4));
    } else {
      CHECK(trace_back.rpm[i] == doctest::Approx(1000.0).epsilon(1e-4));
    }
  }
}

TEST_CASE("codec channels survive WAV I/O bit-exactly") {
  TempDir dir("ordersynth-codec");
  std::mt19937_64 rng(41);
  const std::size_t n = 2048;
  AudioBuffer stereo(2, n, 48000.0);
  ControlTrace trace;
  trace.sample_rate = 48000.0;
  trace.rpm.resize(n);
  trace.torque.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    trace.rpm[i] = std::uniform_real_distribution<double>(0.0, 10000.0)(rng);
    trace.torque[i] = std::uniform_real_distribution<double>(-1000.0, 1000.0)(rng);
  }
  const EncodedControls codes = encode_controls(trace);

  const auto path = dir / "muxed.wav";
  write_wav(path, mux(stereo, trace));
  const AudioBuffer back = read_wav(path);
  REQUIRE(back.channel_count() == 4);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(sample_to_code(back.channel(kRpmChannel)[i]) == codes.rpm_codes[i]);
    CHECK(sample_to_code(back.channel(kTorqueChannel)[i]) == codes.torque_codes[i]);
  }
}

TEST_CASE("decode_controls rejects non-4-channel buffers") {
  AudioBuffer stereo(2, 16, 48000.0);
  CHECK_THROWS_AS(decode_controls(stereo), FormatError);
}

TEST_CASE("mux validates shapes") {
  AudioBuffer mono(1, 16, 48000.0);
  AudioBuffer stereo(2, 16, 48000.0);
  ControlTrace trace;
  trace.sample_rate = 48000.0;
  trace.rpm.assign(16, 1000.0);
  trace.torque.assign(16, 0.0);

  CHECK_THROWS_AS(mux(mono, trace), InputError);
  trace.rpm.resize(15);
  trace.torque.resize(15);
  CHECK_THROWS_AS(mux(stereo, trace), InputError);
}
