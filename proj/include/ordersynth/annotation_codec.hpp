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

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ordersynth/audio_buffer.hpp"

namespace ordersynth {

// Control annotation codec. RPM and torque are normalized by fixed
// boundaries (10,000 RPM, 1,000 Nm), quantized to signed 16-bit codes
// (+-32767, -32768 unused) and carried in audio channels 3 and 4. The
// resulting resolution is ~0.305 RPM and ~0.0305 Nm per step. Control
// value at index n describes audio sample n exactly.

inline constexpr double kRpmBound = 10000.0;
inline constexpr double kTorqueBound = 1000.0;
inline constexpr int kRpmChannel = 2;     // third channel, 0-based
inline constexpr int kTorqueChannel = 3;  // fourth channel, 0-based

/// code = round(value / bound * 32767); out-of-bound values are an input
/// error, never silently clipped.
std::int16_t encode_rpm(double rpm);
std::int16_t encode_torque(double torque);

/// value = code / 32767 * bound.
double decode_rpm(std::int16_t code);
double decode_torque(std::int16_t code);

/// Channel-sample representation of a code: sample = code / 32768, which
/// survives 16-bit WAV I/O bit-exactly.
inline double code_to_sample(std::int16_t code) { return static_cast<double>(code) / 32768.0; }
std::int16_t sample_to_code(double sample);

struct EncodedControls {
  std::vector<std::int16_t> rpm_codes;
  std::vector<std::int16_t> torque_codes;
};

EncodedControls encode_controls(const ControlTrace& trace);

/// Reads channels 3-4 of a 4-channel buffer back into a ControlTrace.
ControlTrace decode_controls(const AudioBuffer& four_channel);

/// Interleaves stereo audio with encoded controls into the 4-channel
/// layout. Audio and trace must share length and rate.
AudioBuffer mux(const AudioBuffer& stereo, const ControlTrace& trace);

/// Inverse of mux up to control quantization.
std::pair<AudioBuffer, ControlTrace> demux(const AudioBuffer& four_channel);

}  // namespace ordersynth
