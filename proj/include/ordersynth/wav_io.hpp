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
#include <filesystem>

#include "ordersynth/audio_buffer.hpp"

namespace ordersynth {

// RIFF/WAVE, 16-bit PCM, 1-4 channels. Sample words map to [-1, 1) by
// division by 32768; the round trip is bit-exact at the integer level.
// Channel convention for 4-channel files: 1-2 audio L/R, 3 RPM code,
// 4 torque code.

AudioBuffer read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const AudioBuffer& buffer);

/// Conversion used by all 16-bit PCM I/O.
inline double pcm16_to_sample(std::int16_t v) { return static_cast<double>(v) / 32768.0; }
std::int16_t sample_to_pcm16(double x);

}  // namespace ordersynth
