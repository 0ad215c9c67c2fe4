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

#include <cstddef>
#include <vector>

#include "ordersynth/audio_buffer.hpp"

namespace ordersynth {

struct FrameSpec {
  int frame_length = 65536;       // samples per frame (4.096 s at 16 kHz)
  double analysis_rate = 16000.0; // Hz

  void validate() const {
    if (frame_length <= 0) throw ParameterError("frame_length must be positive");
    if (analysis_rate <= 0) throw ParameterError("analysis_rate must be positive");
  }
};

/// RPM below this counts as engine-off; absorbs the 0.3 RPM codec
/// quantization of true zero.
inline constexpr double kZeroRpmThreshold = 1.0;

struct Frame {
  AudioBuffer audio;
  ControlTrace trace;
  std::size_t start_sample = 0;
};

/// Cuts audio+trace into non-overlapping frames of spec.frame_length.
/// Frames containing any sample with RPM < kZeroRpmThreshold are excluded;
/// a trailing partial frame is dropped. Frames keep their source offset so
/// callers can reconstruct the kept/excluded partition.
std::vector<Frame> segment_frames(const AudioBuffer& audio, const ControlTrace& trace,
                                  const FrameSpec& spec);

}  // namespace ordersynth
