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

#include "ordersynth/framing.hpp"

#include <algorithm>

namespace ordersynth {

std::vector<Frame> segment_frames(const AudioBuffer& audio, const ControlTrace& trace,
                                  const FrameSpec& spec) {
  spec.validate();
  audio.check_consistent();
  trace.check_consistent();
  if (audio.frame_count() != trace.size())
    throw InputError("audio and trace lengths differ");
  if (audio.sample_rate() != trace.sample_rate)
    throw InputError("audio and trace sample rates differ");

  const auto flen = static_cast<std::size_t>(spec.frame_length);
  const std::size_t n_frames = audio.frame_count() / flen;
  std::vector<Frame> frames;
  frames.reserve(n_frames);

  for (std::size_t fi = 0; fi < n_frames; ++fi) {
    const std::size_t begin = fi * flen;
    const std::size_t end = begin + flen;
    const bool engine_off = std::any_of(trace.rpm.begin() + static_cast<std::ptrdiff_t>(begin),
                                        trace.rpm.begin() + static_cast<std::ptrdiff_t>(end),
                                        [](double r) { return r < kZeroRpmThreshold; });
    if (engine_off) continue;

    Frame frame;
    frame.start_sample = begin;
    frame.audio = AudioBuffer(audio.channel_count(), flen, audio.sample_rate());
    for (int c = 0; c < audio.channel_count(); ++c) {
      const auto& src = audio.channel(c);
      std::copy(src.begin() + static_cast<std::ptrdiff_t>(begin),
                src.begin() + static_cast<std::ptrdiff_t>(end), frame.audio.channel(c).begin());
    }
    frame.trace.sample_rate = trace.sample_rate;
    frame.trace.rpm.assign(trace.rpm.begin() + static_cast<std::ptrdiff_t>(begin),
                           trace.rpm.begin() + static_cast<std::ptrdiff_t>(end));
    frame.trace.torque.assign(trace.torque.begin() + static_cast<std::ptrdiff_t>(begin),
                              trace.torque.begin() + static_cast<std::ptrdiff_t>(end));
    frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace ordersynth
