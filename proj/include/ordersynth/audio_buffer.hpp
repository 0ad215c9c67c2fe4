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
#include <utility>
#include <vector>

#include "ordersynth/errors.hpp"

namespace ordersynth {

/// Multi-channel audio held as one double sequence per channel, nominal
/// range [-1, 1). All channels have equal length. Pipeline inputs/outputs
/// are 16 kHz (analysis) or 48 kHz (synthesis/dataset); intermediate
/// buffers may use any rate.
class AudioBuffer {
 public:
  AudioBuffer() = default;

  AudioBuffer(int channels, std::size_t samples_per_channel, double sample_rate)
      : sample_rate_(sample_rate),
        channels_(static_cast<std::size_t>(channels),
                  std::vector<double>(samples_per_channel, 0.0)) {
    if (channels < 1) throw InputError("AudioBuffer needs at least one channel");
    if (sample_rate <= 0) throw InputError("AudioBuffer needs a positive sample rate");
  }

  static AudioBuffer mono(std::vector<double> samples, double sample_rate) {
    AudioBuffer b;
    b.sample_rate_ = sample_rate;
    b.channels_.push_back(std::move(samples));
    return b;
  }

  int channel_count() const { return static_cast<int>(channels_.size()); }
  std::size_t frame_count() const { return channels_.empty() ? 0 : channels_[0].size(); }
  double sample_rate() const { return sample_rate_; }

  std::vector<double>& channel(int c) { return channels_.at(static_cast<std::size_t>(c)); }
  const std::vector<double>& channel(int c) const {
    return channels_.at(static_cast<std::size_t>(c));
  }

  /// Throws InputError when a channel length diverges.
  void check_consistent() const {
    for (const auto& ch : channels_) {
      if (ch.size() != frame_count())
        throw InputError("AudioBuffer channels have unequal lengths");
    }
  }

 private:
  double sample_rate_ = 0.0;
  std::vector<std::vector<double>> channels_;
};

/// Time-aligned RPM and torque envelopes sampled at audio rate.
struct ControlTrace {
  std::vector<double> rpm;
  std::vector<double> torque;
  double sample_rate = 0.0;

  std::size_t size() const { return rpm.size(); }

  void check_consistent() const {
    if (rpm.size() != torque.size())
      throw InputError("ControlTrace rpm and torque have unequal lengths");
  }

  /// Codec boundaries: rpm in [0, 10000], torque in [-1000, 1000].
  void check_bounds() const;
};

/// Linear-interpolation resample of a control trace to a new rate.
/// Endpoints are held; output length = round(n * new_rate / old_rate).
ControlTrace resample_trace(const ControlTrace& trace, double new_rate);

}  // namespace ordersynth
