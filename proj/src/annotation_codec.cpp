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

#include "ordersynth/annotation_codec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ordersynth {

namespace {

std::int16_t quantize(double value, double bound, const char* what) {
  if (!(value >= -bound && value <= bound))
    throw InputError(std::string(what) + " value " + std::to_string(value) +
                     " outside +-" + std::to_string(bound));
  return static_cast<std::int16_t>(std::lround(value / bound * 32767.0));
}

}  // namespace

std::int16_t encode_rpm(double rpm) {
  if (rpm < 0.0) throw InputError("RPM value " + std::to_string(rpm) + " is negative");
  return quantize(rpm, kRpmBound, "RPM");
}

std::int16_t encode_torque(double torque) { return quantize(torque, kTorqueBound, "torque"); }

double decode_rpm(std::int16_t code) { return static_cast<double>(code) / 32767.0 * kRpmBound; }

double decode_torque(std::int16_t code) {
  return static_cast<double>(code) / 32767.0 * kTorqueBound;
}

std::int16_t sample_to_code(double sample) {
  double scaled = std::round(sample * 32768.0);
  scaled = std::clamp(scaled, -32768.0, 32767.0);
  return static_cast<std::int16_t>(scaled);
}

EncodedControls encode_controls(const ControlTrace& trace) {
  trace.check_consistent();
  EncodedControls out;
  out.rpm_codes.reserve(trace.size());
  out.torque_codes.reserve(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out.rpm_codes.push_back(encode_rpm(trace.rpm[i]));
    out.torque_codes.push_back(encode_torque(trace.torque[i]));
  }
  return out;
}

ControlTrace decode_controls(const AudioBuffer& four_channel) {
  if (four_channel.channel_count() != 4)
    throw FormatError("control decoding expects a 4-channel buffer, got " +
                      std::to_string(four_channel.channel_count()) + " channels");
  four_channel.check_consistent();

  ControlTrace trace;
  trace.sample_rate = four_channel.sample_rate();
  const std::size_t n = four_channel.frame_count();
  trace.rpm.resize(n);
  trace.torque.resize(n);
  const auto& rpm_ch = four_channel.channel(kRpmChannel);
  const auto& torque_ch = four_channel.channel(kTorqueChannel);
  for (std::size_t i = 0; i < n; ++i) {
    trace.rpm[i] = decode_rpm(sample_to_code(rpm_ch[i]));
    trace.torque[i] = decode_torque(sample_to_code(torque_ch[i]));
  }
  return trace;
}

AudioBuffer mux(const AudioBuffer& stereo, const ControlTrace& trace) {
  stereo.check_consistent();
  trace.check_consistent();
  if (stereo.channel_count() != 2)
    throw InputError("mux expects stereo audio, got " +
                     std::to_string(stereo.channel_count()) + " channels");
  if (stereo.frame_count() != trace.size())
    throw InputError("audio and trace lengths differ");
  if (stereo.sample_rate() != trace.sample_rate)
    throw InputError("audio and trace sample rates differ");

  const EncodedControls codes = encode_controls(trace);
  AudioBuffer out(4, stereo.frame_count(), stereo.sample_rate());
  out.channel(0) = stereo.channel(0);
  out.channel(1) = stereo.channel(1);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out.channel(kRpmChannel)[i] = code_to_sample(codes.rpm_codes[i]);
    out.channel(kTorqueChannel)[i] = code_to_sample(codes.torque_codes[i]);
  }
  return out;
}

std::pair<AudioBuffer, ControlTrace> demux(const AudioBuffer& four_channel) {
  ControlTrace trace = decode_controls(four_channel);
  AudioBuffer stereo(2, four_channel.frame_count(), four_channel.sample_rate());
  stereo.channel(0) = four_channel.channel(0);
  stereo.channel(1) = four_channel.channel(1);
  return {std::move(stereo), std::move(trace)};
}

}  // namespace ordersynth
