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

#include "ordersynth/audio_buffer.hpp"

#include <cmath>
#include <string>

namespace ordersynth {

void ControlTrace::check_bounds() const {
  for (double r : rpm) {
    if (!(r >= 0.0 && r <= 10000.0))
      throw InputError("RPM value " + std::to_string(r) + " outside [0, 10000]");
  }
  for (double t : torque) {
    if (!(t >= -1000.0 && t <= 1000.0))
      throw InputError("torque value " + std::to_string(t) + " outside [-1000, 1000]");
  }
}

ControlTrace resample_trace(const ControlTrace& trace, double new_rate) {
  trace.check_consistent();
  if (trace.sample_rate <= 0) throw InputError("trace has no sample rate");
  if (new_rate <= 0) throw ParameterError("target rate must be positive");
  if (new_rate == trace.sample_rate || trace.size() < 2) {
    ControlTrace out = trace;
    out.sample_rate = new_rate;
    return out;
  }

  const double ratio = trace.sample_rate / new_rate;
  const std::size_t n_out =
      static_cast<std::size_t>(std::llround(static_cast<double>(trace.size()) / ratio));
  ControlTrace out;
  out.sample_rate = new_rate;
  out.rpm.resize(n_out);
  out.torque.resize(n_out);
  const std::size_t last = trace.size() - 1;
  for (std::size_t i = 0; i < n_out; ++i) {
    double pos = static_cast<double>(i) * ratio;
    if (pos >= static_cast<double>(last)) {
      out.rpm[i] = trace.rpm[last];
      out.torque[i] = trace.torque[last];
      continue;
    }
    auto k = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(k);
    out.rpm[i] = trace.rpm[k] + frac * (trace.rpm[k + 1] - trace.rpm[k]);
    out.torque[i] = trace.torque[k] + frac * (trace.torque[k + 1] - trace.torque[k]);
  }
  return out;
}

}  // namespace ordersynth
