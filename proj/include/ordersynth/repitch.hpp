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

#include <span>
#include <vector>

#include "ordersynth/audio_buffer.hpp"

namespace ordersynth {

/// Natural cubic spline over uniformly spaced knots at 0..n-1.
/// Second derivatives vanish at both ends.
class CubicSpline {
 public:
  explicit CubicSpline(std::span<const double> y);

  /// Evaluates at fractional position x, clamped to the knot range.
  double operator()(double x) const;

  std::size_t size() const { return y_.size(); }

 private:
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

/// Monotonically increasing fractional source indices produced by the
/// pitch warp. positions[0] equals the first local ratio term.
struct WarpedIndex {
  std::vector<double> positions;
};

/// Accumulates the local resampling ratio rpm_target / RPM, with RPM read
/// at the warped source position (linear interpolation of the envelope).
/// Any non-positive RPM is a domain error.
WarpedIndex compute_warped_index(std::span<const double> rpm_envelope, double rpm_target);

/// Warps a mono frame so a signal tracking RPM(t) lands at the constant
/// fundamental rpm_target/60. Samples are drawn by natural cubic spline at
/// the warped indices; output is truncated to indices inside the source
/// range (no spline extrapolation).
std::vector<double> resample_to_constant_pitch(std::span<const double> frame,
                                               std::span<const double> rpm_envelope,
                                               double rpm_target);

/// AudioBuffer convenience wrapper around the span overload.
AudioBuffer resample_to_constant_pitch(const AudioBuffer& frame,
                                       std::span<const double> rpm_envelope,
                                       double rpm_target);

}  // namespace ordersynth
