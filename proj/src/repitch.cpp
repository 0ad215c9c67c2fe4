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

#include "ordersynth/repitch.hpp"

#include <algorithm>
#include <cmath>

namespace ordersynth {

CubicSpline::CubicSpline(std::span<const double> y) : y_(y.begin(), y.end()) {
  const std::size_t n = y_.size();
  m_.assign(n, 0.0);
  if (n < 3) return;  // natural ends only; interpolation degenerates to linear

  // Thomas solve of the tridiagonal system (1, 4, 1) for interior second
  // derivatives, unit knot spacing, M[0] = M[n-1] = 0.
  const std::size_t interior = n - 2;
  std::vector<double> diag(interior, 4.0);
  std::vector<double> rhs(interior);
  for (std::size_t i = 0; i < interior; ++i)
    rhs[i] = 6.0 * (y_[i + 2] - 2.0 * y_[i + 1] + y_[i]);
  for (std::size_t i = 1; i < interior; ++i) {
    const double w = 1.0 / diag[i - 1];
    diag[i] -= w;
    rhs[i] -= w * rhs[i - 1];
  }
  m_[interior] = rhs[interior - 1] / diag[interior - 1];
  for (std::size_t i = interior - 1; i >= 1; --i)
    m_[i] = (rhs[i - 1] - m_[i + 1]) / diag[i - 1];
}

double CubicSpline::operator()(double x) const {
  const std::size_t n = y_.size();
  if (n == 0) return 0.0;
  if (n == 1) return y_[0];
  x = std::clamp(x, 0.0, static_cast<double>(n - 1));
  auto i = static_cast<std::size_t>(x);
  if (i >= n - 1) i = n - 2;
  const double u = x - static_cast<double>(i);
  const double v = 1.0 - u;
  return y_[i] * v + y_[i + 1] * u + (v * v * v - v) * m_[i] / 6.0 +
         (u * u * u - u) * m_[i + 1] / 6.0;
}

namespace {

double rpm_at(std::span<const double> rpm, double pos) {
  if (pos <= 0.0) return rpm.front();
  const auto last = static_cast<double>(rpm.size() - 1);
  if (pos >= last) return rpm.back();
  auto k = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(k);
  return rpm[k] + frac * (rpm[k + 1] - rpm[k]);
}

}  // namespace

WarpedIndex compute_warped_index(std::span<const double> rpm_envelope, double rpm_target) {
  if (rpm_envelope.empty()) throw InputError("empty RPM envelope");
  if (rpm_target <= 0.0) throw InputError("rpm_target must be positive");
  for (double r : rpm_envelope) {
    if (r <= 0.0) throw InputError("RPM envelope contains a non-positive value");
  }

  WarpedIndex out;
  out.positions.resize(rpm_envelope.size());
  // Each step adds the local ratio evaluated at the current warped source
  // position; a ratio taken at the output index instead would let the
  // pitch drift whenever RPM ramps across the frame.
  double pos = rpm_target / rpm_envelope[0];
  out.positions[0] = pos;
  for (std::size_t i = 1; i < rpm_envelope.size(); ++i) {
    pos += rpm_target / rpm_at(rpm_envelope, pos);
    out.positions[i] = pos;
  }
  return out;
}

std::vector<double> resample_to_constant_pitch(std::span<const double> frame,
                                               std::span<const double> rpm_envelope,
                                               double rpm_target) {
  if (frame.size() != rpm_envelope.size())
    throw InputError("RPM envelope and frame lengths differ");
  if (frame.empty()) return {};

  const WarpedIndex warp = compute_warped_index(rpm_envelope, rpm_target);
  const double limit = static_cast<double>(frame.size() - 1);
  const auto valid_end = std::upper_bound(warp.positions.begin(), warp.positions.end(), limit);
  const auto n_valid = static_cast<std::size_t>(valid_end - warp.positions.begin());

  CubicSpline spline(frame);
  std::vector<double> out(n_valid);
  for (std::size_t i = 0; i < n_valid; ++i) out[i] = spline(warp.positions[i]);
  return out;
}

AudioBuffer resample_to_constant_pitch(const AudioBuffer& frame,
                                       std::span<const double> rpm_envelope,
                                       double rpm_target) {
  if (frame.channel_count() != 1) throw InputError("repitch expects a mono frame");
  return AudioBuffer::mono(resample_to_constant_pitch(frame.channel(0), rpm_envelope, rpm_target),
                           frame.sample_rate());
}

}  // namespace ordersynth
