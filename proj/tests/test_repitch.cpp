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
#include <numbers>
#include <random>

#include "ordersynth/repitch.hpp"
#include "test_support.hpp"

using namespace ordersynth;

TEST_CASE("warped index: constant RPM at target gives unit spacing") {
  const std::vector<double> rpm(8, 3000.0);
  const WarpedIndex w = compute_warped_index(rpm, 3000.0);
  for (std::size_t n = 0; n < rpm.size(); ++n)
    CHECK(w.positions[n] == doctest::Approx(static_cast<double>(n + 1)).epsilon(1e-12));
}

TEST_CASE("warped index: double-speed envelope halves the spacing") {
  const std::vector<double> rpm(8, 6000.0);
  const WarpedIndex w = compute_warped_index(rpm, 3000.0);
  for (std::size_t n = 0; n < rpm.size(); ++n)
    CHECK(w.positions[n] == doctest::Approx(0.5 * static_cast<double>(n + 1)).epsilon(1e-12));
}

TEST_CASE("warped index: worked three-sample example") {
  const std::vector<double> rpm = {3000.0, 3000.0, 6000.0};
  const WarpedIndex w = compute_warped_index(rpm, 3000.0);
  REQUIRE(w.positions.size() == 3);
  CHECK(w.positions[0] == doctest::Approx(1.0));
  CHECK(w.positions[1] == doctest::Approx(2.0));
  CHECK(w.positions[2] == doctest::Approx(2.5));
}

TEST_CASE("warped index: non-positive RPM is a domain error") {
  CHECK_THROWS_AS(compute_warped_index(std::vector<double>{3000.0, 0.0}, 3000.0), InputError);
  CHECK_THROWS_AS(compute_warped_index(std::vector<double>{3000.0, -10.0}, 3000.0), InputError);
  CHECK_THROWS_AS(compute_warped_index(std::vector<double>{3000.0}, 0.0), InputError);
}

TEST_CASE("warped index: strictly increasing for random positive envelopes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> rpm(257);
    for (auto& r : rpm) r = std::uniform_real_distribution<double>(120.0, 9000.0)(rng);
    const double target = std::uniform_real_distribution<double>(500.0, 7000.0)(rng);
    const WarpedIndex w = compute_warped_index(rpm, target);
    for (std::size_t n = 1; n < w.positions.size(); ++n)
      CHECK(w.positions[n] > w.positions[n - 1]);
  }
}

TEST_CASE("resample: constant-RPM warp reproduces the input (one-sample shift)") {
  // At ratio 1 the warp reads position n+1, so output[n] must equal
  // frame[n+1] to spline accuracy at the knots (exact).
  std::mt19937_64 rng(3);
  std::vector<double> frame(512);
  for (auto& v : frame) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  const std::vector<double> rpm(frame.size(), 1800.0);

  const std::vector<double> out = resample_to_constant_pitch(frame, rpm, 1800.0);
  REQUIRE(out.size() == frame.size() - 1);
  for (std::size_t n = 0; n < out.size(); ++n)
    CHECK(out[n] == doctest::Approx(frame[n + 1]).epsilon(1e-9));
}

TEST_CASE("resample: half-rate envelope halves a pure tone") {
  const double fs = 16000.0;
  const std::size_t n = 16384;
  const std::vector<double> frame = testsupport::sine(100.0, fs, n);
  const std::vector<double> rpm(n, 6000.0);

  const std::vector<double> out = resample_to_constant_pitch(frame, rpm, 3000.0);
  REQUIRE(out.size() >= n / 2 - 2);
  const double peak = testsupport::dominant_frequency(out, fs);
  CHECK(peak == doctest::Approx(50.0).epsilon(0.01));
}

TEST_CASE("resample: chirp tracking an RPM ramp lands on the target pitch") {
  const double fs = 16000.0;
  const std::size_t n = 65536;
  std::vector<double> rpm(n), frame(n);
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rpm[i] = 2400.0 + 1200.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    phase += 2.0 * std::numbers::pi * (rpm[i] / 60.0) / fs;
    frame[i] = std::sin(phase);
  }

  const std::vector<double> out = resample_to_constant_pitch(frame, rpm, 3000.0);
  REQUIRE(out.size() > 60000);

  // Dominant peak within half a bin of 50 Hz on the analysis grid
  // (M = 6400, padded x4 -> 0.625 Hz spacing).
  std::vector<double> seg(out.begin(), out.begin() + 6400);
  const double peak = testsupport::dominant_frequency(seg, fs);
  CHECK(std::abs(peak - 50.0) <= 0.5 * fs / 25600.0 + 1e-9);
}

TEST_CASE("resample: envelope length mismatch is an input error") {
  const std::vector<double> frame(100, 0.0);
  const std::vector<double> rpm(99, 3000.0);
  CHECK_THROWS_AS(resample_to_constant_pitch(frame, rpm, 3000.0), InputError);
}

TEST_CASE("spline: interior error on band-limited sinusoids below -60 dB") {
  const std::size_t n = 4096;
  for (double frel : {0.05, 0.095}) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
      y[i] = std::sin(2.0 * std::numbers::pi * frel * static_cast<double>(i));
    const CubicSpline spline(y);

    // Worst-case half-integer evaluation away from the natural-boundary
    // panels (natural ends force zero curvature, so edge panels are
    // excluded from the interior bound).
    double err_acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 32; i + 33 < n; ++i) {
      const double x = static_cast<double>(i) + 0.5;
      const double truth = std::sin(2.0 * std::numbers::pi * frel * x);
      const double e = spline(x) - truth;
      err_acc += e * e;
      ++count;
    }
    const double rel_rms = std::sqrt(err_acc / static_cast<double>(count)) / std::sqrt(0.5);
    CHECK(20.0 * std::log10(rel_rms) < -60.0);
  }
}

TEST_CASE("spline: knot evaluation is exact") {
  std::mt19937_64 rng(5);
  std::vector<double> y(64);
  for (auto& v : y) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  const CubicSpline spline(y);
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(spline(static_cast<double>(i)) == doctest::Approx(y[i]).epsilon(1e-12));
}
