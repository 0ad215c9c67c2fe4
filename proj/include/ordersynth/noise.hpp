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

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace ordersynth {

/// Deterministic uniform generator. The raw engine is mt19937_64; doubles
/// are derived manually so sequences are identical across standard
/// libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// [-1, 1)
  double bipolar() { return 2.0 * uniform() - 1.0; }

 private:
  std::mt19937_64 engine_;
};

/// Stream-seed derivation so independent components never share a raw seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t state = base + stream * 0x9E3779B97F4A7C15ull;
  state = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9ull;
  state = (state ^ (state >> 27)) * 0x94D049BB133111EBull;
  return state ^ (state >> 31);
}

/// Voss-McCartney pink noise: 12 uniform rows, row k refreshed every 2^k
/// samples via the trailing-zero counter schedule. Output is scaled to
/// unit RMS (rows have variance 1/3, so the sum is divided by sqrt(rows/3)).
class PinkNoise {
 public:
  explicit PinkNoise(std::uint64_t seed, int rows = 12);

  double next();

 private:
  Rng rng_;
  std::vector<double> rows_;
  std::uint64_t counter_ = 0;
  double norm_;
};

/// Third-order (18 dB/oct) low-pass: three cascaded bilinear one-pole
/// sections sharing one cutoff.
class ThirdOrderLowpass {
 public:
  ThirdOrderLowpass(double cutoff_hz, double sample_rate);

  double process(double x);

  void reset();

 private:
  double b_ = 0.0;  // numerator gain per section
  double a_ = 0.0;  // feedback per section
  double x1_[3] = {0, 0, 0};
  double y1_[3] = {0, 0, 0};
};

}  // namespace ordersynth
