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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ordersynth/audio_buffer.hpp"
#include "ordersynth/noise.hpp"
#include "ordersynth/timbre_table.hpp"

namespace ordersynth {

/// Burst envelopes follow the firing-related low orders.
inline constexpr std::array<double, 4> kBurstOrders{0.5, 1.0, 1.5, 2.0};

struct SynthesisParams {
  double pink_depth = 0.2;  // alpha, pink amplitude-modulation depth in [0, 1]
  std::array<double, 4> burst_weights{0.25, 0.25, 0.25, 0.25};
  std::array<double, 4> burst_exponents{4.0, 4.0, 4.0, 4.0};
  double burst_lpf_hz = 2000.0;
  double burst_gain = 0.05;  // mix level of the burst path into the chain
  std::vector<double> resonator_gains{0.55, 0.45, 0.40, 0.30};     // each < 1
  std::vector<double> resonator_delays_ms{4.2, 6.7, 9.1, 13.8};
  double stereo_delay_offset_ms = 0.3;  // added to right-channel resonator delays
  double output_rate = 48000.0;
  double master_gain = 1.0;
  std::uint64_t seed = 1;

  void validate() const;
};

void save_params(const std::filesystem::path& path, const SynthesisParams& params);
SynthesisParams load_params(const std::filesystem::path& path);

/// Bank of parallel feedback combs. Each comb recirculates its own output
/// through a fractional delay (linear interpolation); the bank output is
/// the dry input plus every comb's feedback tap.
class ResonatorBank {
 public:
  ResonatorBank(std::span<const double> gains, std::span<const double> delays_seconds,
                double sample_rate);

  double process(double x);

  std::size_t size() const { return combs_.size(); }

 private:
  struct Comb {
    double gain;
    std::size_t int_delay;
    double frac;
    std::vector<double> line;
    std::size_t write = 0;
  };
  std::vector<Comb> combs_;
};

/// Oscillator-bank state: one phase accumulator and mute ramp per order.
struct HarmonicVoices {
  explicit HarmonicVoices(std::size_t n_orders)
      : phases(n_orders, 0.0), gates(n_orders, 0.0) {}

  std::vector<double> phases;  // wrapped to [0, 2*pi)
  std::vector<double> gates;   // 0..1, 10 ms ramps at mute boundaries
  bool initialized = false;
};

/// White-noise burst machinery: envelope phases, shaping low-pass, RNG.
struct BurstState {
  BurstState(const SynthesisParams& params, double sample_rate, std::uint64_t seed)
      : lpf(params.burst_lpf_hz, sample_rate), rng(seed) {}

  std::array<double, 4> phases{};
  ThirdOrderLowpass lpf;
  Rng rng;
};

/// Additive render: 128 sine voices at (h + delta_h(RPM, torque)) * f0 with
/// amplitudes from the table, phase-accumulated per sample. Voices whose
/// frequency reaches Nyquist are muted through 10 ms ramps.
std::vector<double> synth_harmonics(const ControlTrace& trace, const TimbreTable& table,
                                    HarmonicVoices& voices);

/// out[n] = x[n] * (1 - alpha + alpha * pink[n]), pink at unit RMS.
/// alpha = 0 returns the input exactly.
std::vector<double> synth_pink_modulation(std::span<const double> x,
                                          const SynthesisParams& params, PinkNoise& pink);

/// Low-passed white noise shaped by sum_m w_m * |sin(phi_m)|^gamma_m with
/// phi_m tracking the burst orders.
std::vector<double> synth_burst_noise(const ControlTrace& trace, const SynthesisParams& params,
                                      BurstState& state);

/// Parallel feedback-comb resonators; all gains zero returns the input
/// exactly.
std::vector<double> synth_resonators(std::span<const double> s, ResonatorBank& bank);

struct RenderInfo {
  double peak = 0.0;                // pre-normalization peak across channels
  double normalization_gain = 1.0;  // 1.0 unless limiting was required
  double render_seconds = 0.0;      // wall-clock synthesis time
};

/// Full stereo render: shared harmonic core, per-channel pink/burst noise
/// streams, per-channel resonator delays (right offset by
/// stereo_delay_offset_ms). Output is scaled to -1 dBFS only when the peak
/// would clip 16-bit PCM; the applied gain is reported through `info`.
/// Traces at other rates are linearly upsampled to params.output_rate.
AudioBuffer synthesize(const ControlTrace& trace, const TimbreTable& table,
                       const SynthesisParams& params, RenderInfo* info = nullptr);

}  // namespace ordersynth
