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

#include "ordersynth/synth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

namespace ordersynth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMuteRampSeconds = 0.010;
// Largest peak that still fits 16-bit PCM after rounding.
constexpr double kClipThreshold = 32767.0 / 32768.0;
constexpr double kLimitTarget = 0.8912509381337456;  // -1 dBFS

double fast_pow_abs(double base, double exponent) {
  // |sin|^gamma with integral gamma dominates; small-integer cases avoid
  // the std::pow call in the per-sample loop.
  if (exponent == 4.0) {
    const double b2 = base * base;
    return b2 * b2;
  }
  if (exponent == 2.0) return base * base;
  if (exponent == 1.0) return base;
  return std::pow(base, exponent);
}

}  // namespace

void SynthesisParams::validate() const {
  if (!(pink_depth >= 0.0 && pink_depth <= 1.0))
    throw ParameterError("pink_depth must lie in [0, 1]");
  for (double w : burst_weights)
    if (w < 0.0) throw ParameterError("burst weights must be non-negative");
  for (double g : burst_exponents)
    if (g <= 0.0) throw ParameterError("burst exponents must be positive");
  if (output_rate <= 0.0) throw ParameterError("output_rate must be positive");
  if (burst_lpf_hz <= 0.0 || burst_lpf_hz >= output_rate / 2.0)
    throw ParameterError("burst_lpf_hz must lie in (0, output_rate/2)");
  if (burst_gain < 0.0) throw ParameterError("burst_gain must be non-negative");
  if (resonator_gains.size() != resonator_delays_ms.size())
    throw ParameterError("resonator gain and delay lists must have equal length");
  for (double g : resonator_gains)
    if (!(g >= 0.0 && g < 1.0)) throw ParameterError("resonator gains must lie in [0, 1)");
  for (double d : resonator_delays_ms)
    if (d <= 0.0) throw ParameterError("resonator delays must be positive");
  if (stereo_delay_offset_ms < 0.0)
    throw ParameterError("stereo_delay_offset_ms must be non-negative");
  if (master_gain <= 0.0) throw ParameterError("master_gain must be positive");
}

void save_params(const std::filesystem::path& path, const SynthesisParams& p) {
  nlohmann::json j;
  j["pink_depth"] = p.pink_depth;
  j["burst_weights"] = p.burst_weights;
  j["burst_exponents"] = p.burst_exponents;
  j["burst_lpf_hz"] = p.burst_lpf_hz;
  j["burst_gain"] = p.burst_gain;
  j["resonator_gains"] = p.resonator_gains;
  j["resonator_delays_ms"] = p.resonator_delays_ms;
  j["stereo_delay_offset_ms"] = p.stereo_delay_offset_ms;
  j["output_rate"] = p.output_rate;
  j["master_gain"] = p.master_gain;
  j["seed"] = p.seed;
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot create " + path.string());
  f << j.dump(2) << "\n";
  if (!f) throw IoError("write failed for " + path.string());
}

SynthesisParams load_params(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  SynthesisParams p;
  try {
    if (j.contains("pink_depth")) p.pink_depth = j["pink_depth"].get<double>();
    if (j.contains("burst_weights")) p.burst_weights = j["burst_weights"].get<std::array<double, 4>>();
    if (j.contains("burst_exponents"))
      p.burst_exponents = j["burst_exponents"].get<std::array<double, 4>>();
    if (j.contains("burst_lpf_hz")) p.burst_lpf_hz = j["burst_lpf_hz"].get<double>();
    if (j.contains("burst_gain")) p.burst_gain = j["burst_gain"].get<double>();
    if (j.contains("resonator_gains"))
      p.resonator_gains = j["resonator_gains"].get<std::vector<double>>();
    if (j.contains("resonator_delays_ms"))
      p.resonator_delays_ms = j["resonator_delays_ms"].get<std::vector<double>>();
    if (j.contains("stereo_delay_offset_ms"))
      p.stereo_delay_offset_ms = j["stereo_delay_offset_ms"].get<double>();
    if (j.contains("output_rate")) p.output_rate = j["output_rate"].get<double>();
    if (j.contains("master_gain")) p.master_gain = j["master_gain"].get<double>();
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  p.validate();
  return p;
}

ResonatorBank::ResonatorBank(std::span<const double> gains,
                             std::span<const double> delays_seconds, double sample_rate) {
  if (gains.size() != delays_seconds.size())
    throw ParameterError("resonator gain and delay lists must have equal length");
  if (sample_rate <= 0) throw ParameterError("sample rate must be positive");
  combs_.reserve(gains.size());
  for (std::size_t k = 0; k < gains.size(); ++k) {
    if (!(gains[k] >= 0.0 && gains[k] < 1.0))
      throw ParameterError("resonator gain " + std::to_string(gains[k]) + " must lie in [0, 1)");
    const double delay = delays_seconds[k] * sample_rate;
    if (delay < 1.0) throw ParameterError("resonator delay shorter than one sample");
    Comb comb;
    comb.gain = gains[k];
    comb.int_delay = static_cast<std::size_t>(delay);
    comb.frac = delay - static_cast<double>(comb.int_delay);
    comb.line.assign(comb.int_delay + 2, 0.0);
    combs_.push_back(std::move(comb));
  }
}

double ResonatorBank::process(double x) {
  double wet = 0.0;
  for (Comb& c : combs_) {
    const std::size_t len = c.line.size();
    const std::size_t i0 = (c.write + len - c.int_delay) % len;
    const std::size_t i1 = (i0 + len - 1) % len;
    const double delayed = (1.0 - c.frac) * c.line[i0] + c.frac * c.line[i1];
    const double tap = c.gain * delayed;
    c.line[c.write] = x + tap;  // the comb's own output recirculates
    c.write = (c.write + 1) % len;
    wet += tap;
  }
  return x + wet;
}

std::vector<double> synth_harmonics(const ControlTrace& trace, const TimbreTable& table,
                                    HarmonicVoices& voices) {
  trace.check_consistent();
  if (trace.sample_rate <= 0) throw InputError("trace has no sample rate");
  const std::size_t n_orders = table.order_count();
  if (voices.phases.size() != n_orders || voices.gates.size() != n_orders)
    throw InputError("voice state size differs from the table order count");

  const double fs = trace.sample_rate;
  const double nyquist = fs / 2.0;
  const double gate_step = 1.0 / (kMuteRampSeconds * fs);
  const std::size_t n = trace.size();
  const std::span<const double> orders = table.orders();

  std::vector<double> out(n, 0.0);
  std::vector<double> delta(n_orders), amp(n_orders);

  for (std::size_t i = 0; i < n; ++i) {
    const double f0 = trace.rpm[i] / 60.0;
    table.lookup(trace.rpm[i], trace.torque[i], delta, amp);

    double acc = 0.0;
    for (std::size_t h = 0; h < n_orders; ++h) {
      const double freq = (orders[h] + delta[h]) * f0;
      const double target = freq < nyquist ? 1.0 : 0.0;
      double gate = voices.gates[h];
      if (!voices.initialized) {
        gate = target;
      } else if (gate < target) {
        gate = std::min(target, gate + gate_step);
      } else if (gate > target) {
        gate = std::max(target, gate - gate_step);
      }
      voices.gates[h] = gate;

      double phase = voices.phases[h];
      const double a = amp[h] * gate;
      if (a != 0.0) acc += a * std::sin(phase);
      phase += kTwoPi * freq / fs;
      if (phase >= kTwoPi) phase -= kTwoPi * std::floor(phase / kTwoPi);
      voices.phases[h] = phase;
    }
    voices.initialized = true;
    out[i] = acc;
  }
  return out;
}

std::vector<double> synth_pink_modulation(std::span<const double> x,
                                          const SynthesisParams& params, PinkNoise& pink) {
  if (!(params.pink_depth >= 0.0 && params.pink_depth <= 1.0))
    throw ParameterError("pink_depth must lie in [0, 1]");
  const double alpha = params.pink_depth;
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = x[i] * (1.0 - alpha + alpha * pink.next());
  return out;
}

std::vector<double> synth_burst_noise(const ControlTrace& trace, const SynthesisParams& params,
                                      BurstState& state) {
  trace.check_consistent();
  if (trace.sample_rate <= 0) throw InputError("trace has no sample rate");
  const double fs = trace.sample_rate;
  const std::size_t n = trace.size();

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f0 = trace.rpm[i] / 60.0;
    double envelope = 0.0;
    for (std::size_t m = 0; m < kBurstOrders.size(); ++m) {
      const double w = params.burst_weights[m];
      if (w > 0.0)
        envelope += w * fast_pow_abs(std::abs(std::sin(state.phases[m])),
                                     params.burst_exponents[m]);
      double phase = state.phases[m] + kTwoPi * kBurstOrders[m] * f0 / fs;
      if (phase >= kTwoPi) phase -= kTwoPi;
      state.phases[m] = phase;
    }
    out[i] = state.lpf.process(state.rng.bipolar()) * envelope;
  }
  return out;
}

std::vector<double> synth_resonators(std::span<const double> s, ResonatorBank& bank) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = bank.process(s[i]);
  return out;
}

AudioBuffer synthesize(const ControlTrace& trace, const TimbreTable& table,
                       const SynthesisParams& params, RenderInfo* info) {
  params.validate();
  trace.check_consistent();
  const auto t_start = std::chrono::steady_clock::now();

  const ControlTrace* working = &trace;
  ControlTrace upsampled;
  if (trace.sample_rate != params.output_rate) {
    upsampled = resample_trace(trace, params.output_rate);
    working = &upsampled;
  }
  const double fs = params.output_rate;
  const std::size_t n = working->size();

  HarmonicVoices voices(table.order_count());
  const std::vector<double> harmonics = synth_harmonics(*working, table, voices);

  AudioBuffer out(2, n, fs);
  for (int ch = 0; ch < 2; ++ch) {
    PinkNoise pink(derive_seed(params.seed, 10 + static_cast<std::uint64_t>(ch)));
    BurstState burst(params, fs, derive_seed(params.seed, 20 + static_cast<std::uint64_t>(ch)));

    std::vector<double> mixed = synth_pink_modulation(harmonics, params, pink);
    const std::vector<double> bursts = synth_burst_noise(*working, params, burst);
    for (std::size_t i = 0; i < n; ++i) mixed[i] += params.burst_gain * bursts[i];

    std::vector<double> delays(params.resonator_delays_ms.size());
    for (std::size_t k = 0; k < delays.size(); ++k) {
      double ms = params.resonator_delays_ms[k];
      if (ch == 1) ms += params.stereo_delay_offset_ms;
      delays[k] = ms * 1e-3;
    }
    ResonatorBank bank(params.resonator_gains, delays, fs);
    std::vector<double> y = synth_resonators(mixed, bank);
    if (params.master_gain != 1.0)
      for (double& v : y) v *= params.master_gain;
    out.channel(ch) = std::move(y);
  }

  double peak = 0.0;
  for (int ch = 0; ch < 2; ++ch)
    for (double v : out.channel(ch)) peak = std::max(peak, std::abs(v));

  double gain = 1.0;
  if (peak > kClipThreshold) {
    gain = kLimitTarget / peak;
    for (int ch = 0; ch < 2; ++ch)
      for (double& v : out.channel(ch)) v *= gain;
  }

  if (info != nullptr) {
    info->peak = peak;
    info->normalization_gain = gain;
    info->render_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  }
  return out;
}

}  // namespace ordersynth
