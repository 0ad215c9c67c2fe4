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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ordersynth/audio_buffer.hpp"
#include "ordersynth/framing.hpp"

namespace ordersynth {

/// 128 half-integer engine orders, 0.5 .. 64.0.
std::vector<double> default_orders();

struct AnalysisConfig {
  int periods = 20;               // fundamental periods per window (P)
  int padding = 4;                // zero-padding factor (p)
  double sample_rate = 16000.0;   // analysis rate (fs)
  std::vector<double> orders = default_orders();

  void validate() const;
};

/// Per-order deviation/magnitude extraction for one analyzed frame.
/// Deviations are fractional order offsets (positive = sharp); magnitudes
/// are linear sine amplitudes.
struct OrderFrameResult {
  double rpm_mean = 0.0;
  double torque_mean = 0.0;
  double bin_misalignment = 0.0;  // |f0*N_FFT/fs - P*p|, recorded per frame
  std::vector<double> delta;
  std::vector<double> magnitude;
  std::vector<std::uint8_t> out_of_band;  // order region crossed Nyquist
};

/// Analysis window length: floor(fs / f0 * P) samples.
int window_length(double f0, const AnalysisConfig& cfg);

/// Zero-padded transform size: M * p. Bin spacing fs/N puts order h at
/// fractional bin h * f0 * N / fs (= h * P * p under exact alignment).
int fft_size(int window_len, const AnalysisConfig& cfg);

/// Magnitude-weighted centroid over a spectral region. `first_bin` is the
/// absolute index of mag[0]; weights pair with mag. Returns `fallback`
/// when the weighted mass is below threshold (silent regions).
double weighted_centroid(std::span<const double> mag, std::span<const double> weight,
                         int first_bin, double fallback);

/// Tapered-cosine region weighting: unity over the central half, raised
/// cosine over the outer quarters, zero at the edges.
double tukey_weight(double u, double taper = 0.5);

/// Extracts per-order deviations and magnitudes from a pitch-stabilized
/// mono frame whose fundamental is f0. Orders whose analysis region
/// crosses Nyquist are flagged out-of-band with delta = magnitude = 0.
OrderFrameResult analyze_frame(std::span<const double> frame, double f0, double torque_mean,
                               const AnalysisConfig& cfg);

/// Full per-recording pipeline: segment, repitch each kept frame to its
/// mean RPM, analyze. Stereo input is downmixed to mono. Frames whose
/// repitched output is shorter than the analysis window are skipped.
struct AnalysisRun {
  std::vector<OrderFrameResult> frames;
  std::size_t skipped_short = 0;
};
AnalysisRun analyze_recording(const AudioBuffer& audio, const ControlTrace& trace,
                              const FrameSpec& spec, const AnalysisConfig& cfg);

/// Frame-result dump: one text record per frame carrying rpm, torque,
/// misalignment, out-of-band mask and 128 (delta, magnitude) pairs.
struct ResultsFile {
  std::vector<double> orders;
  double sample_rate = 16000.0;
  int periods = 20;
  int padding = 4;
  std::vector<OrderFrameResult> frames;
};

void save_results(const std::filesystem::path& path, const ResultsFile& results);
ResultsFile load_results(const std::filesystem::path& path);

}  // namespace ordersynth
