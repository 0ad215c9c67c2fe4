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

#include "ordersynth/order_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "ordersynth/fft.hpp"
#include "ordersynth/repitch.hpp"

namespace ordersynth {

namespace {

constexpr double kCentroidMassEpsilon = 1e-9;
constexpr double kMaxMisalignmentBins = 0.1;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> default_orders() {
  std::vector<double> orders(128);
  for (std::size_t i = 0; i < orders.size(); ++i)
    orders[i] = 0.5 * static_cast<double>(i + 1);
  return orders;
}

void AnalysisConfig::validate() const {
  if (periods < 1) throw ParameterError("periods must be >= 1");
  if (padding < 1) throw ParameterError("padding must be >= 1");
  if (sample_rate <= 0) throw ParameterError("sample_rate must be positive");
  if (orders.empty()) throw ParameterError("order list is empty");
  for (std::size_t i = 1; i < orders.size(); ++i) {
    if (orders[i] <= orders[i - 1]) throw ParameterError("orders must be strictly increasing");
  }
}

int window_length(double f0, const AnalysisConfig& cfg) {
  if (f0 <= 0) throw InputError("fundamental frequency must be positive");
  // The epsilon keeps exact-divisor fundamentals (fs*P/f0 integral) from
  // losing a full period to floating-point rounding.
  return static_cast<int>(std::floor(cfg.sample_rate / f0 * cfg.periods + 1e-9));
}

int fft_size(int window_len, const AnalysisConfig& cfg) {
  if (window_len < 1) throw InputError("window length must be >= 1");
  return window_len * cfg.padding;
}

double tukey_weight(double u, double taper) {
  const double a = taper / 2.0;
  if (u < 0.0 || u > 1.0) return 0.0;
  if (u < a) return 0.5 * (1.0 + std::cos(std::numbers::pi * (u / a - 1.0)));
  if (u > 1.0 - a) return 0.5 * (1.0 + std::cos(std::numbers::pi * (u - 1.0 + a) / a));
  return 1.0;
}

double weighted_centroid(std::span<const double> mag, std::span<const double> weight,
                         int first_bin, double fallback) {
  if (mag.size() != weight.size()) throw InputError("centroid mag/weight size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < mag.size(); ++i) {
    const double mw = mag[i] * weight[i];
    num += (static_cast<double>(first_bin) + static_cast<double>(i)) * mw;
    den += mw;
  }
  if (den < kCentroidMassEpsilon) return fallback;
  return num / den;
}

namespace {

/// Log-magnitude parabola through the three bins bracketing round(b_hat),
/// evaluated at b_hat. Falls back to the center-bin magnitude when the
/// three points do not form a peak.
double parabolic_magnitude(const std::vector<double>& mag, double b_hat) {
  auto beta = static_cast<long>(std::lround(b_hat));
  beta = std::clamp(beta, 1L, static_cast<long>(mag.size()) - 2);
  const double m0 = mag[static_cast<std::size_t>(beta - 1)];
  const double m1 = mag[static_cast<std::size_t>(beta)];
  const double m2 = mag[static_cast<std::size_t>(beta + 1)];
  if (m1 < m0 || m1 < m2) return m1;
  constexpr double kFloor = 1e-300;
  const double la = std::log(m0 + kFloor);
  const double lb = std::log(m1 + kFloor);
  const double lc = std::log(m2 + kFloor);
  const double x = b_hat - static_cast<double>(beta);
  return std::exp(lb + 0.5 * (lc - la) * x + 0.5 * (la - 2.0 * lb + lc) * x * x);
}

}  // namespace

OrderFrameResult analyze_frame(std::span<const double> frame, double f0, double torque_mean,
                               const AnalysisConfig& cfg) {
  cfg.validate();
  const int window_len = window_length(f0, cfg);
  if (window_len < 2) throw InputError("analysis window degenerates below two samples");
  if (frame.size() < static_cast<std::size_t>(window_len))
    throw InputError("frame shorter than the analysis window");

  const int n_fft = fft_size(window_len, cfg);
  const auto m = static_cast<std::size_t>(window_len);

  // Hann-windowed first M samples, zero-padded by the padding factor. The
  // taper keeps neighbour-order leakage out of each centroid region when
  // deviations break the exact-bin alignment; coherent gain is exactly 1/2.
  std::vector<double> windowed(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double w =
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m)));
    windowed[i] = frame[i] * w;
  }
  RealFft fft(static_cast<std::size_t>(n_fft));
  const std::vector<double> mag = fft.magnitude(windowed);
  const double amplitude_scale = 4.0 / static_cast<double>(m);  // 2/(M * hann gain)

  const double b1 = f0 * static_cast<double>(n_fft) / cfg.sample_rate;
  const double design_b1 = static_cast<double>(cfg.periods * cfg.padding);
  const double misalignment = std::abs(b1 - design_b1);
  if (misalignment >= kMaxMisalignmentBins)
    throw InputError("bin misalignment " + std::to_string(misalignment) +
                     " exceeds 0.1 bins; f0 incompatible with the analysis rate");

  const double nyquist_bin = static_cast<double>(n_fft) / 2.0;
  const std::size_t n_orders = cfg.orders.size();

  OrderFrameResult result;
  result.rpm_mean = f0 * 60.0;
  result.torque_mean = torque_mean;
  result.bin_misalignment = misalignment;
  result.delta.assign(n_orders, 0.0);
  result.magnitude.assign(n_orders, 0.0);
  result.out_of_band.assign(n_orders, 0);

  for (std::size_t oi = 0; oi < n_orders; ++oi) {
    const double h = cfg.orders[oi];
    const double bh = h * b1;
    // Region bounds at midpoints to the neighbouring orders; the first
    // order extends to its half (midpoint to DC), the last extends
    // symmetrically.
    double lo, hi;
    if (oi == 0) {
      lo = bh / 2.0;
    } else {
      lo = bh - (bh - cfg.orders[oi - 1] * b1) / 2.0;
    }
    if (oi + 1 < n_orders) {
      hi = bh + (cfg.orders[oi + 1] * b1 - bh) / 2.0;
    } else {
      hi = bh + (bh - cfg.orders[oi - 1] * b1) / 2.0;
    }

    if (hi > nyquist_bin) {
      result.out_of_band[oi] = 1;
      continue;
    }

    const int k0 = std::max(0, static_cast<int>(std::ceil(lo)));
    const int k1 = std::min(static_cast<int>(nyquist_bin), static_cast<int>(std::floor(hi)));
    if (k1 < k0) {
      result.out_of_band[oi] = 1;
      continue;
    }

    const auto region_len = static_cast<std::size_t>(k1 - k0 + 1);
    std::vector<double> weights(region_len);
    for (std::size_t i = 0; i < region_len; ++i) {
      const double u = (static_cast<double>(k0) + static_cast<double>(i) - lo) / (hi - lo);
      weights[i] = tukey_weight(u);
    }

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < region_len; ++i) {
      const double mw = mag[static_cast<std::size_t>(k0) + i] * weights[i];
      num += (static_cast<double>(k0) + static_cast<double>(i)) * mw;
      den += mw;
    }
    if (den < kCentroidMassEpsilon) {
      // Silent region: keep the ideal position, report zero deviation and
      // magnitude instead of a centroid of the noise floor.
      continue;
    }
    const double b_hat = num / den;
    result.delta[oi] = b_hat / b1 - h;
    result.magnitude[oi] = parabolic_magnitude(mag, b_hat) * amplitude_scale;
  }
  return result;
}

AnalysisRun analyze_recording(const AudioBuffer& audio, const ControlTrace& trace,
                              const FrameSpec& spec, const AnalysisConfig& cfg) {
  cfg.validate();
  if (audio.channel_count() > 2)
    throw InputError("analyze_recording expects mono or stereo audio (demux 4-channel input first)");

  AudioBuffer mono;
  if (audio.channel_count() == 1) {
    mono = audio;
  } else {
    mono = AudioBuffer(1, audio.frame_count(), audio.sample_rate());
    for (std::size_t i = 0; i < audio.frame_count(); ++i)
      mono.channel(0)[i] = 0.5 * (audio.channel(0)[i] + audio.channel(1)[i]);
  }

  AnalysisRun run;
  for (const Frame& frame : segment_frames(mono, trace, spec)) {
    const double rpm_mean =
        std::accumulate(frame.trace.rpm.begin(), frame.trace.rpm.end(), 0.0) /
        static_cast<double>(frame.trace.rpm.size());
    const double torque_mean =
        std::accumulate(frame.trace.torque.begin(), frame.trace.torque.end(), 0.0) /
        static_cast<double>(frame.trace.torque.size());
    const double f0 = rpm_mean / 60.0;

    const std::vector<double> repitched =
        resample_to_constant_pitch(frame.audio.channel(0), frame.trace.rpm, rpm_mean);
    if (repitched.size() < static_cast<std::size_t>(window_length(f0, cfg))) {
      ++run.skipped_short;
      continue;
    }
    run.frames.push_back(analyze_frame(repitched, f0, torque_mean, cfg));
  }
  return run;
}

void save_results(const std::filesystem::path& path, const ResultsFile& results) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot create " + path.string());

  f << "# ordersynth-results v1\n";
  f << "# fs " << fmt17(results.sample_rate) << " periods " << results.periods << " pad "
    << results.padding << "\n";
  f << "# orders";
  for (double h : results.orders) f << ' ' << fmt17(h);
  f << "\n";
  f << "# columns: frame rpm_mean torque_mean misalign_bins oob_mask";
  f << " then per order: delta mag\n";

  for (std::size_t i = 0; i < results.frames.size(); ++i) {
    const OrderFrameResult& r = results.frames[i];
    if (r.delta.size() != results.orders.size())
      throw InputError("frame result order count differs from header");
    f << i << '\t' << fmt17(r.rpm_mean) << '\t' << fmt17(r.torque_mean) << '\t'
      << fmt17(r.bin_misalignment) << '\t';
    std::string mask;
    for (std::size_t k = 0; k < r.out_of_band.size(); ++k) {
      if (r.out_of_band[k]) {
        if (!mask.empty()) mask += ',';
        mask += std::to_string(k);
      }
    }
    f << (mask.empty() ? "-" : mask);
    for (std::size_t k = 0; k < r.delta.size(); ++k)
      f << '\t' << fmt17(r.delta[k]) << '\t' << fmt17(r.magnitude[k]);
    f << '\n';
  }
  if (!f) throw IoError("write failed for " + path.string());
}

ResultsFile load_results(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());

  std::string line;
  if (!std::getline(f, line) || line != "# ordersynth-results v1")
    throw FormatError(path.string() + ": not an ordersynth results file");

  ResultsFile out;
  if (!std::getline(f, line)) throw FormatError(path.string() + ": truncated header");
  {
    std::istringstream ss(line);
    std::string hash, fs_tag, periods_tag, pad_tag;
    if (!(ss >> hash >> fs_tag >> out.sample_rate >> periods_tag >> out.periods >> pad_tag >>
          out.padding) ||
        fs_tag != "fs")
      throw FormatError(path.string() + ": malformed fs header line");
  }
  if (!std::getline(f, line) || line.rfind("# orders", 0) != 0)
    throw FormatError(path.string() + ": missing orders header line");
  {
    std::istringstream ss(line.substr(8));
    double h;
    while (ss >> h) out.orders.push_back(h);
    if (out.orders.empty()) throw FormatError(path.string() + ": empty order list");
  }
  std::getline(f, line);  // columns comment

  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::size_t index = 0;
    OrderFrameResult r;
    std::string mask;
    if (!(ss >> index >> r.rpm_mean >> r.torque_mean >> r.bin_misalignment >> mask))
      throw FormatError(path.string() + ": malformed frame record");
    const std::size_t n = out.orders.size();
    r.delta.resize(n);
    r.magnitude.resize(n);
    r.out_of_band.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (!(ss >> r.delta[k] >> r.magnitude[k]))
        throw FormatError(path.string() + ": frame record shorter than the order list");
    }
    if (mask != "-") {
      std::istringstream ms(mask);
      std::string tok;
      while (std::getline(ms, tok, ',')) {
        const auto idx = static_cast<std::size_t>(std::stoul(tok));
        if (idx >= n) throw FormatError(path.string() + ": out-of-band index beyond order list");
        r.out_of_band[idx] = 1;
      }
    }
    out.frames.push_back(std::move(r));
  }
  return out;
}

}  // namespace ordersynth
