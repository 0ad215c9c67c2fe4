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

#include "ordersynth/validation.hpp"

#include <cmath>
#include <cstdio>

#include "ordersynth/annotation_codec.hpp"
#include "ordersynth/wav_io.hpp"

namespace ordersynth {

TimbreTable order_distribution_map(const std::vector<OrderFrameResult>& results,
                                   std::span<const double> orders,
                                   std::vector<double> rpm_axis,
                                   std::vector<double> torque_axis) {
  return build_table(results, orders, std::move(rpm_axis), std::move(torque_axis),
                     "distribution");
}

TimbreTable order_distribution_map(const std::vector<std::filesystem::path>& files,
                                   const FrameSpec& spec, const AnalysisConfig& cfg,
                                   std::vector<double> rpm_axis,
                                   std::vector<double> torque_axis) {
  if (files.empty()) throw InputError("no input files for the distribution map");

  std::vector<OrderFrameResult> results;
  for (const auto& path : files) {
    const AudioBuffer buffer = read_wav(path);
    if (buffer.channel_count() != 4)
      throw FormatError(path.string() + ": distribution input must be 4-channel");
    auto [stereo, trace] = demux(buffer);

    FrameSpec file_spec = spec;
    AnalysisConfig file_cfg = cfg;
    if (buffer.sample_rate() != cfg.sample_rate) {
      // Keep the frame duration when the file rate differs from the
      // configured analysis rate.
      const double scale = buffer.sample_rate() / spec.analysis_rate;
      file_spec.frame_length =
          static_cast<int>(std::llround(static_cast<double>(spec.frame_length) * scale));
      file_spec.analysis_rate = buffer.sample_rate();
      file_cfg.sample_rate = buffer.sample_rate();
    }

    AnalysisRun run = analyze_recording(stereo, trace, file_spec, file_cfg);
    results.insert(results.end(), run.frames.begin(), run.frames.end());
  }
  if (results.empty()) throw InputError("no analyzable frames in the distribution inputs");
  return order_distribution_map(results, cfg.orders, std::move(rpm_axis),
                                std::move(torque_axis));
}

void write_distribution_tsv(std::ostream& out, const TimbreTable& map, bool occupied_only) {
  out << "order\trpm\ttorque\tmean_magnitude\tcount\n";
  char buf[128];
  for (std::size_t h = 0; h < map.order_count(); ++h) {
    for (std::size_t r = 0; r < map.rpm_axis().size(); ++r) {
      for (std::size_t t = 0; t < map.torque_axis().size(); ++t) {
        if (occupied_only && !map.observed(r, t)) continue;
        std::snprintf(buf, sizeof(buf), "%g\t%g\t%g\t%.9g\t%ld\n", map.orders()[h],
                      map.rpm_axis()[r], map.torque_axis()[t], map.magnitude_at(r, t, h),
                      map.occupancy(r, t));
        out << buf;
      }
    }
  }
}

RoundTripReport compare_magnitudes(const TimbreTable& measured, const TimbreTable& reference,
                                   double max_order, double min_magnitude) {
  if (measured.rpm_axis() != reference.rpm_axis() ||
      measured.torque_axis() != reference.torque_axis())
    throw InputError("magnitude comparison requires identical grids");
  if (measured.orders() != reference.orders())
    throw InputError("magnitude comparison requires identical order lists");

  RoundTripReport report;
  double total = 0.0;
  for (std::size_t r = 0; r < reference.rpm_axis().size(); ++r) {
    for (std::size_t t = 0; t < reference.torque_axis().size(); ++t) {
      if (!measured.observed(r, t) || !reference.observed(r, t)) continue;
      for (std::size_t h = 0; h < reference.order_count(); ++h) {
        if (reference.orders()[h] > max_order) break;
        const double ref = reference.magnitude_at(r, t, h);
        if (ref < min_magnitude) continue;
        const double rel = std::abs(measured.magnitude_at(r, t, h) - ref) / ref;
        total += rel;
        ++report.cells_compared;
        if (rel > report.max_rel_error) {
          report.max_rel_error = rel;
          report.worst_order = reference.orders()[h];
          report.worst_rpm = reference.rpm_axis()[r];
          report.worst_torque = reference.torque_axis()[t];
        }
      }
    }
  }
  if (report.cells_compared > 0)
    report.mean_rel_error = total / static_cast<double>(report.cells_compared);
  return report;
}

}  // namespace ordersynth
