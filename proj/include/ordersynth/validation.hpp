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

#include <filesystem>
#include <ostream>
#include <vector>

#include "ordersynth/timbre_table.hpp"

namespace ordersynth {

/// Per-order magnitude statistics over (RPM, torque) bins, aggregated from
/// analyzed frames. Occupancy separates measured cells from filled ones;
/// distribution output only reports measured cells.
TimbreTable order_distribution_map(const std::vector<OrderFrameResult>& results,
                                   std::span<const double> orders,
                                   std::vector<double> rpm_axis,
                                   std::vector<double> torque_axis);

/// File-driven variant: decodes controls from 4-channel WAVs and runs the
/// repitch + order-analysis pipeline on each. The analysis rate follows
/// each file; the frame length is rescaled to keep the frame duration.
TimbreTable order_distribution_map(const std::vector<std::filesystem::path>& files,
                                   const FrameSpec& spec, const AnalysisConfig& cfg,
                                   std::vector<double> rpm_axis,
                                   std::vector<double> torque_axis);

/// Tab-separated dump: order, rpm, torque, mean magnitude, occupancy.
void write_distribution_tsv(std::ostream& out, const TimbreTable& map,
                            bool occupied_only = true);

struct RoundTripReport {
  std::size_t cells_compared = 0;
  double max_rel_error = 0.0;
  double mean_rel_error = 0.0;
  double worst_order = 0.0;
  double worst_rpm = 0.0;
  double worst_torque = 0.0;
};

/// Compares measured per-order magnitudes against a reference table over
/// cells observed in both, for orders <= max_order and reference
/// magnitudes >= min_magnitude.
RoundTripReport compare_magnitudes(const TimbreTable& measured, const TimbreTable& reference,
                                   double max_order, double min_magnitude = 1e-4);

}  // namespace ordersynth
