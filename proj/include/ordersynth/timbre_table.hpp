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
#include <span>
#include <string>
#include <vector>

#include "ordersynth/order_analysis.hpp"

namespace ordersynth {

/// Per-order deviation and magnitude surfaces over an (RPM, torque) grid.
/// Cells hold the mean of the observations that landed in them; unobserved
/// cells are filled from the nearest observed cell and flagged through a
/// zero occupancy count. Storage is cell-major ([rpm][torque][order]) so a
/// lookup touches four contiguous order slices.
class TimbreTable {
 public:
  TimbreTable() = default;
  TimbreTable(std::string engine_id, std::vector<double> rpm_axis,
              std::vector<double> torque_axis, std::vector<double> orders);

  const std::string& engine_id() const { return engine_id_; }
  const std::vector<double>& rpm_axis() const { return rpm_axis_; }
  const std::vector<double>& torque_axis() const { return torque_axis_; }
  const std::vector<double>& orders() const { return orders_; }

  std::size_t cell_count() const { return rpm_axis_.size() * torque_axis_.size(); }
  std::size_t order_count() const { return orders_.size(); }

  double& delta_at(std::size_t r, std::size_t t, std::size_t h) {
    return delta_[cell_index(r, t) * order_count() + h];
  }
  double delta_at(std::size_t r, std::size_t t, std::size_t h) const {
    return delta_[cell_index(r, t) * order_count() + h];
  }
  double& magnitude_at(std::size_t r, std::size_t t, std::size_t h) {
    return magnitude_[cell_index(r, t) * order_count() + h];
  }
  double magnitude_at(std::size_t r, std::size_t t, std::size_t h) const {
    return magnitude_[cell_index(r, t) * order_count() + h];
  }

  long occupancy(std::size_t r, std::size_t t) const { return occupancy_[cell_index(r, t)]; }
  long& occupancy(std::size_t r, std::size_t t) { return occupancy_[cell_index(r, t)]; }
  bool observed(std::size_t r, std::size_t t) const { return occupancy(r, t) > 0; }

  /// Bilinear interpolation over both axes, per order, independently for
  /// delta and magnitude. Out-of-range queries clamp to the axis bounds.
  void lookup(double rpm, double torque, std::span<double> delta_out,
              std::span<double> magnitude_out) const;

  /// Convenience form returning freshly allocated vectors.
  std::pair<std::vector<double>, std::vector<double>> lookup(double rpm, double torque) const;

  std::size_t cell_index(std::size_t r, std::size_t t) const {
    return r * torque_axis_.size() + t;
  }

 private:
  std::string engine_id_;
  std::vector<double> rpm_axis_;
  std::vector<double> torque_axis_;
  std::vector<double> orders_;
  std::vector<double> delta_;      // cell-major, order-contiguous
  std::vector<double> magnitude_;  // cell-major, order-contiguous
  std::vector<long> occupancy_;
};

/// Default grid: RPM 0..8000 in 250 RPM steps, torque -200..800 Nm in
/// 50 Nm steps.
std::vector<double> default_rpm_axis();
std::vector<double> default_torque_axis();

/// Aggregates frame results into a table: observations are assigned to the
/// nearest bin center, cells average their observations, unobserved cells
/// copy the nearest observed cell (Euclidean distance in bin-index units).
/// Out-of-band orders do not contribute.
TimbreTable build_table(const std::vector<OrderFrameResult>& results,
                        std::span<const double> orders, std::vector<double> rpm_axis,
                        std::vector<double> torque_axis, std::string engine_id = "engine");

void save_table(const std::filesystem::path& path, const TimbreTable& table);
TimbreTable load_table(const std::filesystem::path& path);

}  // namespace ordersynth
