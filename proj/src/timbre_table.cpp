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

#include "ordersynth/timbre_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace ordersynth {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::size_t nearest_bin(const std::vector<double>& axis, double value) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < axis.size(); ++i) {
    const double d = std::abs(axis[i] - value);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

/// Clamped axis interpolation: returns (lower index, fraction toward the
/// next center).
std::pair<std::size_t, double> axis_position(const std::vector<double>& axis, double value) {
  if (value <= axis.front() || axis.size() == 1) return {0, 0.0};
  if (value >= axis.back()) return {axis.size() - 2, 1.0};
  const auto it = std::upper_bound(axis.begin(), axis.end(), value);
  const auto k = static_cast<std::size_t>(it - axis.begin()) - 1;
  return {k, (value - axis[k]) / (axis[k + 1] - axis[k])};
}

}  // namespace

TimbreTable::TimbreTable(std::string engine_id, std::vector<double> rpm_axis,
                         std::vector<double> torque_axis, std::vector<double> orders)
    : engine_id_(std::move(engine_id)),
      rpm_axis_(std::move(rpm_axis)),
      torque_axis_(std::move(torque_axis)),
      orders_(std::move(orders)) {
  if (rpm_axis_.empty() || torque_axis_.empty()) throw ParameterError("table axes are empty");
  for (std::size_t i = 1; i < rpm_axis_.size(); ++i)
    if (rpm_axis_[i] <= rpm_axis_[i - 1]) throw ParameterError("rpm axis must be strictly increasing");
  for (std::size_t i = 1; i < torque_axis_.size(); ++i)
    if (torque_axis_[i] <= torque_axis_[i - 1])
      throw ParameterError("torque axis must be strictly increasing");
  if (orders_.empty()) throw ParameterError("order list is empty");
  delta_.assign(cell_count() * order_count(), 0.0);
  magnitude_.assign(cell_count() * order_count(), 0.0);
  occupancy_.assign(cell_count(), 0);
}

void TimbreTable::lookup(double rpm, double torque, std::span<double> delta_out,
                         std::span<double> magnitude_out) const {
  const std::size_t n = order_count();
  if (delta_out.size() != n || magnitude_out.size() != n)
    throw InputError("lookup output spans must match the order count");

  const auto [r0, fr] = axis_position(rpm_axis_, rpm);
  const auto [t0, ft] = axis_position(torque_axis_, torque);
  const std::size_t r1 = std::min(r0 + 1, rpm_axis_.size() - 1);
  const std::size_t t1 = std::min(t0 + 1, torque_axis_.size() - 1);

  const double w00 = (1.0 - fr) * (1.0 - ft);
  const double w10 = fr * (1.0 - ft);
  const double w01 = (1.0 - fr) * ft;
  const double w11 = fr * ft;

  const double* d00 = delta_.data() + cell_index(r0, t0) * n;
  const double* d10 = delta_.data() + cell_index(r1, t0) * n;
  const double* d01 = delta_.data() + cell_index(r0, t1) * n;
  const double* d11 = delta_.data() + cell_index(r1, t1) * n;
  const double* m00 = magnitude_.data() + cell_index(r0, t0) * n;
  const double* m10 = magnitude_.data() + cell_index(r1, t0) * n;
  const double* m01 = magnitude_.data() + cell_index(r0, t1) * n;
  const double* m11 = magnitude_.data() + cell_index(r1, t1) * n;

  for (std::size_t h = 0; h < n; ++h) {
    delta_out[h] = w00 * d00[h] + w10 * d10[h] + w01 * d01[h] + w11 * d11[h];
    magnitude_out[h] = w00 * m00[h] + w10 * m10[h] + w01 * m01[h] + w11 * m11[h];
  }
}

std::pair<std::vector<double>, std::vector<double>> TimbreTable::lookup(double rpm,
                                                                        double torque) const {
  std::vector<double> d(order_count()), m(order_count());
  lookup(rpm, torque, d, m);
  return {std::move(d), std::move(m)};
}

std::vector<double> default_rpm_axis() {
  std::vector<double> axis;
  for (double r = 0.0; r <= 8000.0; r += 250.0) axis.push_back(r);
  return axis;
}

std::vector<double> default_torque_axis() {
  std::vector<double> axis;
  for (double t = -200.0; t <= 800.0; t += 50.0) axis.push_back(t);
  return axis;
}

TimbreTable build_table(const std::vector<OrderFrameResult>& results,
                        std::span<const double> orders, std::vector<double> rpm_axis,
                        std::vector<double> torque_axis, std::string engine_id) {
  if (results.empty()) throw InputError("no frame results to build a table from");

  TimbreTable table(std::move(engine_id), std::move(rpm_axis), std::move(torque_axis),
                    std::vector<double>(orders.begin(), orders.end()));
  const std::size_t n_orders = table.order_count();
  const std::size_t n_r = table.rpm_axis().size();
  const std::size_t n_t = table.torque_axis().size();

  // Per-order observation counts: out-of-band orders are missing data for
  // their frame, not observations of zero.
  std::vector<long> order_counts(table.cell_count() * n_orders, 0);

  for (const OrderFrameResult& r : results) {
    if (r.delta.size() != n_orders)
      throw InputError("frame result order count differs from the table layout");
    const std::size_t ri = nearest_bin(table.rpm_axis(), r.rpm_mean);
    const std::size_t ti = nearest_bin(table.torque_axis(), r.torque_mean);
    table.occupancy(ri, ti) += 1;
    for (std::size_t h = 0; h < n_orders; ++h) {
      if (r.out_of_band[h]) continue;
      table.delta_at(ri, ti, h) += r.delta[h];
      table.magnitude_at(ri, ti, h) += r.magnitude[h];
      order_counts[table.cell_index(ri, ti) * n_orders + h] += 1;
    }
  }

  for (std::size_t ri = 0; ri < n_r; ++ri) {
    for (std::size_t ti = 0; ti < n_t; ++ti) {
      for (std::size_t h = 0; h < n_orders; ++h) {
        const long c = order_counts[table.cell_index(ri, ti) * n_orders + h];
        if (c > 0) {
          table.delta_at(ri, ti, h) /= static_cast<double>(c);
          table.magnitude_at(ri, ti, h) /= static_cast<double>(c);
        }
      }
    }
  }

  // Nearest-observed fill in bin-index units keeps lookups total; ties go
  // to the first cell in scan order.
  std::vector<std::pair<std::size_t, std::size_t>> observed;
  for (std::size_t ri = 0; ri < n_r; ++ri)
    for (std::size_t ti = 0; ti < n_t; ++ti)
      if (table.observed(ri, ti)) observed.emplace_back(ri, ti);

  for (std::size_t ri = 0; ri < n_r; ++ri) {
    for (std::size_t ti = 0; ti < n_t; ++ti) {
      if (table.observed(ri, ti)) continue;
      double best = std::numeric_limits<double>::infinity();
      std::pair<std::size_t, std::size_t> src = observed.front();
      for (const auto& [orr, ott] : observed) {
        const double dr = static_cast<double>(orr) - static_cast<double>(ri);
        const double dt = static_cast<double>(ott) - static_cast<double>(ti);
        const double dist = dr * dr + dt * dt;
        if (dist < best) {
          best = dist;
          src = {orr, ott};
        }
      }
      for (std::size_t h = 0; h < n_orders; ++h) {
        table.delta_at(ri, ti, h) = table.delta_at(src.first, src.second, h);
        table.magnitude_at(ri, ti, h) = table.magnitude_at(src.first, src.second, h);
      }
    }
  }
  return table;
}

void save_table(const std::filesystem::path& path, const TimbreTable& table) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot create " + path.string());

  f << "ordersynth-table v1\n";
  f << "engine_id " << table.engine_id() << "\n";
  f << "rpm_axis " << table.rpm_axis().size();
  for (double v : table.rpm_axis()) f << ' ' << fmt17(v);
  f << "\ntorque_axis " << table.torque_axis().size();
  for (double v : table.torque_axis()) f << ' ' << fmt17(v);
  f << "\norders " << table.order_count();
  for (double v : table.orders()) f << ' ' << fmt17(v);
  f << "\noccupancy";
  for (std::size_t ri = 0; ri < table.rpm_axis().size(); ++ri)
    for (std::size_t ti = 0; ti < table.torque_axis().size(); ++ti)
      f << ' ' << table.occupancy(ri, ti);
  f << "\n";
  for (std::size_t h = 0; h < table.order_count(); ++h) {
    f << "layer " << fmt17(table.orders()[h]) << "\ndelta";
    for (std::size_t ri = 0; ri < table.rpm_axis().size(); ++ri)
      for (std::size_t ti = 0; ti < table.torque_axis().size(); ++ti)
        f << ' ' << fmt17(table.delta_at(ri, ti, h));
    f << "\nmagnitude";
    for (std::size_t ri = 0; ri < table.rpm_axis().size(); ++ri)
      for (std::size_t ti = 0; ti < table.torque_axis().size(); ++ti)
        f << ' ' << fmt17(table.magnitude_at(ri, ti, h));
    f << "\n";
  }
  f << "end\n";
  if (!f) throw IoError("write failed for " + path.string());
}

TimbreTable load_table(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());

  std::string line;
  if (!std::getline(f, line) || line != "ordersynth-table v1")
    throw FormatError(path.string() + ": not an ordersynth table (or unsupported version)");

  std::string engine_id = "engine";
  if (!std::getline(f, line) || line.rfind("engine_id ", 0) != 0)
    throw FormatError(path.string() + ": missing engine_id");
  engine_id = line.substr(10);

  auto read_axis = [&](const char* tag) {
    if (!std::getline(f, line) || line.rfind(tag, 0) != 0)
      throw FormatError(path.string() + ": missing " + tag + " line");
    std::istringstream ss(line.substr(std::string(tag).size()));
    std::size_t n = 0;
    if (!(ss >> n) || n == 0) throw FormatError(path.string() + ": bad axis count");
    std::vector<double> axis(n);
    for (auto& v : axis)
      if (!(ss >> v)) throw FormatError(path.string() + ": truncated axis");
    return axis;
  };

  std::vector<double> rpm_axis = read_axis("rpm_axis");
  std::vector<double> torque_axis = read_axis("torque_axis");
  std::vector<double> orders = read_axis("orders");

  TimbreTable table(engine_id, std::move(rpm_axis), std::move(torque_axis), std::move(orders));

  if (!std::getline(f, line) || line.rfind("occupancy", 0) != 0)
    throw FormatError(path.string() + ": missing occupancy");
  {
    std::istringstream ss(line.substr(9));
    for (std::size_t ri = 0; ri < table.rpm_axis().size(); ++ri)
      for (std::size_t ti = 0; ti < table.torque_axis().size(); ++ti)
        if (!(ss >> table.occupancy(ri, ti)))
          throw FormatError(path.string() + ": truncated occupancy");
  }

  for (std::size_t h = 0; h < table.order_count(); ++h) {
    if (!std::getline(f, line) || line.rfind("layer ", 0) != 0)
      throw FormatError(path.string() + ": missing layer header");
    auto read_surface = [&](const char* tag, auto setter) {
      if (!std::getline(f, line) || line.rfind(tag, 0) != 0)
        throw FormatError(path.string() + ": missing " + std::string(tag) + " surface");
      std::istringstream ss(line.substr(std::string(tag).size()));
      for (std::size_t ri = 0; ri < table.rpm_axis().size(); ++ri)
        for (std::size_t ti = 0; ti < table.torque_axis().size(); ++ti) {
          double v;
          if (!(ss >> v)) throw FormatError(path.string() + ": truncated surface");
          setter(ri, ti, v);
        }
    };
    read_surface("delta", [&](std::size_t ri, std::size_t ti, double v) {
      table.delta_at(ri, ti, h) = v;
    });
    read_surface("magnitude", [&](std::size_t ri, std::size_t ti, double v) {
      table.magnitude_at(ri, ti, h) = v;
    });
  }
  if (!std::getline(f, line) || line != "end")
    throw FormatError(path.string() + ": missing end marker");
  return table;
}

}  // namespace ordersynth
