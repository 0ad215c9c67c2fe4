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
#include <optional>
#include <string>
#include <vector>

#include "ordersynth/synth.hpp"

namespace ordersynth {

struct VariationRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Parameter regime for one set: fixed base parameters plus optional
/// uniform ranges drawn per generated item. Values are drawn in [lo, hi);
/// degenerate ranges (lo == hi) yield the exact value.
struct VariationSpec {
  SynthesisParams base;
  std::optional<VariationRange> pink_depth;
  std::optional<VariationRange> burst_gain;
  std::optional<VariationRange> burst_lpf_hz;
  std::optional<VariationRange> burst_exponent;       // shared draw for all four envelopes
  std::optional<VariationRange> resonator_gain;       // drawn per resonator
  std::optional<VariationRange> resonator_delay_ms;   // drawn per resonator

  void validate() const;
};

/// Deterministic draw: identical (spec, seed, index) gives identical
/// parameters regardless of scheduling.
SynthesisParams sample_variation(const VariationSpec& spec, std::uint64_t seed,
                                 std::uint64_t index);

struct GenerationSet {
  std::string name;
  int variations = 1;
  VariationSpec variation;
};

struct GenerationPlan {
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;
  std::vector<std::filesystem::path> tables;
  std::vector<std::filesystem::path> traces;
  std::vector<GenerationSet> sets;

  void validate() const;
};

/// Parses a plan JSON file; relative paths resolve against the plan's
/// directory.
GenerationPlan load_plan(const std::filesystem::path& path);

struct ManifestRow {
  std::string file;       // relative to output_dir
  std::string engine_id;
  std::string trace_id;
  std::string set_name;
  int variant = 0;
  std::string params_hash;
  double duration_s = 0.0;
  std::size_t samples = 0;
  std::string status;     // ok | exists | error: <message>
};

struct GenerateReport {
  std::vector<ManifestRow> rows;  // plan order
  std::size_t written = 0;
  std::size_t skipped_existing = 0;
  std::size_t failed = 0;
  std::filesystem::path manifest_path;
};

/// Runs the full plan: per item decode trace, synthesize, mux, write a
/// 4-channel WAV, and record a manifest row. Existing valid outputs are
/// skipped; item failures are recorded and the run continues. `jobs`
/// bounds the worker pool; output bytes and the manifest are independent
/// of the worker count.
GenerateReport generate(const GenerationPlan& plan, int jobs = 1);

}  // namespace ordersynth
