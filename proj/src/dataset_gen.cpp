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

#include "ordersynth/dataset_gen.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ordersynth/annotation_codec.hpp"
#include "ordersynth/trace_csv.hpp"
#include "ordersynth/wav_io.hpp"

namespace ordersynth {

namespace {

void check_range(const std::optional<VariationRange>& r, double lo_limit, double hi_limit,
                 const char* what) {
  if (!r) return;
  if (!(r->lo <= r->hi)) throw ParameterError(std::string(what) + " range is inverted");
  if (r->lo < lo_limit || r->hi > hi_limit)
    throw ParameterError(std::string(what) + " range exceeds its validity bounds");
}

double draw(Rng& rng, const std::optional<VariationRange>& r, double fallback) {
  if (!r) return fallback;
  return rng.uniform(r->lo, r->hi);
}

std::string hash_params(const SynthesisParams& p) {
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
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<VariationRange> range_from_json(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2)
    throw FormatError(std::string("range '") + key + "' must be a [lo, hi] pair");
  return VariationRange{v[0].get<double>(), v[1].get<double>()};
}

struct WorkItem {
  std::size_t index;
  std::size_t table_idx;
  std::size_t trace_idx;
  std::size_t set_idx;
  int variant;
};

}  // namespace

void VariationSpec::validate() const {
  base.validate();
  check_range(pink_depth, 0.0, 1.0, "pink_depth");
  check_range(burst_gain, 0.0, 1e6, "burst_gain");
  check_range(burst_lpf_hz, 1e-6, base.output_rate / 2.0, "burst_lpf_hz");
  check_range(burst_exponent, 1e-6, 1e6, "burst_exponent");
  check_range(resonator_gain, 0.0, 1.0, "resonator_gain");
  if (resonator_gain && resonator_gain->hi >= 1.0 && resonator_gain->lo >= 1.0)
    throw ParameterError("resonator_gain range lies at or above 1");
  check_range(resonator_delay_ms, 1e-3, 1e4, "resonator_delay_ms");
}

SynthesisParams sample_variation(const VariationSpec& spec, std::uint64_t seed,
                                 std::uint64_t index) {
  spec.validate();
  Rng rng(derive_seed(seed, index));
  SynthesisParams p = spec.base;
  p.pink_depth = draw(rng, spec.pink_depth, p.pink_depth);
  p.burst_gain = draw(rng, spec.burst_gain, p.burst_gain);
  p.burst_lpf_hz = draw(rng, spec.burst_lpf_hz, p.burst_lpf_hz);
  if (spec.burst_exponent) {
    const double g = rng.uniform(spec.burst_exponent->lo, spec.burst_exponent->hi);
    p.burst_exponents = {g, g, g, g};
  }
  if (spec.resonator_gain) {
    for (double& g : p.resonator_gains)
      g = rng.uniform(spec.resonator_gain->lo, spec.resonator_gain->hi);
  }
  if (spec.resonator_delay_ms) {
    for (double& d : p.resonator_delays_ms)
      d = rng.uniform(spec.resonator_delay_ms->lo, spec.resonator_delay_ms->hi);
  }
  p.seed = derive_seed(seed, index ^ 0x517cc1b727220a95ull);
  p.validate();
  return p;
}

void GenerationPlan::validate() const {
  if (output_dir.empty()) throw ParameterError("plan has no output_dir");
  if (tables.empty()) throw ParameterError("plan lists no tables");
  if (traces.empty()) throw ParameterError("plan lists no traces");
  if (sets.empty()) throw ParameterError("plan lists no sets");
  for (const auto& s : sets) {
    if (s.name.empty()) throw ParameterError("set without a name");
    if (s.variations < 1) throw ParameterError("set '" + s.name + "' needs >= 1 variations");
    s.variation.validate();
  }
}

GenerationPlan load_plan(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }

  const std::filesystem::path base_dir = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base_dir / fp;
  };

  GenerationPlan plan;
  try {
    plan.seed = j.value("seed", std::uint64_t{1});
    plan.output_dir = resolve(j.at("output_dir").get<std::string>());
    for (const auto& t : j.at("tables")) plan.tables.push_back(resolve(t.get<std::string>()));
    for (const auto& t : j.at("traces")) plan.traces.push_back(resolve(t.get<std::string>()));
    for (const auto& s : j.at("sets")) {
      GenerationSet set;
      set.name = s.at("name").get<std::string>();
      set.variations = s.value("variations", 1);
      if (s.contains("base_params")) {
        const auto& bp = s["base_params"];
        SynthesisParams& p = set.variation.base;
        if (bp.contains("pink_depth")) p.pink_depth = bp["pink_depth"].get<double>();
        if (bp.contains("burst_weights"))
          p.burst_weights = bp["burst_weights"].get<std::array<double, 4>>();
        if (bp.contains("burst_exponents"))
          p.burst_exponents = bp["burst_exponents"].get<std::array<double, 4>>();
        if (bp.contains("burst_lpf_hz")) p.burst_lpf_hz = bp["burst_lpf_hz"].get<double>();
        if (bp.contains("burst_gain")) p.burst_gain = bp["burst_gain"].get<double>();
        if (bp.contains("resonator_gains"))
          p.resonator_gains = bp["resonator_gains"].get<std::vector<double>>();
        if (bp.contains("resonator_delays_ms"))
          p.resonator_delays_ms = bp["resonator_delays_ms"].get<std::vector<double>>();
        if (bp.contains("stereo_delay_offset_ms"))
          p.stereo_delay_offset_ms = bp["stereo_delay_offset_ms"].get<double>();
        if (bp.contains("output_rate")) p.output_rate = bp["output_rate"].get<double>();
        if (bp.contains("master_gain")) p.master_gain = bp["master_gain"].get<double>();
      }
      if (s.contains("ranges")) {
        const auto& r = s["ranges"];
        set.variation.pink_depth = range_from_json(r, "pink_depth");
        set.variation.burst_gain = range_from_json(r, "burst_gain");
        set.variation.burst_lpf_hz = range_from_json(r, "burst_lpf_hz");
        set.variation.burst_exponent = range_from_json(r, "burst_exponent");
        set.variation.resonator_gain = range_from_json(r, "resonator_gain");
        set.variation.resonator_delay_ms = range_from_json(r, "resonator_delay_ms");
      }
      plan.sets.push_back(std::move(set));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  plan.validate();
  return plan;
}

GenerateReport generate(const GenerationPlan& plan, int jobs) {
  plan.validate();
  if (jobs < 1) throw ParameterError("jobs must be >= 1");

  // Shared read-only inputs, loaded once up front. A failing table or
  // trace file fails only the items that reference it.
  std::vector<std::optional<TimbreTable>> tables(plan.tables.size());
  std::vector<std::string> table_errors(plan.tables.size());
  for (std::size_t i = 0; i < plan.tables.size(); ++i) {
    try {
      tables[i] = load_table(plan.tables[i]);
    } catch (const std::exception& e) {
      table_errors[i] = e.what();
    }
  }
  std::vector<std::optional<ControlTrace>> traces(plan.traces.size());
  std::vector<std::string> trace_errors(plan.traces.size());
  for (std::size_t i = 0; i < plan.traces.size(); ++i) {
    try {
      traces[i] = load_trace(plan.traces[i]);
    } catch (const std::exception& e) {
      trace_errors[i] = e.what();
    }
  }

  std::vector<WorkItem> items;
  std::size_t index = 0;
  for (std::size_t si = 0; si < plan.sets.size(); ++si)
    for (std::size_t tbl = 0; tbl < plan.tables.size(); ++tbl)
      for (std::size_t trc = 0; trc < plan.traces.size(); ++trc)
        for (int v = 0; v < plan.sets[si].variations; ++v)
          items.push_back({index++, tbl, trc, si, v});

  std::error_code ec;
  std::filesystem::create_directories(plan.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + plan.output_dir.string());
  for (const auto& s : plan.sets) {
    std::filesystem::create_directories(plan.output_dir / s.name, ec);
    if (ec) throw IoError("cannot create set directory " + (plan.output_dir / s.name).string());
  }

  GenerateReport report;
  report.rows.resize(items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> written{0}, skipped{0}, failed{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      const WorkItem& item = items[i];
      const GenerationSet& set = plan.sets[item.set_idx];

      ManifestRow row;
      row.engine_id = plan.tables[item.table_idx].stem().string();
      row.trace_id = plan.traces[item.trace_idx].stem().string();
      row.set_name = set.name;
      row.variant = item.variant;
      row.file = set.name + "/" + row.engine_id + "_" + row.trace_id + "_" +
                 std::to_string(item.variant) + ".wav";

      try {
        if (!tables[item.table_idx])
          throw FormatError("table: " + table_errors[item.table_idx]);
        if (!traces[item.trace_idx])
          throw FormatError("trace: " + trace_errors[item.trace_idx]);

        SynthesisParams params = sample_variation(set.variation, plan.seed, item.index);
        row.params_hash = hash_params(params);

        const ControlTrace& trace = *traces[item.trace_idx];
        const std::size_t expected_samples = static_cast<std::size_t>(
            std::llround(static_cast<double>(trace.size()) * params.output_rate /
                         trace.sample_rate));
        row.samples = expected_samples;
        row.duration_s = static_cast<double>(expected_samples) / params.output_rate;

        const std::filesystem::path out_path = plan.output_dir / row.file;
        bool reuse = false;
        if (std::filesystem::exists(out_path)) {
          try {
            const AudioBuffer existing = read_wav(out_path);
            reuse = existing.channel_count() == 4 &&
                    existing.frame_count() == expected_samples &&
                    existing.sample_rate() == params.output_rate;
          } catch (const std::exception&) {
            reuse = false;  // unreadable partial output, regenerate
          }
        }
        if (reuse) {
          row.status = "exists";
          skipped.fetch_add(1);
        } else {
          const ControlTrace working = trace.sample_rate == params.output_rate
                                           ? trace
                                           : resample_trace(trace, params.output_rate);
          working.check_bounds();
          const AudioBuffer stereo = synthesize(working, *tables[item.table_idx], params);
          write_wav(out_path, mux(stereo, working));
          row.status = "ok";
          written.fetch_add(1);
        }
      } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
        failed.fetch_add(1);
      }
      report.rows[item.index] = std::move(row);
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  report.written = written.load();
  report.skipped_existing = skipped.load();
  report.failed = failed.load();

  // Manifest rows are written in plan order so reruns and different worker
  // counts produce identical bytes.
  report.manifest_path = plan.output_dir / "manifest.tsv";
  std::ofstream mf(report.manifest_path, std::ios::trunc);
  if (!mf) throw IoError("cannot create " + report.manifest_path.string());
  mf << "file\tengine_id\ttrace_id\tset\tvariant\tparams_hash\tduration_s\tsamples\tstatus\n";
  char buf[64];
  for (const ManifestRow& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "%.6f", row.duration_s);
    mf << row.file << '\t' << row.engine_id << '\t' << row.trace_id << '\t' << row.set_name
       << '\t' << row.variant << '\t' << row.params_hash << '\t' << buf << '\t' << row.samples
       << '\t' << row.status << '\n';
  }
  if (!mf) throw IoError("write failed for " + report.manifest_path.string());
  return report;
}

}  // namespace ordersynth
