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

#include "ordersynth/audio_buffer.hpp"

namespace ordersynth {

// Trace CSV schema:
//   sample_rate,<hz>
//   rpm,torque            (or sample_index,rpm,torque)
//   <row per sample>
// The sample_index column, when present, is ignored on input, so decoded
// CSVs round-trip as synthesis traces.

ControlTrace read_trace_csv(const std::filesystem::path& path);
void write_trace_csv(const std::filesystem::path& path, const ControlTrace& trace);

/// decode-subcommand output: sample_rate header plus
/// sample_index,rpm,torque rows.
void write_decoded_csv(std::ostream& out, const ControlTrace& trace);

/// Loads a trace from either a 4-channel WAV (decoding channels 3-4) or a
/// trace CSV, keyed on the file extension.
ControlTrace load_trace(const std::filesystem::path& path);

}  // namespace ordersynth
