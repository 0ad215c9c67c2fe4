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

#include "ordersynth/trace_csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ordersynth/annotation_codec.hpp"
#include "ordersynth/wav_io.hpp"

namespace ordersynth {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError(context + ": cannot parse number '" + s + "'");
  }
}

}  // namespace

ControlTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path.string());

  std::string line;
  if (!std::getline(f, line)) throw FormatError(path.string() + ": empty file");
  auto header = split_csv(line);
  if (header.size() != 2 || header[0] != "sample_rate")
    throw FormatError(path.string() + ": first line must be 'sample_rate,<hz>'");

  ControlTrace trace;
  trace.sample_rate = parse_double(header[1], path.string());
  if (trace.sample_rate <= 0) throw FormatError(path.string() + ": non-positive sample rate");

  if (!std::getline(f, line)) throw FormatError(path.string() + ": missing column header");
  auto columns = split_csv(line);
  std::size_t value_offset;
  if (columns.size() == 2 && columns[0] == "rpm" && columns[1] == "torque") {
    value_offset = 0;
  } else if (columns.size() == 3 && columns[0] == "sample_index" && columns[1] == "rpm" &&
             columns[2] == "torque") {
    value_offset = 1;
  } else {
    throw FormatError(path.string() + ": expected 'rpm,torque' or 'sample_index,rpm,torque'");
  }

  while (std::getline(f, line)) {
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != value_offset + 2)
      throw FormatError(path.string() + ": row with wrong column count: '" + line + "'");
    trace.rpm.push_back(parse_double(fields[value_offset], path.string()));
    trace.torque.push_back(parse_double(fields[value_offset + 1], path.string()));
  }
  if (trace.rpm.empty()) throw FormatError(path.string() + ": no samples");
  return trace;
}

void write_trace_csv(const std::filesystem::path& path, const ControlTrace& trace) {
  trace.check_consistent();
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot create " + path.string());
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", trace.sample_rate);
  f << "sample_rate," << buf << "\nrpm,torque\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g", trace.rpm[i], trace.torque[i]);
    f << buf << "\n";
  }
  if (!f) throw IoError("write failed for " + path.string());
}

void write_decoded_csv(std::ostream& out, const ControlTrace& trace) {
  trace.check_consistent();
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g", trace.sample_rate);
  out << "sample_rate," << buf << "\nsample_index,rpm,torque\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.9g,%.9g", i, trace.rpm[i], trace.torque[i]);
    out << buf << "\n";
  }
}

ControlTrace load_trace(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".wav") return decode_controls(read_wav(path));
  if (ext == ".csv") return read_trace_csv(path);
  throw FormatError(path.string() + ": trace source must be a .wav or .csv file");
}

}  // namespace ordersynth
