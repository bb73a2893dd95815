// Copyright 2026 The Utimac Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "utimac/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

namespace utimac {

namespace {

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& path, int row, int col, std::string_view field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw CsvError(path, row, col, "cannot parse '" + std::string(field) + "' as a number");
  }
  return value;
}

std::int64_t parse_int(const std::string& path, int row, int col, std::string_view field) {
  std::int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw CsvError(path, row, col, "cannot parse '" + std::string(field) + "' as an integer");
  }
  return value;
}

std::string expected_header(Index d) {
  std::string h = "t";
  for (Index j = 0; j < d; ++j) h += ",flow_" + std::to_string(j);
  return h;
}

Index parse_header(const std::string& path, const std::string& line) {
  const auto fields = split_line(line);
  if (fields.empty() || fields[0] != "t") {
    throw CsvError(path, 0, 1, "header must start with 't'");
  }
  for (std::size_t j = 1; j < fields.size(); ++j) {
    const std::string expect = "flow_" + std::to_string(j - 1);
    if (fields[j] != expect) {
      throw CsvError(path, 0, static_cast<int>(j + 1),
                     "expected header column '" + expect + "'");
    }
  }
  return static_cast<Index>(fields.size()) - 1;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

TrafficCsv load_traffic_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw CsvError(path, 0, 1, "missing header");
  strip_cr(line);
  TrafficCsv out;
  out.d = parse_header(path, line);
  int row = 0;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    ++row;
    const auto fields = split_line(line);
    if (static_cast<Index>(fields.size()) != out.d + 1) {
      throw CsvError(path, row, static_cast<int>(fields.size()),
                     "expected " + std::to_string(out.d + 1) + " columns, found " +
                         std::to_string(fields.size()));
    }
    TrafficFrame frame;
    frame.t = parse_int(path, row, 1, fields[0]);
    frame.x.resize(out.d);
    for (Index j = 0; j < out.d; ++j) {
      const int col = static_cast<int>(j) + 2;
      const double v = parse_double(path, row, col, fields[static_cast<std::size_t>(j) + 1]);
      if (!std::isfinite(v) || v < 0.0) {
        throw CsvError(path, row, col, "traffic value must be finite and non-negative");
      }
      frame.x[j] = v;
    }
    out.frames.push_back(std::move(frame));
  }
  return out;
}

std::vector<ObservationMask> load_mask_csv(const std::string& path, Index expect_d,
                                           Index expect_rows) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw CsvError(path, 0, 1, "missing header");
  strip_cr(line);
  const Index d = parse_header(path, line);
  if (expect_d >= 0 && d != expect_d) {
    throw CsvError(path, 0, 2,
                   "mask has " + std::to_string(d) + " flows, traffic has " +
                       std::to_string(expect_d));
  }
  std::vector<ObservationMask> masks;
  int row = 0;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    ++row;
    const auto fields = split_line(line);
    if (static_cast<Index>(fields.size()) != d + 1) {
      throw CsvError(path, row, static_cast<int>(fields.size()),
                     "expected " + std::to_string(d + 1) + " columns, found " +
                         std::to_string(fields.size()));
    }
    parse_int(path, row, 1, fields[0]);
    std::vector<bool> bits(static_cast<std::size_t>(d));
    for (Index j = 0; j < d; ++j) {
      const int col = static_cast<int>(j) + 2;
      const double v = parse_double(path, row, col, fields[static_cast<std::size_t>(j) + 1]);
      if (v != 0.0 && v != 1.0) {
        throw CsvError(path, row, col, "mask value must be 0 or 1");
      }
      bits[static_cast<std::size_t>(j)] = (v == 1.0);
    }
    masks.emplace_back(std::move(bits));
  }
  if (expect_rows >= 0 && static_cast<Index>(masks.size()) != expect_rows) {
    throw CsvError(path, static_cast<int>(masks.size()), 1,
                   "mask has " + std::to_string(masks.size()) + " rows, traffic has " +
                       std::to_string(expect_rows));
  }
  return masks;
}

void save_traffic_csv(const std::string& path, const std::vector<TrafficFrame>& frames,
                      Index d) {
  std::ofstream out = open_out(path);
  out << expected_header(d) << '\n';
  for (const TrafficFrame& frame : frames) {
    if (frame.dim() != d) {
      throw std::invalid_argument("save_traffic_csv: frame dimension mismatch");
    }
    out << frame.t;
    for (Index j = 0; j < d; ++j) out << ',' << format_double(frame.x[j]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

void save_mask_csv(const std::string& path, const std::vector<std::int64_t>& ts,
                   const std::vector<ObservationMask>& masks, Index d) {
  if (ts.size() != masks.size()) {
    throw std::invalid_argument("save_mask_csv: ts/masks length mismatch");
  }
  std::ofstream out = open_out(path);
  out << expected_header(d) << '\n';
  for (std::size_t i = 0; i < masks.size(); ++i) {
    out << ts[i];
    for (Index j = 0; j < d; ++j) out << ',' << (masks[i].observed(j) ? '1' : '0');
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

void save_intervals_csv(const std::string& path, const std::vector<IntervalCsvRow>& rows) {
  std::ofstream out = open_out(path);
  out << "t,flow,point,lower,upper,level\n";
  for (const IntervalCsvRow& r : rows) {
    out << r.t << ',' << r.flow << ',' << format_double(r.point) << ','
        << format_double(r.lower) << ',' << format_double(r.upper) << ','
        << format_double(r.level) << '\n';
  }
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

std::vector<IntervalCsvRow> load_intervals_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw CsvError(path, 0, 1, "missing header");
  strip_cr(line);
  if (line != "t,flow,point,lower,upper,level") {
    throw CsvError(path, 0, 1, "unexpected intervals header");
  }
  std::vector<IntervalCsvRow> rows;
  int row = 0;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    ++row;
    const auto fields = split_line(line);
    if (fields.size() != 6) {
      throw CsvError(path, row, static_cast<int>(fields.size()), "expected 6 columns");
    }
    IntervalCsvRow r;
    r.t = parse_int(path, row, 1, fields[0]);
    r.flow = static_cast<Index>(parse_int(path, row, 2, fields[1]));
    r.point = parse_double(path, row, 3, fields[2]);
    r.lower = parse_double(path, row, 4, fields[3]);
    r.upper = parse_double(path, row, 5, fields[4]);
    r.level = parse_double(path, row, 6, fields[5]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<MaskedFrame> make_series(const TrafficCsv& traffic,
                                     const std::vector<ObservationMask>* masks) {
  std::vector<MaskedFrame> series;
  series.reserve(traffic.frames.size());
  for (std::size_t i = 0; i < traffic.frames.size(); ++i) {
    MaskedFrame mf;
    mf.frame = traffic.frames[i];
    mf.mask = masks != nullptr ? (*masks)[i] : ObservationMask::all_observed(traffic.d);
    series.push_back(std::move(mf));
  }
  return series;
}

}  // namespace utimac
