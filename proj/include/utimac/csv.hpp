// utimac/csv.hpp
//
// Strict CSV formats. Traffic: header `t,flow_0,...,flow_{d-1}`, one row
// per frame, non-negative decimals. Mask: same shape, values in {0,1}.
// Intervals: `t,flow,point,lower,upper,level`. All files UTF-8, comma
// separated, '.' decimal point; numbers written with 17 significant
// digits (exact double round trip).

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

#ifndef UTIMAC_CSV_HPP
#define UTIMAC_CSV_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "utimac/types.hpp"

namespace utimac {

/// Parse failure with 1-based data-row and CSV-column location
/// (column 1 is the `t` column).
class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& path, int row, int col, const std::string& what_arg)
      : std::runtime_error(path + ": row " + std::to_string(row) + ", col " +
                           std::to_string(col) + ": " + what_arg),
        row_(row),
        col_(col) {}

  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

struct TrafficCsv {
  std::vector<TrafficFrame> frames;
  Index d = 0;
};

TrafficCsv load_traffic_csv(const std::string& path);

/// expect_d/expect_rows = -1 skip the consistency check.
std::vector<ObservationMask> load_mask_csv(const std::string& path, Index expect_d = -1,
                                           Index expect_rows = -1);

void save_traffic_csv(const std::string& path, const std::vector<TrafficFrame>& frames,
                      Index d);

void save_mask_csv(const std::string& path, const std::vector<std::int64_t>& ts,
                   const std::vector<ObservationMask>& masks, Index d);

struct IntervalCsvRow {
  std::int64_t t = 0;
  Index flow = 0;
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.975;
};

void save_intervals_csv(const std::string& path, const std::vector<IntervalCsvRow>& rows);
std::vector<IntervalCsvRow> load_intervals_csv(const std::string& path);

/// Zips traffic frames with masks (all-observed when `masks` is null).
std::vector<MaskedFrame> make_series(const TrafficCsv& traffic,
                                     const std::vector<ObservationMask>* masks);

/// 17-significant-digit, locale-independent formatting.
std::string format_double(double v);

}  // namespace utimac

#endif  // UTIMAC_CSV_HPP
