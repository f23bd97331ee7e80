//
// Copyright 2026 The dpdepth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpdepth/core.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dpdepth {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double ParseReal(std::string_view field, std::size_t line) {
  field = Trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("line " + std::to_string(line) + ": cannot parse '" +
                         std::string(field) + "' as a real number",
                     line);
  }
  return value;
}

std::vector<double> ParseCsvRow(std::string_view text, std::size_t line) {
  std::vector<double> row;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    row.push_back(ParseReal(text.substr(start, comma - start), line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return row;
}

std::vector<double> ParseJsonRow(const std::string& text, std::size_t line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
  }
  if (!j.is_array() || j.empty()) {
    throw ParseError("line " + std::to_string(line) +
                         ": expected a non-empty array of numbers",
                     line);
  }
  std::vector<double> row;
  row.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw ParseError("line " + std::to_string(line) + ": non-numeric entry",
                       line);
    }
    row.push_back(v.get<double>());
  }
  return row;
}

}  // namespace

Dataset::Dataset(Matrix points) : points_(std::move(points)) {
  if (points_.rows() < 1) throw DataError("dataset has no rows");
  if (points_.cols() < 1) throw DataError("dataset has no columns");
  if (!points_.allFinite()) throw DataError("dataset contains non-finite values");
}

DirectionSet::DirectionSet(Matrix directions, std::uint64_t seed,
                           std::uint64_t stream_id)
    : dirs_(std::move(directions)), seed_(seed), stream_id_(stream_id) {
  if (dirs_.rows() < 1 || dirs_.cols() < 1) {
    throw DataError("direction set must be non-empty");
  }
  for (Eigen::Index m = 0; m < dirs_.rows(); ++m) {
    if (std::abs(dirs_.row(m).norm() - 1.0) > 1e-12) {
      throw DataError("direction " + std::to_string(m) + " is not unit norm");
    }
  }
}

DirectionSet DirectionSet::Line() {
  Matrix u(2, 1);
  u << 1.0, -1.0;
  return DirectionSet(std::move(u));
}

Dataset ParseDataset(const std::string& text, DataFormat format,
                     bool skip_header) {
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_header && line_no == 1) continue;
    if (Trim(line).empty()) continue;
    std::vector<double> row = format == DataFormat::kCsv
                                  ? ParseCsvRow(line, line_no)
                                  : ParseJsonRow(line, line_no);
    if (rows == 0) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(width) + " columns, found " +
                           std::to_string(row.size()),
                       line_no);
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw DataError("line " + std::to_string(line_no) +
                        ": non-finite value");
      }
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw DataError("no rows");
  Matrix points = Eigen::Map<Matrix>(values.data(), static_cast<Eigen::Index>(rows),
                                     static_cast<Eigen::Index>(width));
  return Dataset(std::move(points));
}

Dataset LoadDataset(const std::string& path, DataFormat format,
                    bool skip_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseDataset(buf.str(), format, skip_header);
}

DirectionSet SampleDirections(std::size_t d, std::size_t count, RngStream& rng) {
  if (d < 1 || count < 1) {
    throw std::invalid_argument("SampleDirections needs d >= 1 and count >= 1");
  }
  const std::uint64_t seed = rng.seed();
  const std::uint64_t stream = rng.stream_id();
  Matrix u(count, d);
  for (std::size_t m = 0; m < count; ++m) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        u(m, j) = rng.Normal();
        norm2 += u(m, j) * u(m, j);
      }
    } while (norm2 == 0.0);
    u.row(m) /= std::sqrt(norm2);
  }
  return DirectionSet(std::move(u), seed, stream);
}

Dataset AdjacentDataset(const Dataset& data, std::size_t index,
                        const Vector& replacement) {
  if (index >= data.n()) {
    throw std::out_of_range("row index " + std::to_string(index) +
                            " out of range for n=" + std::to_string(data.n()));
  }
  if (static_cast<std::size_t>(replacement.size()) != data.d()) {
    throw std::invalid_argument("replacement has wrong dimension");
  }
  Matrix points = data.points();
  points.row(index) = replacement.transpose();
  return Dataset(std::move(points));
}

Vector ParseVector(const std::string& text) {
  std::vector<double> v = ParseCsvRow(text, 0);
  return Eigen::Map<Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace dpdepth
