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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace dpdepth {
namespace {

TEST(ParseDataset, CsvThreeRows) {
  const Dataset d = ParseDataset("0,0\n1,1\n2,2\n", DataFormat::kCsv);
  EXPECT_EQ(d.n(), 3u);
  EXPECT_EQ(d.d(), 2u);
  EXPECT_EQ(d.points()(2, 1), 2.0);
}

TEST(ParseDataset, EmptyInputHasNoRows) {
  try {
    ParseDataset("", DataFormat::kCsv);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("no rows"), std::string::npos);
  }
}

TEST(ParseDataset, RaggedRowNamesLine) {
  try {
    ParseDataset("1,2\n3\n", DataFormat::kCsv);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseDataset, NonFiniteIsDataError) {
  EXPECT_THROW(ParseDataset("1,inf\n", DataFormat::kCsv), DataError);
  EXPECT_THROW(ParseDataset("1,nan\n", DataFormat::kCsv), DataError);
}

TEST(ParseDataset, GarbageIsParseError) {
  EXPECT_THROW(ParseDataset("1,x\n", DataFormat::kCsv), ParseError);
}

TEST(ParseDataset, HeaderAndBlankLines) {
  const Dataset d = ParseDataset("a,b\n\n1,2\n\n3,4\n", DataFormat::kCsv, true);
  EXPECT_EQ(d.n(), 2u);
  EXPECT_EQ(d.points()(1, 0), 3.0);
}

TEST(ParseDataset, Jsonl) {
  const Dataset d = ParseDataset("[1, 2.5]\n[-3, 4e1]\n", DataFormat::kJsonl);
  EXPECT_EQ(d.n(), 2u);
  EXPECT_EQ(d.points()(1, 1), 40.0);
  EXPECT_THROW(ParseDataset("[1,2]\n[1]\n", DataFormat::kJsonl), ParseError);
  EXPECT_THROW(ParseDataset("{\"a\":1}\n", DataFormat::kJsonl), ParseError);
}

TEST(LoadDataset, ReadsFile) {
  const std::string path = ::testing::TempDir() + "core_test_data.csv";
  {
    std::ofstream f(path);
    f << "0,0\n1,1\n2,2\n";
  }
  const Dataset d = LoadDataset(path, DataFormat::kCsv);
  EXPECT_EQ(d.n(), 3u);
  std::remove(path.c_str());
  EXPECT_THROW(LoadDataset(path, DataFormat::kCsv), DataError);
}

TEST(Dataset, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Dataset(Matrix(0, 2)), DataError);
  Matrix m(1, 1);
  m(0, 0) = std::nan("");
  EXPECT_THROW(Dataset(std::move(m)), DataError);
}

TEST(EmpiricalMeasure, MassSumsToOne) {
  const Dataset d = ParseDataset("1\n1\n2\n", DataFormat::kCsv);
  EmpiricalMeasure mu(d);
  EXPECT_DOUBLE_EQ(mu.atom_mass(), 1.0 / 3.0);
  EXPECT_NEAR(mu.total_mass(), 1.0, 1e-15);
}

TEST(SampleDirections, OneDimensionalIsPlusMinusOne) {
  RngStream rng(1, 0);
  const DirectionSet s = SampleDirections(1, 4, rng);
  for (std::size_t m = 0; m < s.size(); ++m) {
    EXPECT_EQ(std::abs(s.row(m)[0]), 1.0);
  }
}

TEST(SampleDirections, UnitNormAndCentered) {
  RngStream rng(2, 0);
  const DirectionSet s = SampleDirections(3, 100000, rng);
  for (std::size_t m = 0; m < s.size(); ++m) {
    ASSERT_NEAR(s.directions().row(m).norm(), 1.0, 1e-12);
  }
  const Vector mean = s.directions().colwise().mean().transpose();
  for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(mean[j]), 0.02);
  // Uniform on S^2: E[u_j^2] = 1/3.
  const Vector sq = s.directions().array().square().colwise().mean().transpose();
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(sq[j], 1.0 / 3.0, 0.01);
}

TEST(SampleDirections, Deterministic) {
  RngStream a(5, 3), b(5, 3);
  EXPECT_EQ(SampleDirections(4, 50, a).directions(),
            SampleDirections(4, 50, b).directions());
  RngStream c(5, 3);
  const DirectionSet s = SampleDirections(4, 2, c);
  EXPECT_EQ(s.seed(), 5u);
  EXPECT_EQ(s.stream_id(), 3u);
}

TEST(DirectionSet, RejectsNonUnitRows) {
  Matrix u(1, 2);
  u << 1.0, 1e-5;
  EXPECT_THROW(DirectionSet(std::move(u)), DataError);
}

TEST(AdjacentDataset, ReplacesOneRow) {
  const Dataset d = ParseDataset("0\n1\n", DataFormat::kCsv);
  const Dataset a = AdjacentDataset(d, 0, Vector::Constant(1, 5.0));
  EXPECT_EQ(a.points()(0, 0), 5.0);
  EXPECT_EQ(a.points()(1, 0), 1.0);
  EXPECT_EQ(a.n(), d.n());
  EXPECT_EQ(d.points()(0, 0), 0.0);
}

TEST(AdjacentDataset, SameRowLeavesDataUnchanged) {
  const Dataset d = ParseDataset("0,1\n2,3\n", DataFormat::kCsv);
  const Dataset a = AdjacentDataset(d, 1, d.points().row(1).transpose());
  EXPECT_EQ(a.points(), d.points());
}

TEST(AdjacentDataset, IndexOutOfRange) {
  const Dataset d = ParseDataset("0\n1\n", DataFormat::kCsv);
  EXPECT_THROW(AdjacentDataset(d, 2, Vector::Zero(1)), std::out_of_range);
}

TEST(ParseVector, Parses) {
  const Vector v = ParseVector("1, 2.5,-3");
  ASSERT_EQ(v.size(), 3);
  EXPECT_EQ(v[1], 2.5);
  EXPECT_EQ(v[2], -3.0);
  EXPECT_THROW(ParseVector("1,,2"), ParseError);
}

}  // namespace
}  // namespace dpdepth
