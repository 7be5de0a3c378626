// Copyright 2026 The Vibronic Authors
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


#include "vibronic/param_file.h"

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "vibronic/errors.h"

namespace vibronic {
namespace {

ParamFile Parse(const std::string& text) {
  std::istringstream in(text);
  return parse_param_file(in, "test.params");
}

// Returns the ParseError raised for `text`.
ParseError ParseFailure(const std::string& text) {
  try {
    Parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError("", 0, "");
}

constexpr char kValid[] = R"(# comment line
name = SO2 -> SO2+
omega_initial = 1178.4, 518.9
omega_final = 1112.7 415.0   # trailing comment
duschinsky = 0.982 0.188; -0.188 0.982
delta = -0.026, 1.716
)";

TEST(ParamFileTest, ParsesFixtureLayout) {
  const ParamFile file = Parse(kValid);
  const MolecularParams& p = file.params;
  EXPECT_EQ(p.name, "SO2 -> SO2+");
  EXPECT_EQ(p.omega_initial, (std::vector<double>{1178.4, 518.9}));
  EXPECT_EQ(p.omega_final, (std::vector<double>{1112.7, 415.0}));
  EXPECT_DOUBLE_EQ(p.duschinsky(1, 0), -0.188);
  ASSERT_TRUE(p.delta.has_value());
  EXPECT_EQ(*p.delta, (std::vector<double>{-0.026, 1.716}));
  EXPECT_FALSE(p.d.has_value());
  EXPECT_FALSE(file.scale.has_value());
  EXPECT_EQ(p.unit_system, UnitSystem::kAmuAngstrom);
}

TEST(ParamFileTest, FlatMatrixAndOptionalKeys) {
  const ParamFile file = Parse(
      "omega_initial = 1000 500\nomega_final = 900 450\n"
      "duschinsky = 1 0 0 1\nd = 0.1 0.2\nunit_system = atomic\n"
      "omega_00 = 12.5\nscale = 30\n");
  EXPECT_EQ(file.params.duschinsky, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_EQ(file.params.unit_system, UnitSystem::kAtomic);
  EXPECT_DOUBLE_EQ(file.params.omega_00, 12.5);
  EXPECT_EQ(file.scale, 30.0);
  ASSERT_TRUE(file.params.d.has_value());
}

TEST(ParamFileTest, MissingFieldNamed) {
  const ParseError e = ParseFailure(
      "omega_initial = 1 2\nduschinsky = 1 0; 0 1\ndelta = 0 0\n");
  EXPECT_EQ(e.field(), "omega_final");
  EXPECT_NE(std::string(e.what()).find("omega_final"), std::string::npos);
}

TEST(ParamFileTest, ReportsLineOfBadValue) {
  const ParseError e = ParseFailure(
      "omega_initial = 1 2\nomega_final = 1 x\nduschinsky = 1 0; 0 1\ndelta = 0 0\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.field(), "omega_final");
  EXPECT_NE(std::string(e.what()).find("test.params:2"), std::string::npos);
}

TEST(ParamFileTest, RejectsUnknownAndDuplicateKeys) {
  EXPECT_EQ(ParseFailure(std::string(kValid) + "colour = blue\n").field(), "colour");
  const ParseError dup = ParseFailure(std::string(kValid) + "delta = 0 0\n");
  EXPECT_EQ(dup.field(), "delta");
  EXPECT_EQ(dup.line(), 7u);
}

TEST(ParamFileTest, RejectsBothDisplacements) {
  EXPECT_THROW(Parse(std::string(kValid) + "d = 0 0\n"), ParseError);
}

TEST(ParamFileTest, RejectsLengthMismatch) {
  const ParseError e = ParseFailure(
      "omega_initial = 1 2\nomega_final = 1 2 3\nduschinsky = 1 0; 0 1\ndelta = 0 0\n");
  EXPECT_EQ(e.field(), "omega_final");
}

TEST(ParamFileTest, RejectsLineWithoutEquals) {
  EXPECT_EQ(ParseFailure("omega_initial 1 2\n").line(), 1u);
}

TEST(ParamFileTest, ShippedFixturesLoad) {
  const ParamFile a = load_param_file(VIBRONIC_TEST_DATA_DIR "/so2_to_so2plus.params");
  EXPECT_EQ(a.params.omega_final, (std::vector<double>{1112.7, 415.0}));
  const ParamFile b = load_param_file(VIBRONIC_TEST_DATA_DIR "/so2minus_to_so2.params");
  EXPECT_EQ(*b.params.delta, (std::vector<double>{1.360, -0.264}));
  EXPECT_THROW(load_param_file(VIBRONIC_TEST_DATA_DIR "/missing_omega_final.params"),
               ParseError);
  EXPECT_THROW(load_param_file(VIBRONIC_TEST_DATA_DIR "/does_not_exist.params"),
               ParseError);
}

}  // namespace
}  // namespace vibronic
