// Copyright 2026 The magicscope Authors
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

#include "magicscope/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace magicscope::io {
namespace {

TEST(VertexJson, RoundTripsThroughParser) {
  const auto m = parse_measurement_text("ZZI\nXII\nIYY\n-IXX\n");
  const auto vs = v_representation(m);
  const auto file = parse_vertex_json(vertices_to_json(m, vs));
  EXPECT_EQ(file.measurements, m.to_strings());
  EXPECT_EQ(file.vertices.dimension, vs.dimension);
  EXPECT_EQ(file.vertices.vertices, vs.vertices);
  EXPECT_EQ(file.vertices.contexts, vs.contexts);
}

TEST(VertexJson, StableLayout) {
  const auto m = parse_measurement_text("ZZ\nXI\n");
  EXPECT_EQ(vertices_to_json(m, v_representation(m)),
            "{\n"
            "  \"m\": 2,\n"
            "  \"measurements\": [\"ZZ\", \"XI\"],\n"
            "  \"vertices\": [\n"
            "    [1, 0],\n"
            "    [-1, 0],\n"
            "    [0, 1],\n"
            "    [0, -1]\n"
            "  ],\n"
            "  \"contexts\": [\n"
            "    {\"set\": [0], \"signs\": [1]},\n"
            "    {\"set\": [0], \"signs\": [-1]},\n"
            "    {\"set\": [1], \"signs\": [1]},\n"
            "    {\"set\": [1], \"signs\": [-1]}\n"
            "  ]\n"
            "}\n");
}

TEST(VertexJson, RejectsMalformedInput) {
  EXPECT_THROW(parse_vertex_json("{"), ParseError);
  EXPECT_THROW(parse_vertex_json(R"({"m": 2, "measurements": [], "vertices": [[1]], "contexts": []})"), ParseError);
  EXPECT_THROW(parse_vertex_json(R"({"m": 1, "measurements": [], "vertices": [[2]], "contexts": []})"), ParseError);
  EXPECT_THROW(parse_vertex_json(R"({"m": 1})"), ParseError);
}

TEST(Expectations, PlainListWithComments) {
  const auto m = parse_measurement_text("X\nY\nZ\n");
  EXPECT_EQ(parse_expectations("# bloch\n0.5\n\n -0.25 # y\n1e-1\n", m), (std::vector<double>{0.5, -0.25, 0.1}));
}

TEST(Expectations, JsonWithMatchingMeasurements) {
  const auto m = parse_measurement_text("X\nZ\n");
  EXPECT_EQ(parse_expectations(R"({"measurements": ["X", "Z"], "expectations": [0.1, 0.2]})", m),
            (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(parse_expectations(R"({"expectations": [0.1, 0.2]})", m), (std::vector<double>{0.1, 0.2}));
}

TEST(Expectations, Errors) {
  const auto m = parse_measurement_text("X\nZ\n");
  EXPECT_THROW(parse_expectations("0.1\n", m), ParseError);
  EXPECT_THROW(parse_expectations("0.1\n0.2\n0.3\n", m), ParseError);
  EXPECT_THROW(parse_expectations("0.1\nabc\n", m), ParseError);
  EXPECT_THROW(parse_expectations("0.1\n0.2x\n", m), ParseError);
  EXPECT_THROW(parse_expectations(R"({"measurements": ["Z", "X"], "expectations": [0.1, 0.2]})", m), ParseError);
  EXPECT_THROW(parse_expectations(R"({"measurements": ["X"], "expectations": [0.1, 0.2]})", m), ParseError);
  EXPECT_THROW(parse_expectations(R"({"values": [0.1, 0.2]})", m), ParseError);
  try {
    parse_expectations("0.1\n\noops\n", m);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Files, ReadMissingFileThrows) {
  EXPECT_THROW(read_file("/nonexistent/magicscope/file.txt"), FileError);
  const auto path = std::filesystem::temp_directory_path() / "magicscope_io_test.txt";
  std::ofstream(path) << "XY\n";
  EXPECT_EQ(read_file(path.string()), "XY\n");
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace magicscope::io
