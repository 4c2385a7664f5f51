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

#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "magicscope/errors.hpp"
#include "magicscope/pauli.hpp"
#include "magicscope/polytope.hpp"
#include "magicscope/rom.hpp"

namespace magicscope::io {

/// Vertex file: {m, measurements, vertices, contexts}, one vertex or context per line.
/// Context sets use 0-based measurement indices.
inline std::string vertices_to_json(const MeasurementSet& measurements, const VertexSet& vs) {
  std::ostringstream out;
  out << "{\n  \"m\": " << vs.dimension << ",\n  \"measurements\": [";
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    out << (i ? ", " : "") << nlohmann::json(format_pauli(measurements[i])).dump();
  }
  out << "],\n  \"vertices\": [";
  for (std::size_t v = 0; v < vs.size(); ++v) {
    out << (v ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < vs.vertices[v].size(); ++i) out << (i ? ", " : "") << vs.vertices[v][i];
    out << "]";
  }
  out << (vs.size() ? "\n  ],\n" : "],\n") << "  \"contexts\": [";
  for (std::size_t c = 0; c < vs.contexts.size(); ++c) {
    const auto& ctx = vs.contexts[c];
    out << (c ? ",\n    {\"set\": [" : "\n    {\"set\": [");
    for (std::size_t i = 0; i < ctx.set.size(); ++i) out << (i ? ", " : "") << ctx.set[i];
    out << "], \"signs\": [";
    for (std::size_t i = 0; i < ctx.signs.size(); ++i) out << (i ? ", " : "") << ctx.signs[i];
    out << "]}";
  }
  out << (vs.contexts.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return out.str();
}

struct VertexFile {
  std::vector<std::string> measurements;
  VertexSet vertices;
};

inline VertexFile parse_vertex_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("vertex file: ") + e.what());
  }
  VertexFile out;
  try {
    out.vertices.dimension = j.at("m").get<std::size_t>();
    out.measurements = j.at("measurements").get<std::vector<std::string>>();
    for (const auto& v : j.at("vertices")) {
      Vertex vertex;
      for (const auto& c : v) {
        const int value = c.get<int>();
        if (value < -1 || value > 1) throw ParseError("vertex file: coordinate outside {-1, 0, 1}");
        vertex.coords.push_back(static_cast<std::int8_t>(value));
      }
      if (vertex.size() != out.vertices.dimension) throw ParseError("vertex file: vertex length differs from m");
      out.vertices.vertices.push_back(std::move(vertex));
    }
    for (const auto& c : j.at("contexts")) {
      out.vertices.contexts.push_back(
          {c.at("set").get<std::vector<std::size_t>>(), c.at("signs").get<std::vector<int>>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("vertex file: ") + e.what());
  }
  return out;
}

/// Expectation file: one number per line (`#` comments, blank lines skipped),
/// or JSON {measurements, expectations}. JSON measurements must match `m`.
inline std::vector<double> parse_expectations(const std::string& text, const MeasurementSet& m) {
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<double> values;
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
      values = j.at("expectations").get<std::vector<double>>();
      if (j.contains("measurements")) {
        const auto names = j.at("measurements").get<std::vector<std::string>>();
        if (names.size() != m.size()) {
          throw ParseError("expectation file lists " + std::to_string(names.size()) + " measurements, expected " +
                           std::to_string(m.size()));
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
          if (parse_pauli(names[i]) != m[i]) {
            throw ParseError("expectation file measurement " + std::to_string(i + 1) + " is " + names[i] +
                             ", measurement file has " + format_pauli(m[i]));
          }
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("expectation file: ") + e.what());
    }
  } else {
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
      ++line;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      const auto b = raw.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      const auto e = raw.find_last_not_of(" \t\r");
      const std::string body = raw.substr(b, e - b + 1);
      try {
        std::size_t used = 0;
        values.push_back(std::stod(body, &used));
        if (used != body.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("not a number: '" + body + "'", line);
      }
    }
  }
  if (values.size() != m.size()) {
    throw ParseError("expectation file has " + std::to_string(values.size()) + " values, measurement file has " +
                     std::to_string(m.size()));
  }
  return values;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace magicscope::io
