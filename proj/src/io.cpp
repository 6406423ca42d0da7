// Copyright 2026 The dwq Authors
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


#include "dwq/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dwq/symbol_lang.hpp"

namespace dwq {

namespace {

using nlohmann::json;

json complex_grid(std::size_t n, auto&& at) {
  json rows = json::array();
  for (std::size_t x = 0; x < n; ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < n; ++y) {
      const Complex z = at(x, y);
      row.push_back(json::array({z.real(), z.imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Complex> read_grid(const json& grid, std::size_t n, const char* field) {
  if (!grid.is_array() || grid.size() != n) {
    throw FormatError(std::string("'") + field + "' must be an array of " + std::to_string(n) + " rows");
  }
  std::vector<Complex> out;
  out.reserve(n * n);
  for (const json& row : grid) {
    if (!row.is_array() || row.size() != n) {
      throw FormatError(std::string("each row of '") + field + "' must have " + std::to_string(n) + " entries");
    }
    for (const json& z : row) {
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw FormatError(std::string("entries of '") + field + "' must be [re, im] number pairs");
      }
      out.emplace_back(z[0].get<double>(), z[1].get<double>());
    }
  }
  return out;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

std::size_t read_dimension(const json& doc) {
  if (!doc.is_object()) throw FormatError("document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) throw FormatError("field 'n' must be an integer");
  const auto n = doc["n"].get<long long>();
  if (n < 1) throw FormatError("field 'n' must be >= 1");
  return static_cast<std::size_t>(n);
}

}  // namespace

std::string matrix_to_json(const CMatrix& m) {
  json doc = json::object();
  doc["n"] = m.n();
  doc["entries"] = complex_grid(m.n(), [&](std::size_t j, std::size_t k) { return m(j, k); });
  return doc.dump() + "\n";
}

CMatrix matrix_from_json(std::string_view text) {
  const json doc = parse_document(text);
  const std::size_t n = read_dimension(doc);
  if (!doc.contains("entries")) throw FormatError("missing field 'entries'");
  try {
    return CMatrix(n, read_grid(doc["entries"], n, "entries"));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
}

std::string symbol_to_json(const Symbol& s) {
  json doc = json::object();
  doc["n"] = s.n();
  doc["kind"] = "table";
  doc["values"] = complex_grid(s.n(), [&](std::size_t p, std::size_t q) { return s(p, q); });
  return doc.dump() + "\n";
}

SymbolDocument symbol_from_json(std::string_view text) {
  const json doc = parse_document(text);
  const std::size_t n = read_dimension(doc);
  const std::string kind = doc.contains("kind") && doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  if (kind == "table") {
    if (!doc.contains("values")) throw FormatError("missing field 'values'");
    try {
      return {Symbol(n, read_grid(doc["values"], n, "values")), std::nullopt};
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(e.what());
    }
  }
  if (kind == "expr") {
    if (!doc.contains("expr") || !doc["expr"].is_string()) throw FormatError("field 'expr' must be a string");
    const std::string src = doc["expr"].get<std::string>();
    return {symbol_from_expr(*parse_expr(src), n), src};
  }
  throw FormatError("field 'kind' must be \"table\" or \"expr\"");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace dwq
