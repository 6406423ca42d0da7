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


#ifndef DWQ_IO_HPP
#define DWQ_IO_HPP

#include <optional>
#include <string>
#include <string_view>

#include "dwq/linalg.hpp"
#include "dwq/quantization.hpp"

namespace dwq {

// Matrix JSON: {"n": n, "entries": [[[re, im], ...], ...]} with the outer
// index the bra (row) index.
//
// Symbol JSON: {"n": n, "kind": "table", "values": [[[re, im], ...], ...]}
// indexed [p][q], or {"n": n, "kind": "expr", "expr": "<expression>"} for a
// real symbol given by an expression in p, q and n.

/// Malformed or inconsistent file content.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or unwritable path.
class IoError : public Error {
 public:
  using Error::Error;
};

std::string matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(std::string_view text);

std::string symbol_to_json(const Symbol& s);

struct SymbolDocument {
  Symbol symbol;
  /// Source text for expression symbols.
  std::optional<std::string> expr;
};

/// Throws FormatError, or ParseError / EvalError for expression symbols.
SymbolDocument symbol_from_json(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace dwq

#endif  // DWQ_IO_HPP
