// Copyright 2026 The Twirl Authors
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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "twirl/errors.hpp"
#include "twirl/linalg.hpp"

namespace twirl::cli {

/// Malformed input text. `line` and `column` are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(std::string source, int line, int column, const std::string& message);

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string source_;
  int line_;
  int column_;
};

/// Shortest locale-independent scientific form with 17 significant digits.
std::string format_real(double value);

/// "re+imj" / "re-imj"; both parts with 17 significant digits. Round-trips bit-exactly.
std::string format_complex(Complex value);

/// Parses a whole token as a double ('.' decimal separator, no locale).
std::optional<double> parse_real(std::string_view token);
std::optional<Complex> parse_complex(std::string_view token);

/// Dense complex matrix text format:
///   line 1:      "rows cols"
///   next rows:   whitespace-separated "re+imj" tokens, one matrix row per line.
void write_matrix(std::ostream& out, const ComplexMatrix& m);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_matrix(std::istream& in, const std::string& source);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

/// Assembles sum_k c_k P_k from lines "<real coefficient> <string over IXYZ>".
/// Blank lines and lines starting with '#' are ignored. The leftmost Pauli
/// letter acts on the most significant tensor factor. When `qubits` is given
/// every term must have that length.
ComplexMatrix pauli_sum_matrix(std::string_view text, std::optional<int> qubits = std::nullopt,
                               const std::string& source = "<pauli>");

HermitianOperator parse_pauli_sum(std::string_view text, std::optional<int> qubits = std::nullopt,
                                  const std::string& source = "<pauli>");

}  // namespace twirl::cli
