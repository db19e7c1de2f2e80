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

#include "twirl/cli/formats.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace twirl::cli {
namespace {

std::string where(const std::string& source, int line, int column) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ":" << line;
  if (column > 0) os << ":" << column;
  return os.str();
}

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

ComplexMatrix pauli_matrix(char c) {
  ComplexMatrix p(2, 2);
  switch (c) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

}  // namespace

ParseError::ParseError(std::string source, int line, int column, const std::string& message)
    : Error(where(source, line, column) + ": " + message), source_(std::move(source)), line_(line), column_(column) {}

std::string format_real(double value) {
  if (!std::isfinite(value)) throw DomainError("format_real: non-finite value cannot be written");
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::scientific, 16);
  return std::string(buf.data(), res.ptr);
}

std::string format_complex(Complex value) {
  const double im = value.imag();
  std::string out = format_real(value.real());
  if (std::signbit(im)) {
    out += '-';
    out += format_real(-im);
  } else {
    out += '+';
    out += format_real(im);
  }
  out += 'j';
  return out;
}

std::optional<double> parse_real(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return std::nullopt;
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value, std::chars_format::general);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<Complex> parse_complex(std::string_view token) {
  if (token.size() < 2 || token.back() != 'j') return std::nullopt;
  const std::string_view body = token.substr(0, token.size() - 1);
  // The imaginary sign is the last '+'/'-' not at the start and not inside an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = 1; i < body.size(); ++i) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') split = i;
  }
  if (split == std::string_view::npos) return std::nullopt;
  const auto re = parse_real(body.substr(0, split));
  const std::string_view im_text = body.substr(split + 1);
  if (im_text.empty() || im_text.front() == '+' || im_text.front() == '-') return std::nullopt;
  const auto im = parse_real(im_text);
  if (!re || !im) return std::nullopt;
  return Complex(*re, body[split] == '-' ? -*im : *im);
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_complex(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_matrix(out, m);
  if (!out) throw Error("failed writing " + path.string());
}

ComplexMatrix read_matrix(std::istream& in, const std::string& source) {
  std::string line;
  int line_no = 0;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!split_tokens(line).empty()) return true;
    }
    return false;
  };
  if (!next_content_line()) throw ParseError(source, 0, 0, "empty matrix file, expected header \"rows cols\"");
  const auto header = split_tokens(line);
  if (header.size() != 2) throw ParseError(source, line_no, 1, "header must be \"rows cols\"");
  Index dims[2];
  for (int k = 0; k < 2; ++k) {
    long long v = -1;
    const auto tok = header[k].text;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v < 1) {
      throw ParseError(source, line_no, header[k].column, "invalid dimension '" + std::string(tok) + "'");
    }
    dims[k] = static_cast<Index>(v);
  }
  ComplexMatrix m(dims[0], dims[1]);
  for (Index r = 0; r < dims[0]; ++r) {
    if (!next_content_line()) {
      std::ostringstream os;
      os << "truncated matrix: expected " << dims[0] << " rows, found " << r;
      throw ParseError(source, line_no + 1, 0, os.str());
    }
    const auto tokens = split_tokens(line);
    if (static_cast<Index>(tokens.size()) != dims[1]) {
      std::ostringstream os;
      os << "row " << (r + 1) << ": expected " << dims[1] << " entries, found " << tokens.size();
      throw ParseError(source, line_no, 0, os.str());
    }
    for (Index c = 0; c < dims[1]; ++c) {
      const auto value = parse_complex(tokens[c].text);
      if (!value) {
        throw ParseError(source, line_no, tokens[c].column,
                         "malformed entry '" + std::string(tokens[c].text) + "', expected re+imj");
      }
      m(r, c) = *value;
    }
  }
  if (next_content_line()) {
    std::ostringstream os;
    os << "unexpected extra content after " << dims[0] << " rows";
    throw ParseError(source, line_no, 0, os.str());
  }
  return m;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
  return read_matrix(in, path.string());
}

ComplexMatrix pauli_sum_matrix(std::string_view text, std::optional<int> qubits, const std::string& source) {
  std::optional<int> n = qubits;
  ComplexMatrix total;
  int line_no = 0;
  std::size_t pos = 0;
  bool any = false;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.front().text.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (tokens.size() != 2) {
      throw ParseError(source, line_no, tokens.front().column,
                       "expected \"<real coefficient> <pauli string>\", found " + std::to_string(tokens.size()) +
                           " fields");
    }
    const auto coeff = parse_real(tokens[0].text);
    if (!coeff) {
      const bool complex_like = tokens[0].text.find_first_of("jiJI") != std::string_view::npos;
      throw ParseError(source, line_no, tokens[0].column,
                       complex_like ? "coefficient must be real, found '" + std::string(tokens[0].text) + "'"
                                    : "invalid coefficient '" + std::string(tokens[0].text) + "'");
    }
    const std::string_view word = tokens[1].text;
    for (std::size_t k = 0; k < word.size(); ++k) {
      const char c = word[k];
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw ParseError(source, line_no, tokens[1].column + static_cast<int>(k),
                         std::string("invalid Pauli letter '") + c + "', expected one of I, X, Y, Z");
      }
    }
    if (!n) n = static_cast<int>(word.size());
    if (static_cast<int>(word.size()) != *n) {
      std::ostringstream os;
      os << "Pauli string has length " << word.size() << ", expected " << *n;
      throw ParseError(source, line_no, tokens[1].column, os.str());
    }
    if (*n > 14) throw ParseError(source, line_no, tokens[1].column, "too many qubits for dense assembly");
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    for (char c : word) term = kron(term, pauli_matrix(c));
    if (!any) {
      total = ComplexMatrix::Zero(term.rows(), term.cols());
      any = true;
    }
    total += *coeff * term;
    if (end == text.size()) break;
  }
  if (!any) {
    if (!n) throw ParseError(source, 0, 0, "no Pauli terms and no qubit count given");
    const Index d = Index{1} << *n;
    return ComplexMatrix::Zero(d, d);
  }
  return total;
}

HermitianOperator parse_pauli_sum(std::string_view text, std::optional<int> qubits, const std::string& source) {
  return HermitianOperator(pauli_sum_matrix(text, qubits, source));
}

}  // namespace twirl::cli
