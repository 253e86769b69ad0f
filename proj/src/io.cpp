#include "maxplus/io.hpp"

#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "maxplus/convert.hpp"

namespace maxplus {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

// Splits into non-blank, non-comment lines.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(pos, end - pos);
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && is_space(raw[i])) ++i;
      if (i >= raw.size()) break;
      if (line.tokens.empty() && raw[i] == '#') break;
      const std::size_t start = i;
      while (i < raw.size() && !is_space(raw[i])) ++i;
      line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

// Consumes a leading "semiring: X" line if present.
Semiring parse_header(const std::vector<Line>& lines, std::size_t& cursor) {
  if (cursor >= lines.size()) return Semiring::MaxPlus;
  const Line& line = lines[cursor];
  const std::string_view first = line.tokens.front().text;
  if (first != "semiring:" && first.substr(0, 9) != "semiring:") return Semiring::MaxPlus;

  std::string_view value;
  std::size_t column = line.tokens.front().column;
  if (first.size() > 9) {
    value = first.substr(9);
    column += 9;
    if (line.tokens.size() != 1) {
      throw ParseError(line.number, line.tokens[1].column, "unexpected token after semiring");
    }
  } else {
    if (line.tokens.size() != 2) {
      throw ParseError(line.number, column, "expected 'semiring: maxplus|maxtimes'");
    }
    value = line.tokens[1].text;
    column = line.tokens[1].column;
  }
  ++cursor;
  if (value == "maxplus") return Semiring::MaxPlus;
  if (value == "maxtimes") return Semiring::MaxTimes;
  throw ParseError(line.number, column, "unknown semiring '" + std::string(value) + "'");
}

Scalar parse_scalar(const Token& tok, std::size_t line, Semiring semiring) {
  if (tok.text == "-inf") {
    if (semiring == Semiring::MaxTimes) {
      throw ParseError(line, tok.column, "-inf is not a max-times value (use 0)");
    }
    return kZero;
  }
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, tok.column, "invalid number '" + std::string(tok.text) + "'");
  }
  try {
    if (semiring == Semiring::MaxTimes) return to_maxplus(value);
    return Scalar(value);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == Errc::NegativeEntry) throw;
    throw ParseError(line, tok.column, e.what());
  }
}

std::size_t parse_dimension(const Line& line) {
  if (line.tokens.size() != 1) {
    throw ParseError(line.number, line.tokens.front().column, "expected the dimension n on its own line");
  }
  const Token& tok = line.tokens.front();
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), n);
  if (ec != std::errc() || ptr != tok.text.data() + tok.text.size() || n == 0) {
    throw ParseError(line.number, tok.column, "dimension must be a positive integer");
  }
  return n;
}

}  // namespace

std::string_view to_string(Semiring s) noexcept {
  return s == Semiring::MaxPlus ? "maxplus" : "maxtimes";
}

MatrixFile read_matrix(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  std::size_t cursor = 0;
  MatrixFile file;
  file.semiring = parse_header(lines, cursor);
  if (cursor >= lines.size()) throw ParseError(lines.empty() ? 1 : lines.back().number + 1, 1, "missing dimension");
  const std::size_t n = parse_dimension(lines[cursor++]);
  if (lines.size() - cursor < n) {
    throw ParseError(lines.back().number + 1, 1,
                     "expected " + std::to_string(n) + " rows, found " + std::to_string(lines.size() - cursor));
  }
  file.matrix = Matrix::square(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Line& line = lines[cursor++];
    if (line.tokens.size() != n) {
      throw Error(Errc::DimensionMismatch, "line " + std::to_string(line.number) + ": expected " +
                                               std::to_string(n) + " entries, found " +
                                               std::to_string(line.tokens.size()));
    }
    for (std::size_t j = 0; j < n; ++j) {
      file.matrix(i, j) = parse_scalar(line.tokens[j], line.number, file.semiring);
    }
  }
  if (cursor != lines.size()) {
    const Line& extra = lines[cursor];
    throw ParseError(extra.number, extra.tokens.front().column, "trailing content after matrix rows");
  }
  return file;
}

VectorFile read_vector(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  std::size_t cursor = 0;
  VectorFile file;
  file.semiring = parse_header(lines, cursor);
  const std::size_t remaining = lines.size() - cursor;
  if (remaining == 0) throw ParseError(lines.empty() ? 1 : lines.back().number + 1, 1, "missing vector entries");
  if (remaining > 2) {
    const Line& extra = lines[cursor + 2];
    throw ParseError(extra.number, extra.tokens.front().column, "trailing content after vector");
  }
  std::optional<std::size_t> expected;
  if (remaining == 2) expected = parse_dimension(lines[cursor++]);
  const Line& line = lines[cursor];
  if (expected && line.tokens.size() != *expected) {
    throw Error(Errc::DimensionMismatch, "line " + std::to_string(line.number) + ": expected " +
                                             std::to_string(*expected) + " entries, found " +
                                             std::to_string(line.tokens.size()));
  }
  for (const Token& tok : line.tokens) file.vector.push_back(parse_scalar(tok, line.number, file.semiring));
  return file;
}

std::string format_scalar(Scalar s, Semiring semiring) {
  if (semiring == Semiring::MaxTimes) {
    const double v = to_maxtimes(s);
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }
  if (s.is_zero()) return "-inf";
  char buf[64];
  const double v = s.value() == 0.0 ? 0.0 : s.value();  // drop the sign of -0
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string write_matrix(const Matrix& m, Semiring semiring) {
  const std::size_t n = m.dim();
  std::string out = "semiring: " + std::string(to_string(semiring)) + "\n" + std::to_string(n) + "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ' ';
      out += format_scalar(m(i, j), semiring);
    }
    out += '\n';
  }
  return out;
}

std::string write_vector(const Vector& v, Semiring semiring) {
  std::string out = "semiring: " + std::string(to_string(semiring)) + "\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_scalar(v[i], semiring);
  }
  out += '\n';
  return out;
}

}  // namespace maxplus
