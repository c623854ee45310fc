#include "lsape/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

#include "lsape/error.hpp"

namespace lsape {
namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorCode::kParse, fmt::format("line {}: {}", line, what));
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                 line[pos] == '\r')) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
           line[end] != '\r') {
      ++end;
    }
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

template <typename T>
T parse_number(std::string_view field, int line) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  // from_chars does not accept an explicit '+' sign.
  if (last - first > 1 && first[0] == '+' && first[1] != '-') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    parse_error(line, fmt::format("cannot parse '{}'", field));
  }
  return value;
}

// Reads the next non-empty line; returns false at end of input.
bool next_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_fields(line).empty()) return true;
  }
  return false;
}

std::pair<int, int> read_header(std::istream& in, int& line_no) {
  std::string line;
  if (!next_line(in, line, line_no)) parse_error(line_no, "missing header");
  const auto fields = split_fields(line);
  if (fields.size() != 2) parse_error(line_no, "header must be 'n m'");
  const int n = parse_number<int>(fields[0], line_no);
  const int m = parse_number<int>(fields[1], line_no);
  if (n < 1 || m < 1) parse_error(line_no, "n and m must be positive");
  return {n, m};
}

void expect_end(std::istream& in, int& line_no) {
  std::string line;
  if (next_line(in, line, line_no)) parse_error(line_no, "trailing content");
}

}  // namespace

EpsMatrix read_matrix(std::istream& in, Role role) {
  int line_no = 0;
  const auto [n, m] = read_header(in, line_no);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n + 1) * (m + 1));
  std::string line;
  for (int i = 0; i <= n; ++i) {
    if (!next_line(in, line, line_no)) {
      parse_error(line_no, fmt::format("expected {} matrix rows", n + 1));
    }
    const auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) != m + 1) {
      parse_error(line_no, fmt::format("expected {} values, found {}", m + 1,
                                       fields.size()));
    }
    for (auto f : fields) values.push_back(parse_number<double>(f, line_no));
  }
  expect_end(in, line_no);
  try {
    return EpsMatrix(n, m, std::move(values), role);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

std::string format_matrix(const EpsMatrix& s) {
  std::string out = fmt::format("{} {}\n", s.n(), s.m());
  for (int i = 0; i < s.rows(); ++i) {
    const auto row = s.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ' ';
      out += fmt::format("{:.17g}", row[j]);
    }
    out += '\n';
  }
  return out;
}

void write_matrix(std::ostream& out, const EpsMatrix& s) {
  out << format_matrix(s);
}

EpsAssignment read_assignment(std::istream& in) {
  int line_no = 0;
  const auto [n, m] = read_header(in, line_no);
  std::string line;
  if (!next_line(in, line, line_no)) parse_error(line_no, "missing targets");
  const auto fields = split_fields(line);
  if (static_cast<int>(fields.size()) != n) {
    parse_error(line_no,
                fmt::format("expected {} targets, found {}", n, fields.size()));
  }
  EpsAssignment a{n, m, {}};
  for (auto f : fields) {
    const int t = parse_number<int>(f, line_no);
    if (t < 0 || t > m) parse_error(line_no, fmt::format("target {} out of range", t));
    a.target.push_back(t == 0 ? EpsAssignment::kDeleted : t - 1);
  }
  expect_end(in, line_no);
  if (!a.is_valid()) parse_error(line_no, "a target is used twice");
  return a;
}

std::string format_assignment(const EpsAssignment& a) {
  std::string out = fmt::format("{} {}\n", a.n, a.m);
  for (int i = 0; i < a.n; ++i) {
    if (i > 0) out += ' ';
    out += fmt::format(
        "{}", a.target[i] == EpsAssignment::kDeleted ? 0 : a.target[i] + 1);
  }
  out += '\n';
  return out;
}

void write_assignment(std::ostream& out, const EpsAssignment& a) {
  out << format_assignment(a);
}

EpsMatrix load_matrix(const std::filesystem::path& path, Role role) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParse,
                fmt::format("cannot open '{}'", path.string()));
  }
  return read_matrix(in, role);
}

EpsAssignment load_assignment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParse,
                fmt::format("cannot open '{}'", path.string()));
  }
  return read_assignment(in);
}

void save_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("cannot write '{}'", path.string()));
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::kInvalidInput,
                fmt::format("write to '{}' failed", path.string()));
  }
}

}  // namespace lsape
