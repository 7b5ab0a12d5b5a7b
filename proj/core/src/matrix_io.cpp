#include "cycleclust/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "cycleclust/error.hpp"

namespace cycleclust {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) tokens.push_back(tok);
  return tokens;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

double parse_number(const std::string& tok, int line_no) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) fail(line_no, "not a number: '" + tok + "'");
  return value;
}

int parse_count(const std::string& tok, int line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value <= 0)
    fail(line_no, "expected a positive bin count, got '" + tok + "'");
  return value;
}

}  // namespace

MatrixFile parse_matrix(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;

  // header
  std::vector<std::string> header;
  while (header.empty() && std::getline(is, line)) {
    ++line_no;
    header = split_ws(line);
  }
  if (header.empty()) throw Error(Errc::ParseError, "empty matrix file");

  MatrixFile out;
  int n = 0;
  if (header.size() == 1) {
    out.format = MatrixFormat::Transition;
    n = parse_count(header[0], line_no);
  } else if (header.size() == 2 && header[0] == "FM") {
    out.format = MatrixFormat::Flow;
    n = parse_count(header[1], line_no);
  } else {
    fail(line_no, "header must be 'n' (tm-v1) or 'FM n' (fm-v1)");
  }

  out.entries = Matrix::Zero(n, n);
  int row = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    for (const auto& tok : tokens) {
      if (tok == "FM") fail(line_no, "format header inside matrix body (mixed tm-v1/fm-v1)");
    }
    if (row >= n) fail(line_no, "more than " + std::to_string(n) + " rows");
    if (static_cast<int>(tokens.size()) != n)
      fail(line_no, "expected " + std::to_string(n) + " entries, got " + std::to_string(tokens.size()));
    for (int j = 0; j < n; ++j) out.entries(row, j) = parse_number(tokens[j], line_no);
    ++row;
  }
  if (row != n) fail(line_no, "expected " + std::to_string(n) + " rows, got " + std::to_string(row));
  return out;
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  try {
    return parse_matrix(read_text_file(path));
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw Error(Errc::ParseError, path.string() + ": " + e.what());
    throw;
  }
}

std::string format_matrix(MatrixFormat format, const Matrix& entries) {
  std::string out;
  char buf[64];
  if (format == MatrixFormat::Flow) out += "FM ";
  out += std::to_string(entries.rows()) + "\n";
  for (int i = 0; i < entries.rows(); ++i) {
    for (int j = 0; j < entries.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", entries(i, j));
      if (j > 0) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_matrix_file(const std::filesystem::path& path, MatrixFormat format, const Matrix& entries) {
  write_text_file(path, format_matrix(format, entries));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out << text;
}

}  // namespace cycleclust
