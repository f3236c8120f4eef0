#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lewis/errors.hpp"
#include "lewis/io.hpp"

namespace lewis::io {

namespace {

class LineReader {
 public:
  LineReader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(std::string(source_) + ":" + std::to_string(line_no_) + ": " + what);
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string_view source_;
  std::size_t line_no_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_number(std::string_view tok, const LineReader& reader) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
    reader.fail("cannot parse number '" + std::string(tok) + "'");
  }
  if (!std::isfinite(value)) reader.fail("non-finite entry '" + std::string(tok) + "'");
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

linalg::RowMatrix build(linalg::Matrix a, std::string_view source) {
  try {
    return linalg::RowMatrix(std::move(a));
  } catch (const InputError& e) {
    throw InputError(std::string(source) + ": " + e.what());
  }
}

long long parse_index(std::string_view tok, const LineReader& reader) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    reader.fail("cannot parse integer '" + std::string(tok) + "'");
  }
  return v;
}

linalg::RowMatrix parse_matrix_market(LineReader& reader, const std::string& header,
                                      std::string_view source) {
  const auto tokens = split_ws(header);
  if (tokens.size() < 5 || lower(std::string(tokens[0])) != "%%matrixmarket" ||
      lower(std::string(tokens[1])) != "matrix") {
    reader.fail("malformed Matrix Market header");
  }
  const std::string layout = lower(std::string(tokens[2]));
  const std::string field = lower(std::string(tokens[3]));
  const std::string symmetry = lower(std::string(tokens[4]));
  if (layout != "array" && layout != "coordinate") reader.fail("unknown layout '" + layout + "'");
  if (field != "real" && field != "integer" && field != "double") {
    reader.fail("unsupported field '" + field + "' (real or integer required)");
  }
  if (symmetry != "general") reader.fail("unsupported symmetry '" + symmetry + "' (general required)");

  std::string line;
  std::vector<std::string_view> size_tokens;
  while (reader.next(line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    size_tokens = split_ws(t);
    break;
  }
  const std::size_t expected = layout == "array" ? 2 : 3;
  if (size_tokens.size() != expected) reader.fail("malformed size line");
  const long long m = parse_index(size_tokens[0], reader);
  const long long n = parse_index(size_tokens[1], reader);
  if (m <= 0 || n <= 0) reader.fail("matrix dimensions must be positive");
  if (static_cast<double>(m) * static_cast<double>(n) > kMaxDenseEntries) {
    reader.fail("matrix would densify to more than 1e8 entries");
  }
  linalg::Matrix a = linalg::Matrix::Zero(m, n);

  if (layout == "array") {
    const long long total = m * n;
    long long k = 0;
    while (k < total && reader.next(line)) {
      const auto t = trim(line);
      if (t.empty() || t.front() == '%') continue;
      for (auto tok : split_ws(t)) {
        if (k >= total) reader.fail("too many entries");
        a(k % m, k / m) = parse_number(tok, reader);  // column-major
        ++k;
      }
    }
    if (k < total) reader.fail("expected " + std::to_string(total) + " entries, found " + std::to_string(k));
  } else {
    const long long nnz = parse_index(size_tokens[2], reader);
    long long k = 0;
    while (k < nnz && reader.next(line)) {
      const auto t = trim(line);
      if (t.empty() || t.front() == '%') continue;
      const auto tok = split_ws(t);
      if (tok.size() != 3) reader.fail("coordinate entry must be 'row col value'");
      const long long i = parse_index(tok[0], reader);
      const long long j = parse_index(tok[1], reader);
      if (i < 1 || i > m || j < 1 || j > n) reader.fail("coordinate index out of range");
      a(i - 1, j - 1) += parse_number(tok[2], reader);
      ++k;
    }
    if (k < nnz) reader.fail("expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
  }
  while (reader.next(line)) {
    const auto t = trim(line);
    if (!t.empty() && t.front() != '%') reader.fail("unexpected trailing data");
  }
  return build(std::move(a), source);
}

linalg::RowMatrix parse_csv(LineReader& reader, const std::string* first_line, std::string_view source) {
  std::vector<double> values;
  long long cols = -1;
  long long rows = 0;
  std::string line;
  auto consume = [&](const std::string& l) {
    const auto t = trim(l);
    if (t.empty()) return;
    long long count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = t.find(',', start);
      const auto tok = t.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      values.push_back(parse_number(tok, reader));
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (cols < 0) {
      cols = count;
    } else if (count != cols) {
      reader.fail("row has " + std::to_string(count) + " fields, expected " + std::to_string(cols));
    }
    ++rows;
    if (static_cast<double>(rows) * static_cast<double>(cols) > kMaxDenseEntries) {
      reader.fail("matrix exceeds 1e8 entries");
    }
  };
  if (first_line) consume(*first_line);
  while (reader.next(line)) consume(line);
  if (rows == 0) throw InputError(std::string(source) + ": empty matrix");
  linalg::Matrix a(rows, cols);
  std::copy(values.begin(), values.end(), a.data());
  return build(std::move(a), source);
}

}  // namespace

linalg::RowMatrix parse_matrix(std::istream& in, MatrixFormat format, std::string_view source) {
  LineReader reader(in, source);
  std::string first;
  if (!reader.next(first)) throw InputError(std::string(source) + ": empty input");
  const bool looks_mm = trim(first).starts_with("%%");
  if (format == MatrixFormat::automatic) {
    format = looks_mm ? MatrixFormat::matrix_market : MatrixFormat::csv;
  }
  if (format == MatrixFormat::matrix_market) {
    if (!looks_mm) reader.fail("missing %%MatrixMarket header");
    return parse_matrix_market(reader, first, source);
  }
  return parse_csv(reader, &first, source);
}

linalg::RowMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  if (format == MatrixFormat::automatic && path.extension() == ".mtx") {
    format = MatrixFormat::matrix_market;
  }
  return parse_matrix(in, format, path.string());
}

void write_matrix_market(std::ostream& out, const linalg::Matrix& a) {
  out << "%%MatrixMarket matrix array real general\n" << a.rows() << ' ' << a.cols() << '\n';
  char buf[32];
  for (linalg::Index j = 0; j < a.cols(); ++j) {
    for (linalg::Index i = 0; i < a.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      out << buf << '\n';
    }
  }
}

}  // namespace lewis::io
