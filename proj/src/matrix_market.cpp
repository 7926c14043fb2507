#include "fopk/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace fopk {

MatrixMarketError::MatrixMarketError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "matrix market line " + std::to_string(line) + ": " + what
                                  : "matrix market: " + what),
      line_(line) {}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next line that is neither a comment nor blank.
  bool next_data(std::string& out) {
    while (std::getline(in_, out)) {
      ++line_;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (blank(out) || out.front() == '%') continue;
      return true;
    }
    return false;
  }

  bool next_raw(std::string& out) {
    if (!std::getline(in_, out)) return false;
    ++line_;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  }

  std::size_t line() const { return line_; }

private:
  std::istream& in_;
  std::size_t line_ = 0;
};

double parse_value(const std::string& token, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    if (!std::isfinite(v)) throw MatrixMarketError(line, "non-finite value '" + token + "'");
    return v;
  } catch (const MatrixMarketError&) {
    throw;
  } catch (const std::exception&) {
    throw MatrixMarketError(line, "cannot parse number '" + token + "'");
  }
}

long long parse_index(const std::string& token, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw MatrixMarketError(line, "cannot parse integer '" + token + "'");
  }
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

}  // namespace

DenseMatrix<double> read_matrix_market(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next_raw(line)) throw MatrixMarketError(1, "empty input");

  const auto header = tokens(line);
  if (header.size() != 5 || lower(header[0]) != "%%matrixmarket") {
    throw MatrixMarketError(reader.line(), "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
  }
  if (lower(header[1]) != "matrix") throw MatrixMarketError(reader.line(), "unsupported object '" + header[1] + "'");
  const std::string format = lower(header[2]);
  const std::string field = lower(header[3]);
  const std::string symmetry = lower(header[4]);
  if (format != "array" && format != "coordinate") {
    throw MatrixMarketError(reader.line(), "unsupported format '" + header[2] + "'");
  }
  if (field != "real" && field != "integer" && field != "double") {
    throw MatrixMarketError(reader.line(), "unsupported field type '" + header[3] + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw MatrixMarketError(reader.line(), "unsupported symmetry '" + header[4] + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  const bool coordinate = format == "coordinate";

  if (!reader.next_data(line)) throw MatrixMarketError(reader.line(), "missing size line");
  const auto size = tokens(line);
  if (size.size() != (coordinate ? 3u : 2u)) throw MatrixMarketError(reader.line(), "malformed size line");
  const long long rows = parse_index(size[0], reader.line());
  const long long cols = parse_index(size[1], reader.line());
  if (rows < 1 || cols < 1) throw MatrixMarketError(reader.line(), "dimensions must be positive");
  if (rows != cols) {
    throw MatrixMarketError(reader.line(), "matrix is not square (" + size[0] + " x " + size[1] + ")");
  }
  const Index n = static_cast<Index>(rows);
  DenseMatrix<double> A = DenseMatrix<double>::Zero(n, n);

  if (coordinate) {
    const long long nnz = parse_index(size[2], reader.line());
    if (nnz < 0) throw MatrixMarketError(reader.line(), "negative entry count");
    for (long long e = 0; e < nnz; ++e) {
      if (!reader.next_data(line)) {
        throw MatrixMarketError(reader.line(), "expected " + std::to_string(nnz) + " entries, found " + std::to_string(e));
      }
      const auto t = tokens(line);
      if (t.size() != 3) throw MatrixMarketError(reader.line(), "expected 'row col value'");
      const long long i = parse_index(t[0], reader.line());
      const long long j = parse_index(t[1], reader.line());
      if (i < 1 || i > rows || j < 1 || j > cols) throw MatrixMarketError(reader.line(), "index out of range");
      const double v = parse_value(t[2], reader.line());
      A(i - 1, j - 1) = v;
      if (symmetric) A(j - 1, i - 1) = v;
    }
  } else {
    // Column-major; symmetric storage lists only the lower triangle.
    for (Index j = 0; j < n; ++j) {
      for (Index i = symmetric ? j : 0; i < n; ++i) {
        if (!reader.next_data(line)) throw MatrixMarketError(reader.line(), "too few array entries");
        const auto t = tokens(line);
        if (t.size() != 1) throw MatrixMarketError(reader.line(), "expected one value per line");
        const double v = parse_value(t[0], reader.line());
        A(i, j) = v;
        if (symmetric) A(j, i) = v;
      }
    }
  }
  if (reader.next_data(line)) throw MatrixMarketError(reader.line(), "unexpected trailing data");
  return A;
}

DenseMatrix<double> load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MatrixMarketError(0, "cannot open '" + path.string() + "'");
  return read_matrix_market(in);
}

}  // namespace fopk
