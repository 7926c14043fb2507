#pragma once

#include "fopk/types.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace fopk {

/// Malformed or unsupported Matrix Market input. `line()` is 1-based, 0 when
/// the problem is not tied to a line (e.g. a missing file).
class MatrixMarketError : public std::runtime_error {
public:
  MatrixMarketError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Reads `array` or `coordinate` real/integer matrices with general or
/// symmetric storage into a dense square matrix.
DenseMatrix<double> read_matrix_market(std::istream& in);
DenseMatrix<double> load_matrix_market(const std::filesystem::path& path);

}  // namespace fopk
