#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "lewis/linalg.hpp"

namespace lewis::io {

enum class MatrixFormat { automatic, matrix_market, csv };

/// Coordinate inputs that would densify beyond this many entries are refused.
inline constexpr double kMaxDenseEntries = 1e8;

/// Reads a Matrix Market (array or coordinate, real/integer, general) file or a
/// headerless CSV. Errors carry "source:line:" prefixes where applicable.
linalg::RowMatrix load_matrix(const std::filesystem::path& path,
                              MatrixFormat format = MatrixFormat::automatic);

linalg::RowMatrix parse_matrix(std::istream& in, MatrixFormat format,
                               std::string_view source = "<input>");

/// Writes Matrix Market array format with 17 significant digits.
void write_matrix_market(std::ostream& out, const linalg::Matrix& a);

}  // namespace lewis::io
