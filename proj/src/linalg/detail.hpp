#pragma once

#include "lewis/linalg.hpp"

namespace lewis::linalg::detail {

// Rows of the orthonormal factor of Diag(c)^{1/2} A (blocked TSQR + row solves).
Matrix orthonormal_factor_rows(const RowMatrix& a, const ScalingVector& c);

}  // namespace lewis::linalg::detail
