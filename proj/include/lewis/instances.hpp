#pragma once

#include <cstdint>

#include "lewis/linalg.hpp"

// Seeded test and benchmark inputs.
namespace lewis::instances {

/// n x d matrix with i.i.d. standard normal entries.
linalg::RowMatrix gaussian(linalg::Index n, linalg::Index d, std::uint64_t seed);

/// k copies of the d x d identity stacked vertically; its Lewis weights are all 1/k.
linalg::RowMatrix stacked_identity(linalg::Index k, linalg::Index d);

/// Random invertible d x d matrix with singular values in [1, max_cond].
linalg::SquareMatrix conditioned_factor(linalg::Index d, double max_cond, std::uint64_t seed);

}  // namespace lewis::instances
