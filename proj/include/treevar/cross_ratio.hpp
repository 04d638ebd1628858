#pragma once

#include <array>

#include "treevar/field.hpp"
#include "treevar/matrix.hpp"

namespace treevar {

/// Cross-ratio of a pencil Z_1..Z_4 of d-dimensional subspaces between Λ
/// (dimension d-1) and Λ' (dimension d+1). Every argument is an n-row matrix
/// whose columns span the subspace; Λ may have zero columns. The images in
/// Λ'/Λ are sent to 0, ∞, 1 and the value of the fourth is returned. For
/// pairwise distinct inputs it is always finite.
/// Errors: NotAPencil (dimensions or containments), Degenerate (repeated Z_i).
Elem cross_ratio(const PrimeField& f, const std::array<Matrix, 4>& pencil, const Matrix& sub,
                 const Matrix& sup);

}  // namespace treevar
