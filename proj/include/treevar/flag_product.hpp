#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace treevar {

using Label = std::int64_t;

/// Labels above this bound are rejected so every dimension fits in 64 bits.
inline constexpr Label kMaxLabel = 1'000'000;

using DimensionVector = std::vector<Label>;

/// A product of partial flag varieties F(k_1,...,k_r; n) sharing one ambient
/// dimension. An empty factor list is the one-point variety.
struct FlagProduct {
  std::vector<DimensionVector> factors;
  Label ambient = 0;

  friend bool operator==(const FlagProduct&, const FlagProduct&) = default;
  friend auto operator<=>(const FlagProduct&, const FlagProduct&) = default;
};

/// Throws BoundsError unless every factor is nonempty and strictly increasing
/// inside (0, ambient).
void check_product(const FlagProduct& product);

/// Copy with factors sorted lexicographically.
FlagProduct sorted_factors(FlagProduct product);

/// Sum of k(k' - k) over consecutive entries, closing each chain with the ambient.
std::int64_t product_dimension(const FlagProduct& product);

/// Human/grammar form, e.g. `F(1,2;4)^3` or `G(1;5)*G(2;5)^2`; the point is `point(n)`.
std::string format_product(const FlagProduct& product);

}  // namespace treevar
