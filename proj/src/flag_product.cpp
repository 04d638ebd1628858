#include "treevar/flag_product.hpp"

#include <algorithm>

#include "treevar/error.hpp"

namespace treevar {

void check_product(const FlagProduct& product) {
  if (product.ambient <= 0 || product.ambient > kMaxLabel) {
    throw Error(ErrorKind::BoundsError, "ambient dimension must lie in [1, " +
                                            std::to_string(kMaxLabel) + "]");
  }
  for (const auto& f : product.factors) {
    if (f.empty()) throw Error(ErrorKind::BoundsError, "empty factor");
    Label prev = 0;
    for (auto k : f) {
      if (k <= prev) throw Error(ErrorKind::BoundsError, "factor entries must be positive and strictly increasing");
      if (k >= product.ambient) {
        throw Error(ErrorKind::BoundsError, "factor entry " + std::to_string(k) +
                                                " is not below the ambient dimension " +
                                                std::to_string(product.ambient));
      }
      prev = k;
    }
  }
}

FlagProduct sorted_factors(FlagProduct product) {
  std::sort(product.factors.begin(), product.factors.end());
  return product;
}

std::int64_t product_dimension(const FlagProduct& product) {
  std::int64_t total = 0;
  for (const auto& f : product.factors) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Label next = i + 1 < f.size() ? f[i + 1] : product.ambient;
      total += f[i] * (next - f[i]);
    }
  }
  return total;
}

std::string format_product(const FlagProduct& product) {
  const auto n = std::to_string(product.ambient);
  if (product.factors.empty()) return "point(" + n + ")";
  auto one = [&](const DimensionVector& f) {
    std::string s = f.size() == 1 ? "G(" : "F(";
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(f[i]);
    }
    return s + ";" + n + ")";
  };
  std::string out;
  for (std::size_t i = 0; i < product.factors.size();) {
    std::size_t j = i;
    while (j < product.factors.size() && product.factors[j] == product.factors[i]) ++j;
    if (!out.empty()) out += "*";
    out += one(product.factors[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace treevar
