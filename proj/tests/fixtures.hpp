#pragma once

#include <random>
#include <string>
#include <vector>

#include "treevar/matrix.hpp"
#include "treevar/parse.hpp"
#include "treevar/tree.hpp"

namespace fixtures {

inline treevar::LabeledTree tree(const char* spec) { return treevar::parse_tree_spec(spec); }

/// Random valid tree: vertices attach to earlier ones and take a label strictly
/// below their target's.
inline treevar::LabeledTree random_tree(std::mt19937_64& rng, int max_vertices, int max_ambient) {
  std::uniform_int_distribution<int> ambient_dist(2, max_ambient);
  treevar::RawTree raw;
  const int n = ambient_dist(rng);
  raw.labels.emplace_back("v0", n);
  std::vector<int> label{n};
  const int count = std::uniform_int_distribution<int>(1, max_vertices)(rng);
  for (int i = 1; i < count; ++i) {
    std::vector<int> candidates;
    for (int j = 0; j < i; ++j) {
      if (label[j] > 1) candidates.push_back(j);
    }
    if (candidates.empty()) break;
    const int parent = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    const int l = std::uniform_int_distribution<int>(1, label[parent] - 1)(rng);
    label.push_back(l);
    const std::string name = "v" + std::to_string(label.size() - 1);
    raw.labels.emplace_back(name, l);
    raw.edges.emplace_back(name, "v" + std::to_string(parent));
  }
  return treevar::validate_tree(raw);
}

/// Random product: 1..max_factors nonempty increasing sequences in [1, n).
inline treevar::FlagProduct random_product(std::mt19937_64& rng, treevar::Label max_n, int max_factors) {
  using treevar::Label;
  const Label n = 2 + static_cast<Label>(rng() % static_cast<std::uint64_t>(max_n - 1));
  treevar::FlagProduct p{{}, n};
  const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_factors));
  for (int i = 0; i < m; ++i) {
    treevar::DimensionVector k;
    for (Label x = 1; x < n; ++x) {
      if (rng() % 3 == 0) k.push_back(x);
    }
    if (k.empty()) k.push_back(1 + static_cast<Label>(rng() % static_cast<std::uint64_t>(n - 1)));
    p.factors.push_back(k);
  }
  return p;
}

inline treevar::Matrix random_invertible(std::mt19937_64& rng, const treevar::PrimeField& f, std::size_t n) {
  while (true) {
    treevar::Matrix m(n, n);
    for (auto& x : m.data) x = static_cast<treevar::Elem>(rng() % f.order());
    if (treevar::rank_serial(f, m) == n) return m;
  }
}

}  // namespace fixtures
