#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "treevar/tree.hpp"

namespace treevar {

enum class OrbitKind { Homogeneous, TwoOrbits, FiniteType, InfiniteType };

const char* to_string(OrbitKind kind);

/// Finite/infinite orbit classification of F(T, phi) under PGL(n).
struct OrbitClass {
  OrbitKind kind = OrbitKind::InfiniteType;
  std::optional<std::string> case_label;  // "1", "2a".."2d" for FiniteType
  std::string witness;

  bool finitely_many_orbits() const { return kind != OrbitKind::InfiniteType; }
};

OrbitClass orbit_class(const LabeledTree& tree);

/// Dimension-count obstruction: dim F(T^v) > phi(v)^2 - 1 at some vertex v.
struct SparsenessCheck {
  bool trivially_sparse = false;
  std::optional<LabeledTree::Index> violating_vertex;
  std::int64_t lhs = 0;  // at the violating vertex, else at the root
  std::int64_t rhs = 0;
};

/// Checks every vertex in index order and reports the first violation.
SparsenessCheck trivially_sparse(const LabeledTree& tree);

}  // namespace treevar
