#pragma once

#include <cstdint>

#include "treevar/tree.hpp"

namespace treevar {

struct OrbitLimits {
  std::uint64_t max_points = 200'000;
};

struct OrbitReport {
  std::uint32_t q = 0;
  std::uint64_t point_count = 0;  // saturates at UINT64_MAX
  std::uint64_t orbit_count = 0;
  bool limits_hit = false;
  std::uint64_t enumerated = 0;  // points actually visited
};

/// Number of k-dimensional subspaces of F_q^n; saturates at UINT64_MAX.
std::uint64_t gaussian_binomial(std::int64_t n, std::int64_t k, std::uint32_t q);

/// |F(T, phi)(F_q)|: product of Gaussian binomials over the edges.
std::uint64_t point_count(const LabeledTree& tree, std::uint32_t q);

/// Exact number of GL(n, q)-orbits. A longest-style spine is fixed as a
/// coordinate flag, one more chain is reduced to its Bruhat-cell
/// representatives, and the remaining vertices are enumerated per
/// representative under the stabilizing pattern group. `max_points` bounds
/// every enumerated set. Errors: BadRange (q not in {2,3,4,5}), CapExceeded.
OrbitReport enumerate_orbits(const LabeledTree& tree, std::uint32_t q, const OrbitLimits& limits = {});

/// Brute force over every point with a generating set of GL(n, q); `max_points`
/// bounds the point count.
OrbitReport enumerate_orbits_reference(const LabeledTree& tree, std::uint32_t q,
                                       const OrbitLimits& limits = {});

}  // namespace treevar
