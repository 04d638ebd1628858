#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "treevar/field.hpp"
#include "treevar/matrix.hpp"
#include "treevar/tree.hpp"

namespace treevar {

inline constexpr std::uint32_t kDefaultPrime = 2147483647u;

/// A point of F(T, phi) over F_p. bases[v] is n x phi(v) and its columns span
/// U_v; the root entry is left empty since U_root is the whole space.
struct Configuration {
  LabeledTree tree;
  std::uint32_t prime = kDefaultPrime;
  std::vector<Matrix> bases;
  std::uint64_t seed = 0;
};

/// Samples each U_v uniformly inside U_target, closest-to-root first. Draws
/// come from the stream (seed, trial, vertex). Errors: NotPrime, BadRange
/// (p <= n), RankSamplingFailure.
Configuration random_config(const LabeledTree& tree, std::uint32_t prime, std::uint64_t seed,
                            std::uint32_t trial = 0);

struct StabReport {
  std::uint32_t prime = 0;
  std::size_t trials = 0;
  std::size_t system_rank = 0;
  std::int64_t variety_dim = 0;
  std::int64_t lie_stab_dim = 0;
  std::int64_t pgl_stab_dim = 0;
  bool certified_dense = false;
  std::vector<std::size_t> trial_ranks;
};

/// Builds the rows of C_v X B_v = 0 for every non-root v; unknown X(i,j) is
/// column i*n + j.
Matrix stabilizer_system(const Configuration& config);

enum class Elimination { Serial, Parallel };

StabReport stabilizer_dim(const Configuration& config, Elimination mode = Elimination::Parallel);

/// Runs `trials` independent samples; certified once any of them reaches full
/// rank. Errors: NotPrime, BadRange.
StabReport certify_density(const LabeledTree& tree, std::uint32_t prime, std::size_t trials,
                           std::uint64_t seed);

}  // namespace treevar
