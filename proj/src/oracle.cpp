#include "treevar/oracle.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <stdexcept>

#include "treevar/error.hpp"
#include "treevar/rng.hpp"

namespace treevar {

namespace {

constexpr int kMaxRankRetries = 64;

std::vector<LabeledTree::Index> by_distance(const LabeledTree& tree) {
  std::vector<LabeledTree::Index> order(tree.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> dist(tree.size());
  for (auto v : order) dist[v] = tree.distance_to_root(v);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return dist[a] < dist[b]; });
  return order;
}

}  // namespace

Configuration random_config(const LabeledTree& tree, std::uint32_t prime, std::uint64_t seed,
                            std::uint32_t trial) {
  const PrimeField f(prime);
  const auto n = static_cast<std::size_t>(tree.ambient());
  if (static_cast<std::uint64_t>(prime) <= n) {
    throw Error(ErrorKind::BadRange, "prime " + std::to_string(prime) +
                                         " must exceed the ambient dimension " + std::to_string(n));
  }
  Configuration config{tree, prime, std::vector<Matrix>(tree.size()), seed};
  for (auto v : by_distance(tree)) {
    const auto t = tree.target(v);
    if (t == LabeledTree::npos) continue;
    const auto kv = static_cast<std::size_t>(tree.label(v));
    const auto kt = static_cast<std::size_t>(tree.label(t));
    CounterRng rng(seed, trial, static_cast<std::uint32_t>(v));
    Matrix coeffs(kt, kv);
    bool full = false;
    for (int attempt = 0; attempt < kMaxRankRetries && !full; ++attempt) {
      for (auto& x : coeffs.data) x = rng.uniform(prime);
      full = rank_serial(f, coeffs) == kv;
    }
    if (!full) {
      throw Error(ErrorKind::RankSamplingFailure,
                  "no full-rank sample for vertex '" + tree.name(v) + "'");
    }
    config.bases[v] = t == tree.root() ? coeffs : multiply(f, config.bases[t], coeffs);
  }
  return config;
}

Matrix stabilizer_system(const Configuration& config) {
  const PrimeField f(config.prime);
  const auto& tree = config.tree;
  const auto n = static_cast<std::size_t>(tree.ambient());
  std::vector<std::size_t> offset(tree.size() + 1, 0);
  for (std::size_t v = 0; v < tree.size(); ++v) {
    const auto k = static_cast<std::size_t>(tree.label(v));
    offset[v + 1] = offset[v] + (v == tree.root() ? 0 : (n - k) * k);
  }
  Matrix system(offset.back(), n * n);
  const auto count = static_cast<std::ptrdiff_t>(tree.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t vi = 0; vi < count; ++vi) {
    const auto v = static_cast<std::size_t>(vi);
    if (v == tree.root()) continue;
    const Matrix& b = config.bases[v];
    const Matrix c = left_annihilator(f, b);
    std::size_t row = offset[v];
    for (std::size_t a = 0; a < c.rows; ++a) {
      for (std::size_t col = 0; col < b.cols; ++col, ++row) {
        for (std::size_t i = 0; i < n; ++i) {
          const Elem cai = c(a, i);
          if (cai == 0) continue;
          for (std::size_t j = 0; j < n; ++j) system(row, i * n + j) = f.mul(cai, b(j, col));
        }
      }
    }
  }
  return system;
}

StabReport stabilizer_dim(const Configuration& config, Elimination mode) {
  const PrimeField f(config.prime);
  const auto n = config.tree.ambient();
  Matrix system = stabilizer_system(config);
  const std::size_t rank = mode == Elimination::Serial ? rank_serial(f, std::move(system))
                                                       : rank_parallel(f, std::move(system));
  StabReport report;
  report.prime = config.prime;
  report.trials = 1;
  report.system_rank = rank;
  report.variety_dim = dimension(config.tree);
  report.lie_stab_dim = n * n - static_cast<std::int64_t>(rank);
  report.pgl_stab_dim = report.lie_stab_dim - 1;
  report.certified_dense = static_cast<std::int64_t>(rank) == report.variety_dim;
  report.trial_ranks = {rank};
  if (static_cast<std::int64_t>(rank) > report.variety_dim || report.lie_stab_dim < 1) {
    throw std::logic_error("stabilizer rank " + std::to_string(rank) +
                           " exceeds the variety dimension");
  }
  return report;
}

StabReport certify_density(const LabeledTree& tree, std::uint32_t prime, std::size_t trials,
                           std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorKind::BadRange, "trials must be at least 1");
  [[maybe_unused]] const PrimeField validated(prime);
  std::vector<StabReport> results(trials);
  std::vector<std::exception_ptr> failures(trials);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    try {
      results[t] = stabilizer_dim(
          random_config(tree, prime, seed, static_cast<std::uint32_t>(t)), Elimination::Serial);
    } catch (...) {
      failures[t] = std::current_exception();
    }
  }
  for (auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  StabReport merged = results.front();
  merged.trials = trials;
  merged.trial_ranks.clear();
  for (const auto& r : results) {
    merged.trial_ranks.push_back(r.system_rank);
    merged.system_rank = std::max(merged.system_rank, r.system_rank);
  }
  const auto n = tree.ambient();
  merged.lie_stab_dim = n * n - static_cast<std::int64_t>(merged.system_rank);
  merged.pgl_stab_dim = merged.lie_stab_dim - 1;
  merged.certified_dense = static_cast<std::int64_t>(merged.system_rank) == merged.variety_dim;
  return merged;
}

}  // namespace treevar
