#include "treevar/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "treevar/error.hpp"
#include "treevar/field.hpp"
#include "treevar/matrix.hpp"

namespace treevar {

namespace {

using Index = LabeledTree::Index;
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --classes_;
  }
  void set_size(std::size_t n) { classes_ = n; }
  std::size_t classes() const { return classes_; }

 private:
  std::vector<std::uint32_t> parent_;
  std::size_t classes_ = 0;
};

// A subspace of F_q^n is stored as its k x n reduced row echelon basis.
Matrix canonical(const SmallField& f, Matrix rows) {
  const auto rank = rref(f, rows);
  if (rank != rows.rows) throw std::logic_error("subspace basis lost rank");
  return rows;
}

Matrix coordinate_subspace(const std::vector<std::size_t>& coords, std::size_t n) {
  Matrix m(coords.size(), n);
  for (std::size_t i = 0; i < coords.size(); ++i) m(i, coords[i]) = 1;
  return m;
}

// All k-dimensional subspaces of the row space of `within` (full row rank).
std::vector<Matrix> subspaces_of(const SmallField& f, const Matrix& within, std::size_t k) {
  const std::size_t m = within.rows;
  std::vector<Matrix> out;
  std::vector<std::size_t> pivots(k);
  std::iota(pivots.begin(), pivots.end(), 0);
  const std::uint32_t q = f.order();
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = pivots[i] + 1; j < m; ++j) {
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) free.emplace_back(i, j);
      }
    }
    std::vector<Elem> digits(free.size(), 0);
    while (true) {
      Matrix coeffs(k, m);
      for (std::size_t i = 0; i < k; ++i) coeffs(i, pivots[i]) = 1;
      for (std::size_t t = 0; t < free.size(); ++t) coeffs(free[t].first, free[t].second) = digits[t];
      out.push_back(canonical(f, multiply(f, coeffs, within)));
      std::size_t t = 0;
      while (t < digits.size() && ++digits[t] == q) digits[t++] = 0;
      if (t == digits.size()) break;
    }
    // Next k-combination of [0, m).
    std::size_t i = k;
    while (i > 0 && pivots[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++pivots[i - 1];
    for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  return out;
}

void append_key(std::string& key, const Matrix& m) {
  for (auto x : m.data) key.push_back(static_cast<char>(x));
}

// A finite set of partial configurations: `order` lists vertices whose
// subspaces vary, every other vertex is fixed.
class ConfigurationSet {
 public:
  ConfigurationSet(const SmallField& f, const LabeledTree& tree, std::vector<Index> order,
                   const std::vector<Matrix>& fixed)
      : f_(f), tree_(tree), order_(std::move(order)), n_(static_cast<std::size_t>(tree.ambient())) {
    std::vector<Matrix> current = fixed;
    std::function<void(std::size_t)> recurse = [&](std::size_t depth) {
      if (depth == order_.size()) {
        std::string key;
        for (auto v : order_) append_key(key, current[v]);
        index_.emplace(key, static_cast<std::uint32_t>(keys_.size()));
        keys_.push_back(std::move(key));
        return;
      }
      const auto v = order_[depth];
      const auto t = tree_.target(v);
      for (auto& s : subspaces_of(f_, current[t], static_cast<std::size_t>(tree_.label(v)))) {
        current[v] = std::move(s);
        recurse(depth + 1);
      }
    };
    recurse(0);
  }

  std::size_t size() const { return keys_.size(); }

  std::vector<Matrix> decode(std::uint32_t id) const {
    std::vector<Matrix> out;
    const std::string& key = keys_[id];
    std::size_t pos = 0;
    for (auto v : order_) {
      Matrix m(static_cast<std::size_t>(tree_.label(v)), n_);
      for (auto& x : m.data) x = static_cast<Elem>(key[pos++]);
      out.push_back(std::move(m));
    }
    return out;
  }

  std::uint32_t lookup(const std::vector<Matrix>& config) const {
    std::string key;
    for (const auto& m : config) append_key(key, m);
    const auto it = index_.find(key);
    if (it == index_.end()) throw std::logic_error("configuration set is not group-stable");
    return it->second;
  }

  /// Orbits under the group generated by `transposed_gens` (each g stored as g^T).
  UnionFind orbits(const std::vector<Matrix>& transposed_gens) const {
    UnionFind uf(size());
    uf.set_size(size());
    for (std::uint32_t id = 0; id < size(); ++id) {
      const auto config = decode(id);
      for (const auto& gt : transposed_gens) {
        std::vector<Matrix> moved;
        moved.reserve(config.size());
        for (const auto& m : config) moved.push_back(canonical(f_, multiply(f_, m, gt)));
        uf.unite(id, lookup(moved));
      }
    }
    return uf;
  }

 private:
  const SmallField& f_;
  const LabeledTree& tree_;
  std::vector<Index> order_;
  std::size_t n_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

std::vector<Matrix> transposed(std::vector<Matrix> gens) {
  for (auto& g : gens) g = transpose(g);
  return gens;
}

// Generators of {g : g preserves every coordinate subspace in `subsets`}.
std::vector<Matrix> pattern_generators(const SmallField& f, std::size_t n,
                                       const std::vector<std::vector<bool>>& subsets) {
  std::vector<Matrix> gens;
  if (f.order() > 2) {
    for (std::size_t i = 0; i < n; ++i) {
      Matrix d = Matrix::identity(n);
      d(i, i) = f.primitive();
      gens.push_back(d);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool allowed = std::all_of(subsets.begin(), subsets.end(),
                                       [&](const auto& s) { return !s[j] || s[i]; });
      if (!allowed) continue;
      for (auto b : f.additive_basis()) {
        Matrix e = Matrix::identity(n);
        e(i, j) = b;
        gens.push_back(e);
      }
    }
  }
  return transposed(std::move(gens));
}

std::vector<Matrix> general_linear_generators(const SmallField& f, std::size_t n) {
  std::vector<Matrix> gens;
  if (f.order() > 2) {
    Matrix d = Matrix::identity(n);
    d(0, 0) = f.primitive();
    gens.push_back(d);
  }
  if (n >= 2) {
    Matrix e = Matrix::identity(n);
    e(0, 1) = 1;
    gens.push_back(e);
    Matrix swap(n, n);
    swap(0, 1) = swap(1, 0) = 1;
    for (std::size_t i = 2; i < n; ++i) swap(i, i) = 1;
    gens.push_back(swap);
    Matrix cycle(n, n);
    for (std::size_t i = 0; i < n; ++i) cycle((i + 1) % n, i) = 1;
    gens.push_back(cycle);
  }
  return transposed(std::move(gens));
}

std::vector<Index> path_to_root(const LabeledTree& tree, Index v) {
  std::vector<Index> path;
  for (; v != LabeledTree::npos; v = tree.target(v)) path.push_back(v);
  return path;
}

std::vector<Index> closest_first(const LabeledTree& tree, std::vector<Index> vs) {
  std::stable_sort(vs.begin(), vs.end(), [&](Index a, Index b) {
    return tree.distance_to_root(a) < tree.distance_to_root(b);
  });
  return vs;
}

std::uint64_t choices(const LabeledTree& tree, const std::vector<Index>& vs, std::uint32_t q) {
  std::uint64_t total = 1;
  for (auto v : vs) total = saturating_mul(total, gaussian_binomial(tree.label(tree.target(v)), tree.label(v), q));
  return total;
}

// Number of nested coordinate subsets with sizes phi(v) inside [0, top).
std::uint64_t coordinate_flags(const LabeledTree& tree, const std::vector<Index>& chain, Label top) {
  std::uint64_t total = 1;
  Label outer = top;
  for (auto v : chain) {  // closest to root first
    const Label k = tree.label(v);
    std::uint64_t binom = 1;
    for (Label i = 0; i < k; ++i) binom = binom * static_cast<std::uint64_t>(outer - i) / static_cast<std::uint64_t>(i + 1);
    total = saturating_mul(total, binom);
    outer = k;
  }
  return total;
}

[[noreturn]] void cap_exceeded(std::uint64_t projected, std::uint64_t cap) {
  throw Error(ErrorKind::CapExceeded, "enumeration needs " + std::to_string(projected) +
                                          " points, cap is " + std::to_string(cap));
}

struct Plan {
  std::vector<Index> spine;   // leaf first, ends at the root
  std::vector<Index> second;  // closest to the spine first
  Index junction = LabeledTree::npos;
  std::vector<Index> rest;    // closest to the root first
  std::uint64_t second_size = 0;
  std::uint64_t rest_size = 0;
  std::uint64_t cost = kSaturated;
};

Plan choose_plan(const LabeledTree& tree, std::uint32_t q) {
  std::vector<Index> leaves;
  for (Index v = 0; v < tree.size(); ++v) {
    if (v != tree.root() && tree.is_leaf(v)) leaves.push_back(v);
  }
  Plan best;
  bool found = false;
  for (auto a : leaves) {
    const auto spine = path_to_root(tree, a);
    std::vector<bool> on_spine(tree.size(), false);
    for (auto v : spine) on_spine[v] = true;
    if (leaves.size() == 1) {
      best.spine = spine;
      best.cost = 0;
      break;
    }
    for (auto b : leaves) {
      if (b == a) continue;
      Plan p;
      p.spine = spine;
      Index v = b;
      for (; !on_spine[v]; v = tree.target(v)) p.second.push_back(v);
      p.junction = v;
      std::reverse(p.second.begin(), p.second.end());
      std::vector<bool> used = on_spine;
      for (auto u : p.second) used[u] = true;
      for (Index u = 0; u < tree.size(); ++u) {
        if (!used[u]) p.rest.push_back(u);
      }
      p.rest = closest_first(tree, p.rest);
      p.second_size = choices(tree, p.second, q);
      p.rest_size = choices(tree, p.rest, q);
      const auto reps = coordinate_flags(tree, p.second, tree.label(p.junction));
      p.cost = p.second_size + saturating_mul(reps, p.rest.empty() ? 0 : p.rest_size);
      if (!found || p.cost < best.cost) {
        best = std::move(p);
        found = true;
      }
    }
  }
  return best;
}

std::vector<bool> membership(const Matrix& coordinate, std::size_t n) {
  std::vector<bool> in(n, false);
  for (std::size_t i = 0; i < coordinate.rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (coordinate(i, j) != 0) in[j] = true;
    }
  }
  return in;
}

// Coordinate subsets of [0, outer) nested along `chain`, closest to the spine first.
void for_each_coordinate_flag(const LabeledTree& tree, const std::vector<Index>& chain, std::size_t outer_size,
                              const std::function<void(const std::vector<std::vector<std::size_t>>&)>& visit) {
  std::vector<std::vector<std::size_t>> flag(chain.size());
  std::function<void(std::size_t, const std::vector<std::size_t>&)> recurse =
      [&](std::size_t depth, const std::vector<std::size_t>& outer) {
        if (depth == chain.size()) {
          visit(flag);
          return;
        }
        const auto k = static_cast<std::size_t>(tree.label(chain[depth]));
        std::vector<bool> pick(outer.size(), false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
          flag[depth].clear();
          for (std::size_t i = 0; i < outer.size(); ++i) {
            if (pick[i]) flag[depth].push_back(outer[i]);
          }
          recurse(depth + 1, flag[depth]);
        } while (std::prev_permutation(pick.begin(), pick.end()));
      };
  std::vector<std::size_t> all(outer_size);
  std::iota(all.begin(), all.end(), 0);
  recurse(0, all);
}

}  // namespace

std::uint64_t gaussian_binomial(std::int64_t n, std::int64_t k, std::uint32_t q) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  if (k == 0) return 1;
  // The count is at least q^(k(n-k)).
  if (static_cast<double>(k) * static_cast<double>(n - k) * std::log2(q) >= 64.0) return kSaturated;
  // q-Pascal rule [m, j] = [m-1, j-1] + q^j [m-1, j], one row at a time.
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (std::int64_t m = 1; m <= n; ++m) {
    for (std::int64_t j = std::min(m, k); j >= 1; --j) {
      std::uint64_t power = 1;
      for (std::int64_t e = 0; e < j; ++e) power = saturating_mul(power, q);
      const std::uint64_t scaled = saturating_mul(power, row[j]);
      const std::uint64_t sum = row[j - 1] + scaled;
      row[j] = sum < scaled ? kSaturated : sum;
    }
  }
  return row[static_cast<std::size_t>(k)];
}

std::uint64_t point_count(const LabeledTree& tree, std::uint32_t q) {
  std::uint64_t total = 1;
  for (auto [s, t] : tree.edges()) total = saturating_mul(total, gaussian_binomial(tree.label(t), tree.label(s), q));
  return total;
}

OrbitReport enumerate_orbits(const LabeledTree& tree, std::uint32_t q, const OrbitLimits& limits) {
  const SmallField f(q);
  const auto n = static_cast<std::size_t>(tree.ambient());
  OrbitReport report{q, point_count(tree, q), 1, false, 0};
  if (tree.size() == 1) {
    report.enumerated = 1;
    return report;
  }
  const Plan plan = choose_plan(tree, q);

  std::vector<Matrix> fixed(tree.size());
  std::vector<std::vector<bool>> spine_sets;
  for (auto v : plan.spine) {
    std::vector<std::size_t> coords(static_cast<std::size_t>(tree.label(v)));
    std::iota(coords.begin(), coords.end(), 0);
    fixed[v] = coordinate_subspace(coords, n);
    spine_sets.push_back(membership(fixed[v], n));
  }
  if (plan.second.empty()) {
    report.enumerated = 1;
    return report;
  }
  if (plan.second_size > limits.max_points) cap_exceeded(plan.second_size, limits.max_points);
  if (!plan.rest.empty() && plan.rest_size > limits.max_points) cap_exceeded(plan.rest_size, limits.max_points);

  const ConfigurationSet level2(f, tree, plan.second, fixed);
  UnionFind orbits2 = level2.orbits(pattern_generators(f, n, spine_sets));
  report.enumerated = level2.size();

  // One coordinate flag per Bruhat-cell union.
  std::vector<std::vector<std::vector<std::size_t>>> reps;
  std::vector<bool> seen(level2.size(), false);
  for_each_coordinate_flag(tree, plan.second, static_cast<std::size_t>(tree.label(plan.junction)),
                           [&](const auto& flag) {
                             std::vector<Matrix> config;
                             for (const auto& coords : flag) config.push_back(coordinate_subspace(coords, n));
                             const auto root = orbits2.find(level2.lookup(config));
                             if (!seen[root]) {
                               seen[root] = true;
                               reps.push_back(flag);
                             }
                           });
  if (reps.size() != orbits2.classes()) throw std::logic_error("orbit without a coordinate representative");

  if (plan.rest.empty()) {
    report.orbit_count = reps.size();
    return report;
  }
  report.orbit_count = 0;
  for (const auto& flag : reps) {
    std::vector<Matrix> local = fixed;
    std::vector<std::vector<bool>> sets = spine_sets;
    for (std::size_t i = 0; i < plan.second.size(); ++i) {
      local[plan.second[i]] = coordinate_subspace(flag[i], n);
      sets.push_back(membership(local[plan.second[i]], n));
    }
    const ConfigurationSet level3(f, tree, plan.rest, local);
    report.enumerated += level3.size();
    report.orbit_count += level3.orbits(pattern_generators(f, n, sets)).classes();
  }
  return report;
}

OrbitReport enumerate_orbits_reference(const LabeledTree& tree, std::uint32_t q, const OrbitLimits& limits) {
  const SmallField f(q);
  const auto n = static_cast<std::size_t>(tree.ambient());
  OrbitReport report{q, point_count(tree, q), 1, false, 1};
  if (report.point_count > limits.max_points) cap_exceeded(report.point_count, limits.max_points);
  std::vector<Index> order;
  for (Index v = 0; v < tree.size(); ++v) {
    if (v != tree.root()) order.push_back(v);
  }
  if (order.empty()) return report;
  std::vector<Matrix> fixed(tree.size());
  fixed[tree.root()] = Matrix::identity(n);
  const ConfigurationSet all(f, tree, closest_first(tree, order), fixed);
  if (all.size() != report.point_count) throw std::logic_error("point count mismatch");
  report.enumerated = all.size();
  report.orbit_count = all.orbits(general_linear_generators(f, n)).classes();
  return report;
}

}  // namespace treevar
