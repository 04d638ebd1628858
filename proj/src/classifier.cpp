#include "treevar/classifier.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <vector>

namespace treevar {

const char* to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::Homogeneous: return "Homogeneous";
    case OrbitKind::TwoOrbits: return "TwoOrbits";
    case OrbitKind::FiniteType: return "FiniteType";
    case OrbitKind::InfiniteType: return "InfiniteType";
  }
  return "?";
}

namespace {

std::string lengths_text(const std::vector<Branch>& bs) {
  std::string s = "(";
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(bs[i].length);
  }
  return s + ")";
}

// Three-leaf finite-type cases. Roles ("the branch of length 1", "the branch of
// length 2") are assigned in every way compatible with the lengths, so ties
// between equal-length branches never hide a match.
std::optional<std::pair<std::string, std::string>> three_leaf_case(const std::vector<Branch>& bs) {
  std::array<std::size_t, 3> perm{0, 1, 2};
  std::optional<std::pair<std::string, std::string>> best;
  do {
    const Branch& a = bs[perm[0]];
    const Branch& b = bs[perm[1]];
    const Branch& c = bs[perm[2]];
    if (a.length != 1 || b.length > c.length) continue;
    std::optional<std::pair<std::string, std::string>> hit;
    if (b.length == 1) {
      hit = {"2a", "branch lengths (1,1,l)"};
    } else if (b.length == 2 && c.length <= 4) {
      hit = {"2b", "branch lengths (1,2,l) with l <= 4"};
    } else if (b.length == 2 && (a.min_width <= 2 || b.min_width == 1)) {
      hit = {"2c", "branch lengths (1,2,l), l >= 5, with mw(length-1 branch) = " +
                       std::to_string(a.min_width) + " <= 2 or mw(length-2 branch) = " +
                       std::to_string(b.min_width) + " == 1 (width 2 read as <= 2)"};
    } else if (a.min_width == 1) {
      hit = {"2d", "branch lengths (1,l1,l2) with mw(length-1 branch) = 1"};
    }
    // Fixed priority 2a > 2b > 2c > 2d, which is the string order of the tags.
    if (hit && (!best || hit->first < best->first)) best = hit;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

OrbitClass orbit_class(const LabeledTree& tree) {
  const auto bs = branches(tree);
  OrbitClass out;
  if (bs.size() <= 1) {
    out.kind = OrbitKind::Homogeneous;
    out.witness = "tree is a chain";
    return out;
  }
  if (bs.size() == 2) {
    if (bs[0].length == 1 && bs[1].length == 1 &&
        (bs[0].min_width == 1 || bs[1].min_width == 1)) {
      out.kind = OrbitKind::TwoOrbits;
      out.witness = "two branches of length 1, one of minimum width 1";
      return out;
    }
    out.kind = OrbitKind::FiniteType;
    out.case_label = "1";
    out.witness = "at most 2 leaves";
    return out;
  }
  if (bs.size() >= 4) {
    out.witness = std::to_string(bs.size()) + " leaves (at least 4)";
    return out;
  }
  if (auto hit = three_leaf_case(bs)) {
    out.kind = OrbitKind::FiniteType;
    out.case_label = hit->first;
    out.witness = hit->second;
    return out;
  }
  const bool has_short = std::any_of(bs.begin(), bs.end(), [](const Branch& b) { return b.length == 1; });
  out.witness = has_short ? "3 leaves, branch lengths " + lengths_text(bs) + " fail the width conditions"
                          : "3 leaves and no branch of length 1, lengths " + lengths_text(bs);
  return out;
}

SparsenessCheck trivially_sparse(const LabeledTree& tree) {
  // dim F(T^v) accumulated bottom-up: every edge contributes to all subtrees containing it.
  std::vector<std::int64_t> sub_dim(tree.size(), 0);
  std::vector<LabeledTree::Index> order(tree.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> dist(tree.size());
  for (LabeledTree::Index v = 0; v < tree.size(); ++v) dist[v] = tree.distance_to_root(v);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return dist[a] > dist[b]; });
  for (auto v : order) {
    for (auto s : tree.sources(v)) {
      sub_dim[v] += sub_dim[s] + tree.label(s) * (tree.label(v) - tree.label(s));
    }
  }
  SparsenessCheck out;
  for (LabeledTree::Index v = 0; v < tree.size(); ++v) {
    const std::int64_t bound = tree.label(v) * tree.label(v) - 1;
    if (sub_dim[v] > bound) {
      out.trivially_sparse = true;
      out.violating_vertex = v;
      out.lhs = sub_dim[v];
      out.rhs = bound;
      return out;
    }
  }
  out.lhs = sub_dim[tree.root()];
  out.rhs = tree.ambient() * tree.ambient() - 1;
  return out;
}

}  // namespace treevar
