#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treevar/flag_product.hpp"

namespace treevar {

/// Unvalidated description of a labeled tree as it arrives from an input format.
struct RawTree {
  std::vector<std::pair<std::string, Label>> labels;
  std::vector<std::pair<std::string, std::string>> edges;  // (source, target)
  std::optional<std::string> root;
};

/// Rooted tree with edges pointing to the root and labels strictly increasing
/// along every edge. Vertices are stored in lexicographic order of their names,
/// so vertex indices give a deterministic traversal order.
class LabeledTree {
 public:
  using Index = std::size_t;
  static constexpr Index npos = static_cast<Index>(-1);

  LabeledTree() = default;

  std::size_t size() const noexcept { return names_.size(); }
  Index root() const noexcept { return root_; }
  Label ambient() const { return labels_.at(root_); }

  const std::string& name(Index v) const { return names_.at(v); }
  Label label(Index v) const { return labels_.at(v); }

  /// Target of the unique edge leaving `v`; npos for the root.
  Index target(Index v) const { return target_.at(v); }
  /// Sources of the edges entering `v`, in index order.
  std::span<const Index> sources(Index v) const { return sources_.at(v); }

  bool is_leaf(Index v) const { return sources_.at(v).empty(); }
  std::size_t distance_to_root(Index v) const;
  std::size_t depth() const;

  std::optional<Index> find(std::string_view name) const;
  /// Throws UnknownVertex.
  Index index_of(std::string_view name) const;

  std::vector<std::pair<Index, Index>> edges() const;
  std::size_t leaf_count() const;

  friend bool operator==(const LabeledTree&, const LabeledTree&) = default;

  friend LabeledTree validate_tree(const RawTree& raw);

 private:
  std::vector<std::string> names_;
  std::vector<Label> labels_;
  std::vector<Index> target_;
  std::vector<std::vector<Index>> sources_;
  Index root_ = npos;
};

/// Checks the tree axioms and infers the root. Errors: EmptyInput, NotATree,
/// LabelViolation, LabelOutOfRange, UnknownVertex, RootConflict.
LabeledTree validate_tree(const RawTree& raw);

RawTree to_raw(const LabeledTree& tree);

/// Sum over edges (s,t) of phi(s) * (phi(t) - phi(s)).
std::int64_t dimension(const LabeledTree& tree);

struct Branch {
  std::vector<LabeledTree::Index> vertices;  // leaf first
  LabeledTree::Index leaf = LabeledTree::npos;
  std::size_t length = 0;
  Label min_width = 0;
};

/// One branch per leaf. A branch walks from its leaf toward the root and stops
/// before the root or before the first vertex entered by two or more edges.
std::vector<Branch> branches(const LabeledTree& tree);

/// The subtree of all vertices with a directed path to `v`, rooted at `v`.
LabeledTree subtree_at(const LabeledTree& tree, std::string_view v);

struct ForgetResult {
  LabeledTree tree;
  bool surjective = true;
};

/// Deletes a non-root vertex, reattaching its sources to its target.
/// Errors: UnknownVertex, RootForbidden.
ForgetResult forget_vertex(const LabeledTree& tree, std::string_view v);

struct TruncationResult {
  LabeledTree base;
  std::vector<LabeledTree> hanging;
};

/// Splits off everything farther than `m` edges from the root. `hanging` holds
/// one subtree per distance-m vertex that has sources.
TruncationResult truncate(const LabeledTree& tree, std::size_t m);

/// Succeeds when the tree is a union of chains meeting only at the root.
std::optional<FlagProduct> as_flag_product(const LabeledTree& tree);

/// Inverse of as_flag_product: chain i has vertices `f<i>_<j>`, root `r`.
LabeledTree tree_from_product(const FlagProduct& product);

}  // namespace treevar
