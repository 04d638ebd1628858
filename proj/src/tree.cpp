#include "treevar/tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "treevar/error.hpp"

namespace treevar {

std::size_t LabeledTree::distance_to_root(Index v) const {
  std::size_t d = 0;
  for (Index cur = v; target_.at(cur) != npos; cur = target_[cur]) ++d;
  return d;
}

std::size_t LabeledTree::depth() const {
  std::size_t best = 0;
  for (Index v = 0; v < size(); ++v) best = std::max(best, distance_to_root(v));
  return best;
}

std::optional<LabeledTree::Index> LabeledTree::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<Index>(it - names_.begin());
}

LabeledTree::Index LabeledTree::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw Error(ErrorKind::UnknownVertex, "no vertex named '" + std::string(name) + "'");
}

std::vector<std::pair<LabeledTree::Index, LabeledTree::Index>> LabeledTree::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index v = 0; v < size(); ++v) {
    if (target_[v] != npos) out.emplace_back(v, target_[v]);
  }
  return out;
}

std::size_t LabeledTree::leaf_count() const {
  std::size_t count = 0;
  for (Index v = 0; v < size(); ++v) {
    if (v != root_ && sources_[v].empty()) ++count;
  }
  return count;
}

LabeledTree validate_tree(const RawTree& raw) {
  if (raw.labels.empty()) throw Error(ErrorKind::EmptyInput, "tree has no vertices");

  std::map<std::string, Label> label_of;
  for (const auto& [name, label] : raw.labels) {
    if (name.empty()) throw Error(ErrorKind::ParseError, "empty vertex name");
    if (label <= 0 || label > kMaxLabel) {
      throw Error(ErrorKind::LabelOutOfRange, "label of '" + name + "' must lie in [1, " +
                                                  std::to_string(kMaxLabel) + "]");
    }
    auto [it, inserted] = label_of.emplace(name, label);
    if (!inserted && it->second != label) {
      throw Error(ErrorKind::ParseError, "vertex '" + name + "' has conflicting labels");
    }
  }

  LabeledTree tree;
  for (const auto& [name, label] : label_of) {
    tree.names_.push_back(name);
    tree.labels_.push_back(label);
  }
  const std::size_t n = tree.names_.size();
  tree.target_.assign(n, LabeledTree::npos);
  tree.sources_.assign(n, {});

  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [s, t] : raw.edges) {
    if (!seen.emplace(s, t).second) continue;  // repeated edge, e.g. from merged DSL chains
    const auto si = tree.find(s);
    const auto ti = tree.find(t);
    if (!si) throw Error(ErrorKind::UnknownVertex, "edge source '" + s + "' has no label");
    if (!ti) throw Error(ErrorKind::UnknownVertex, "edge target '" + t + "' has no label");
    if (tree.labels_[*si] >= tree.labels_[*ti]) {
      throw Error(ErrorKind::LabelViolation,
                  "edge " + s + "->" + t + " needs label(" + s + ") < label(" + t + "), got " +
                      std::to_string(tree.labels_[*si]) + " >= " +
                      std::to_string(tree.labels_[*ti]));
    }
    if (tree.target_[*si] != LabeledTree::npos) {
      throw Error(ErrorKind::NotATree, "vertex '" + s + "' is the source of two edges");
    }
    tree.target_[*si] = *ti;
    tree.sources_[*ti].push_back(*si);
  }
  for (auto& src : tree.sources_) std::sort(src.begin(), src.end());

  std::vector<LabeledTree::Index> roots;
  for (LabeledTree::Index v = 0; v < n; ++v) {
    if (tree.target_[v] == LabeledTree::npos) roots.push_back(v);
  }
  if (roots.size() != 1) {
    throw Error(ErrorKind::NotATree, roots.empty() ? "no root: every vertex has an outgoing edge"
                                                   : "disconnected: " +
                                                         std::to_string(roots.size()) +
                                                         " vertices have no outgoing edge");
  }
  tree.root_ = roots.front();

  // Labels strictly increase along edges, so following targets cannot cycle;
  // reachability of the root is all that remains to check.
  for (LabeledTree::Index v = 0; v < n; ++v) {
    std::size_t steps = 0;
    LabeledTree::Index cur = v;
    while (tree.target_[cur] != LabeledTree::npos && steps <= n) {
      cur = tree.target_[cur];
      ++steps;
    }
    if (cur != tree.root_) throw Error(ErrorKind::NotATree, "cycle through '" + tree.names_[v] + "'");
  }

  if (raw.root && *raw.root != tree.names_[tree.root_]) {
    throw Error(ErrorKind::RootConflict, "declared root '" + *raw.root + "' but inferred '" +
                                             tree.names_[tree.root_] + "'");
  }
  return tree;
}

RawTree to_raw(const LabeledTree& tree) {
  RawTree raw;
  for (LabeledTree::Index v = 0; v < tree.size(); ++v) {
    raw.labels.emplace_back(tree.name(v), tree.label(v));
  }
  for (const auto& [s, t] : tree.edges()) raw.edges.emplace_back(tree.name(s), tree.name(t));
  return raw;
}

std::int64_t dimension(const LabeledTree& tree) {
  std::int64_t total = 0;
  for (const auto& [s, t] : tree.edges()) {
    total += tree.label(s) * (tree.label(t) - tree.label(s));
  }
  return total;
}

std::vector<Branch> branches(const LabeledTree& tree) {
  std::vector<Branch> out;
  for (LabeledTree::Index leaf = 0; leaf < tree.size(); ++leaf) {
    if (leaf == tree.root() || !tree.is_leaf(leaf)) continue;
    Branch b;
    b.leaf = leaf;
    b.min_width = tree.label(leaf);
    LabeledTree::Index cur = leaf;
    while (true) {
      b.vertices.push_back(cur);
      const auto next = tree.target(cur);
      b.min_width = std::min(b.min_width, tree.label(next) - tree.label(cur));
      if (next == tree.root() || tree.sources(next).size() >= 2) break;
      cur = next;
    }
    b.length = b.vertices.size();
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

// Builds a tree on the vertices in `keep`, redirecting targets through `redirect`.
LabeledTree induced(const LabeledTree& tree, const std::vector<bool>& keep,
                    const std::vector<LabeledTree::Index>& redirect) {
  RawTree raw;
  for (LabeledTree::Index v = 0; v < tree.size(); ++v) {
    if (!keep[v]) continue;
    raw.labels.emplace_back(tree.name(v), tree.label(v));
    const auto t = redirect[v];
    if (t != LabeledTree::npos) raw.edges.emplace_back(tree.name(v), tree.name(t));
  }
  return validate_tree(raw);
}

}  // namespace

LabeledTree subtree_at(const LabeledTree& tree, std::string_view name) {
  const auto v = tree.index_of(name);
  std::vector<bool> keep(tree.size(), false);
  std::vector<LabeledTree::Index> redirect(tree.size(), LabeledTree::npos);
  std::vector<LabeledTree::Index> stack{v};
  keep[v] = true;
  while (!stack.empty()) {
    const auto cur = stack.back();
    stack.pop_back();
    for (auto s : tree.sources(cur)) {
      keep[s] = true;
      redirect[s] = cur;
      stack.push_back(s);
    }
  }
  return induced(tree, keep, redirect);
}

ForgetResult forget_vertex(const LabeledTree& tree, std::string_view name) {
  const auto v = tree.index_of(name);
  if (v == tree.root()) throw Error(ErrorKind::RootForbidden, "cannot forget the root");
  const auto t = tree.target(v);
  std::vector<bool> keep(tree.size(), true);
  keep[v] = false;
  std::vector<LabeledTree::Index> redirect(tree.size());
  for (LabeledTree::Index u = 0; u < tree.size(); ++u) redirect[u] = tree.target(u);
  Label incoming = 0;
  for (auto s : tree.sources(v)) {
    redirect[s] = t;
    incoming += tree.label(s);
  }
  return {induced(tree, keep, redirect), incoming <= tree.label(v)};
}

TruncationResult truncate(const LabeledTree& tree, std::size_t m) {
  std::vector<std::size_t> dist(tree.size());
  for (LabeledTree::Index v = 0; v < tree.size(); ++v) dist[v] = tree.distance_to_root(v);

  std::vector<bool> keep(tree.size());
  std::vector<LabeledTree::Index> redirect(tree.size());
  for (LabeledTree::Index v = 0; v < tree.size(); ++v) {
    keep[v] = dist[v] <= m;
    redirect[v] = tree.target(v);
  }
  TruncationResult out{induced(tree, keep, redirect), {}};
  for (LabeledTree::Index v = 0; v < tree.size(); ++v) {
    if (dist[v] == m && !tree.is_leaf(v)) out.hanging.push_back(subtree_at(tree, tree.name(v)));
  }
  return out;
}

std::optional<FlagProduct> as_flag_product(const LabeledTree& tree) {
  FlagProduct product;
  product.ambient = tree.ambient();
  for (LabeledTree::Index v = 0; v < tree.size(); ++v) {
    if (v != tree.root() && tree.sources(v).size() > 1) return std::nullopt;
  }
  for (auto top : tree.sources(tree.root())) {
    DimensionVector chain;
    for (auto cur = top;;) {
      chain.push_back(tree.label(cur));
      if (tree.is_leaf(cur)) break;
      cur = tree.sources(cur).front();
    }
    std::reverse(chain.begin(), chain.end());
    product.factors.push_back(std::move(chain));
  }
  return product;
}

LabeledTree tree_from_product(const FlagProduct& product) {
  check_product(product);
  RawTree raw;
  raw.labels.emplace_back("r", product.ambient);
  for (std::size_t i = 0; i < product.factors.size(); ++i) {
    const auto& f = product.factors[i];
    for (std::size_t j = 0; j < f.size(); ++j) {
      const auto name = "f" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      raw.labels.emplace_back(name, f[j]);
      const auto next = j + 1 < f.size() ? "f" + std::to_string(i + 1) + "_" + std::to_string(j + 2)
                                         : std::string("r");
      raw.edges.emplace_back(name, next);
    }
  }
  return validate_tree(raw);
}

}  // namespace treevar
