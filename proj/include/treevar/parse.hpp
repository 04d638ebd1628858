#pragma once

#include <string>
#include <string_view>

#include "treevar/flag_product.hpp"
#include "treevar/tree.hpp"

namespace treevar {

/// Accepts the JSON form `{"labels":{...},"edges":[[s,t],...],"root"?:r}` or
/// the chain DSL `a:1>b:2>r:4 | c:2>r`. A bare numeric token is both name and
/// label. Errors carry line/column where the input pins one down.
LabeledTree parse_tree_spec(std::string_view text);

/// `F(k1,...,kr;n)`, `G(k;n)`, `point(n)`, joined by `*`, each optionally `^m`.
FlagProduct parse_product_spec(std::string_view text);

/// Sorted keys, sorted edges, compact.
std::string tree_to_json(const LabeledTree& tree);

/// One chain per leaf, in index order, every token written `name:label`.
std::string tree_to_dsl(const LabeledTree& tree);

}  // namespace treevar
