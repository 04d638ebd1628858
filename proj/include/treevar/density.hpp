#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "treevar/flag_product.hpp"
#include "treevar/tree.hpp"

namespace treevar {

enum class Status { Dense, Sparse, TriviallySparse, Unknown };

const char* to_string(Status status);

using Instance = std::variant<LabeledTree, FlagProduct>;

/// Product grammar for products, chain DSL for trees; both parse back.
std::string describe(const Instance& instance);

struct RewriteStep {
  std::string rule_id;
  std::string citation;
  Instance before;
  std::optional<Instance> after;  // empty for terminal rules
  std::string detail;
};

struct Verdict {
  Status status = Status::Unknown;
  std::vector<RewriteStep> trace;
  Instance reduced;
};

struct DecideOptions {
  std::size_t r9_depth = 1;
  std::size_t max_rewrites = 64;
};

/// Entries of k above d, shifted down by d. Errors: BadRange unless 0 <= d < n.
DimensionVector derived_sequence(const DimensionVector& k, Label d, Label n);

FlagProduct dualize(const FlagProduct& p);

/// Sorted factors of p or of its dual, whichever is lexicographically smaller.
FlagProduct normal_form(const FlagProduct& p);

/// Drops entries outside (0, ambient) and factors left empty.
FlagProduct strip_trivial(FlagProduct p);

std::optional<FlagProduct> reduce_span(const FlagProduct& p);
std::optional<FlagProduct> reduce_half(const FlagProduct& p);
/// Three leaves, not already a product: the two chains entering the lower
/// junction m', plus the third chain derived with respect to phi(m) - phi(m'),
/// all in ambient phi(m').
std::optional<FlagProduct> tree_to_product(const LabeledTree& tree);

/// Outcome of one terminal rule.
struct RuleHit {
  std::string rule_id;
  std::string citation;
  Status status = Status::Unknown;
  std::string detail;
};

std::optional<RuleHit> rule_finite_orbits(const LabeledTree& tree);       // R0
std::optional<RuleHit> rule_trivially_sparse(const LabeledTree& tree);    // R1
std::optional<RuleHit> rule_complementary_pair(const FlagProduct& p);     // R2
std::optional<RuleHit> rule_two_step(const FlagProduct& p);               // R3
std::optional<RuleHit> rule_few_grassmannians(const FlagProduct& p);      // R4
std::optional<RuleHit> rule_easy_dense(const LabeledTree& tree);          // R5
std::optional<RuleHit> rule_doubling(const FlagProduct& p);               // R6
std::optional<RuleHit> rule_grassmannian_bound(const FlagProduct& p);     // R7
std::optional<RuleHit> rule_five_grassmannians(const FlagProduct& p);     // R8

/// Terminal rules R0-R8 on the instance (products: also on the dual), then
/// rewrites, repeated until something fires; R9 searches surjective forgetful
/// images last. Errors: IterationLimit.
Verdict decide(const Instance& instance, const DecideOptions& options = {});

}  // namespace treevar
