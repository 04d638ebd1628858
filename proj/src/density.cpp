#include "treevar/density.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <functional>
#include <numeric>

#include "treevar/classifier.hpp"
#include "treevar/error.hpp"
#include "treevar/parse.hpp"

namespace treevar {

namespace {

std::string join(const DimensionVector& k) {
  std::string out;
  for (std::size_t i = 0; i < k.size(); ++i) out += (i ? "," : "") + std::to_string(k[i]);
  return out;
}

bool is_triple_self_product(const FlagProduct& p) {
  return p.factors.size() == 3 && p.factors[0] == p.factors[1] && p.factors[1] == p.factors[2];
}

bool all_grassmannians(const FlagProduct& p) {
  return std::all_of(p.factors.begin(), p.factors.end(), [](const auto& f) { return f.size() == 1; });
}

RuleHit hit(const char* id, const char* citation, Status status, std::string detail) {
  return {id, citation, status, std::move(detail)};
}

constexpr const char* kDualCitation =
    "F(k_1,...,k_r;n) and F(n-k_r,...,n-k_1;n) are dual, and duality preserves density";

}  // namespace

const char* to_string(Status status) {
  switch (status) {
    case Status::Dense: return "Dense";
    case Status::Sparse: return "Sparse";
    case Status::TriviallySparse: return "TriviallySparse";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string describe(const Instance& instance) {
  if (const auto* p = std::get_if<FlagProduct>(&instance)) return format_product(*p);
  return tree_to_dsl(std::get<LabeledTree>(instance));
}

DimensionVector derived_sequence(const DimensionVector& k, Label d, Label n) {
  if (d < 0 || d >= n) {
    throw Error(ErrorKind::BadRange, "derived sequence needs 0 <= d < n, got d = " + std::to_string(d) +
                                         ", n = " + std::to_string(n));
  }
  DimensionVector out;
  for (auto x : k) {
    if (x > d) out.push_back(x - d);
  }
  return out;
}

FlagProduct dualize(const FlagProduct& p) {
  FlagProduct out{{}, p.ambient};
  for (const auto& f : p.factors) {
    DimensionVector d;
    for (auto it = f.rbegin(); it != f.rend(); ++it) d.push_back(p.ambient - *it);
    out.factors.push_back(std::move(d));
  }
  return out;
}

FlagProduct normal_form(const FlagProduct& p) {
  return std::min(sorted_factors(p), sorted_factors(dualize(p)));
}

FlagProduct strip_trivial(FlagProduct p) {
  for (auto& f : p.factors) {
    f.erase(std::remove_if(f.begin(), f.end(), [&](Label k) { return k <= 0 || k >= p.ambient; }), f.end());
  }
  p.factors.erase(std::remove_if(p.factors.begin(), p.factors.end(), [](const auto& f) { return f.empty(); }),
                  p.factors.end());
  return p;
}

std::optional<FlagProduct> reduce_span(const FlagProduct& p) {
  const std::size_t m = p.factors.size();
  if (m < 2) return std::nullopt;
  Label total = 0;
  for (const auto& f : p.factors) total += f.back();
  for (std::size_t last = 0; last < m; ++last) {
    const Label reduced = total - p.factors[last].back();
    if (!(reduced < p.ambient && p.ambient < total)) continue;
    FlagProduct out{p.factors, reduced};
    out.factors[last] = derived_sequence(p.factors[last], p.ambient - reduced, p.ambient);
    return strip_trivial(std::move(out));
  }
  return std::nullopt;
}

std::optional<FlagProduct> reduce_half(const FlagProduct& p) {
  if (!is_triple_self_product(p)) return std::nullopt;
  const auto& k = p.factors.front();
  if (p.ambient != 2 * k.back()) return std::nullopt;
  DimensionVector prefix(k.begin(), k.end() - 1);
  FlagProduct out{{}, k.back()};
  if (!prefix.empty()) out.factors.assign(3, prefix);
  return out;
}

std::optional<FlagProduct> tree_to_product(const LabeledTree& tree) {
  if (tree.leaf_count() != 3 || as_flag_product(tree)) return std::nullopt;
  using Index = LabeledTree::Index;
  const auto chain_below = [&](Index top) {
    DimensionVector labels;
    for (Index cur = top;;) {
      labels.push_back(tree.label(cur));
      if (tree.is_leaf(cur)) break;
      cur = tree.sources(cur).front();
    }
    std::reverse(labels.begin(), labels.end());
    return labels;
  };
  std::vector<Index> junctions;
  for (Index v = 0; v < tree.size(); ++v) {
    if (tree.sources(v).size() >= 2) junctions.push_back(v);
  }
  if (junctions.size() == 1) {
    const Index j = junctions.front();
    FlagProduct out{{}, tree.label(j)};
    for (auto s : tree.sources(j)) out.factors.push_back(chain_below(s));
    return out;
  }
  if (junctions.size() != 2) return std::nullopt;
  // The lower junction is the one whose path to the root meets the other.
  Index lower = junctions[0], upper = junctions[1];
  const auto reaches = [&](Index from, Index to) {
    for (Index cur = from; cur != LabeledTree::npos; cur = tree.target(cur)) {
      if (cur == to) return true;
    }
    return false;
  };
  if (!reaches(lower, upper)) std::swap(lower, upper);
  FlagProduct out{{}, tree.label(lower)};
  for (auto s : tree.sources(lower)) out.factors.push_back(chain_below(s));
  for (auto s : tree.sources(upper)) {
    if (reaches(lower, s)) continue;
    auto third = derived_sequence(chain_below(s), tree.label(upper) - tree.label(lower), tree.label(upper));
    if (!third.empty()) out.factors.push_back(std::move(third));
  }
  return out;
}

std::optional<RuleHit> rule_finite_orbits(const LabeledTree& tree) {
  const auto cls = orbit_class(tree);
  if (!cls.finitely_many_orbits()) return std::nullopt;
  std::string detail = to_string(cls.kind);
  if (cls.case_label) detail += " case " + *cls.case_label;
  return hit("R0", "finitely many orbits imply a dense orbit", Status::Dense, detail);
}

std::optional<RuleHit> rule_trivially_sparse(const LabeledTree& tree) {
  const auto check = trivially_sparse(tree);
  if (!check.trivially_sparse) return std::nullopt;
  return hit("R1", "dim F(T^v) > phi(v)^2 - 1 at some vertex v rules out a dense orbit",
             Status::TriviallySparse,
             "at '" + tree.name(*check.violating_vertex) + "': " + std::to_string(check.lhs) + " > " +
                 std::to_string(check.rhs));
}

std::optional<RuleHit> rule_complementary_pair(const FlagProduct& p) {
  if (!is_triple_self_product(p)) return std::nullopt;
  const auto& k = p.factors.front();
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      if (k[i] + k[j] == p.ambient) {
        return hit("R2", "F(k_1,...,k_r;n)^3 is sparse when k_i + k_j = n for some i != j", Status::Sparse,
                   std::to_string(k[i]) + " + " + std::to_string(k[j]) + " = " + std::to_string(p.ambient));
      }
    }
  }
  return std::nullopt;
}

std::optional<RuleHit> rule_two_step(const FlagProduct& p) {
  if (!is_triple_self_product(p) || p.factors.front().size() != 2) return std::nullopt;
  const auto& k = p.factors.front();
  const bool sparse = k[0] + k[1] == p.ambient;
  return hit("R3", "F(k_1,k_2;n)^3 is sparse iff k_1 + k_2 = n", sparse ? Status::Sparse : Status::Dense,
             std::to_string(k[0]) + " + " + std::to_string(k[1]) + (sparse ? " = " : " != ") +
                 std::to_string(p.ambient));
}

std::optional<RuleHit> rule_few_grassmannians(const FlagProduct& p) {
  const std::size_t m = p.factors.size();
  if (m == 0 || m > 4 || !all_grassmannians(p)) return std::nullopt;
  Label sum = 0;
  for (const auto& f : p.factors) sum += f.front();
  const bool sparse = m == 4 && sum == 2 * p.ambient;
  return hit("R4", "a product of m <= 4 Grassmannians G(k_i;n) is sparse iff m = 4 and sum k_i = 2n",
             sparse ? Status::Sparse : Status::Dense,
             "m = " + std::to_string(m) + ", sum k_i = " + std::to_string(sum));
}

std::optional<RuleHit> rule_easy_dense(const LabeledTree& tree) {
  for (std::size_t v = 0; v < tree.size(); ++v) {
    Label incoming = 0;
    for (auto s : tree.sources(v)) incoming += tree.label(s);
    if (incoming > tree.label(v)) return std::nullopt;
  }
  return hit("R5", "sum of phi(s) over edges (s,v) <= phi(v) at every vertex v implies dense", Status::Dense,
             "holds at all " + std::to_string(tree.size()) + " vertices");
}

std::optional<RuleHit> rule_doubling(const FlagProduct& p) {
  if (!is_triple_self_product(p)) return std::nullopt;
  const auto& k = p.factors.front();
  if (2 * k.back() > p.ambient) return std::nullopt;
  // 2 k_i <= k_{i+1} for 2 <= i <= r-1 (1-based).
  for (std::size_t i = 1; i + 1 < k.size(); ++i) {
    if (2 * k[i] > k[i + 1]) return std::nullopt;
  }
  return hit("R6", "F(k_1,...,k_r;n)^3 is dense when 2k_r <= n and 2k_i <= k_{i+1} for 2 <= i <= r-1",
             Status::Dense, "k = (" + join(k) + "), n = " + std::to_string(p.ambient));
}

std::optional<RuleHit> rule_grassmannian_bound(const FlagProduct& p) {
  const std::size_t m = p.factors.size();
  if (m < 2 || !all_grassmannians(p)) return std::nullopt;
  for (std::size_t last = 0; last < m; ++last) {
    Label sum = 0, least = p.ambient;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == last) continue;
      sum += p.factors[i].front();
      least = std::min(least, p.factors[i].front());
    }
    const Label km = p.factors[last].front();
    if (sum <= p.ambient && km <= p.ambient - sum + least) {
      return hit("R7",
                 "prod G(k_i;n) is dense when sum_{i<m} k_i <= n and k_m <= n - sum_{i<m} k_i + min_{i<m} k_i",
                 Status::Dense,
                 "k_m = " + std::to_string(km) + ", sum_{i<m} k_i = " + std::to_string(sum) +
                     ", min = " + std::to_string(least));
    }
  }
  return std::nullopt;
}

std::optional<RuleHit> rule_five_grassmannians(const FlagProduct& p) {
  if (p.factors.size() != 5 || !all_grassmannians(p)) return std::nullopt;
  for (std::size_t role = 0; role < 5; ++role) {
    const Label d5 = p.ambient - p.factors[role].front();
    DimensionVector d;
    for (std::size_t i = 0; i < 5; ++i) {
      if (i != role) d.push_back(p.factors[i].front());
    }
    std::sort(d.begin(), d.end());
    const Label sum = std::accumulate(d.begin(), d.end(), Label{0});
    // d_4 = d_5 leaves only three nonzero traces in the d_5-space, where the
    // four-subspace criterion no longer applies.
    if (sum > p.ambient || d.back() >= d5) continue;
    const bool sparse = sum == 2 * d5;
    return hit("R8",
               "G(d_1;n) x ... x G(d_4;n) x G(n-d_5;n) with n >= d_1+d_2+d_3+d_4 and d_5 >= d_4 >= ... >= d_1 "
               "is dense iff d_1+d_2+d_3+d_4 != 2d_5",
               sparse ? Status::Sparse : Status::Dense,
               "d = (" + join(d) + "), d_5 = " + std::to_string(d5) + ", sum = " + std::to_string(sum));
  }
  return std::nullopt;
}

namespace {

class Engine {
 public:
  explicit Engine(const DecideOptions& options) : options_(options) {}

  Verdict run(const Instance& input) {
    Verdict verdict{Status::Unknown, {}, input};
    Instance state = input;
    if (const auto* p = std::get_if<FlagProduct>(&input)) state = normalize(*p, verdict.trace);

    for (std::size_t step = 0;; ++step) {
      if (step > options_.max_rewrites) {
        throw Error(ErrorKind::IterationLimit,
                    "no fixpoint after " + std::to_string(options_.max_rewrites) + " rewrites");
      }
      if (auto fired = terminal(state, verdict.trace)) {
        verdict.status = fired->status;
        verdict.reduced = state;
        return verdict;
      }
      auto next = rewrite(state, verdict.trace);
      if (!next) break;
      state = std::move(*next);
    }
    verdict.reduced = state;

    if (options_.r9_depth > 0) {
      std::vector<LabeledTree> candidates{as_tree(input)};
      const auto reduced_tree = as_tree(state);
      if (!(reduced_tree == candidates.front())) candidates.push_back(reduced_tree);
      for (const auto& candidate : candidates) {
        if (auto step = sparse_image(candidate)) {
          verdict.trace.push_back(std::move(*step));
          verdict.status = Status::Sparse;
          return verdict;
        }
      }
    }
    return verdict;
  }

 private:
  static LabeledTree as_tree(const Instance& x) {
    if (const auto* p = std::get_if<FlagProduct>(&x)) return tree_from_product(*p);
    return std::get<LabeledTree>(x);
  }

  static FlagProduct normalize(const FlagProduct& p, std::vector<RewriteStep>& trace) {
    const FlagProduct sorted = sorted_factors(p);
    const FlagProduct normal = normal_form(p);
    if (normal != sorted) trace.push_back({"dualize-normalize", kDualCitation, p, normal, "dual form is smaller"});
    return normal;
  }

  static void record_dual(const FlagProduct& from, const FlagProduct& dual, std::vector<RewriteStep>& trace) {
    trace.push_back({"dualize", kDualCitation, from, dual, ""});
  }

  static void record_hit(const RuleHit& h, const Instance& before, std::vector<RewriteStep>& trace) {
    trace.push_back({h.rule_id, h.citation, before, std::nullopt, h.detail});
  }

  std::optional<RuleHit> terminal(const Instance& state, std::vector<RewriteStep>& trace) const {
    using TreeRule = std::optional<RuleHit> (*)(const LabeledTree&);
    using ProductRule = std::optional<RuleHit> (*)(const FlagProduct&);
    if (const auto* tree = std::get_if<LabeledTree>(&state)) {
      for (TreeRule rule : {rule_finite_orbits, rule_trivially_sparse, rule_easy_dense}) {
        if (auto h = rule(*tree)) {
          record_hit(*h, state, trace);
          return h;
        }
      }
      return std::nullopt;
    }
    const auto& p = std::get<FlagProduct>(state);
    const FlagProduct dual = sorted_factors(dualize(p));
    const std::array<FlagProduct, 2> sides{p, dual};
    const std::array<LabeledTree, 2> trees{tree_from_product(p), tree_from_product(dual)};
    using Rule = std::function<std::optional<RuleHit>(std::size_t)>;
    const auto on_tree = [&](TreeRule r) -> Rule { return [&, r](std::size_t s) { return r(trees[s]); }; };
    const auto on_product = [&](ProductRule r) -> Rule { return [&, r](std::size_t s) { return r(sides[s]); }; };
    const std::vector<Rule> rules{on_tree(rule_finite_orbits),         on_tree(rule_trivially_sparse),
                                  on_product(rule_complementary_pair), on_product(rule_two_step),
                                  on_product(rule_few_grassmannians),  on_tree(rule_easy_dense),
                                  on_product(rule_doubling),           on_product(rule_grassmannian_bound),
                                  on_product(rule_five_grassmannians)};
    for (const auto& rule : rules) {
      for (std::size_t s = 0; s < 2; ++s) {
        if (s == 1 && dual == p) break;
        if (auto h = rule(s)) {
          if (s == 1) record_dual(p, dual, trace);
          record_hit(*h, sides[s], trace);
          return h;
        }
      }
    }
    return std::nullopt;
  }

  std::optional<Instance> rewrite(const Instance& state, std::vector<RewriteStep>& trace) const {
    if (const auto* tree = std::get_if<LabeledTree>(&state)) {
      if (auto p = as_flag_product(*tree)) {
        trace.push_back({"as_flag_product", "chains meeting only at the root form a product of flag varieties",
                         state, *p, ""});
        return Instance{normalize(*p, trace)};
      }
      if (auto p = tree_to_product(*tree)) {
        trace.push_back({"tree_to_product",
                         "a three-leaf tree with junctions m' below m is dense iff the two flags entering m' "
                         "times the third flag derived with respect to phi(m) - phi(m') is dense in U_{m'}",
                         state, *p, ""});
        return Instance{normalize(*p, trace)};
      }
      return std::nullopt;
    }
    const auto& p = std::get<FlagProduct>(state);
    const FlagProduct dual = sorted_factors(dualize(p));
    using Rewrite = std::optional<FlagProduct> (*)(const FlagProduct&);
    const std::pair<const char*, const char*> names[] = {
        {"reduce_span",
         "with n' = sum_{i<m} top(k_i) and n' < n < n' + top(k_m), the product is dense iff the first m-1 "
         "flags times the flag derived from k_m with respect to n - n' is dense in dimension n'"},
        {"reduce_half", "F(k_1,...,k_r;2k_r)^3 is dense iff F(k_1,...,k_{r-1};k_r)^3 is dense"}};
    const Rewrite rewrites[] = {reduce_span, reduce_half};
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t s = 0; s < 2; ++s) {
        const FlagProduct& side = s == 0 ? p : dual;
        if (s == 1 && dual == p) break;
        if (auto out = rewrites[r](side)) {
          if (s == 1) record_dual(p, dual, trace);
          trace.push_back({names[r].first, names[r].second, side, *out, ""});
          return Instance{normalize(*out, trace)};
        }
      }
    }
    return std::nullopt;
  }

  // First surjective single-vertex forget (index order) decided without a dense orbit.
  std::optional<RewriteStep> sparse_image(const LabeledTree& tree) const {
    DecideOptions sub = options_;
    sub.r9_depth = options_.r9_depth - 1;
    const auto count = static_cast<std::ptrdiff_t>(tree.size());
    std::vector<std::optional<std::pair<LabeledTree, Verdict>>> results(tree.size());
    std::vector<std::exception_ptr> failures(tree.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto v = static_cast<std::size_t>(i);
      if (v == tree.root()) continue;
      try {
        auto image = forget_vertex(tree, tree.name(v));
        if (!image.surjective) continue;
        Verdict verdict = Engine(sub).run(image.tree);
        results[v].emplace(std::move(image.tree), std::move(verdict));
      } catch (...) {
        failures[v] = std::current_exception();
      }
    }
    for (std::size_t v = 0; v < tree.size(); ++v) {
      if (failures[v]) std::rethrow_exception(failures[v]);
      if (!results[v]) continue;
      const auto& [image, verdict] = *results[v];
      if (verdict.status != Status::Sparse && verdict.status != Status::TriviallySparse) continue;
      std::string detail = "forgetting '" + tree.name(v) + "' gives " + to_string(verdict.status);
      if (!verdict.trace.empty()) detail += " by " + verdict.trace.back().rule_id;
      return RewriteStep{"R9",
                         "a surjective forgetful image without a dense orbit rules out a dense orbit",
                         tree, image, detail};
    }
    return std::nullopt;
  }

  DecideOptions options_;
};

}  // namespace

Verdict decide(const Instance& instance, const DecideOptions& options) {
  if (const auto* p = std::get_if<FlagProduct>(&instance)) check_product(*p);
  return Engine(options).run(instance);
}

}  // namespace treevar
