#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "treevar/classifier.hpp"
#include "treevar/density.hpp"
#include "treevar/error.hpp"
#include "treevar/oracle.hpp"
#include "treevar/parse.hpp"

using namespace treevar;
using fixtures::tree;

namespace {

FlagProduct product(const char* spec) { return parse_product_spec(spec); }

Status status_of(const Instance& x, const DecideOptions& options = {}) { return decide(x, options).status; }

bool sparse_class(Status s) { return s == Status::Sparse || s == Status::TriviallySparse; }

std::string last_rule(const Verdict& v) { return v.trace.empty() ? "" : v.trace.back().rule_id; }

}  // namespace

TEST_CASE("derived_sequence") {
  CHECK(derived_sequence({1, 3, 5}, 2, 7) == DimensionVector{1, 3});
  CHECK(derived_sequence({1, 3, 5}, 0, 7) == DimensionVector{1, 3, 5});
  CHECK(derived_sequence({2, 5}, 2, 7) == DimensionVector{3});
  CHECK(derived_sequence({2, 5}, 6, 7).empty());
  CHECK_THROWS_AS(derived_sequence({2, 5}, 7, 7), Error);
  CHECK_THROWS_AS(derived_sequence({2, 5}, -1, 7), Error);
}

TEST_CASE("dualize") {
  const auto f134 = product("F(1,3;4)^3");
  CHECK(dualize(f134) == f134);
  CHECK(dualize(product("G(2;5)")) == product("G(3;5)"));
  const auto p = product("F(1,2;7)*G(3;7)");
  CHECK(dualize(dualize(p)) == p);
  CHECK(dualize(p) == FlagProduct{{{5, 6}, {4}}, 7});
}

TEST_CASE("reduce_span") {
  CHECK(reduce_span(FlagProduct{{{2}, {2}, {3}}, 5}) == FlagProduct{{{2}, {2}, {2}}, 4});
  CHECK_FALSE(reduce_span(FlagProduct{{{1}, {1}, {1}}, 5}));
  CHECK_FALSE(reduce_span(FlagProduct{{{1, 2}}, 5}));

  auto p = product("F(1,2;5)^3");
  for (int i = 0; i < 3; ++i) {
    auto next = reduce_span(p);
    REQUIRE(next);
    CHECK(next->ambient < p.ambient);
    p = *next;
  }
  CHECK(sorted_factors(p) == FlagProduct{{{1}, {1}, {1}}, 2});
}

TEST_CASE("reduce_half") {
  CHECK(reduce_half(product("F(1,3;6)^3")) == product("G(1;3)^3"));
  const auto collapsed = reduce_half(product("G(2;4)^3"));
  REQUIRE(collapsed);
  CHECK(collapsed->factors.empty());
  CHECK(collapsed->ambient == 2);
  CHECK(status_of(*collapsed) == Status::Dense);
  CHECK_FALSE(reduce_half(product("F(1,3;7)^3")));
  CHECK_FALSE(reduce_half(product("F(1,3;6)^2*F(1,2;6)")));
}

TEST_CASE("tree_to_product") {
  const auto t = tree("d2:2>d4:4>d6:6>r:8 | a:1>d4 | b:3>d6");
  const auto p = tree_to_product(t);
  REQUIRE(p);
  CHECK(sorted_factors(*p) == FlagProduct{{{1}, {1}, {2}}, 4});

  CHECK_FALSE(tree_to_product(tree("1>2>4")));
  CHECK_FALSE(tree_to_product(tree("a:1>b:2>r:4 | c:2>r")));
  CHECK_FALSE(tree_to_product(tree("a:1>r:3 | b:1>r | c:2>r")));

  // Single junction with three chains below the root.
  const auto star = tree_to_product(tree("a:1>j:3>r:6 | b:1>j | c:1>d:2>j"));
  REQUIRE(star);
  CHECK(sorted_factors(*star) == FlagProduct{{{1}, {1}, {1, 2}}, 3});

  // Upper junction at the root, third branch fully above the lower junction.
  const auto upper = tree_to_product(tree("x:2>j:4>r:7 | y:3>j | z:5>r"));
  REQUIRE(upper);
  CHECK(sorted_factors(*upper) == FlagProduct{{{2}, {2}, {3}}, 4});
}

TEST_CASE("decide examples") {
  auto v = decide(product("F(1,2;4)^3"));
  CHECK(v.status == Status::Dense);
  CHECK(last_rule(v) == "R3");

  v = decide(product("F(2,3;5)^3"));
  CHECK(v.status == Status::Sparse);
  CHECK((last_rule(v) == "R2" || last_rule(v) == "R3"));
  CHECK(v.trace.back().citation.find("k_i + k_j = n") != std::string::npos);

  v = decide(product("F(2,4;6)^3"));
  CHECK(v.status == Status::TriviallySparse);
  CHECK(last_rule(v) == "R1");

  CHECK(status_of(product("G(1;5)*G(2;5)^2")) == Status::Dense);
  CHECK(rule_easy_dense(tree_from_product(product("G(1;5)*G(2;5)^2"))).has_value());

  v = decide(product("F(1,2,4;8)^3"));
  CHECK(v.status == Status::Dense);
  CHECK(last_rule(v) == "R6");

  v = decide(FlagProduct{{{1}, {1}, {2}, {2}, {4}}, 7});
  CHECK(v.status == Status::Sparse);
  CHECK(last_rule(v) == "R8");

  v = decide(tree("a:1>m:3>n:5 | b:1>m | c:2>m | d:2>m"));
  CHECK(v.status == Status::Unknown);
  CHECK(std::holds_alternative<LabeledTree>(v.reduced));
}

TEST_CASE("rule predicates") {
  CHECK(rule_finite_orbits(tree("1>2>4"))->status == Status::Dense);
  CHECK_FALSE(rule_finite_orbits(tree("a:1>r:2 | b:1>r | c:1>r | d:1>r")));
  CHECK(rule_complementary_pair(product("F(1,2,4;5)^3"))->status == Status::Sparse);
  CHECK_FALSE(rule_complementary_pair(product("F(1,2;5)^2*F(1,3;5)")));
  CHECK(rule_two_step(product("F(1,3;5)^3"))->status == Status::Dense);
  CHECK(rule_two_step(product("F(1,4;5)^3"))->status == Status::Sparse);
  CHECK(rule_few_grassmannians(product("G(1;2)^4"))->status == Status::Sparse);
  CHECK(rule_few_grassmannians(product("G(1;3)^4"))->status == Status::Dense);
  CHECK_FALSE(rule_few_grassmannians(product("G(1;3)^5")));
  CHECK_FALSE(rule_easy_dense(tree("a:2>r:3 | b:2>r")));
  CHECK(rule_doubling(product("F(1,2,4;8)^3")));
  CHECK_FALSE(rule_doubling(product("F(1,3,4;8)^3")));
  CHECK(rule_grassmannian_bound(product("G(1;8)^2*G(2;8)^2*G(3;8)"))->status == Status::Dense);
  CHECK_FALSE(rule_grassmannian_bound(product("G(2;8)^2*G(3;8)^3")));
  CHECK(rule_five_grassmannians(FlagProduct{{{1}, {1}, {2}, {2}, {4}}, 7})->status == Status::Sparse);
  CHECK(rule_five_grassmannians(FlagProduct{{{1}, {1}, {1}, {2}, {3}}, 6})->status == Status::Dense);
  // d_4 = d_5 is outside the rule.
  CHECK_FALSE(rule_five_grassmannians(product("G(1;6)^3*G(3;6)^2")));
}

TEST_CASE("verdict shape") {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    const auto p = fixtures::random_product(rng, 8, 5);
    const auto v = decide(p);
    if (v.status != Status::Unknown) {
      REQUIRE_FALSE(v.trace.empty());
      CHECK(v.trace.back().rule_id.front() == 'R');
      const bool stray_after = v.trace.back().after.has_value() && v.trace.back().rule_id != "R9";
      CHECK_FALSE(stray_after);
    }
    for (const auto& step : v.trace) CHECK_FALSE(step.citation.empty());
  }
}

TEST_CASE("dual, permutation and renaming invariance") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 400; ++iter) {
    auto p = fixtures::random_product(rng, 9, 5);
    const auto s = status_of(p);
    CHECK(status_of(dualize(p)) == s);
    std::shuffle(p.factors.begin(), p.factors.end(), rng);
    CHECK(status_of(p) == s);
  }
  for (int iter = 0; iter < 200; ++iter) {
    const auto t = fixtures::random_tree(rng, 8, 9);
    auto raw = to_raw(t);
    for (auto& [name, label] : raw.labels) name = "q_" + name;
    for (auto& [a, b] : raw.edges) {
      a = "q_" + a;
      b = "q_" + b;
    }
    CHECK(status_of(validate_tree(raw)) == status_of(t));
  }
}

TEST_CASE("cross-module consistency") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 400; ++iter) {
    const auto t = fixtures::random_tree(rng, 9, 10);
    const auto s = status_of(t);
    if (trivially_sparse(t).trivially_sparse) CHECK(s != Status::Dense);
    if (orbit_class(t).finitely_many_orbits()) CHECK(s == Status::Dense);
  }
}

TEST_CASE("two-step triples match the closed form") {
  for (Label n = 3; n <= 12; ++n) {
    for (Label a = 1; a < n; ++a) {
      for (Label b = a + 1; b < n; ++b) {
        const auto s = status_of(FlagProduct{{{a, b}, {a, b}, {a, b}}, n});
        CHECK(sparse_class(s) == (a + b == n || s == Status::TriviallySparse));
        if (a + b != n && s != Status::TriviallySparse) CHECK(s == Status::Dense);
      }
    }
  }
}

TEST_CASE("rewrites preserve verdicts") {
  std::mt19937_64 rng(41);
  int span = 0, half = 0, tree_rw = 0;
  const auto compare = [](const Instance& a, const Instance& b) {
    const auto sa = status_of(a), sb = status_of(b);
    if (sa == Status::Unknown || sb == Status::Unknown) return;
    CHECK(sparse_class(sa) == sparse_class(sb));
  };
  for (int iter = 0; iter < 3000 && span < 100; ++iter) {
    const auto p = fixtures::random_product(rng, 9, 4);
    if (auto r = reduce_span(p)) {
      compare(p, *r);
      ++span;
    }
  }
  for (Label n = 2; n <= 16; n += 2) {
    for (unsigned mask = 0; mask < (1u << (n / 2 - 1)); ++mask) {
      DimensionVector k;
      for (Label x = 1; x < n / 2; ++x) {
        if (mask >> (x - 1) & 1) k.push_back(x);
      }
      k.push_back(n / 2);
      const FlagProduct p{{k, k, k}, n};
      auto r = reduce_half(p);
      REQUIRE(r);
      compare(p, *r);
      ++half;
    }
  }
  for (int iter = 0; iter < 4000 && tree_rw < 60; ++iter) {
    const auto t = fixtures::random_tree(rng, 8, 10);
    if (auto r = tree_to_product(t)) {
      compare(t, *r);
      ++tree_rw;
    }
  }
  CHECK(span >= 50);
  CHECK(half >= 50);
  CHECK(tree_rw >= 20);
}

TEST_CASE("engine agrees with the oracle on random instances") {
  std::mt19937_64 rng(59);
  for (int iter = 0; iter < 150; ++iter) {
    const auto p = fixtures::random_product(rng, 7, 5);
    const auto s = status_of(p);
    if (s == Status::Unknown) continue;
    const auto report = certify_density(tree_from_product(p), kDefaultPrime, 3, 1);
    CHECK_MESSAGE(report.certified_dense == (s == Status::Dense), describe(p));
  }
}

TEST_CASE("iteration limit") {
  DecideOptions tight;
  tight.max_rewrites = 0;
  try {
    decide(product("F(1,2;5)^2*F(2,3;5)"), tight);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IterationLimit);
  }
  CHECK_THROWS_AS(decide(FlagProduct{{{3, 2}}, 5}), Error);
}

TEST_CASE("R9 propagates sparseness from a surjective image") {
  // Forgetting the extra leaf leaves F(2,3;5)^3.
  const auto t = tree("a:2>b:3>r:5 | c:2>d:3>r | e:2>f:3>r | x:1>r");
  const auto v = decide(t);
  CHECK(sparse_class(v.status));
  DecideOptions no_search;
  no_search.r9_depth = 0;
  const auto without = decide(t, no_search);
  if (last_rule(v) == "R9") CHECK(without.status == Status::Unknown);
}

TEST_CASE("describe round-trips") {
  const auto p = product("G(1;5)*G(2;5)^2");
  CHECK(parse_product_spec(describe(p)) == p);
  const auto t = tree("d1:1>d2:2>d3:3>d4:4>n:6 | d5:2>d4");
  CHECK(parse_tree_spec(describe(t)) == t);
}
