// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "treevar/classifier.hpp"
#include "treevar/cross_ratio.hpp"
#include "treevar/density.hpp"
#include "treevar/oracle.hpp"
#include "treevar/orbits.hpp"

using namespace treevar;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 8) failures.push_back(what);
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

bool sparse_class(Status s) { return s == Status::Sparse || s == Status::TriviallySparse; }

std::int64_t truncation_sum(const LabeledTree& t, std::size_t m) {
  if (t.depth() <= m) return dimension(t);
  const auto split = truncate(t, m);
  std::int64_t total = dimension(split.base);
  for (const auto& h : split.hanging) total += truncation_sum(h, m);
  return total;
}

bool certified(const Instance& x, std::uint32_t prime, std::size_t trials, std::uint64_t seed,
               StabReport* report = nullptr) {
  const auto t = std::holds_alternative<LabeledTree>(x) ? std::get<LabeledTree>(x)
                                                        : tree_from_product(std::get<FlagProduct>(x));
  const auto r = certify_density(t, prime, trials, seed);
  if (report) *report = r;
  return r.certified_dense;
}

std::size_t max_rank(const StabReport& r) { return *std::max_element(r.trial_ranks.begin(), r.trial_ranks.end()); }

// PGL(2, q)-orbits on (P^1)^4 by Burnside over GL(2, q), q prime.
std::uint64_t burnside_four_points(std::uint32_t q) {
  std::uint64_t group = 0, total = 0;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c)
        for (std::uint32_t d = 0; d < q; ++d) {
          if ((a * d + q * q - b * c % q) % q == 0) continue;
          ++group;
          // Lines are [1:0] and [x:1]; count those g maps to themselves.
          std::uint64_t fixed = c % q == 0 ? 1 : 0;
          for (std::uint32_t x = 0; x < q; ++x) {
            const std::uint32_t u = (a * x + b) % q, w = (c * x + d) % q;
            if (w != 0 && u == x * w % q) ++fixed;
          }
          total += fixed * fixed * fixed * fixed;
        }
  return total / group;
}

Outcome criterion_dimension() {
  Outcome o;
  std::mt19937_64 rng(1001);
  std::size_t checks = 0;
  for (int i = 0; i < 200; ++i) {
    const auto t = fixtures::random_tree(rng, 12, 30);
    const auto d = dimension(t);
    for (std::size_t m = 1; m <= std::max<std::size_t>(t.depth(), 1); ++m, ++checks) {
      o.expect(truncation_sum(t, m) == d, describe(t) + " at m = " + std::to_string(m));
    }
  }
  o.detail = "200 trees, " + std::to_string(checks) + " truncation levels";
  return o;
}

Outcome criterion_two_step() {
  Outcome o;
  std::size_t count = 0, dense = 0, sparse = 0, trivial = 0;
  for (Label n = 3; n <= 10; ++n) {
    for (Label a = 1; a < n; ++a) {
      for (Label b = a + 1; b < n; ++b, ++count) {
        const FlagProduct p{{{a, b}, {a, b}, {a, b}}, n};
        const auto s = decide(p).status;
        const bool expect_trivial = (a == 1 && b == 2 && n == 3) || (a == 2 && b == 4 && n == 6) ||
                                    (a == 3 && b == 6 && n == 9);
        const Status want = expect_trivial ? Status::TriviallySparse : a + b == n ? Status::Sparse : Status::Dense;
        o.expect(s == want, format_product(p) + " gave " + to_string(s));
        const bool cert = certified(p, kDefaultPrime, 3, static_cast<std::uint64_t>(count));
        o.expect(cert == (s == Status::Dense), format_product(p) + " oracle disagrees with " + to_string(s));
        (s == Status::Dense ? dense : s == Status::Sparse ? sparse : trivial)++;
      }
    }
  }
  o.detail = std::to_string(count) + " triples: " + std::to_string(dense) + " Dense, " + std::to_string(sparse) +
             " Sparse, " + std::to_string(trivial) + " TriviallySparse, oracle at p = 2^31-1 x 3 trials";
  return o;
}

Outcome criterion_finiteness() {
  struct Fixture {
    const char* label;
    const char* spec;
    OrbitKind kind;
    const char* case_label;
    bool enumerate;
  };
  const std::vector<Fixture> fixtures = {
      {"chain", "1>2>4", OrbitKind::Homogeneous, nullptr, true},
      {"two-leaf", "a:1>b:2>c:3 | d:1>b", OrbitKind::TwoOrbits, nullptr, true},
      {"(1,1,2)", "a:1>r:3 | b:1>r | c:1>d:2>r", OrbitKind::FiniteType, "2a", true},
      {"(1,2,3)", "a:1>r:4 | b:1>c:2>r | d:1>e:2>f:3>r", OrbitKind::FiniteType, "2b", true},
      {"(1,2,5) widths met", "a:2>r:6 | b:1>c:2>r | l1:1>l2:2>l3:3>l4:4>l5:5>r", OrbitKind::FiniteType, "2c",
       true},
      {"(1,2,6) widths failed", "a:3>r:20 | b:2>c:4>r | l1:1>l2:2>l3:3>l4:4>l5:5>l6:6>r",
       OrbitKind::InfiniteType, nullptr, false},
      {"(1,3,3) width 1", "a:1>r:5 | b:1>c:2>d:3>r | e:1>f:2>g:4>r", OrbitKind::FiniteType, "2d", true},
      {"four leaves into 2", "a:1>r:2 | b:1>r | c:1>r | d:1>r", OrbitKind::InfiniteType, nullptr, true},
  };
  Outcome o;
  std::ostringstream counts;
  for (const auto& fx : fixtures) {
    const auto t = fixtures::tree(fx.spec);
    const auto cls = orbit_class(t);
    o.expect(cls.kind == fx.kind, std::string(fx.label) + " classified " + to_string(cls.kind));
    o.expect(cls.case_label.value_or("") == (fx.case_label ? fx.case_label : ""),
             std::string(fx.label) + " case " + cls.case_label.value_or("-"));
    if (!fx.enumerate) continue;
    const auto r2 = enumerate_orbits(t, 2);
    const auto r3 = enumerate_orbits(t, 3);
    counts << ' ' << fx.label << "=" << r2.orbit_count << "/" << r3.orbit_count;
    if (fx.kind != OrbitKind::InfiniteType) {
      o.expect(r2.orbit_count == r3.orbit_count, std::string(fx.label) + " counts differ across q");
    } else {
      o.expect(r2.orbit_count < r3.orbit_count, std::string(fx.label) + " counts not increasing");
      o.expect(r2.orbit_count == 14 && r3.orbit_count == 15, std::string(fx.label) + " expected 14 then 15");
      o.expect(burnside_four_points(2) == r2.orbit_count && burnside_four_points(3) == r3.orbit_count,
               "Burnside count disagrees");
    }
  }
  o.detail = "8 fixtures, orbit counts q=2/q=3:" + counts.str();
  return o;
}

Outcome criterion_rule_catalog() {
  Outcome o;
  std::ostringstream detail;
  const auto dense_case = [&](const Instance& x, const char* rule) {
    const auto v = decide(x);
    o.expect(v.status == Status::Dense, describe(x) + " engine " + to_string(v.status));
    if (rule) o.expect(!v.trace.empty() && v.trace.back().rule_id == rule, describe(x) + " not decided by " + rule);
    StabReport r;
    o.expect(certified(x, kDefaultPrime, 3, 5, &r), describe(x) + " not certified");
    detail << ' ' << describe(x) << " rank " << max_rank(r) << "/" << r.variety_dim << ";";
  };
  const auto sparse_case = [&](const Instance& x, const char* rule) {
    const auto v = decide(x);
    o.expect(sparse_class(v.status), describe(x) + " engine " + to_string(v.status));
    if (rule) o.expect(!v.trace.empty() && v.trace.back().rule_id == rule, describe(x) + " not decided by " + rule);
    StabReport r;
    o.expect(!certified(x, kDefaultPrime, 3, 5, &r), describe(x) + " certified");
    o.expect(max_rank(r) < static_cast<std::size_t>(r.variety_dim), describe(x) + " reached full rank");
    detail << ' ' << describe(x) << " rank " << max_rank(r) << "/" << r.variety_dim << ";";
  };

  // Top dimensions summing to at most n; other rules may end the trace first.
  const std::vector<Instance> easy = {FlagProduct{{{1}, {2}, {2}}, 5}, FlagProduct{{{1, 3}, {2, 3}, {1}}, 7},
                                      FlagProduct{{{2}, {3}, {1, 3}}, 8},
                                      fixtures::tree("a:1>m:3>r:7 | b:2>m | c:2>r")};
  for (const auto& x : easy) {
    const auto t = std::holds_alternative<LabeledTree>(x) ? std::get<LabeledTree>(x)
                                                          : tree_from_product(std::get<FlagProduct>(x));
    o.expect(rule_easy_dense(t).has_value(), describe(x) + " outside the easy-dense rule");
    dense_case(x, nullptr);
  }
  dense_case(FlagProduct{{{1, 2, 4}, {1, 2, 4}, {1, 2, 4}}, 8}, "R6");
  sparse_case(FlagProduct{{{1}, {1}, {2}, {2}, {4}}, 7}, "R8");
  const FlagProduct four_points{{{1}, {1}, {1}, {1}}, 2};
  o.expect(rule_few_grassmannians(four_points).has_value() &&
               rule_few_grassmannians(four_points)->status == Status::Sparse,
           "G(1;2)^4 outside the four-Grassmannian rule");
  sparse_case(four_points, nullptr);
  o.detail = "max rank/dim:" + detail.str();
  return o;
}

Outcome criterion_honesty() {
  Outcome o;
  const auto t = fixtures::tree("a:1>m:3>n:5 | b:1>m | c:2>m | d:2>m");
  const auto v = decide(t);
  o.expect(v.status == Status::Unknown, "engine returned " + std::string(to_string(v.status)));
  std::ostringstream detail;
  detail << "decide = " << to_string(v.status) << ";";
  for (std::uint32_t p : {kDefaultPrime, 1000003u}) {
    const auto r = certify_density(t, p, 5, 11);
    o.expect(!r.certified_dense, "certified at p = " + std::to_string(p));
    detail << " p = " << p << ": max rank " << max_rank(r) << "/" << r.variety_dim << ';';
  }
  o.detail = detail.str() + " never certified, consistent with the fixture being sparse";
  return o;
}

Outcome criterion_invariance() {
  Outcome o;
  std::mt19937_64 rng(6006);

  for (int i = 0; i < 200; ++i) {
    auto p = fixtures::random_product(rng, 9, 5);
    o.expect(dualize(dualize(p)) == p, format_product(p) + " dual not an involution");
    const auto s = decide(p).status;
    o.expect(decide(dualize(p)).status == s, format_product(p) + " dual verdict differs");
    std::shuffle(p.factors.begin(), p.factors.end(), rng);
    o.expect(decide(p).status == s, format_product(p) + " permuted verdict differs");
  }

  std::size_t span = 0, half = 0, tree_rw = 0, definite = 0;
  const auto preserved = [&](const Instance& x, const Instance& r, std::uint64_t seed) {
    const auto sx = decide(x).status, sr = decide(r).status;
    if (sx != Status::Unknown && sr != Status::Unknown) {
      ++definite;
      o.expect(sparse_class(sx) == sparse_class(sr), describe(x) + " -> " + describe(r) + " verdict changed");
    }
    o.expect(certified(x, kDefaultPrime, 3, seed) == certified(r, kDefaultPrime, 3, seed),
             describe(x) + " -> " + describe(r) + " oracle disagrees");
  };
  for (int i = 0; i < 100000 && span < 50; ++i) {
    const auto p = fixtures::random_product(rng, 9, 4);
    if (auto r = reduce_span(p)) preserved(p, *r, span++);
  }
  for (Label n = 2; n <= 14 && half < 50; n += 2) {
    for (unsigned mask = 0; mask < (1u << (n / 2 - 1)) && half < 50; ++mask) {
      DimensionVector k;
      for (Label x = 1; x < n / 2; ++x) {
        if (mask >> (x - 1) & 1) k.push_back(x);
      }
      k.push_back(n / 2);
      const FlagProduct p{{k, k, k}, n};
      if (auto r = reduce_half(p)) preserved(p, *r, half++);
    }
  }
  for (int i = 0; i < 200000 && tree_rw < 50; ++i) {
    const auto t = fixtures::random_tree(rng, 8, 10);
    if (auto r = tree_to_product(t)) preserved(t, *r, tree_rw++);
  }
  o.expect(span == 50 && half == 50 && tree_rw == 50, "fewer than 50 applicable instances for some rewrite");

  std::size_t stab_checks = 0;
  for (int iter = 0; iter < 20; ++iter, ++stab_checks) {
    const PrimeField f(65537);
    const auto t = fixtures::random_tree(rng, 8, 8);
    const auto c = random_config(t, 65537, static_cast<std::uint64_t>(iter));
    const auto base = stabilizer_dim(c);
    Configuration rebased = c, conjugated = c;
    const Matrix g = fixtures::random_invertible(rng, f, static_cast<std::size_t>(t.ambient()));
    for (std::size_t v = 0; v < t.size(); ++v) {
      if (v == t.root()) continue;
      rebased.bases[v] = multiply(f, c.bases[v], fixtures::random_invertible(rng, f, c.bases[v].cols));
      conjugated.bases[v] = multiply(f, g, c.bases[v]);
    }
    o.expect(stabilizer_dim(rebased).system_rank == base.system_rank, describe(t) + " basis change");
    o.expect(stabilizer_dim(conjugated).system_rank == base.system_rank, describe(t) + " conjugation");
  }

  std::size_t cross_checks = 0;
  const PrimeField f(10007);
  while (cross_checks < 20) {
    const std::size_t n = 3 + rng() % 4;
    const std::size_t d = 1 + rng() % (n - 1);
    Matrix sub(n, d - 1), sup(n, d + 1);
    for (std::size_t i = 0; i + 1 < d; ++i) sub(i, i) = 1;
    for (std::size_t i = 0; i <= d; ++i) sup(i, i) = 1;
    const Elem lambda = static_cast<Elem>(2 + rng() % 10005);
    const std::array<std::pair<Elem, Elem>, 4> pts{{{0, 1}, {1, 0}, {1, 1}, {lambda, 1}}};
    std::array<Matrix, 4> z;
    for (std::size_t k = 0; k < 4; ++k) {
      z[k] = Matrix(n, d);
      for (std::size_t i = 0; i + 1 < d; ++i) {
        z[k](i, i) = 1;
        z[k](i, d - 1) = static_cast<Elem>(rng() % 10007);
      }
      z[k](d - 1, d - 1) = pts[k].first;
      z[k](d, d - 1) = pts[k].second;
    }
    const Elem base = cross_ratio(f, z, sub, sup);
    o.expect(base == lambda, "cross-ratio normalization");
    const Matrix g = fixtures::random_invertible(rng, f, n);
    std::array<Matrix, 4> moved;
    for (std::size_t k = 0; k < 4; ++k) moved[k] = multiply(f, multiply(f, g, z[k]), fixtures::random_invertible(rng, f, d));
    const Matrix moved_sub = d > 1 ? multiply(f, multiply(f, g, sub), fixtures::random_invertible(rng, f, d - 1)) : Matrix(n, 0);
    const Matrix moved_sup = multiply(f, multiply(f, g, sup), fixtures::random_invertible(rng, f, d + 1));
    o.expect(cross_ratio(f, moved, moved_sub, moved_sup) == base, "cross-ratio moved by GL(n)");
    ++cross_checks;
  }

  o.detail = "200 dual/permutation checks; rewrites span/half/tree = " + std::to_string(span) + "/" +
             std::to_string(half) + "/" + std::to_string(tree_rw) + " (" + std::to_string(definite) +
             " with both verdicts definite, all oracle-checked); " + std::to_string(stab_checks) +
             " stabilizer and " + std::to_string(cross_checks) + " cross-ratio checks";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "dimension consistency", 1.0, criterion_dimension},
      {2, "two-step exhaustive classification", 120.0, criterion_two_step},
      {3, "finiteness classifier vs enumeration", 60.0, criterion_finiteness},
      {4, "rule catalog with oracle agreement", 120.0, criterion_rule_catalog},
      {5, "honesty fixture", 10.0, criterion_honesty},
      {6, "invariance suite", 60.0, criterion_invariance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_s) o.expect(false, "over time budget");
    std::printf("%s criterion %d: %s (%.2f s of %.0f s) %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, seconds,
                c.budget_s, o.detail.c_str());
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
