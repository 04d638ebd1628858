// Serial reference kernels against their OpenMP counterparts.

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "treevar/oracle.hpp"
#include "treevar/parse.hpp"

using namespace treevar;

namespace {

template <class F>
double best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

Matrix random_matrix(std::mt19937_64& rng, const PrimeField& f, std::size_t rows, std::size_t cols,
                     std::size_t rank) {
  // Product of random rows x rank and rank x cols factors, so the rank is known.
  Matrix a(rows, rank), b(rank, cols);
  for (auto& x : a.data) x = static_cast<Elem>(rng() % f.order());
  for (auto& x : b.data) x = static_cast<Elem>(rng() % f.order());
  return multiply(f, a, b);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernels"};
  std::vector<std::size_t> sizes{200, 400, 800};
  std::vector<std::string> products{"F(1,2,4;8)^3", "G(3;12)^5", "F(2,5,9;16)^3*G(8;16)"};
  int reps = 3;
  bool quick = false;
  app.add_option("--sizes", sizes, "square matrix sizes for the rank kernel");
  app.add_option("--products", products, "instances for the stabilizer kernel");
  app.add_option("--reps", reps, "repetitions, best time reported")->check(CLI::PositiveNumber);
  app.add_flag("--quick", quick, "tiny sizes; checks agreement only");
  CLI11_PARSE(app, argc, argv);
  if (quick) {
    sizes = {40, 80};
    products = {"F(1,2;4)^3", "G(2;6)^4"};
    reps = 1;
  }

  const PrimeField f(kDefaultPrime);
  std::mt19937_64 rng(12345);
  bool agree = true;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %12s %12s %8s\n", "rank kernel", "serial s", "parallel s", "speedup");
  for (auto n : sizes) {
    const Matrix m = random_matrix(rng, f, n, n, n - n / 10);
    std::size_t rs = 0, rp = 0;
    const double ts = best_of(reps, [&] { rs = rank_serial(f, m); });
    const double tp = best_of(reps, [&] { rp = rank_parallel(f, m); });
    agree = agree && rs == rp && rs == n - n / 10;
    std::printf("%-28s %12.4f %12.4f %8.2f%s\n", ("n = " + std::to_string(n)).c_str(), ts, tp, ts / tp,
                rs == rp ? "" : "  MISMATCH");
  }

  std::printf("%-28s %12s %12s %8s\n", "stabilizer system", "serial s", "parallel s", "speedup");
  for (const auto& spec : products) {
    const auto tree = tree_from_product(parse_product_spec(spec));
    const auto config = random_config(tree, kDefaultPrime, 1);
    StabReport a, b;
    const double ts = best_of(reps, [&] { a = stabilizer_dim(config, Elimination::Serial); });
    const double tp = best_of(reps, [&] { b = stabilizer_dim(config, Elimination::Parallel); });
    agree = agree && a.system_rank == b.system_rank;
    std::printf("%-28s %12.4f %12.4f %8.2f%s\n", spec.c_str(), ts, tp, ts / tp,
                a.system_rank == b.system_rank ? "" : "  MISMATCH");
  }

  std::printf("%-28s %12s %12s %8s\n", "certify, 8 trials", "1 thread s", "all s", "speedup");
  for (const auto& spec : products) {
    const auto tree = tree_from_product(parse_product_spec(spec));
    const int threads = omp_get_max_threads();
    StabReport a, b;
    omp_set_num_threads(1);
    const double ts = best_of(reps, [&] { a = certify_density(tree, kDefaultPrime, 8, 3); });
    omp_set_num_threads(threads);
    const double tp = best_of(reps, [&] { b = certify_density(tree, kDefaultPrime, 8, 3); });
    agree = agree && a.trial_ranks == b.trial_ranks;
    std::printf("%-28s %12.4f %12.4f %8.2f%s\n", spec.c_str(), ts, tp, ts / tp,
                a.trial_ranks == b.trial_ranks ? "" : "  MISMATCH");
  }
  std::printf("%s\n", agree ? "results agree" : "results DISAGREE");
  return agree ? 0 : 1;
}
