#include "treevar/cross_ratio.hpp"

#include <string>
#include <utility>
#include <vector>

#include "treevar/error.hpp"

namespace treevar {

namespace {

Matrix hconcat(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols; ++j) out(i, a.cols + j) = b(i, j);
  }
  return out;
}

Matrix column(const Matrix& m, std::size_t j) {
  Matrix out(m.rows, 1);
  for (std::size_t i = 0; i < m.rows; ++i) out(i, 0) = m(i, j);
  return out;
}

[[noreturn]] void not_a_pencil(const std::string& msg) { throw Error(ErrorKind::NotAPencil, msg); }

// Extends the columns of `base` by columns of `pool` until the rank reaches `target`.
Matrix extend(const PrimeField& f, Matrix base, const Matrix& pool, std::size_t target) {
  std::size_t rank = rank_serial(f, base);
  for (std::size_t j = 0; j < pool.cols && rank < target; ++j) {
    Matrix candidate = hconcat(base, column(pool, j));
    const auto r = rank_serial(f, candidate);
    if (r > rank) {
      base = std::move(candidate);
      rank = r;
    }
  }
  return base;
}

}  // namespace

Elem cross_ratio(const PrimeField& f, const std::array<Matrix, 4>& pencil, const Matrix& sub,
                 const Matrix& sup) {
  const std::size_t n = sup.rows;
  if (sub.rows != n && sub.cols != 0) not_a_pencil("subspaces live in different ambient spaces");
  for (const auto& z : pencil) {
    if (z.rows != n) not_a_pencil("subspaces live in different ambient spaces");
  }
  const Matrix lambda = sub.cols == 0 ? Matrix(n, 0) : sub;
  const std::size_t d = rank_serial(f, pencil[0]);
  if (d == 0) not_a_pencil("pencil members must be nonzero");
  if (rank_serial(f, lambda) != d - 1) not_a_pencil("common subspace must have dimension d-1");
  if (rank_serial(f, sup) != d + 1) not_a_pencil("common superspace must have dimension d+1");
  for (const auto& z : pencil) {
    if (rank_serial(f, z) != d) not_a_pencil("pencil members must share one dimension");
    if (rank_serial(f, hconcat(z, lambda)) != d) not_a_pencil("common subspace not contained");
    if (rank_serial(f, hconcat(sup, z)) != d + 1) not_a_pencil("member not inside the superspace");
  }

  // Basis [Λ | w1 | w2] of Λ'; quotient coordinates are the last two.
  const Matrix basis = extend(f, lambda, sup, d + 1);
  std::array<std::pair<Elem, Elem>, 4> points;
  for (std::size_t i = 0; i < 4; ++i) {
    const Matrix z = extend(f, lambda, pencil[i], d);
    Matrix system = hconcat(basis, column(z, d - 1));
    rref(f, system);
    points[i] = {system(d - 1, d + 1), system(d, d + 1)};
  }
  const auto bracket = [&](std::size_t a, std::size_t b) {
    return f.sub(f.mul(points[a].first, points[b].second), f.mul(points[a].second, points[b].first));
  };
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      if (bracket(a, b) == 0) {
        throw Error(ErrorKind::Degenerate, "pencil members " + std::to_string(a + 1) + " and " +
                                               std::to_string(b + 1) + " coincide");
      }
    }
  }
  const Elem num = f.mul(bracket(3, 0), bracket(2, 1));
  const Elem den = f.mul(bracket(3, 1), bracket(2, 0));
  return f.mul(num, f.inv(den));
}

}  // namespace treevar
