#include "treevar/matrix.hpp"

#include <algorithm>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace treevar {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  }
  return t;
}

template <class Field>
Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Elem aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  }
  return c;
}

namespace {

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(m.row(a).begin(), m.row(a).end(), m.row(b).begin());
}

template <class Field>
void scale_row(const Field& f, Matrix& m, std::size_t r, Elem s, std::size_t from) {
  for (std::size_t j = from; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), s);
}

// row[target] -= factor * row[source], columns from `from` on.
template <class Field>
void eliminate(const Field& f, Matrix& m, std::size_t target, std::size_t source, std::size_t from) {
  const Elem factor = m(target, from);
  if (factor == 0) return;
  Elem* t = m.data.data() + target * m.cols;
  const Elem* s = m.data.data() + source * m.cols;
  for (std::size_t j = from; j < m.cols; ++j) {
    if (s[j] != 0) t[j] = f.sub_mul(t[j], factor, s[j]);
  }
}

template <class Field>
std::size_t find_pivot(const Matrix& m, std::size_t start, std::size_t col) {
  for (std::size_t i = start; i < m.rows; ++i) {
    if (m(i, col) != 0) return i;
  }
  return m.rows;
}

}  // namespace

template <class Field>
std::size_t rref(const Field& f, Matrix& m, std::vector<std::size_t>* pivots) {
  if (pivots) pivots->clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    const std::size_t p = find_pivot<Field>(m, r, c);
    if (p == m.rows) continue;
    swap_rows(m, p, r);
    scale_row(f, m, r, f.inv(m(r, c)), c);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i != r) eliminate(f, m, i, r, c);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

template <class Field>
std::size_t rank_serial(const Field& f, Matrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    const std::size_t p = find_pivot<Field>(m, r, c);
    if (p == m.rows) continue;
    swap_rows(m, p, r);
    scale_row(f, m, r, f.inv(m(r, c)), c);
    for (std::size_t i = r + 1; i < m.rows; ++i) eliminate(f, m, i, r, c);
    ++r;
  }
  return r;
}

template <class Field>
std::size_t rank_parallel(const Field& f, Matrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    const std::size_t p = find_pivot<Field>(m, r, c);
    if (p == m.rows) continue;
    swap_rows(m, p, r);
    scale_row(f, m, r, f.inv(m(r, c)), c);
    const auto first = static_cast<std::ptrdiff_t>(r + 1);
    const auto last = static_cast<std::ptrdiff_t>(m.rows);
#pragma omp parallel for schedule(static) if (last - first > 64)
    for (std::ptrdiff_t i = first; i < last; ++i) {
      eliminate(f, m, static_cast<std::size_t>(i), r, c);
    }
    ++r;
  }
  return r;
}

template <class Field>
Matrix nullspace(const Field& f, const Matrix& m) {
  Matrix reduced = m;
  std::vector<std::size_t> pivots;
  const std::size_t rank = rref(f, reduced, &pivots);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis(m.cols - rank, m.cols);
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    basis(out, free) = 1;
    for (std::size_t i = 0; i < rank; ++i) basis(out, pivots[i]) = f.neg(reduced(i, free));
    ++out;
  }
  return basis;
}

template <class Field>
Matrix left_annihilator(const Field& f, const Matrix& b) {
  return nullspace(f, transpose(b));
}

#define TREEVAR_INSTANTIATE(F)                                                  \
  template Matrix multiply<F>(const F&, const Matrix&, const Matrix&);          \
  template std::size_t rref<F>(const F&, Matrix&, std::vector<std::size_t>*);   \
  template std::size_t rank_serial<F>(const F&, Matrix);                        \
  template std::size_t rank_parallel<F>(const F&, Matrix);                      \
  template Matrix nullspace<F>(const F&, const Matrix&);                        \
  template Matrix left_annihilator<F>(const F&, const Matrix&);

TREEVAR_INSTANTIATE(PrimeField)
TREEVAR_INSTANTIATE(SmallField)

#undef TREEVAR_INSTANTIATE

}  // namespace treevar
