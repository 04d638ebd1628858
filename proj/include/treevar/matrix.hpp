#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "treevar/field.hpp"

namespace treevar {

/// Dense row-major matrix of field elements. The field is passed to every
/// operation rather than stored, so one type serves GF(q) and large primes.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  static Matrix identity(std::size_t n);

  Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::span<Elem> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const Elem> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix transpose(const Matrix& m);

template <class Field>
Matrix multiply(const Field& f, const Matrix& a, const Matrix& b);

/// In-place reduced row echelon form; returns the rank and, optionally, the
/// pivot column of each nonzero row. Pivots are the first nonzero entry found
/// scanning rows top-down, so the result is deterministic.
template <class Field>
std::size_t rref(const Field& f, Matrix& m, std::vector<std::size_t>* pivots = nullptr);

/// Reference rank: plain forward elimination, one thread.
template <class Field>
std::size_t rank_serial(const Field& f, Matrix m);

/// Same elimination with the row updates below each pivot spread over OpenMP
/// threads. Pivot choice matches rank_serial exactly.
template <class Field>
std::size_t rank_parallel(const Field& f, Matrix m);

/// Rows form a basis of {x : m x = 0}.
template <class Field>
Matrix nullspace(const Field& f, const Matrix& m);

/// Rows C with C * b = 0 and rank(C) = b.rows - rank(b).
template <class Field>
Matrix left_annihilator(const Field& f, const Matrix& b);

}  // namespace treevar
