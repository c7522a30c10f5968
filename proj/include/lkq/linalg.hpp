#pragma once

// Small dense row-reduction kernels shared by the exact (Rational) and the
// floating-point combinatorics. Matrices are row-major vectors of rows.

#include <algorithm>
#include <cmath>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "lkq/rational.hpp"

namespace lkq::linalg {

template <class T>
using Mat = std::vector<std::vector<T>>;

inline bool is_zero(const Rational& x, double) { return x == 0; }
inline bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
inline double magnitude(const Rational& x) { return std::abs(to_double(x)); }
inline double magnitude(double x) { return std::abs(x); }

// Reduced row echelon form in place; returns pivot columns.
// For doubles, partial pivoting on the largest entry and a tolerance relative
// to the largest entry of the input.
template <class T>
std::vector<int> rref(Mat<T>& M, double tol = 1e-9) {
  std::vector<int> pivots;
  if (M.empty()) return pivots;
  const int rows = static_cast<int>(M.size());
  const int cols = static_cast<int>(M[0].size());
  double scale = 0.0;
  for (const auto& row : M)
    for (const auto& x : row) scale = std::max(scale, magnitude(x));
  const double eps = tol * std::max(scale, 1.0);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    double best_mag = 0.0;
    for (int i = r; i < rows; ++i) {
      if (is_zero(M[i][c], eps)) continue;
      double mag = magnitude(M[i][c]);
      if (best < 0 || mag > best_mag) {
        best = i;
        best_mag = mag;
      }
      if constexpr (std::is_same_v<T, Rational>) break;
    }
    if (best < 0) {
      for (int i = r; i < rows; ++i) M[i][c] = T(0);
      continue;
    }
    std::swap(M[r], M[best]);
    T inv = T(1) / M[r][c];
    for (int j = c; j < cols; ++j) M[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == T(0)) continue;
      T f = M[i][c];
      for (int j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
      M[i][c] = T(0);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
int rank(Mat<T> M, double tol = 1e-9) {
  return static_cast<int>(rref(M, tol).size());
}

// Basis of {x : M x = 0}; each basis vector has a 1 in one free column.
template <class T>
std::vector<std::vector<T>> nullspace(Mat<T> M, int cols, double tol = 1e-9) {
  std::vector<std::vector<T>> basis;
  if (M.empty()) {
    for (int c = 0; c < cols; ++c) {
      std::vector<T> v(cols, T(0));
      v[c] = T(1);
      basis.push_back(v);
    }
    return basis;
  }
  auto pivots = rref(M, tol);
  std::vector<int> pivot_row(cols, -1);
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) pivot_row[pivots[i]] = i;
  for (int f = 0; f < cols; ++f) {
    if (pivot_row[f] >= 0) continue;
    std::vector<T> v(cols, T(0));
    v[f] = T(1);
    for (int c = 0; c < cols; ++c)
      if (pivot_row[c] >= 0) v[c] = -M[pivot_row[c]][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Unique solution of a square system, or nullopt when singular.
template <class T>
std::optional<std::vector<T>> solve(const Mat<T>& A, const std::vector<T>& b, double tol = 1e-9) {
  const int n = static_cast<int>(A.size());
  Mat<T> M(n, std::vector<T>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M[i][j] = A[i][j];
    M[i][n] = b[i];
  }
  // pivot tolerance must only look at the coefficient block
  Mat<T> coeff = A;
  if (rank(coeff, tol) < n) return std::nullopt;
  auto piv = rref(M, tol);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  std::vector<T> x(n);
  for (int i = 0; i < n; ++i) x[i] = M[i][n];
  return x;
}

}  // namespace lkq::linalg
