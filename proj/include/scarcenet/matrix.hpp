#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scarcenet {

// Dense row-major matrix of doubles. Deliberately small kernel: the LM and
// Bayesian-regularization updates only need products, damped SPD solves and
// the trace of an inverse.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled
  // Validates size and that every entry is finite.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return values_.empty(); }

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> values_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
// a * a^T, the Gram matrix over rows.
Matrix gram(const Matrix& a);

std::vector<double> matvec(const Matrix& a, std::span<const double> x);
// a^T * x without forming the transpose.
std::vector<double> tmatvec(const Matrix& a, std::span<const double> x);

// Solves h * x = rhs for symmetric positive definite h by unpivoted Cholesky;
// rhs may have any number of columns. Throws FactorizationError on a
// non-positive pivot (the LM loop raises mu and retries) and ShapeError when
// h is not square/symmetric or sizes disagree.
Matrix solve_spd(const Matrix& h, const Matrix& rhs);
std::vector<double> solve_spd(const Matrix& h, std::span<const double> rhs);

// tr(h^-1) from one Cholesky factorization and one triangular solve per
// column: tr(h^-1) = sum_j ||L^-1 e_j||^2.
double trace_inverse(const Matrix& h);

}  // namespace scarcenet
