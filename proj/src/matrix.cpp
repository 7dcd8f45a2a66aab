#include "scarcenet/matrix.hpp"

#include <cmath>
#include <string>

#include "scarcenet/errors.hpp"

namespace scarcenet {

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void check_symmetric(const Matrix& h) {
  if (h.rows() != h.cols()) throw ShapeError("solve_spd: matrix is not square (" + shape(h) + ")");
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = h(i, j), b = h(j, i);
      const double scale = std::max({std::abs(a), std::abs(b), 1.0});
      if (std::abs(a - b) > 1e-9 * scale) {
        throw ShapeError("solve_spd: matrix is not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
    }
  }
}

// Lower Cholesky factor, row-major, upper triangle left as zeros.
std::vector<double> cholesky(const Matrix& h) {
  check_symmetric(h);
  const std::size_t n = h.rows();
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = h(i, j);
      for (std::size_t k = 0; k < j; ++k) sum -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (!(sum > 0.0) || !std::isfinite(sum)) {
          throw FactorizationError("cholesky: non-positive pivot at row " + std::to_string(i));
        }
        l[i * n + i] = std::sqrt(sum);
      } else {
        l[i * n + j] = sum / l[j * n + j];
      }
    }
  }
  return l;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
  if (values_.size() != rows * cols) {
    throw ShapeError("matrix value count " + std::to_string(values_.size()) + " does not match " + shape(*this));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw NumericError("matrix entries must be finite");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: " + shape(a) + " by " + shape(b));
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const auto brow = b.row(k);
      auto crow = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

Matrix gram(const Matrix& a) {
  Matrix g(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto ri = a.row(i);
    for (std::size_t j = 0; j <= i; ++j) {
      const auto rj = a.row(j);
      double sum = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) sum += ri[k] * rj[k];
      g(i, j) = sum;
      g(j, i) = sum;
    }
  }
  return g;
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw ShapeError("matvec: " + shape(a) + " by vector of " + std::to_string(x.size()));
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto row = a.row(i);
    double sum = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) sum += row[j] * x[j];
    y[i] = sum;
  }
  return y;
}

std::vector<double> tmatvec(const Matrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) throw ShapeError("tmatvec: " + shape(a) + " by vector of " + std::to_string(x.size()));
  std::vector<double> y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const auto row = a.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) y[j] += row[j] * xi;
  }
  return y;
}

Matrix solve_spd(const Matrix& h, const Matrix& rhs) {
  if (h.rows() != rhs.rows()) {
    throw ShapeError("solve_spd: rhs has " + std::to_string(rhs.rows()) + " rows, expected " +
                     std::to_string(h.rows()));
  }
  const std::size_t n = h.rows();
  const std::vector<double> l = cholesky(h);
  Matrix x = rhs;
  // Forward substitution L y = rhs, then back substitution L^T x = y,
  // column by column over the rhs.
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double sum = x(i, c);
      for (std::size_t k = 0; k < i; ++k) sum -= l[i * n + k] * x(k, c);
      x(i, c) = sum / l[i * n + i];
    }
    for (std::size_t ii = n; ii > 0; --ii) {
      const std::size_t i = ii - 1;
      double sum = x(i, c);
      for (std::size_t k = i + 1; k < n; ++k) sum -= l[k * n + i] * x(k, c);
      x(i, c) = sum / l[i * n + i];
    }
  }
  return x;
}

std::vector<double> solve_spd(const Matrix& h, std::span<const double> rhs) {
  Matrix column(rhs.size(), 1, std::vector<double>(rhs.begin(), rhs.end()));
  Matrix x = solve_spd(h, column);
  return std::vector<double>(x.values().begin(), x.values().end());
}

double trace_inverse(const Matrix& h) {
  const std::size_t n = h.rows();
  const std::vector<double> l = cholesky(h);
  // tr(h^-1) = sum_j ||L^-1 e_j||^2; one forward solve per unit column.
  double trace = 0.0;
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) y[i] = 0.0;
    for (std::size_t i = j; i < n; ++i) {
      double sum = (i == j) ? 1.0 : 0.0;
      for (std::size_t k = j; k < i; ++k) sum -= l[i * n + k] * y[k];
      y[i] = sum / l[i * n + i];
    }
    for (std::size_t i = j; i < n; ++i) trace += y[i] * y[i];
  }
  return trace;
}

}  // namespace scarcenet
