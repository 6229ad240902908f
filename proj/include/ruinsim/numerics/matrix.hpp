#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ruinsim {

/// Dense row-major square matrix for the small generators (order <= ~20)
/// that phase-type arithmetic needs.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t order, double fill = 0.0);
  SquareMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SquareMatrix identity(std::size_t order);

  std::size_t order() const noexcept { return order_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * order_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * order_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * order_, order_};
  }

  bool all_finite() const noexcept;
  double norm_inf() const noexcept;

  SquareMatrix& operator+=(const SquareMatrix& rhs);
  SquareMatrix& operator-=(const SquareMatrix& rhs);
  SquareMatrix& operator*=(double s);

  friend SquareMatrix operator+(SquareMatrix lhs, const SquareMatrix& rhs) { return lhs += rhs; }
  friend SquareMatrix operator-(SquareMatrix lhs, const SquareMatrix& rhs) { return lhs -= rhs; }
  friend SquareMatrix operator*(SquareMatrix lhs, double s) { return lhs *= s; }
  friend SquareMatrix operator*(double s, SquareMatrix rhs) { return rhs *= s; }
  friend SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs);

 private:
  std::size_t order_ = 0;
  std::vector<double> data_;
};

using Vector = std::vector<double>;

/// x * A for a row vector x.
Vector row_times(std::span<const double> x, const SquareMatrix& a);
/// A * x for a column vector x.
Vector times_column(const SquareMatrix& a, std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double sum(std::span<const double> x);

/// Solves A x = b by LU with partial pivoting. Throws DomainError when A is
/// numerically singular.
Vector solve(const SquareMatrix& a, std::span<const double> b);
/// Solves x A = b (row-vector system).
Vector solve_left(const SquareMatrix& a, std::span<const double> b);
/// Solves A X = B for a matrix right-hand side.
SquareMatrix solve(const SquareMatrix& a, const SquareMatrix& b);

/// exp(A s) by scaling and squaring with a diagonal Pade(6,6) approximant.
SquareMatrix mat_exp(const SquareMatrix& a, double s = 1.0);

}  // namespace ruinsim
