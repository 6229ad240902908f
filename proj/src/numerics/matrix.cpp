#include "ruinsim/numerics/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ruinsim/errors.hpp"

namespace ruinsim {

SquareMatrix::SquareMatrix(std::size_t order, double fill)
    : order_(order), data_(order * order, fill) {}

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : order_(rows.size()), data_() {
  data_.reserve(order_ * order_);
  for (const auto& r : rows) {
    if (r.size() != order_) throw DomainError("SquareMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

SquareMatrix SquareMatrix::identity(std::size_t order) {
  SquareMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = 1.0;
  return m;
}

bool SquareMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double SquareMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < order_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < order_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

SquareMatrix& SquareMatrix::operator+=(const SquareMatrix& rhs) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator-=(const SquareMatrix& rhs) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

SquareMatrix& SquareMatrix::operator*=(double s) {
  for (auto& v : data_) v *= s;
  return *this;
}

SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs) {
  const std::size_t n = lhs.order();
  SquareMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

Vector row_times(std::span<const double> x, const SquareMatrix& a) {
  const std::size_t n = a.order();
  Vector out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] += x[i] * a(i, j);
  }
  return out;
}

Vector times_column(const SquareMatrix& a, std::span<const double> x) {
  const std::size_t n = a.order();
  Vector out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) out[i] = dot(a.row(i), x);
  return out;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double sum(std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0); }

namespace {

struct LuFactor {
  SquareMatrix lu;
  std::vector<std::size_t> perm;
};

LuFactor lu_factor(const SquareMatrix& a) {
  const std::size_t n = a.order();
  LuFactor f{a, std::vector<std::size_t>(n)};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  const double scale = std::max(a.norm_inf(), std::numeric_limits<double>::min());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(piv, k))) piv = i;
    }
    if (std::abs(f.lu(piv, k)) <= 1e-14 * scale) throw DomainError("matrix is numerically singular");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

Vector lu_solve(const LuFactor& f, std::span<const double> b) {
  const std::size_t n = f.lu.order();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

SquareMatrix transpose(const SquareMatrix& a) {
  SquareMatrix t(a.order());
  for (std::size_t i = 0; i < a.order(); ++i)
    for (std::size_t j = 0; j < a.order(); ++j) t(j, i) = a(i, j);
  return t;
}

}  // namespace

Vector solve(const SquareMatrix& a, std::span<const double> b) { return lu_solve(lu_factor(a), b); }

Vector solve_left(const SquareMatrix& a, std::span<const double> b) {
  return lu_solve(lu_factor(transpose(a)), b);
}

SquareMatrix solve(const SquareMatrix& a, const SquareMatrix& b) {
  const std::size_t n = a.order();
  const LuFactor f = lu_factor(a);
  SquareMatrix x(n);
  Vector col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    const Vector sol = lu_solve(f, col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

SquareMatrix mat_exp(const SquareMatrix& a, double s) {
  if (!a.all_finite() || !std::isfinite(s)) throw DomainError("mat_exp: non-finite input");
  if (s < 0.0) throw DomainError("mat_exp: negative time argument");
  const std::size_t n = a.order();
  SquareMatrix x = a * s;
  if (n == 1) {
    SquareMatrix out(1);
    out(0, 0) = std::exp(x(0, 0));
    return out;
  }

  // Scale so that ||x|| <= 1/2; Pade(6,6) is then accurate to ~1e-16.
  const double norm = x.norm_inf();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    x *= std::ldexp(1.0, -squarings);
  }

  constexpr int kOrder = 6;
  SquareMatrix numer = SquareMatrix::identity(n);
  SquareMatrix denom = SquareMatrix::identity(n);
  SquareMatrix power = SquareMatrix::identity(n);
  double c = 1.0;
  for (int k = 1; k <= kOrder; ++k) {
    c *= static_cast<double>(kOrder - k + 1) / static_cast<double>(k * (2 * kOrder - k + 1));
    power = power * x;
    numer += c * power;
    denom += ((k % 2 == 0) ? c : -c) * power;
  }
  SquareMatrix result = solve(denom, numer);
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

}  // namespace ruinsim
