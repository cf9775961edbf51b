#pragma once

// Dense complex linear algebra for small square matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dwigner {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Library-wide equality tolerance for Hermiticity, unitarity and identity checks.
inline constexpr double kTol = 1e-10;

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(const std::string& where, std::size_t a, std::size_t b)
      : std::invalid_argument(where + ": dimension mismatch (" + std::to_string(a) + " vs " +
                              std::to_string(b) + ")") {}
};

/// exp(i*theta)
inline Complex cis(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Square, row-major, fixed dimension.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
  }

  ComplexMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), data_(std::move(entries)) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
    if (data_.size() != dim * dim) throw DimensionMismatch("ComplexMatrix", data_.size(), dim * dim);
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    if (dim_ == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      if (row.size() != dim_) throw DimensionMismatch("ComplexMatrix: row length", row.size(), dim_);
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same(o, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same(o, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  /// this += s * o, without a temporary.
  void add_scaled(Complex s, const ComplexMatrix& o) {
    check_same(o, "add_scaled");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void check_same(const ComplexMatrix& o, const char* where) const {
    if (o.dim_ != dim_) throw DimensionMismatch(where, dim_, o.dim_);
  }

  std::size_t dim_;
  std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matmul", a.dim(), b.dim());
  const std::size_t d = a.dim();
  ComplexMatrix c(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  const std::size_t d = a.dim();
  ComplexMatrix r(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

inline Complex trace(const ComplexMatrix& a) {
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

/// Tr{a b} in O(d^2), without forming the product.
inline Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("trace_of_product", a.dim(), b.dim());
  Complex t{};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t += a(i, j) * b(j, i);
  return t;
}

/// |u><v|
inline ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw DimensionMismatch("outer", u.size(), v.size());
  ComplexMatrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

/// <u|v>, antilinear in the first argument.
inline Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw DimensionMismatch("inner", u.size(), v.size());
  Complex s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline ComplexVector apply_to(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.dim() != v.size()) throw DimensionMismatch("apply", a.dim(), v.size());
  ComplexVector r(v.size());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

/// <u|a|v>
inline Complex matrix_element(std::span<const Complex> u, const ComplexMatrix& a, std::span<const Complex> v) {
  return inner(u, apply_to(a, v));
}

inline double frob_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

inline double frob_dist(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("frob_dist", a.dim(), b.dim());
  double s = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) s += std::norm(ea[i] - eb[i]);
  return std::sqrt(s);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff", a.dim(), b.dim());
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = kTol) { return frob_dist(a, adjoint(a)) <= tol; }

inline bool is_unitary(const ComplexMatrix& a, double tol = kTol) {
  return frob_dist(matmul(a, adjoint(a)), ComplexMatrix::identity(a.dim())) <= tol;
}

/// a^k for k >= 0 by repeated squaring; negative powers are the caller's job (use adjoint for unitaries).
inline ComplexMatrix matrix_power(ComplexMatrix a, long long k) {
  if (k < 0) throw std::invalid_argument("matrix_power: negative exponent");
  ComplexMatrix result = ComplexMatrix::identity(a.dim());
  while (k > 0) {
    if (k & 1) result = matmul(result, a);
    k >>= 1;
    if (k > 0) a = matmul(a, a);
  }
  return result;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b) - matmul(b, a); }

/// Positive semidefiniteness of a Hermitian matrix via LDL^H with diagonal pivoting.
/// Returns the most negative pivot encountered (0 when none is negative); the matrix is
/// accepted as PSD when that value is >= -slack.
inline double min_pivot(const ComplexMatrix& a, double slack = 1e-8) {
  const std::size_t d = a.dim();
  ComplexMatrix s = a;
  std::vector<std::size_t> rest(d);
  for (std::size_t i = 0; i < d; ++i) rest[i] = i;
  double worst = 0.0;
  while (!rest.empty()) {
    auto piv_it = std::max_element(rest.begin(), rest.end(), [&](std::size_t x, std::size_t y) {
      return s(x, x).real() < s(y, y).real();
    });
    const std::size_t p = *piv_it;
    const double pivot = s(p, p).real();
    if (pivot <= slack) {
      // Remaining block must be numerically zero, otherwise it is indefinite.
      for (std::size_t i : rest) {
        worst = std::min(worst, s(i, i).real());
        for (std::size_t j : rest)
          if (i != j && std::abs(s(i, j)) > slack) worst = std::min(worst, -std::abs(s(i, j)));
      }
      return worst;
    }
    rest.erase(piv_it);
    for (std::size_t i : rest)
      for (std::size_t j : rest) s(i, j) -= s(i, p) * s(p, j) / pivot;
  }
  return worst;
}

}  // namespace dwigner
