#pragma once

// The finite phase-space grid: number and phase bases, the clock/shift unitaries,
// displacement operators D(k,l) and the grid Fourier transform.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dwigner/numerics.hpp"

namespace dwigner {

/// Non-negative remainder.
inline long long floor_mod(long long a, long long d) {
  long long r = a % d;
  return r < 0 ? r + d : r;
}

inline long long floor_div(long long a, long long d) { return (a - floor_mod(a, d)) / d; }

/// Grid of dimension s+1 with phases phi_m = phi0 + 2*pi*m/(s+1).
class PhaseGrid {
 public:
  explicit PhaseGrid(std::size_t dim, double phi0 = 0.0) : dim_(dim), phi0_(phi0) {
    if (dim == 0) throw std::invalid_argument("PhaseGrid: dimension must be positive");
  }

  std::size_t dim() const { return dim_; }
  double phi0() const { return phi0_; }

  /// phi_r for any integer r, not reduced.
  double phi(long long r) const { return phi0_ + 2.0 * kPi * static_cast<double>(r) / static_cast<double>(dim_); }

  /// Angle at a half-step index: twice_r = 2r.
  double phi_half(long long twice_r) const {
    return phi0_ + kPi * static_cast<double>(twice_r) / static_cast<double>(dim_);
  }

  friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;

 private:
  std::size_t dim_;
  double phi0_;
};

/// (s+1) x (s+1) table over a grid. The tag keeps index conventions apart:
/// grid functions are indexed by (m, n), Fourier tables by (k, l).
template <class T, class Tag>
class GridTable {
 public:
  explicit GridTable(PhaseGrid grid) : grid_(grid), values_(grid.dim() * grid.dim()) {}

  GridTable(PhaseGrid grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.dim() * grid_.dim())
      throw DimensionMismatch("GridTable", values_.size(), grid_.dim() * grid_.dim());
  }

  const PhaseGrid& grid() const { return grid_; }
  std::size_t dim() const { return grid_.dim(); }

  T& operator()(std::size_t a, std::size_t b) { return values_[a * grid_.dim() + b]; }
  const T& operator()(std::size_t a, std::size_t b) const { return values_[a * grid_.dim() + b]; }

  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }

 private:
  PhaseGrid grid_;
  std::vector<T> values_;
};

struct PhasePointIndexTag;
struct FourierIndexTag;

/// f(phi_m, n)
using GridFunction = GridTable<Complex, PhasePointIndexTag>;
/// f~(k, l)
using FourierTable = GridTable<Complex, FourierIndexTag>;

/// Fills a grid function from a callable f(m, n).
template <class F>
GridFunction tabulate(const PhaseGrid& grid, F&& f) {
  GridFunction g(grid);
  for (std::size_t m = 0; m < grid.dim(); ++m)
    for (std::size_t n = 0; n < grid.dim(); ++n) g(m, n) = f(m, n);
  return g;
}

inline ComplexVector number_ket(const PhaseGrid& grid, long long n) {
  if (n < 0 || static_cast<std::size_t>(n) >= grid.dim())
    throw std::out_of_range("number_ket: index " + std::to_string(n) + " outside [0, s]");
  ComplexVector v(grid.dim());
  v[static_cast<std::size_t>(n)] = 1.0;
  return v;
}

/// |phi_r> for any integer r; the ket is periodic in r with period s+1.
inline ComplexVector phase_ket(const PhaseGrid& grid, long long r) {
  const std::size_t d = grid.dim();
  const double phi = grid.phi(floor_mod(r, static_cast<long long>(d)));
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  ComplexVector v(d);
  for (std::size_t n = 0; n < d; ++n) v[n] = norm * cis(static_cast<double>(n) * phi);
  return v;
}

/// Spectral operator sum_m f(phi_m) |phi_m><phi_m|.
inline ComplexMatrix phase_function_op(const PhaseGrid& grid, std::span<const Complex> f) {
  if (f.size() != grid.dim()) throw DimensionMismatch("phase_function_op", f.size(), grid.dim());
  ComplexMatrix op(grid.dim());
  for (std::size_t m = 0; m < grid.dim(); ++m) {
    const auto ket = phase_ket(grid, static_cast<long long>(m));
    op.add_scaled(f[m], outer(ket, ket));
  }
  return op;
}

/// diag(f(0), ..., f(s)).
inline ComplexMatrix number_function_op(const PhaseGrid& grid, std::span<const Complex> f) {
  if (f.size() != grid.dim()) throw DimensionMismatch("number_function_op", f.size(), grid.dim());
  return ComplexMatrix::diagonal(f);
}

inline ComplexMatrix number_op(const PhaseGrid& grid) {
  ComplexVector diag(grid.dim());
  for (std::size_t n = 0; n < grid.dim(); ++n) diag[n] = static_cast<double>(n);
  return ComplexMatrix::diagonal(diag);
}

inline ComplexMatrix phase_op(const PhaseGrid& grid) {
  ComplexVector f(grid.dim());
  for (std::size_t m = 0; m < grid.dim(); ++m) f[m] = grid.phi(static_cast<long long>(m));
  return phase_function_op(grid, f);
}

/// V = exp(i 2 pi n^ / (s+1)).
inline ComplexMatrix v_op(const PhaseGrid& grid) {
  const std::size_t d = grid.dim();
  ComplexVector diag(d);
  for (std::size_t n = 0; n < d; ++n) diag[n] = cis(2.0 * kPi * static_cast<double>(n) / static_cast<double>(d));
  return ComplexMatrix::diagonal(diag);
}

/// U = sum_{n<s} |n><n+1| + exp{i(s+1)phi0} |s><0|.
inline ComplexMatrix u_op(const PhaseGrid& grid) {
  const std::size_t d = grid.dim();
  ComplexMatrix u(d);
  for (std::size_t n = 0; n + 1 < d; ++n) u(n, n + 1) = 1.0;
  u(d - 1, 0) += cis(static_cast<double>(d) * grid.phi0());
  return u;
}

/// U = exp(i phi^), built spectrally from the phase basis.
inline ComplexMatrix u_op_spectral(const PhaseGrid& grid) {
  ComplexVector f(grid.dim());
  for (std::size_t m = 0; m < grid.dim(); ++m) f[m] = cis(grid.phi(static_cast<long long>(m)));
  return phase_function_op(grid, f);
}

/// Matrix with exactly one nonzero per column: column c maps to row(c) with value(c).
/// Every D(k,l) has this shape, which keeps quantizer sums at O(d) per displacement.
struct MonomialMatrix {
  std::vector<std::size_t> row;
  ComplexVector value;

  std::size_t dim() const { return row.size(); }

  ComplexMatrix dense() const {
    ComplexMatrix m(dim());
    for (std::size_t c = 0; c < dim(); ++c) m(row[c], c) = value[c];
    return m;
  }

  /// Tr{a M}
  Complex trace_with(const ComplexMatrix& a) const {
    if (a.dim() != dim()) throw DimensionMismatch("MonomialMatrix::trace_with", a.dim(), dim());
    Complex t{};
    for (std::size_t c = 0; c < dim(); ++c) t += a(c, row[c]) * value[c];
    return t;
  }

  /// acc += s * M
  void accumulate_into(ComplexMatrix& acc, Complex s) const {
    for (std::size_t c = 0; c < dim(); ++c) acc(row[c], c) += s * value[c];
  }
};

/// D(k,l) = exp(-i pi k l/(s+1)) U^k V^l in monomial form. U^k sends |c> to |c-k mod d>,
/// collecting exp{i(s+1)phi0} each time the index wraps below zero.
inline MonomialMatrix displacement_monomial(const PhaseGrid& grid, long long k, long long l) {
  const auto d = static_cast<long long>(grid.dim());
  const double dd = static_cast<double>(d);
  MonomialMatrix out{std::vector<std::size_t>(grid.dim()), ComplexVector(grid.dim())};
  for (long long c = 0; c < d; ++c) {
    const long long shifted = c - k;
    const long long wraps = -floor_div(shifted, d);
    // Reduce k*l and l*c mod 2d first so large indices keep full precision.
    const double kl = static_cast<double>(floor_mod(floor_mod(k, 2 * d) * floor_mod(l, 2 * d), 2 * d));
    const double lc = static_cast<double>(floor_mod(floor_mod(l, d) * c, d));
    const double angle = -kPi * kl / dd + 2.0 * kPi * lc / dd + dd * grid.phi0() * static_cast<double>(wraps);
    out.row[static_cast<std::size_t>(c)] = static_cast<std::size_t>(floor_mod(shifted, d));
    out.value[static_cast<std::size_t>(c)] = cis(angle);
  }
  return out;
}

/// D(k,l) = exp(-i pi k l/(s+1)) U^k V^l, evaluated literally with matrix powers.
/// Negative powers use U^{-1} = U^+ and V^{-1} = V^+.
inline ComplexMatrix displacement(const PhaseGrid& grid, long long k, long long l) {
  const ComplexMatrix u = u_op(grid);
  const ComplexMatrix v = v_op(grid);
  const ComplexMatrix uk = k >= 0 ? matrix_power(u, k) : matrix_power(adjoint(u), -k);
  const ComplexMatrix vl = l >= 0 ? matrix_power(v, l) : matrix_power(adjoint(v), -l);
  const double kl = static_cast<double>(k) * static_cast<double>(l);
  return cis(-kPi * kl / static_cast<double>(grid.dim())) * matmul(uk, vl);
}

/// D(k,l) = exp(i pi k l/(s+1)) sum_m exp(i k phi_m) |phi_{m+l}><phi_m|.
inline ComplexMatrix displacement_phase_form(const PhaseGrid& grid, long long k, long long l) {
  const std::size_t d = grid.dim();
  ComplexMatrix out(d);
  for (std::size_t m = 0; m < d; ++m) {
    const auto mm = static_cast<long long>(m);
    out.add_scaled(cis(static_cast<double>(k) * grid.phi(mm)), outer(phase_ket(grid, mm + l), phase_ket(grid, mm)));
  }
  const double kl = static_cast<double>(k) * static_cast<double>(l);
  return cis(kPi * kl / static_cast<double>(d)) * out;
}

/// exp{-i(k phi_m + 2 pi l n/(s+1))}, the plane wave used by the transforms and the quantizer.
inline Complex grid_wave(const PhaseGrid& grid, long long k, long long l, long long m, long long n) {
  const auto d = static_cast<long long>(grid.dim());
  const double ln = static_cast<double>(floor_mod(l * n, d));
  return cis(-(static_cast<double>(k) * grid.phi(m) + 2.0 * kPi * ln / static_cast<double>(d)));
}

/// f~(k,l) = 1/(s+1) sum_{m,n} f(phi_m,n) exp{-i(k phi_m + 2 pi l n/(s+1))}
inline FourierTable fourier_coeffs(const GridFunction& f) {
  const PhaseGrid& grid = f.grid();
  const std::size_t d = grid.dim();
  FourierTable t(grid);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      Complex s{};
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
          s += f(m, n) * grid_wave(grid, static_cast<long long>(k), static_cast<long long>(l),
                                   static_cast<long long>(m), static_cast<long long>(n));
      t(k, l) = s / static_cast<double>(d);
    }
  return t;
}

/// f(phi_m,n) = 1/(s+1) sum_{k,l} f~(k,l) exp{i(k phi_m + 2 pi l n/(s+1))}
inline GridFunction inverse_fourier(const FourierTable& t) {
  const PhaseGrid& grid = t.grid();
  const std::size_t d = grid.dim();
  GridFunction f(grid);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n) {
      Complex s{};
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          s += t(k, l) * std::conj(grid_wave(grid, static_cast<long long>(k), static_cast<long long>(l),
                                             static_cast<long long>(m), static_cast<long long>(n)));
      f(m, n) = s / static_cast<double>(d);
    }
  return f;
}

}  // namespace dwigner
