#pragma once

// Kernel tables K(k,l) weighting the displacement operators of a quantizer.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dwigner/numerics.hpp"

namespace dwigner {

/// Entries with |K| at or below this are structural zeros.
inline constexpr double kNonvanishingThreshold = 1e-12;
/// Below this min|K| the inverse map divides by near-zero kernel entries.
inline constexpr double kConditioningThreshold = 1e-6;

enum class KernelFamily { Symmetric, Wootters, AlmostSymmetric, Custom };

inline std::string family_label(KernelFamily f) {
  switch (f) {
    case KernelFamily::Symmetric: return "symmetric";
    case KernelFamily::Wootters: return "wootters";
    case KernelFamily::AlmostSymmetric: return "almost-symmetric";
    case KernelFamily::Custom: return "custom";
  }
  return "custom";
}

class InvalidKernel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Kernel {
 public:
  Kernel(std::size_t dim, std::vector<Complex> values, KernelFamily family = KernelFamily::Custom,
         std::optional<double> epsilon = std::nullopt)
      : dim_(dim), values_(std::move(values)), family_(family), epsilon_(epsilon) {
    if (dim == 0) throw std::invalid_argument("Kernel: dimension must be positive");
    if (values_.size() != dim * dim) throw DimensionMismatch("Kernel", values_.size(), dim * dim);
  }

  std::size_t dim() const { return dim_; }
  KernelFamily family() const { return family_; }
  std::string label() const { return family_label(family_); }
  /// Shift parameter of the almost-symmetric family.
  std::optional<double> epsilon() const { return epsilon_; }

  const Complex& operator()(std::size_t k, std::size_t l) const { return values_[k * dim_ + l]; }
  std::span<const Complex> values() const { return values_; }

  double min_abs() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : values_) m = std::min(m, std::abs(v));
    return m;
  }

 private:
  std::size_t dim_;
  std::vector<Complex> values_;
  KernelFamily family_;
  std::optional<double> epsilon_;
};

/// One flag per kernel condition. `hermitian_*` are the four conditions equivalent to
/// Hermitian phase-point operators; the row/column flags force f(phi) -> f(phi^) and
/// f(n) -> f(n^).
struct ValidityReport {
  bool nonvanishing = false;
  bool hermitian_bulk = false;     // K*(k,l) = (-1)^{s+1+k+l} K(s+1-k, s+1-l), 1 <= k,l <= s
  bool hermitian_row0 = false;     // K*(0,l) = K(0, s+1-l)
  bool hermitian_col0 = false;     // K*(k,0) = K(s+1-k, 0)
  bool hermitian_origin = false;   // K(0,0) real
  bool phase_column_unit = false;  // K(k,0) = 1
  bool number_row_unit = false;    // K(0,l) = 1
  double min_abs = 0.0;

  bool hermitian() const { return hermitian_bulk && hermitian_row0 && hermitian_col0 && hermitian_origin; }
  bool valid() const { return nonvanishing && hermitian() && phase_column_unit && number_row_unit; }
};

inline ValidityReport validate(const Kernel& kernel, double tol = kTol) {
  const std::size_t d = kernel.dim();
  const std::size_t s = d - 1;
  ValidityReport r;
  r.min_abs = kernel.min_abs();
  r.nonvanishing = r.min_abs > kNonvanishingThreshold;

  r.hermitian_bulk = true;
  for (std::size_t k = 1; k <= s; ++k)
    for (std::size_t l = 1; l <= s; ++l) {
      const double sign = ((s + 1 + k + l) % 2 == 0) ? 1.0 : -1.0;
      if (std::abs(std::conj(kernel(k, l)) - sign * kernel(d - k, d - l)) > tol) r.hermitian_bulk = false;
    }
  r.hermitian_row0 = true;
  r.hermitian_col0 = true;
  for (std::size_t i = 1; i <= s; ++i) {
    if (std::abs(std::conj(kernel(0, i)) - kernel(0, d - i)) > tol) r.hermitian_row0 = false;
    if (std::abs(std::conj(kernel(i, 0)) - kernel(d - i, 0)) > tol) r.hermitian_col0 = false;
  }
  r.hermitian_origin = std::abs(kernel(0, 0).imag()) <= tol;

  r.phase_column_unit = true;
  r.number_row_unit = true;
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(kernel(i, 0) - 1.0) > tol) r.phase_column_unit = false;
    if (std::abs(kernel(0, i) - 1.0) > tol) r.number_row_unit = false;
  }
  return r;
}

/// K(k,l) = cos(pi k l / (2N+1)) on dimension 2N+1.
inline Kernel symmetric_kernel(std::size_t big_n) {
  const std::size_t d = 2 * big_n + 1;
  std::vector<Complex> v(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      v[k * d + l] = std::cos(kPi * static_cast<double>(k * l) / static_cast<double>(d));
  return Kernel(d, std::move(v), KernelFamily::Symmetric);
}

/// K(k,l) = (-1)^{kl} on dimension 2N+1.
inline Kernel wootters_kernel(std::size_t big_n) {
  const std::size_t d = 2 * big_n + 1;
  std::vector<Complex> v(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) v[k * d + l] = ((k * l) % 2 == 0) ? 1.0 : -1.0;
  return Kernel(d, std::move(v), KernelFamily::Wootters);
}

/// Default shift for the almost-symmetric kernel on dimension 2N.
inline double default_epsilon(std::size_t big_n) { return 1.0 / (2.0 * static_cast<double>(big_n)); }

/// cos(pi k l/(2N) + eps)/cos(eps) without the nonvanishing-entry check. Entries may be zero, so
/// the table defines a forward map rho -> W but not necessarily an invertible quantizer.
inline Kernel almost_symmetric_table(std::size_t big_n, double epsilon) {
  if (big_n == 0) throw std::invalid_argument("almost_symmetric_kernel: N must be positive");
  const std::size_t d = 2 * big_n;
  const double c = std::cos(epsilon);
  if (std::abs(c) <= kNonvanishingThreshold)
    throw InvalidKernel("almost_symmetric_kernel: cos(epsilon) vanishes; pick another epsilon");
  std::vector<Complex> v(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      v[k * d + l] = std::cos(kPi * static_cast<double>(k * l) / static_cast<double>(d) + epsilon) / c;
  return Kernel(d, std::move(v), KernelFamily::AlmostSymmetric, epsilon);
}

/// K(k,l) = cos(pi k l/(2N) + eps) / cos(eps) on dimension 2N.
/// Throws InvalidKernel when eps makes any entry (or cos eps) vanish.
inline Kernel almost_symmetric_kernel(std::size_t big_n, double epsilon) {
  Kernel k = almost_symmetric_table(big_n, epsilon);
  const std::size_t d = k.dim();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      if (std::abs(k(a, b)) * std::abs(std::cos(epsilon)) <= kNonvanishingThreshold)
        throw InvalidKernel("almost_symmetric_kernel: entry (" + std::to_string(a) + "," + std::to_string(b) +
                            ") vanishes for this epsilon; pick another epsilon");
  return k;
}

inline bool is_unimodular(const Kernel& kernel, double tol = kTol) {
  for (const auto& v : kernel.values())
    if (std::abs(std::abs(v) - 1.0) > tol) return false;
  return true;
}

/// Wraps a user table (rows indexed by k). No validation: call validate().
inline Kernel kernel_from_table(const std::vector<std::vector<Complex>>& rows) {
  const std::size_t d = rows.size();
  if (d == 0) throw std::invalid_argument("kernel_from_table: empty table");
  std::vector<Complex> v;
  v.reserve(d * d);
  for (const auto& row : rows) {
    if (row.size() != d) throw DimensionMismatch("kernel_from_table: non-square table", row.size(), d);
    v.insert(v.end(), row.begin(), row.end());
  }
  return Kernel(d, std::move(v), KernelFamily::Custom);
}

}  // namespace dwigner
