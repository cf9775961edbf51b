#pragma once

// Stratonovich-Weyl quantizer: phase-point operators Omega[K](phi_m, n), the quantization
// map f -> f^, its inverse f^ -> f, and checks of the quantizer identities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwigner/kernels.hpp"
#include "dwigner/numerics.hpp"
#include "dwigner/phase_space.hpp"

namespace dwigner {

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class WrongKernelFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

/// All d^2 displacement operators D(k,l), 0 <= k,l <= s, row-major in (k,l).
inline std::vector<MonomialMatrix> displacement_table(const PhaseGrid& grid) {
  const std::size_t d = grid.dim();
  std::vector<MonomialMatrix> table;
  table.reserve(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l)
      table.push_back(displacement_monomial(grid, static_cast<long long>(k), static_cast<long long>(l)));
  return table;
}

/// exp(-i k phi_m) indexed [k*d + m] and exp(-i 2 pi l n/d) indexed [l*d + n].
struct WaveFactors {
  std::vector<Complex> phase;
  std::vector<Complex> number;

  explicit WaveFactors(const PhaseGrid& grid) : phase(grid.dim() * grid.dim()), number(grid.dim() * grid.dim()) {
    const std::size_t d = grid.dim();
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) {
        phase[k * d + j] = cis(-static_cast<double>(k) * grid.phi(static_cast<long long>(j)));
        number[k * d + j] = cis(-2.0 * kPi * static_cast<double>((k * j) % d) / static_cast<double>(d));
      }
  }
};

inline void require_same_dim(const PhaseGrid& grid, const Kernel& kernel, const char* where) {
  if (grid.dim() != kernel.dim()) throw DimensionMismatch(where, grid.dim(), kernel.dim());
}

}  // namespace detail

/// A single phase-point operator, straight from the kernel sum. No validity requirement on K.
inline ComplexMatrix phase_point_operator(const PhaseGrid& grid, const Kernel& kernel, std::size_t m, std::size_t n) {
  detail::require_same_dim(grid, kernel, "phase_point_operator");
  const std::size_t d = grid.dim();
  ComplexMatrix omega(d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const auto disp = displacement_monomial(grid, static_cast<long long>(k), static_cast<long long>(l));
      disp.accumulate_into(omega, kernel(k, l) * grid_wave(grid, static_cast<long long>(k), static_cast<long long>(l),
                                                           static_cast<long long>(m), static_cast<long long>(n)));
    }
  omega *= 1.0 / static_cast<double>(d);
  return omega;
}

/// Cached table of the (s+1)^2 phase-point operators for one grid and one valid kernel.
class Quantizer {
 public:
  static Quantizer build(const PhaseGrid& grid, const Kernel& kernel) {
    detail::require_same_dim(grid, kernel, "Quantizer::build");
    const ValidityReport report = validate(kernel);
    if (!report.valid()) throw InvalidKernel("Quantizer::build: kernel '" + kernel.label() + "' fails validation");
    return Quantizer(grid, kernel);
  }

  const PhaseGrid& grid() const { return grid_; }
  const Kernel& kernel() const { return kernel_; }
  std::size_t dim() const { return grid_.dim(); }

  const ComplexMatrix& omega(std::size_t m, std::size_t n) const { return omega_[m * grid_.dim() + n]; }

  /// min|K| below the conditioning threshold: the inverse map divides by tiny numbers.
  bool ill_conditioned() const { return kernel_.min_abs() < kConditioningThreshold; }

 private:
  Quantizer(const PhaseGrid& grid, const Kernel& kernel) : grid_(grid), kernel_(kernel) {
    const std::size_t d = grid.dim();
    const auto table = detail::displacement_table(grid);
    const detail::WaveFactors waves(grid);
    omega_.reserve(d * d);
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t n = 0; n < d; ++n) {
        ComplexMatrix acc(d);
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l)
            table[k * d + l].accumulate_into(acc, kernel(k, l) * waves.phase[k * d + m] * waves.number[l * d + n]);
        acc *= 1.0 / static_cast<double>(d);
        omega_.push_back(std::move(acc));
      }
  }

  PhaseGrid grid_;
  Kernel kernel_;
  std::vector<ComplexMatrix> omega_;
};

/// f^ = 1/(s+1) sum_{m,n} f(phi_m,n) Omega(phi_m,n)
inline ComplexMatrix quantize(const Quantizer& q, const GridFunction& f) {
  if (!(f.grid() == q.grid())) throw GridMismatch("quantize: grid function lives on a different grid");
  const std::size_t d = q.dim();
  ComplexMatrix out(d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n)
      if (f(m, n) != Complex{}) out.add_scaled(f(m, n), q.omega(m, n));
  out *= 1.0 / static_cast<double>(d);
  return out;
}

/// Inverse of quantize via the kernel-division form:
/// f(phi_m,n) = 1/(s+1) sum_{k,l} K(k,l)^{-1} exp{i(k phi_m + 2 pi l n/(s+1))} Tr{f^ D^+(k,l)}.
inline GridFunction symbol(const Quantizer& q, const ComplexMatrix& op) {
  if (op.dim() != q.dim()) throw DimensionMismatch("symbol", op.dim(), q.dim());
  const PhaseGrid& grid = q.grid();
  const std::size_t d = q.dim();
  FourierTable weighted(grid);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const auto disp = displacement_monomial(grid, static_cast<long long>(k), static_cast<long long>(l));
      Complex tr{};  // Tr{op D^+}
      for (std::size_t c = 0; c < d; ++c) tr += op(disp.row[c], c) * std::conj(disp.value[c]);
      weighted(k, l) = tr / q.kernel()(k, l);
    }
  return inverse_fourier(weighted);
}

/// Inverse of quantize through the phase-point operators and |K|^2 weights.
inline GridFunction symbol_via_overlap(const Quantizer& q, const ComplexMatrix& op) {
  if (op.dim() != q.dim()) throw DimensionMismatch("symbol_via_overlap", op.dim(), q.dim());
  const PhaseGrid& grid = q.grid();
  const std::size_t d = q.dim();
  GridFunction overlaps(grid);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n) overlaps(m, n) = trace_of_product(op, q.omega(m, n));
  // The transform pair carries the 1/(s+1)^2 prefactor.
  FourierTable t = fourier_coeffs(overlaps);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) t(k, l) /= std::norm(q.kernel()(k, l));
  return inverse_fourier(t);
}

/// f(phi_m,n) = Tr{f^ Omega(phi_m,n)}; only valid for unimodular kernels.
inline GridFunction symbol_unimodular(const Quantizer& q, const ComplexMatrix& op) {
  if (!is_unimodular(q.kernel())) throw WrongKernelFamily("symbol_unimodular: kernel is not unimodular");
  if (op.dim() != q.dim()) throw DimensionMismatch("symbol_unimodular", op.dim(), q.dim());
  return tabulate(q.grid(), [&](std::size_t m, std::size_t n) { return trace_of_product(op, q.omega(m, n)); });
}

/// D(k,l) recovered from the phase-point operators, 0 <= k,l <= s.
inline ComplexMatrix displacement_from_quantizer(const Quantizer& q, std::size_t k, std::size_t l) {
  const std::size_t d = q.dim();
  ComplexMatrix out(d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n)
      out.add_scaled(std::conj(grid_wave(q.grid(), static_cast<long long>(k), static_cast<long long>(l),
                                         static_cast<long long>(m), static_cast<long long>(n))),
                     q.omega(m, n));
  out *= 1.0 / (static_cast<double>(d) * q.kernel()(k, l));
  return out;
}

/// Kernel-side value of Tr{Omega(phi_m,n) Omega(phi_m',n')}:
/// 1/(s+1) sum_{k,l} |K(k,l)|^2 exp{-i[k(phi_m - phi_m') + 2 pi l (n - n')/(s+1)]}.
inline Complex overlap_kernel_side(const Quantizer& q, std::size_t m, std::size_t n, std::size_t mp, std::size_t np) {
  const std::size_t d = q.dim();
  const double dd = static_cast<double>(d);
  Complex s{};
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const double dphi = static_cast<double>(k) * (static_cast<double>(m) - static_cast<double>(mp)) * 2.0 * kPi / dd;
      const double dn = 2.0 * kPi * static_cast<double>(l) * (static_cast<double>(n) - static_cast<double>(np)) / dd;
      s += std::norm(q.kernel()(k, l)) * cis(-(dphi + dn));
    }
  return s / dd;
}

/// Largest deviation of each quantizer identity; a check passes when its deviation is <= tol.
struct QuantizerReport {
  double hermiticity = 0.0;      // Omega = Omega^+
  double unit_trace = 0.0;       // Tr Omega = 1
  double phase_marginal = 0.0;   // 1/(s+1) sum_n Omega = |phi_m><phi_m|
  double number_marginal = 0.0;  // 1/(s+1) sum_m Omega = |n><n|
  double resolution = 0.0;       // 1/(s+1) sum_{m,n} Omega = 1
  double overlap = 0.0;          // Tr{Omega Omega'} against the kernel-side sum
  double delta_overlap = 0.0;    // Tr{Omega Omega'} against (s+1) delta delta
  double displacement = 0.0;     // D(k,l) recovered from Omega
  bool unimodular = false;
  double tol = kTol;

  bool holds(double deviation) const { return deviation <= tol; }
  bool delta_overlap_holds() const { return holds(delta_overlap); }
  /// All identities that must hold for every valid kernel, and the delta overlap exactly
  /// when the kernel is unimodular.
  bool passes() const {
    return holds(hermiticity) && holds(unit_trace) && holds(phase_marginal) && holds(number_marginal) &&
           holds(resolution) && holds(overlap) && holds(displacement) && (delta_overlap_holds() == unimodular);
  }
};

inline QuantizerReport verify(const Quantizer& q, double tol = kTol) {
  const PhaseGrid& grid = q.grid();
  const std::size_t d = q.dim();
  const double dd = static_cast<double>(d);
  QuantizerReport r;
  r.tol = tol;
  r.unimodular = is_unimodular(q.kernel(), tol);

  ComplexMatrix total(d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n) {
      const auto& om = q.omega(m, n);
      r.hermiticity = std::max(r.hermiticity, frob_dist(om, adjoint(om)));
      r.unit_trace = std::max(r.unit_trace, std::abs(trace(om) - 1.0));
      total += om;
    }
  total *= 1.0 / dd;
  r.resolution = frob_dist(total, ComplexMatrix::identity(d));

  for (std::size_t m = 0; m < d; ++m) {
    ComplexMatrix sum(d);
    for (std::size_t n = 0; n < d; ++n) sum += q.omega(m, n);
    const auto ket = phase_ket(grid, static_cast<long long>(m));
    r.phase_marginal = std::max(r.phase_marginal, frob_dist((1.0 / dd) * sum, outer(ket, ket)));
  }
  for (std::size_t n = 0; n < d; ++n) {
    ComplexMatrix sum(d);
    for (std::size_t m = 0; m < d; ++m) sum += q.omega(m, n);
    const auto ket = number_ket(grid, static_cast<long long>(n));
    r.number_marginal = std::max(r.number_marginal, frob_dist((1.0 / dd) * sum, outer(ket, ket)));
  }

  for (std::size_t a = 0; a < d * d; ++a)
    for (std::size_t b = 0; b < d * d; ++b) {
      const std::size_t m = a / d, n = a % d, mp = b / d, np = b % d;
      const Complex tr = trace_of_product(q.omega(m, n), q.omega(mp, np));
      r.overlap = std::max(r.overlap, std::abs(tr - overlap_kernel_side(q, m, n, mp, np)));
      const double expected = (a == b) ? dd : 0.0;
      r.delta_overlap = std::max(r.delta_overlap, std::abs(tr - expected));
    }

  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const ComplexMatrix direct =
          displacement_monomial(grid, static_cast<long long>(k), static_cast<long long>(l)).dense();
      r.displacement = std::max(r.displacement, frob_dist(displacement_from_quantizer(q, k, l), direct));
    }
  return r;
}

/// |phi_m><phi_m|n><n|, the building block of the symmetric-type closed forms.
inline ComplexMatrix phase_number_product(const PhaseGrid& grid, std::size_t m, std::size_t n) {
  const auto phi = phase_ket(grid, static_cast<long long>(m));
  const auto num = number_ket(grid, static_cast<long long>(n));
  return std::conj(phi[n]) * outer(phi, num);
}

/// Closed form for the symmetric kernel: (s+1)/2 (|phi_m><phi_m|n><n| + h.c.).
inline ComplexMatrix symmetric_phase_point(const PhaseGrid& grid, std::size_t m, std::size_t n) {
  const ComplexMatrix a = phase_number_product(grid, m, n);
  return (0.5 * static_cast<double>(grid.dim())) * (a + adjoint(a));
}

/// Closed form for the almost-symmetric kernel on dimension 2N:
/// N (A + A^+) + i N tan(eps) (A - A^+), A = |phi_m><phi_m|n><n|.
inline ComplexMatrix almost_symmetric_phase_point(const PhaseGrid& grid, double epsilon, std::size_t m,
                                                  std::size_t n) {
  if (grid.dim() % 2 != 0) throw std::invalid_argument("almost_symmetric_phase_point: dimension must be even");
  const double big_n = static_cast<double>(grid.dim() / 2);
  const ComplexMatrix a = phase_number_product(grid, m, n);
  const ComplexMatrix a_dag = adjoint(a);
  return big_n * (a + a_dag) + (kI * big_n * std::tan(epsilon)) * (a - a_dag);
}

/// Qubit phase-point operator written with Pauli matrices:
/// 1/2 [1 + (-1)^n s3 + diag(e^{-i phi0}, e^{i phi0}) ((-1)^m s1 + (-1)^{m+n} tan(eps) s2)].
inline ComplexMatrix qubit_phase_point(double phi0, double epsilon, std::size_t m, std::size_t n) {
  const double sm = (m % 2 == 0) ? 1.0 : -1.0;
  const double sn = (n % 2 == 0) ? 1.0 : -1.0;
  const ComplexMatrix s1{{0.0, 1.0}, {1.0, 0.0}};
  const ComplexMatrix s2{{0.0, -kI}, {kI, 0.0}};
  const ComplexMatrix s3{{1.0, 0.0}, {0.0, -1.0}};
  const ComplexMatrix phases{{cis(-phi0), 0.0}, {0.0, cis(phi0)}};
  const ComplexMatrix mix = sm * s1 + (sm * sn * std::tan(epsilon)) * s2;
  return 0.5 * (ComplexMatrix::identity(2) + sn * s3 + matmul(phases, mix));
}

struct OrderingReport {
  double deviation = 0.0;
  /// Weight of (i/2)[f1(phi^), f2(n^)]: tan(eps) for almost-symmetric, 0 for symmetric.
  double commutator_coefficient = 0.0;
  bool passed = false;
};

/// Checks that quantize(f1(phi_m) f2(n)) is the (almost) symmetric ordering of f1(phi^) and f2(n^).
inline OrderingReport ordering_check(const Quantizer& q, std::span<const Complex> f1, std::span<const Complex> f2,
                                     double tol = kTol) {
  const KernelFamily family = q.kernel().family();
  if (family != KernelFamily::Symmetric && family != KernelFamily::AlmostSymmetric)
    throw WrongKernelFamily("ordering_check: needs a symmetric or almost-symmetric kernel, got '" +
                            q.kernel().label() + "'");
  const PhaseGrid& grid = q.grid();
  const ComplexMatrix a = phase_function_op(grid, f1);
  const ComplexMatrix b = number_function_op(grid, f2);
  const GridFunction product = tabulate(grid, [&](std::size_t m, std::size_t n) { return f1[m] * f2[n]; });

  OrderingReport r;
  r.commutator_coefficient =
      family == KernelFamily::AlmostSymmetric ? std::tan(q.kernel().epsilon().value_or(0.0)) : 0.0;
  const ComplexMatrix ab = matmul(a, b);
  const ComplexMatrix ba = matmul(b, a);
  const ComplexMatrix expected = 0.5 * (ab + ba) + (0.5 * kI * r.commutator_coefficient) * (ab - ba);
  r.deviation = frob_dist(quantize(q, product), expected);
  r.passed = r.deviation <= tol;
  return r;
}

}  // namespace dwigner
