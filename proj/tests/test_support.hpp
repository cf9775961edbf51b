#pragma once

// Seeded random inputs and brute-force reference constructions shared by the test suites.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "dwigner/kernels.hpp"
#include "dwigner/numerics.hpp"
#include "dwigner/phase_space.hpp"
#include "dwigner/quantizer.hpp"

namespace testing_support {

using dwigner::Complex;
using dwigner::ComplexMatrix;
using dwigner::ComplexVector;
using dwigner::kPi;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(0x5eedULL);
  return engine;
}

inline double gauss() {
  static std::normal_distribution<double> g;
  return g(rng());
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline Complex gauss_complex() { return {gauss(), gauss()}; }

inline ComplexMatrix random_matrix(std::size_t d) {
  ComplexMatrix m(d);
  for (auto& x : m.entries()) x = gauss_complex();
  return m;
}

/// G G^+ / Tr(G G^+) with a Gaussian G: full rank, Hermitian, unit trace.
inline ComplexMatrix random_density(std::size_t d) {
  const ComplexMatrix g = random_matrix(d);
  ComplexMatrix rho = dwigner::matmul(g, dwigner::adjoint(g));
  rho *= 1.0 / dwigner::trace(rho).real();
  return rho;
}

/// Random pure state |psi><psi|.
inline ComplexMatrix random_pure(std::size_t d) {
  ComplexVector v(d);
  double norm = 0.0;
  for (auto& x : v) {
    x = gauss_complex();
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return dwigner::outer(v, v);
}

/// Uniform point in the unit ball.
inline std::vector<double> random_bloch() {
  while (true) {
    std::vector<double> a{uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    if (a[0] * a[0] + a[1] * a[1] + a[2] * a[2] <= 1.0) return a;
  }
}

inline dwigner::GridFunction random_function(const dwigner::PhaseGrid& grid) {
  dwigner::GridFunction f(grid);
  for (auto& x : f.values()) x = gauss_complex();
  return f;
}

inline dwigner::GridFunction random_real_function(const dwigner::PhaseGrid& grid) {
  dwigner::GridFunction f(grid);
  for (auto& x : f.values()) x = gauss();
  return f;
}

/// Complex kernel satisfying every validity condition: unit row 0 and column 0, and the
/// conjugation symmetry K*(k,l) = (-1)^{d+k+l} K(d-k, d-l) in the bulk.
inline dwigner::Kernel random_valid_kernel(std::size_t d) {
  std::vector<Complex> v(d * d, Complex{1.0, 0.0});
  for (std::size_t k = 1; k < d; ++k)
    for (std::size_t l = 1; l < d; ++l) {
      const std::size_t pk = d - k, pl = d - l;
      if (k * d + l > pk * d + pl) continue;
      const double sign = ((d + k + l) % 2 == 0) ? 1.0 : -1.0;
      const double mag = uniform(0.5, 1.5);
      if (k == pk && l == pl) {
        v[k * d + l] = mag * (uniform(0, 1) < 0.5 ? -1.0 : 1.0);  // fixed point: must be real
      } else {
        const Complex z = std::polar(mag, uniform(-kPi, kPi));
        v[k * d + l] = z;
        v[pk * d + pl] = sign * std::conj(z);
      }
    }
  return dwigner::Kernel(d, std::move(v));
}

// --- Reference constructions written directly from the defining formulas -----------------

/// U = sum_{n<s} |n><n+1| + e^{i(s+1)phi0} |s><0|
inline ComplexMatrix ref_u(std::size_t d, double phi0) {
  ComplexMatrix u(d);
  for (std::size_t n = 0; n + 1 < d; ++n) u(n, n + 1) = 1.0;
  u(d - 1, 0) = std::polar(1.0, static_cast<double>(d) * phi0);
  return u;
}

inline ComplexMatrix ref_v(std::size_t d) {
  ComplexMatrix v(d);
  for (std::size_t n = 0; n < d; ++n) v(n, n) = std::polar(1.0, 2.0 * kPi * static_cast<double>(n) / static_cast<double>(d));
  return v;
}

/// a^k by repeated multiplication; negative k uses the adjoint (a is unitary here).
inline ComplexMatrix naive_power(const ComplexMatrix& a, int k) {
  const ComplexMatrix base = k < 0 ? dwigner::adjoint(a) : a;
  ComplexMatrix acc = ComplexMatrix::identity(a.dim());
  for (int i = 0; i < std::abs(k); ++i) acc = dwigner::matmul(acc, base);
  return acc;
}

/// e^{-i pi k l/d} U^k V^l with naive repeated multiplication.
inline ComplexMatrix ref_displacement(std::size_t d, double phi0, int k, int l) {
  const ComplexMatrix acc = dwigner::matmul(naive_power(ref_u(d, phi0), k), naive_power(ref_v(d), l));
  return std::polar(1.0, -kPi * k * l / static_cast<double>(d)) * acc;
}

/// Table of all phase-point operators from the defining double sum.
struct RefQuantizer {
  std::size_t d;
  std::vector<ComplexMatrix> omega;
  const ComplexMatrix& operator()(std::size_t m, std::size_t n) const { return omega[m * d + n]; }
};

inline RefQuantizer ref_quantizer(std::size_t d, double phi0, const dwigner::Kernel& kernel) {
  std::vector<ComplexMatrix> disp;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) disp.push_back(ref_displacement(d, phi0, static_cast<int>(k), static_cast<int>(l)));
  RefQuantizer q{d, {}};
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n) {
      const double phi_m = phi0 + 2.0 * kPi * static_cast<double>(m) / static_cast<double>(d);
      ComplexMatrix om(d);
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const double angle = -(static_cast<double>(k) * phi_m + 2.0 * kPi * static_cast<double>(l * n) / static_cast<double>(d));
          om.add_scaled(kernel(k, l) * std::polar(1.0, angle), disp[k * d + l]);
        }
      om *= 1.0 / static_cast<double>(d);
      q.omega.push_back(std::move(om));
    }
  return q;
}

/// |phi_r> written out from its components.
inline ComplexVector ref_phase_ket(std::size_t d, double phi0, long long r) {
  ComplexVector v(d);
  const double phi = phi0 + 2.0 * kPi * static_cast<double>(r) / static_cast<double>(d);
  for (std::size_t n = 0; n < d; ++n) v[n] = std::polar(1.0 / std::sqrt(static_cast<double>(d)), static_cast<double>(n) * phi);
  return v;
}

/// f(phi^) = sum_m f(phi_m) |phi_m><phi_m|
inline ComplexMatrix ref_phase_function(std::size_t d, double phi0, const ComplexVector& f) {
  ComplexMatrix out(d);
  for (std::size_t m = 0; m < d; ++m) {
    const auto ket = ref_phase_ket(d, phi0, static_cast<long long>(m));
    out += f[m] * dwigner::outer(ket, ket);
  }
  return out;
}

inline ComplexMatrix ref_number_function(const ComplexVector& f) { return ComplexMatrix::diagonal(f); }

inline double max_abs(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing_support
