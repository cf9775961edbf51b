#pragma once

// Discrete Wigner functions of density operators, expectation values, marginals and
// state reconstruction from a Wigner grid.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dwigner/kernels.hpp"
#include "dwigner/numerics.hpp"
#include "dwigner/phase_space.hpp"
#include "dwigner/quantizer.hpp"

namespace dwigner {

/// Slack on the smallest LDL pivot when testing positive semidefiniteness.
inline constexpr double kPsdSlack = 1e-8;
/// Denominators of the symmetric-kernel inversion below this fall back to the general path.
inline constexpr double kDenominatorGuard = 1e-9;

class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class KernelMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ReconstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How far a matrix is from being a density operator.
struct StateDefects {
  double hermiticity = 0.0;  // ||rho - rho^+||_F
  double trace = 0.0;        // |Tr rho - 1|
  double negativity = 0.0;   // magnitude of the most negative LDL pivot

  double worst() const { return std::max({hermiticity, trace, negativity}); }
};

inline StateDefects state_defects(const ComplexMatrix& m, double psd_slack = kPsdSlack) {
  StateDefects s;
  s.hermiticity = frob_dist(m, adjoint(m));
  s.trace = std::abs(trace(m) - 1.0);
  // Pivoting only makes sense on the Hermitian part.
  ComplexMatrix herm = 0.5 * (m + adjoint(m));
  s.negativity = std::max(0.0, -min_pivot(herm, psd_slack));
  return s;
}

/// Hermitian, unit trace, positive semidefinite (all within tolerance).
class DensityOperator {
 public:
  static DensityOperator from_matrix(ComplexMatrix m, double tol = kTol, double psd_slack = kPsdSlack) {
    const StateDefects s = state_defects(m, psd_slack);
    if (s.hermiticity > tol) throw InvalidState("density operator is not Hermitian (defect " + std::to_string(s.hermiticity) + ")");
    if (s.trace > tol) throw InvalidState("density operator trace differs from 1 by " + std::to_string(s.trace));
    if (s.negativity > psd_slack) throw InvalidState("density operator is not positive semidefinite");
    return DensityOperator(std::move(m));
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.dim(); }

 private:
  explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

struct WignerIndexTag;

/// Real Wigner values rho_W(phi_m, n) on a grid, tagged with the kernel that produced them.
class WignerGrid : public GridTable<double, WignerIndexTag> {
 public:
  WignerGrid(PhaseGrid grid, std::string kernel_label, std::optional<double> epsilon = std::nullopt)
      : GridTable(grid), kernel_label_(std::move(kernel_label)), epsilon_(epsilon) {}

  WignerGrid(PhaseGrid grid, std::string kernel_label, std::vector<double> values,
             std::optional<double> epsilon = std::nullopt)
      : GridTable(grid, std::move(values)), kernel_label_(std::move(kernel_label)), epsilon_(epsilon) {}

  const std::string& kernel_label() const { return kernel_label_; }
  std::optional<double> epsilon() const { return epsilon_; }

  double total() const {
    double s = 0.0;
    for (double v : values()) s += v;
    return s;
  }

 private:
  std::string kernel_label_;
  std::optional<double> epsilon_;
};

namespace detail {

inline double checked_real(Complex z, const char* where) {
  if (std::abs(z.imag()) > kTol)
    throw std::logic_error(std::string(where) + ": Wigner value has imaginary part " + std::to_string(z.imag()));
  return z.real();
}

inline void require_dim(std::size_t got, std::size_t want, const char* where) {
  if (got != want) throw DimensionMismatch(where, got, want);
}

}  // namespace detail

/// rho_W(phi_m,n) = 1/(s+1) Tr{rho Omega(phi_m,n)}
inline WignerGrid wigner(const Quantizer& q, const DensityOperator& rho) {
  detail::require_dim(rho.dim(), q.dim(), "wigner");
  const std::size_t d = q.dim();
  WignerGrid w(q.grid(), q.kernel().label(), q.kernel().epsilon());
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n)
      w(m, n) = detail::checked_real(trace_of_product(rho.matrix(), q.omega(m, n)) / static_cast<double>(d), "wigner");
  return w;
}

/// Same values as wigner(), without building the quantizer: Tr{rho D(k,l)} is tabulated
/// once (O(d^3)) and each grid point is a kernel-weighted Fourier sum (O(d^2)).
/// Usable on large grids; the kernel is not validated.
class DirectWigner {
 public:
  DirectWigner(const PhaseGrid& grid, const Kernel& kernel, const ComplexMatrix& rho)
      : grid_(grid), kernel_(kernel), traces_(grid.dim() * grid.dim()) {
    detail::require_dim(kernel.dim(), grid.dim(), "DirectWigner");
    detail::require_dim(rho.dim(), grid.dim(), "DirectWigner");
    const std::size_t d = grid.dim();
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l)
        traces_[k * d + l] =
            displacement_monomial(grid, static_cast<long long>(k), static_cast<long long>(l)).trace_with(rho);
  }

  double at(std::size_t m, std::size_t n) const {
    const std::size_t d = grid_.dim();
    Complex s{};
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l)
        s += kernel_(k, l) * traces_[k * d + l] *
             grid_wave(grid_, static_cast<long long>(k), static_cast<long long>(l), static_cast<long long>(m),
                       static_cast<long long>(n));
    return detail::checked_real(s / static_cast<double>(d * d), "DirectWigner::at");
  }

  WignerGrid grid_values() const {
    WignerGrid w(grid_, kernel_.label(), kernel_.epsilon());
    for (std::size_t m = 0; m < grid_.dim(); ++m)
      for (std::size_t n = 0; n < grid_.dim(); ++n) w(m, n) = at(m, n);
    return w;
  }

 private:
  PhaseGrid grid_;
  Kernel kernel_;
  std::vector<Complex> traces_;
};

/// Symmetric kernel: Re{<n|rho|phi_m><phi_m|n>}.
inline WignerGrid wigner_symmetric_closed(const PhaseGrid& grid, const DensityOperator& rho) {
  detail::require_dim(rho.dim(), grid.dim(), "wigner_symmetric_closed");
  WignerGrid w(grid, family_label(KernelFamily::Symmetric));
  for (std::size_t m = 0; m < grid.dim(); ++m) {
    const auto phi = phase_ket(grid, static_cast<long long>(m));
    const auto rho_phi = apply_to(rho.matrix(), phi);
    for (std::size_t n = 0; n < grid.dim(); ++n) w(m, n) = (rho_phi[n] * std::conj(phi[n])).real();
  }
  return w;
}

/// Almost-symmetric kernel: (1/cos eps) Re{e^{i eps} <n|rho|phi_m><phi_m|n>}.
inline WignerGrid wigner_almost_symmetric_closed(const PhaseGrid& grid, double epsilon, const DensityOperator& rho) {
  detail::require_dim(rho.dim(), grid.dim(), "wigner_almost_symmetric_closed");
  WignerGrid w(grid, family_label(KernelFamily::AlmostSymmetric), epsilon);
  for (std::size_t m = 0; m < grid.dim(); ++m) {
    const auto phi = phase_ket(grid, static_cast<long long>(m));
    const auto rho_phi = apply_to(rho.matrix(), phi);
    for (std::size_t n = 0; n < grid.dim(); ++n)
      w(m, n) = (cis(epsilon) * rho_phi[n] * std::conj(phi[n])).real() / std::cos(epsilon);
  }
  return w;
}

/// Wootters kernel, phase-basis form:
/// 1/(2N+1) sum_p exp(-i 4 pi p n/(2N+1)) <phi_{m-p}|rho|phi_{m+p}>.
inline WignerGrid wigner_wootters_phase_form(const PhaseGrid& grid, const DensityOperator& rho) {
  detail::require_dim(rho.dim(), grid.dim(), "wigner_wootters_phase_form");
  const auto d = static_cast<long long>(grid.dim());
  WignerGrid w(grid, family_label(KernelFamily::Wootters));
  for (long long m = 0; m < d; ++m)
    for (long long n = 0; n < d; ++n) {
      Complex s{};
      for (long long p = 0; p < d; ++p)
        s += cis(-4.0 * kPi * static_cast<double>(floor_mod(p * n, d)) / static_cast<double>(d)) *
             matrix_element(phase_ket(grid, m - p), rho.matrix(), phase_ket(grid, m + p));
      w(static_cast<std::size_t>(m), static_cast<std::size_t>(n)) =
          detail::checked_real(s / static_cast<double>(d), "wigner_wootters_phase_form");
    }
  return w;
}

/// Wootters kernel, number-basis form: 1/(2N+1) sum over n' + n'' = 2n (mod 2N+1) of
/// exp{i(n'' - n') phi_m} <n'|rho|n''>.
inline WignerGrid wigner_wootters_number_form(const PhaseGrid& grid, const DensityOperator& rho) {
  detail::require_dim(rho.dim(), grid.dim(), "wigner_wootters_number_form");
  const auto d = static_cast<long long>(grid.dim());
  WignerGrid w(grid, family_label(KernelFamily::Wootters));
  for (long long m = 0; m < d; ++m)
    for (long long n = 0; n < d; ++n) {
      Complex s{};
      for (long long a = 0; a < d; ++a)
        for (long long b = 0; b < d; ++b)
          if (floor_mod(a + b - 2 * n, d) == 0)
            s += cis(static_cast<double>(b - a) * grid.phi(m)) *
                 rho.matrix()(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      w(static_cast<std::size_t>(m), static_cast<std::size_t>(n)) =
          detail::checked_real(s / static_cast<double>(d), "wigner_wootters_number_form");
    }
  return w;
}

/// 1/(2N+1) sum_{r=-n}^{n} exp(i 2 r phi_m) <n-r|rho|n+r>, without the modular wrap.
/// Agrees with the Wootters Wigner function when rho lives on photon numbers <= N and n <= N,
/// or more generally whenever no pair with n' + n'' = 2n - (2N+1) carries weight.
inline double wootters_r_sum(const PhaseGrid& grid, const ComplexMatrix& rho, std::size_t m, std::size_t n) {
  const auto d = static_cast<long long>(grid.dim());
  const auto nn = static_cast<long long>(n);
  Complex s{};
  for (long long r = -nn; r <= nn; ++r) {
    const long long a = nn - r, b = nn + r;
    if (a < d && b < d)
      s += cis(2.0 * static_cast<double>(r) * grid.phi(static_cast<long long>(m))) *
           rho(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  return detail::checked_real(s / static_cast<double>(d), "wootters_r_sum");
}

/// sum_{m,n} f(phi_m,n) rho_W(phi_m,n)
inline Complex expectation(const WignerGrid& w, const GridFunction& f) {
  if (!(w.grid() == f.grid())) throw GridMismatch("expectation: grids differ");
  Complex s{};
  for (std::size_t i = 0; i < w.values().size(); ++i) s += f.values()[i] * w.values()[i];
  return s;
}

struct Marginals {
  std::vector<double> phase;   // sum_n rho_W(phi_m, n), indexed by m
  std::vector<double> number;  // sum_m rho_W(phi_m, n), indexed by n
};

inline Marginals marginals(const WignerGrid& w) {
  const std::size_t d = w.dim();
  Marginals out{std::vector<double>(d), std::vector<double>(d)};
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n) {
      out.phase[m] += w(m, n);
      out.number[n] += w(m, n);
    }
  return out;
}

/// Assembles rho = sum_{r,r'} <phi_r'|rho|phi_r> |phi_r'><phi_r| from phase-basis elements
/// stored as elements(r', r).
inline ComplexMatrix from_phase_elements(const PhaseGrid& grid, const ComplexMatrix& elements) {
  const std::size_t d = grid.dim();
  std::vector<ComplexVector> kets;
  for (std::size_t r = 0; r < d; ++r) kets.push_back(phase_ket(grid, static_cast<long long>(r)));
  ComplexMatrix rho(d);
  for (std::size_t rp = 0; rp < d; ++rp)
    for (std::size_t r = 0; r < d; ++r) rho.add_scaled(elements(rp, r), outer(kets[rp], kets[r]));
  return rho;
}

namespace detail {

inline void require_matching_kernel(const WignerGrid& w, const Kernel& kernel, const char* where) {
  require_dim(kernel.dim(), w.dim(), where);
  if (w.kernel_label() != kernel.label())
    throw KernelMismatch(std::string(where) + ": grid was produced with kernel '" + w.kernel_label() +
                         "', not '" + kernel.label() + "'");
}

/// shifted(m, delta) = sum_n exp(i 2 pi delta n/(s+1)) rho_W(phi_m, n), delta in [0, s].
inline std::vector<Complex> number_shifted_sums(const WignerGrid& w) {
  const std::size_t d = w.dim();
  std::vector<Complex> out(d * d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t delta = 0; delta < d; ++delta) {
      Complex s{};
      for (std::size_t n = 0; n < d; ++n)
        s += cis(2.0 * kPi * static_cast<double>((delta * n) % d) / static_cast<double>(d)) * w(m, n);
      out[m * d + delta] = s;
    }
  return out;
}

}  // namespace detail

/// <phi_r'|rho|phi_r> for every r, r' from the Wigner grid and its kernel, stored as (r', r).
inline ComplexMatrix phase_basis_elements(const WignerGrid& w, const Kernel& kernel) {
  detail::require_matching_kernel(w, kernel, "phase_basis_elements");
  const std::size_t d = w.dim();
  const double dd = static_cast<double>(d);
  const auto shifted = detail::number_shifted_sums(w);
  ComplexMatrix el(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t rp = 0; rp < d; ++rp) {
      const double mid = 0.5 * static_cast<double>(r + rp);
      // delta = r - r' (mod s+1); the n-sum only sees delta mod (s+1).
      const std::size_t delta = (r + d - rp) % d;
      Complex s{};
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t m = 0; m < d; ++m) {
          const double angle = 2.0 * kPi * static_cast<double>(k) / dd * (static_cast<double>(m) - mid);
          if (r >= rp)
            s += cis(angle) / kernel(k, r - rp) * shifted[m * d + delta];
          else
            s += cis(-angle) / std::conj(kernel(k, rp - r)) * shifted[m * d + delta];
        }
      el(rp, r) = s / dd;
    }
  return el;
}

/// Reconstructed matrix, not yet checked against the density-operator invariants.
inline ComplexMatrix reconstruct_matrix(const WignerGrid& w, const Kernel& kernel) {
  ComplexMatrix rho = from_phase_elements(w.grid(), phase_basis_elements(w, kernel));
  const double herm = frob_dist(rho, adjoint(rho));
  if (herm > 10.0 * kTol)
    throw ReconstructionError("reconstruct: result is not Hermitian (defect " + std::to_string(herm) +
                              "); the grid is inconsistent");
  return rho;
}

inline DensityOperator reconstruct(const WignerGrid& w, const Kernel& kernel) {
  return DensityOperator::from_matrix(reconstruct_matrix(w, kernel), 10.0 * kTol);
}

/// Unimodular kernels: rho = sum_{m,n} Omega(phi_m,n) rho_W(phi_m,n).
inline ComplexMatrix reconstruct_unimodular(const Quantizer& q, const WignerGrid& w) {
  if (!is_unimodular(q.kernel())) throw WrongKernelFamily("reconstruct_unimodular: kernel is not unimodular");
  detail::require_matching_kernel(w, q.kernel(), "reconstruct_unimodular");
  ComplexMatrix rho(q.dim());
  for (std::size_t m = 0; m < q.dim(); ++m)
    for (std::size_t n = 0; n < q.dim(); ++n) rho.add_scaled(w(m, n), q.omega(m, n));
  return rho;
}

/// Any valid kernel, through the phase-point operators with |K|^-2 weights.
inline ComplexMatrix reconstruct_via_quantizer(const Quantizer& q, const WignerGrid& w) {
  detail::require_matching_kernel(w, q.kernel(), "reconstruct_via_quantizer");
  const PhaseGrid& grid = q.grid();
  const std::size_t d = q.dim();
  const double dd = static_cast<double>(d);
  // spectrum(k,l) = sum_{m,n} exp{i(k phi_m + 2 pi l n/d)} rho_W(phi_m, n)
  std::vector<Complex> spectrum(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      Complex s{};
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n)
          s += std::conj(grid_wave(grid, static_cast<long long>(k), static_cast<long long>(l), static_cast<long long>(m),
                                   static_cast<long long>(n))) *
               w(m, n);
      spectrum[k * d + l] = s / std::norm(q.kernel()(k, l));
    }
  ComplexMatrix rho(d);
  for (std::size_t mp = 0; mp < d; ++mp)
    for (std::size_t np = 0; np < d; ++np) {
      Complex c{};
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          c += spectrum[k * d + l] * grid_wave(grid, static_cast<long long>(k), static_cast<long long>(l),
                                               static_cast<long long>(mp), static_cast<long long>(np));
      rho.add_scaled(c / (dd * dd), q.omega(mp, np));
    }
  return rho;
}

namespace detail {

/// sum_{k=-N}^{N} exp(i k phi_m) / (exp(i k phi_r) + exp(i k phi_r')), or nullopt when a
/// denominator is numerically zero.
inline std::optional<Complex> symmetric_inner_sum(const PhaseGrid& grid, std::size_t m, std::size_t r,
                                                  std::size_t rp) {
  const auto big_n = static_cast<long long>(grid.dim() / 2);
  Complex s{};
  for (long long k = -big_n; k <= big_n; ++k) {
    const double kd = static_cast<double>(k);
    const Complex denom = cis(kd * grid.phi(static_cast<long long>(r))) + cis(kd * grid.phi(static_cast<long long>(rp)));
    if (std::abs(denom) < kDenominatorGuard) return std::nullopt;
    s += cis(kd * grid.phi(static_cast<long long>(m))) / denom;
  }
  return s;
}

inline void require_symmetric(const WignerGrid& w, const char* where) {
  if (w.kernel_label() != family_label(KernelFamily::Symmetric))
    throw KernelMismatch(std::string(where) + ": needs a symmetric-kernel grid, got '" + w.kernel_label() + "'");
  if (w.dim() % 2 == 0) throw DimensionMismatch(where, w.dim(), w.dim() + 1);
}

}  // namespace detail

/// Symmetric kernel phase-basis elements, stored as (r', r):
/// 2/(2N+1) sum_{m,n} [sum_{k=-N}^{N} e^{ik phi_m}/(e^{ik phi_r} + e^{ik phi_r'})] e^{in(phi_r - phi_r')} rho_W.
/// Elements whose denominators vanish fall back to the general kernel-division path.
inline ComplexMatrix symmetric_phase_elements(const WignerGrid& w) {
  detail::require_symmetric(w, "symmetric_phase_elements");
  const PhaseGrid& grid = w.grid();
  const std::size_t d = w.dim();
  const auto shifted = detail::number_shifted_sums(w);
  std::optional<ComplexMatrix> general;
  ComplexMatrix el(d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t rp = 0; rp < d; ++rp) {
      const std::size_t delta = (r + d - rp) % d;
      Complex s{};
      bool degenerate = false;
      for (std::size_t m = 0; m < d && !degenerate; ++m) {
        const auto inner = detail::symmetric_inner_sum(grid, m, r, rp);
        if (!inner) {
          degenerate = true;
          break;
        }
        s += *inner * shifted[m * d + delta];
      }
      if (degenerate) {
        if (!general) general = phase_basis_elements(w, symmetric_kernel(d / 2));
        el(rp, r) = (*general)(rp, r);
      } else {
        el(rp, r) = 2.0 * s / static_cast<double>(d);
      }
    }
  return el;
}

inline ComplexMatrix reconstruct_symmetric(const WignerGrid& w) {
  return from_phase_elements(w.grid(), symmetric_phase_elements(w));
}

/// Symmetric kernel number-basis elements <n'|rho|n''> summed directly over r', r'', m, n.
inline ComplexMatrix symmetric_number_elements(const WignerGrid& w) {
  detail::require_symmetric(w, "symmetric_number_elements");
  const PhaseGrid& grid = w.grid();
  const std::size_t d = w.dim();
  const double dd = static_cast<double>(d);
  std::vector<Complex> inner(d * d * d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const auto v = detail::symmetric_inner_sum(grid, m, a, b);
        if (!v) throw ReconstructionError("symmetric_number_elements: vanishing denominator");
        inner[(m * d + a) * d + b] = *v;
      }
  ComplexMatrix out(d);
  for (std::size_t n1 = 0; n1 < d; ++n1)
    for (std::size_t n2 = 0; n2 < d; ++n2) {
      Complex s{};
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          for (std::size_t n = 0; n < d; ++n) {
            const double angle = (static_cast<double>(n1) - static_cast<double>(n)) * grid.phi(static_cast<long long>(a)) +
                                 (static_cast<double>(n) - static_cast<double>(n2)) * grid.phi(static_cast<long long>(b));
            const Complex wave = cis(angle);
            for (std::size_t m = 0; m < d; ++m) s += inner[(m * d + a) * d + b] * wave * w(m, n);
          }
      out(n1, n2) = 2.0 * s / (dd * dd);
    }
  return out;
}

}  // namespace dwigner
