#pragma once

// Lines and line projectors on odd grids, the half-integer construction on even grids,
// exact relations between Wigner functions of different kernels, and continuum-limit
// convergence studies.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dwigner/kernels.hpp"
#include "dwigner/numerics.hpp"
#include "dwigner/phase_space.hpp"
#include "dwigner/quantizer.hpp"
#include "dwigner/wigner.hpp"

namespace dwigner {

class DegenerateLine : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmbeddingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Lines

/// Points (m, n) with n1*m + n2*n = n3 (mod dim).
struct Line {
  long long n1 = 0;
  long long n2 = 0;
  long long n3 = 0;
  std::size_t dim = 1;
};

/// True when n1 = n2 = 0 or gcd(n1, n2, dim) > 1.
inline bool is_degenerate(const Line& line) {
  const auto d = static_cast<long long>(line.dim);
  const long long a = floor_mod(line.n1, d), b = floor_mod(line.n2, d);
  if (a == 0 && b == 0) return true;
  return std::gcd(std::gcd(a, b), d) > 1;
}

/// Sorted by m, then n. n1 = n2 = 0 gives the whole grid when n3 = 0 and nothing otherwise.
inline std::vector<std::pair<std::size_t, std::size_t>> line_points(const Line& line) {
  const auto d = static_cast<long long>(line.dim);
  std::vector<std::pair<std::size_t, std::size_t>> pts;
  for (long long m = 0; m < d; ++m)
    for (long long n = 0; n < d; ++n)
      if (floor_mod(line.n1 * m + line.n2 * n - line.n3, d) == 0)
        pts.emplace_back(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  return pts;
}

/// P_L = 1/(2N+1) sum_{(m,n) in L} Omega(phi_m, n).
inline ComplexMatrix line_projector(const Quantizer& q, const Line& line) {
  if (q.dim() % 2 == 0) throw std::invalid_argument("line_projector: lines are defined for odd dimensions only");
  if (line.dim != q.dim()) throw DimensionMismatch("line_projector", line.dim, q.dim());
  if (is_degenerate(line))
    throw DegenerateLine("line_projector: L(" + std::to_string(line.n1) + "," + std::to_string(line.n2) + "," +
                         std::to_string(line.n3) + ") is degenerate");
  ComplexMatrix p(q.dim());
  for (const auto& [m, n] : line_points(line)) p += q.omega(m, n);
  return (1.0 / static_cast<double>(q.dim())) * p;
}

/// Worst-case deviations over every non-degenerate family of parallel lines.
struct LineSuiteReport {
  double idempotency = 0.0;    // ||P^2 - P||
  double hermiticity = 0.0;    // ||P - P^+||
  double completeness = 0.0;   // ||sum_{n3} P - 1||
  double orthogonality = 0.0;  // ||P_a P_b|| for parallel a != b
  double phase_axis = 0.0;     // ||P_{L(1,0,r)} - |phi_r><phi_r|||
  double number_axis = 0.0;    // ||P_{L(0,1,n)} - |n><n|||
  std::size_t families = 0;

  bool projective(double tol = kTol) const { return idempotency <= tol && orthogonality <= tol; }
  bool passes(double tol = kTol) const {
    return projective(tol) && hermiticity <= tol && completeness <= tol && phase_axis <= tol && number_axis <= tol;
  }
};

inline LineSuiteReport line_suite(const Quantizer& q) {
  const std::size_t d = q.dim();
  const auto dl = static_cast<long long>(d);
  const PhaseGrid& grid = q.grid();
  LineSuiteReport rep;
  const ComplexMatrix id = ComplexMatrix::identity(d);
  for (long long n1 = 0; n1 < dl; ++n1)
    for (long long n2 = 0; n2 < dl; ++n2) {
      if (is_degenerate(Line{n1, n2, 0, d})) continue;
      ++rep.families;
      std::vector<ComplexMatrix> ps;
      ComplexMatrix total(d);
      for (long long n3 = 0; n3 < dl; ++n3) {
        ps.push_back(line_projector(q, Line{n1, n2, n3, d}));
        const ComplexMatrix& p = ps.back();
        total += p;
        rep.idempotency = std::max(rep.idempotency, frob_dist(matmul(p, p), p));
        rep.hermiticity = std::max(rep.hermiticity, frob_dist(p, adjoint(p)));
      }
      rep.completeness = std::max(rep.completeness, frob_dist(total, id));
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) rep.orthogonality = std::max(rep.orthogonality, frob_norm(matmul(ps[a], ps[b])));
    }
  for (long long r = 0; r < dl; ++r) {
    const auto phi = phase_ket(grid, r);
    const auto num = number_ket(grid, r);
    rep.phase_axis = std::max(rep.phase_axis, frob_dist(line_projector(q, Line{1, 0, r, d}), outer(phi, phi)));
    rep.number_axis = std::max(rep.number_axis, frob_dist(line_projector(q, Line{0, 1, r, d}), outer(num, num)));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Wootters kernel closed forms

/// <n'|Omega(phi_m,n)|n''> = delta_{2n, n'+n'' mod (2N+1)} exp{i(n' - n'') phi_m}
inline Complex wootters_matrix_element(const Quantizer& q, std::size_t m, std::size_t n, std::size_t n1,
                                       std::size_t n2) {
  if (q.kernel().family() != KernelFamily::Wootters)
    throw WrongKernelFamily("wootters_matrix_element: quantizer kernel is '" + q.kernel().label() + "'");
  const auto d = static_cast<long long>(q.dim());
  const auto a = static_cast<long long>(n1), b = static_cast<long long>(n2);
  if (floor_mod(a + b - 2 * static_cast<long long>(n), d) != 0) return {};
  return cis(static_cast<double>(a - b) * q.grid().phi(static_cast<long long>(m)));
}

/// Omega(phi_m,n) = sum_p exp(-i 4 pi p n/(2N+1)) |phi_{m+p}><phi_{m-p}|.
inline ComplexMatrix wootters_phase_point(const PhaseGrid& grid, std::size_t m, std::size_t n) {
  const auto d = static_cast<long long>(grid.dim());
  const auto mm = static_cast<long long>(m), nn = static_cast<long long>(n);
  ComplexMatrix out(grid.dim());
  for (long long p = 0; p < d; ++p)
    out.add_scaled(cis(-4.0 * kPi * static_cast<double>(floor_mod(p * nn, d)) / static_cast<double>(d)),
                   outer(phase_ket(grid, mm + p), phase_ket(grid, mm - p)));
  return out;
}

// ---------------------------------------------------------------------------
// Half-integer grid on even dimension 2N

/// W on the doubled 4N x 4N grid, indexed by (2m, 2n) with m, n in {0, 1/2, ..., 2N - 1/2}.
class HalfIntegerWignerGrid {
 public:
  HalfIntegerWignerGrid(std::size_t big_n, double phi0) : big_n_(big_n), phi0_(phi0), values_(16 * big_n * big_n) {
    if (big_n == 0) throw std::invalid_argument("HalfIntegerWignerGrid: N must be positive");
  }

  HalfIntegerWignerGrid(std::size_t big_n, double phi0, std::vector<double> values)
      : big_n_(big_n), phi0_(phi0), values_(std::move(values)) {
    if (big_n == 0) throw std::invalid_argument("HalfIntegerWignerGrid: N must be positive");
    if (values_.size() != 16 * big_n * big_n) throw DimensionMismatch("HalfIntegerWignerGrid", values_.size(), 16 * big_n * big_n);
  }

  std::size_t big_n() const { return big_n_; }
  /// Hilbert-space dimension 2N.
  std::size_t dim() const { return 2 * big_n_; }
  /// Points per axis, 4N.
  std::size_t side() const { return 4 * big_n_; }
  double phi0() const { return phi0_; }
  PhaseGrid grid() const { return PhaseGrid(dim(), phi0_); }

  double& operator()(std::size_t twice_m, std::size_t twice_n) { return values_[twice_m * side() + twice_n]; }
  double operator()(std::size_t twice_m, std::size_t twice_n) const { return values_[twice_m * side() + twice_n]; }

  std::span<const double> values() const { return values_; }

  double total() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
  }

 private:
  std::size_t big_n_;
  double phi0_;
  std::vector<double> values_;
};

/// A(phi_m,n) = 1/2 sum'_p exp(-i 4 pi p n/(2N)) |phi_{m+p}><phi_{m-p}| with the half-step sum
/// over p; only p with m +- p integer contribute. Arguments are doubled indices.
inline ComplexMatrix leonhardt_phase_point(const PhaseGrid& grid, std::size_t twice_m, std::size_t twice_n) {
  const std::size_t d = grid.dim();
  if (d % 2 != 0) throw std::invalid_argument("leonhardt_phase_point: dimension must be even");
  const auto side = static_cast<long long>(2 * d);
  const auto mm = static_cast<long long>(twice_m), qq = static_cast<long long>(twice_n);
  ComplexMatrix a(d);
  for (long long pp = 0; pp < side; ++pp) {
    if ((mm - pp) % 2 != 0) continue;
    // 4 pi p n/(2N) with p = P/2, n = Q/2 is pi P Q/(2N); reduce P Q mod 4N.
    const double angle = -kPi * static_cast<double>(floor_mod(pp * qq, 2 * side)) / static_cast<double>(d);
    a.add_scaled(cis(angle), outer(phase_ket(grid, (mm + pp) / 2), phase_ket(grid, (mm - pp) / 2)));
  }
  return 0.5 * a;
}

namespace detail {

inline HalfIntegerWignerGrid leonhardt_values(std::size_t big_n, double phi0, const ComplexMatrix& rho) {
  const PhaseGrid grid(2 * big_n, phi0);
  if (rho.dim() != grid.dim()) throw DimensionMismatch("leonhardt_wigner", rho.dim(), grid.dim());
  HalfIntegerWignerGrid w(big_n, phi0);
  const auto side = static_cast<long long>(w.side());
  const double scale = 1.0 / static_cast<double>(4 * big_n);
  std::vector<ComplexVector> kets;
  for (long long r = 0; r < static_cast<long long>(grid.dim()); ++r) kets.push_back(phase_ket(grid, r));
  const auto ket = [&](long long r) -> const ComplexVector& {
    return kets[static_cast<std::size_t>(floor_mod(r, static_cast<long long>(grid.dim())))];
  };
  for (long long mm = 0; mm < side; ++mm)
    for (long long qq = 0; qq < side; ++qq) {
      Complex s{};
      for (long long pp = 0; pp < side; ++pp) {
        if ((mm - pp) % 2 != 0) continue;
        const double angle = -kPi * static_cast<double>(floor_mod(pp * qq, 2 * side)) / static_cast<double>(grid.dim());
        s += cis(angle) * matrix_element(ket((mm - pp) / 2), rho, ket((mm + pp) / 2));
      }
      w(static_cast<std::size_t>(mm), static_cast<std::size_t>(qq)) = checked_real(scale * s, "leonhardt_wigner");
    }
  return w;
}

}  // namespace detail

/// W(phi_m,n) = 1/(4N) sum'_p exp(-i 4 pi p n/(2N)) <phi_{m-p}|rho|phi_{m+p}>.
inline HalfIntegerWignerGrid leonhardt_wigner(std::size_t big_n, double phi0, const DensityOperator& rho) {
  return detail::leonhardt_values(big_n, phi0, rho.matrix());
}

/// Same function summed in the number basis: pairs with n' + n'' = 2n (mod 2N), where a
/// pair that wraps an odd number of times picks up (-1) at half-odd m.
inline HalfIntegerWignerGrid leonhardt_wigner_number_form(std::size_t big_n, double phi0, const DensityOperator& rho) {
  const std::size_t d = 2 * big_n;
  if (rho.dim() != d) throw DimensionMismatch("leonhardt_wigner_number_form", rho.dim(), d);
  const PhaseGrid grid(d, phi0);
  HalfIntegerWignerGrid w(big_n, phi0);
  const auto dl = static_cast<long long>(d);
  const auto side = static_cast<long long>(w.side());
  for (long long mm = 0; mm < side; ++mm) {
    const double phi_m = grid.phi_half(mm);
    for (long long qq = 0; qq < side; ++qq) {
      Complex s{};
      for (long long a = 0; a < dl; ++a)
        for (long long b = 0; b < dl; ++b) {
          const long long excess = a + b - qq;
          if (floor_mod(excess, dl) != 0) continue;
          const long long wraps = excess / dl;
          const double sign = (mm % 2 != 0 && wraps % 2 != 0) ? -1.0 : 1.0;
          s += sign * cis(static_cast<double>(b - a) * phi_m) *
               rho.matrix()(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        }
      w(static_cast<std::size_t>(mm), static_cast<std::size_t>(qq)) =
          detail::checked_real(s / static_cast<double>(4 * big_n), "leonhardt_wigner_number_form");
    }
  }
  return w;
}

/// rho = sum'_{m,n} W(phi_m,n) A(phi_m,n), unchecked.
inline ComplexMatrix leonhardt_reconstruct_matrix(const HalfIntegerWignerGrid& w) {
  const PhaseGrid grid = w.grid();
  ComplexMatrix rho(w.dim());
  for (std::size_t mm = 0; mm < w.side(); ++mm)
    for (std::size_t qq = 0; qq < w.side(); ++qq) rho.add_scaled(w(mm, qq), leonhardt_phase_point(grid, mm, qq));
  return rho;
}

/// The 16N^2 grid values overdetermine the 4N^2 matrix entries, so the result is
/// re-evaluated and compared with the input grid.
inline DensityOperator leonhardt_reconstruct(const HalfIntegerWignerGrid& w, double tol = kTol) {
  const DensityOperator out = DensityOperator::from_matrix(leonhardt_reconstruct_matrix(w), 10.0 * tol);
  const HalfIntegerWignerGrid again = leonhardt_wigner(w.big_n(), w.phi0(), out);
  double dev = 0.0;
  for (std::size_t i = 0; i < w.values().size(); ++i) dev = std::max(dev, std::abs(again.values()[i] - w.values()[i]));
  if (dev > 10.0 * tol)
    throw ReconstructionError("leonhardt_reconstruct: grid is not the Wigner function of any state (deviation " +
                              std::to_string(dev) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// Exact relations between kernels

/// Wootters grid -> symmetric-kernel grid:
/// rho_W(phi_m,n) = 1/(2N+1) sum_{m',n'} cos[4 pi (m-m')(n-n')/(2N+1)] W_wootters(phi_m',n').
inline WignerGrid relate_odd(const WignerGrid& w) {
  if (w.kernel_label() != family_label(KernelFamily::Wootters))
    throw KernelMismatch("relate_odd: input grid was produced with kernel '" + w.kernel_label() + "', not 'wootters'");
  if (w.dim() % 2 == 0) throw DimensionMismatch("relate_odd: odd dimension required", w.dim(), w.dim() + 1);
  const auto d = static_cast<long long>(w.dim());
  WignerGrid out(w.grid(), family_label(KernelFamily::Symmetric));
  for (long long m = 0; m < d; ++m)
    for (long long n = 0; n < d; ++n) {
      double s = 0.0;
      for (long long mp = 0; mp < d; ++mp)
        for (long long np = 0; np < d; ++np) {
          const long long x = floor_mod(2 * (m - mp) * (n - np), d);
          s += std::cos(2.0 * kPi * static_cast<double>(x) / static_cast<double>(d)) *
               w(static_cast<std::size_t>(mp), static_cast<std::size_t>(np));
        }
      out(static_cast<std::size_t>(m), static_cast<std::size_t>(n)) = s / static_cast<double>(d);
    }
  return out;
}

/// Half-integer grid -> almost-symmetric grid on the integer 2N x 2N points:
/// rho_W(phi_m,n) = 1/(4N cos eps) sum'_{m',n'} cos[4 pi (m-m')(n-n')/(2N) - eps] W(phi_m',n').
inline WignerGrid relate_even(const HalfIntegerWignerGrid& w, double epsilon) {
  // Only cos(eps) != 0 is needed; the target kernel may have vanishing entries.
  (void)almost_symmetric_table(w.big_n(), epsilon);
  const auto d = static_cast<long long>(w.dim());
  const auto side = static_cast<long long>(w.side());
  const double norm = 1.0 / (static_cast<double>(2 * d) * std::cos(epsilon));
  WignerGrid out(w.grid(), family_label(KernelFamily::AlmostSymmetric), epsilon);
  for (long long m = 0; m < d; ++m)
    for (long long n = 0; n < d; ++n) {
      double s = 0.0;
      for (long long mm = 0; mm < side; ++mm)
        for (long long qq = 0; qq < side; ++qq) {
          // 4 pi (m - M/2)(n - Q/2)/(2N) = pi (2m - M)(2n - Q)/(2N)
          const long long x = floor_mod((2 * m - mm) * (2 * n - qq), 4 * d);
          s += std::cos(kPi * static_cast<double>(x) / static_cast<double>(d) - epsilon) *
               w(static_cast<std::size_t>(mm), static_cast<std::size_t>(qq));
        }
      out(static_cast<std::size_t>(m), static_cast<std::size_t>(n)) = norm * s;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Continuum limit

/// Pads rho with zero rows and columns up to dimension dim.
inline ComplexMatrix embed(const ComplexMatrix& rho, std::size_t dim) {
  if (dim < rho.dim()) throw EmbeddingError("embed: target dimension is smaller than the state");
  ComplexMatrix out(dim);
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j) out(i, j) = rho(i, j);
  return out;
}

/// Largest photon number carrying weight in rho.
inline std::size_t support_max(const ComplexMatrix& rho, double tol = kTol) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      if (std::abs(rho(i, j)) > tol) top = std::max({top, i, j});
  return top;
}

/// Re{<n|rho|phi><phi|n>} with <phi|n> = e^{-i n phi}/sqrt(2 pi).
inline double continuum_symmetric_target(const ComplexMatrix& rho, std::size_t n, double phi) {
  Complex s{};
  for (std::size_t np = 0; np < rho.dim(); ++np)
    s += rho(n, np) * cis((static_cast<double>(np) - static_cast<double>(n)) * phi);
  return s.real() / (2.0 * kPi);
}

/// (1/2 pi) sum_{r=-n}^{n} e^{i 2 r phi} <n-r|rho|n+r>
inline double continuum_wootters_target(const ComplexMatrix& rho, std::size_t n, double phi) {
  const auto nn = static_cast<long long>(n);
  const auto d = static_cast<long long>(rho.dim());
  Complex s{};
  for (long long r = -nn; r <= nn; ++r) {
    const long long a = nn - r, b = nn + r;
    if (a < d && b < d) s += cis(2.0 * static_cast<double>(r) * phi) * rho(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  return s.real() / (2.0 * kPi);
}

/// <phi|rho|phi> with the continuum phase states, i.e. the exact phase distribution.
inline double continuum_phase_density(const ComplexMatrix& rho, double phi) {
  Complex s{};
  for (std::size_t a = 0; a < rho.dim(); ++a)
    for (std::size_t b = 0; b < rho.dim(); ++b)
      s += rho(a, b) * cis((static_cast<double>(b) - static_cast<double>(a)) * phi);
  return s.real() / (2.0 * kPi);
}

struct ConvergenceRow {
  std::size_t big_n = 0;
  std::size_t n = 0;
  double phi_grid = 0.0;    // grid angle nearest the requested phi
  double phi_offset = 0.0;  // requested phi minus phi_grid, wrapped to (-pi, pi]
  double scaled_value = 0.0;
  double target = 0.0;
  double abs_error = 0.0;
};

struct ConvergenceReport {
  KernelFamily family = KernelFamily::Symmetric;
  std::size_t n = 0;
  double phi = 0.0;
  std::vector<ConvergenceRow> rows;
  bool monotone = true;
  /// sum_n of the continuum target at the requested phi, and the exact phase density there.
  /// They agree for the symmetric kernel and differ for the Wootters kernel.
  double target_number_sum = 0.0;
  double phase_density = 0.0;
};

/// Slack for comparing successive errors, which are pure roundoff when the finite-N
/// value already equals the target.
inline constexpr double kMonotoneSlack = 1e-12;

/// Scaled values (d/2 pi) rho_W(phi_m*, n) for each N, where d = 2N+1 (2N for the
/// almost-symmetric kernel with eps = 1/(2N)) and phi_m* is the grid angle nearest phi.
/// rho is the small state, embedded by zero padding; every N must exceed 2 n_max.
inline ConvergenceReport continuum_study(const ComplexMatrix& rho, std::size_t n, double phi,
                                         std::span<const std::size_t> big_ns, KernelFamily family,
                                         double phi0 = 0.0) {
  if (family == KernelFamily::Custom) throw std::invalid_argument("continuum_study: needs a named kernel family");
  if (big_ns.empty()) throw std::invalid_argument("continuum_study: empty N list");
  const std::size_t n_max = support_max(rho);
  for (std::size_t big_n : big_ns) {
    if (big_n <= 2 * n_max || n >= 2 * big_n)
      throw EmbeddingError("continuum_study: N = " + std::to_string(big_n) + " is too small for a state supported on n <= " +
                           std::to_string(n_max) + " (need N > 2 n_max and n < 2N)");
  }

  ConvergenceReport rep;
  rep.family = family;
  rep.n = n;
  rep.phi = phi;
  const auto target_at = [&](std::size_t level, double angle) {
    return family == KernelFamily::Wootters ? continuum_wootters_target(rho, level, angle)
                                            : continuum_symmetric_target(rho, level, angle);
  };
  for (std::size_t level = 0; level <= n_max; ++level) rep.target_number_sum += target_at(level, phi);
  rep.phase_density = continuum_phase_density(rho, phi);

  for (std::size_t big_n : big_ns) {
    Kernel kernel = family == KernelFamily::Symmetric   ? symmetric_kernel(big_n)
                    : family == KernelFamily::Wootters ? wootters_kernel(big_n)
                                                       : almost_symmetric_kernel(big_n, default_epsilon(big_n));
    const std::size_t d = kernel.dim();
    const PhaseGrid grid(d, phi0);
    const double step = 2.0 * kPi / static_cast<double>(d);
    const auto m_star = static_cast<std::size_t>(
        floor_mod(static_cast<long long>(std::llround((phi - phi0) / step)), static_cast<long long>(d)));
    ConvergenceRow row;
    row.big_n = big_n;
    row.n = n;
    row.phi_grid = grid.phi(static_cast<long long>(m_star));
    row.phi_offset = std::remainder(phi - row.phi_grid, 2.0 * kPi);
    const DirectWigner direct(grid, kernel, embed(rho, d));
    row.scaled_value = static_cast<double>(d) / (2.0 * kPi) * direct.at(m_star, n);
    row.target = target_at(n, row.phi_grid);
    row.abs_error = std::abs(row.scaled_value - row.target);
    if (!rep.rows.empty() && row.abs_error > rep.rows.back().abs_error + kMonotoneSlack) rep.monotone = false;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace dwigner
