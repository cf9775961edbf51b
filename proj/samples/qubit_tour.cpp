// Walks through the qubit case: Wigner values for a few Bloch vectors with the
// almost-symmetric kernel at eps = pi/4, their marginals, the half-integer grid of the
// same state and the map back onto the 2x2 grid.

#include <cstdio>

#include "dwigner/dwigner.hpp"

using namespace dwigner;

namespace {

void print_grid(const WignerGrid& w) {
  for (std::size_t m = 0; m < w.dim(); ++m) {
    std::printf("    m=%zu:", m);
    for (std::size_t n = 0; n < w.dim(); ++n) std::printf(" %+.6f", w(m, n));
    std::printf("\n");
  }
}

}  // namespace

int main() {
  const double eps = kPi / 4.0;
  const PhaseGrid grid(2, 0.0);
  const Quantizer q = Quantizer::build(grid, almost_symmetric_kernel(1, eps));

  const double bloch[][3] = {{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.3, -0.4, 0.5}};
  for (const auto& a : bloch) {
    const auto rho = DensityOperator::from_matrix(qubit_state(a[0], a[1], a[2]));
    const WignerGrid w = wigner(q, rho);
    std::printf("a = (%.2f, %.2f, %.2f)\n", a[0], a[1], a[2]);
    print_grid(w);
    const Marginals mg = marginals(w);
    std::printf("    phase marginal  %.6f %.6f\n", mg.phase[0], mg.phase[1]);
    std::printf("    number marginal %.6f %.6f  (<0|rho|0> = %.6f)\n", mg.number[0], mg.number[1],
                rho.matrix()(0, 0).real());

    const ComplexMatrix back = reconstruct_matrix(w, q.kernel());
    std::printf("    reconstruction error %.2e\n", frob_norm(back - rho.matrix()));
  }

  // The half-integer construction lives on a 4x4 grid for a qubit.
  const auto rho = DensityOperator::from_matrix(qubit_state(0.3, -0.4, 0.5));
  const HalfIntegerWignerGrid half = leonhardt_wigner(1, 0.0, rho);
  std::printf("\nhalf-integer grid (rows 2m, columns 2n):\n");
  for (std::size_t mm = 0; mm < half.side(); ++mm) {
    std::printf("    ");
    for (std::size_t qq = 0; qq < half.side(); ++qq) std::printf(" %+.6f", half(mm, qq));
    std::printf("\n");
  }
  const WignerGrid mapped = relate_even(half, eps);
  const WignerGrid direct = wigner(q, rho);
  double worst = 0.0;
  for (std::size_t i = 0; i < direct.values().size(); ++i)
    worst = std::max(worst, std::abs(mapped.values()[i] - direct.values()[i]));
  std::printf("mapped onto the 2x2 grid, max deviation from the direct values: %.2e\n", worst);
  return 0;
}
