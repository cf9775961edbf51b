// Compares the symmetric and Wootters kernels on dimension 5 for one state: kernel checks,
// the two Wigner grids, their negativity, and the map between them.

#include <cstdio>

#include "dwigner/dwigner.hpp"

using namespace dwigner;

namespace {

void report(const char* name, const Kernel& k, const PhaseGrid& grid, const DensityOperator& rho) {
  const ValidityReport v = validate(k);
  std::printf("%s kernel: valid=%s unimodular=%s min|K|=%.3f\n", name, v.valid() ? "yes" : "no",
              is_unimodular(k) ? "yes" : "no", v.min_abs);

  const Quantizer q = Quantizer::build(grid, k);
  const QuantizerReport r = verify(q);
  std::printf("  quantizer identities hold: %s (delta overlap deviation %.2e)\n", r.passes() ? "yes" : "no",
              r.delta_overlap);

  const WignerGrid w = wigner(q, rho);
  double negative = 0.0;
  for (double x : w.values())
    if (x < 0.0) negative += -x;
  std::printf("  total %.6f, summed negative part %.6f\n", w.total(), negative);
  for (std::size_t m = 0; m < w.dim(); ++m) {
    std::printf("   ");
    for (std::size_t n = 0; n < w.dim(); ++n) std::printf(" %+.4f", w(m, n));
    std::printf("\n");
  }
}

}  // namespace

int main() {
  const PhaseGrid grid(5, 0.0);
  const auto rho = DensityOperator::from_matrix(superposition01(5));

  report("symmetric", symmetric_kernel(2), grid, rho);
  report("wootters", wootters_kernel(2), grid, rho);

  const WignerGrid w = wigner(Quantizer::build(grid, wootters_kernel(2)), rho);
  const WignerGrid mapped = relate_odd(w);
  const WignerGrid direct = wigner(Quantizer::build(grid, symmetric_kernel(2)), rho);
  double worst = 0.0;
  for (std::size_t i = 0; i < direct.values().size(); ++i)
    worst = std::max(worst, std::abs(mapped.values()[i] - direct.values()[i]));
  std::printf("wootters grid mapped to the symmetric kernel: max deviation %.2e\n", worst);
  return 0;
}
