#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "dwigner/states.hpp"
#include "dwigner/wigner.hpp"
#include "test_support.hpp"

using namespace dwigner;
namespace ts = testing_support;

namespace {

DensityOperator state(const ComplexMatrix& m) { return DensityOperator::from_matrix(m); }

std::vector<Kernel> kernels_up_to(std::size_t max_dim) {
  std::vector<Kernel> out;
  for (std::size_t n = 1; 2 * n <= max_dim; ++n) {
    out.push_back(almost_symmetric_kernel(n, default_epsilon(n)));
    if (2 * n + 1 <= max_dim) {
      out.push_back(symmetric_kernel(n));
      out.push_back(wootters_kernel(n));
    }
  }
  return out;
}

}  // namespace

TEST(DensityOperator, AcceptsValidStates) {
  EXPECT_NO_THROW(state(ts::random_density(4)));
  EXPECT_NO_THROW(state(ts::random_pure(5)));
  EXPECT_NO_THROW(state(maximally_mixed(3)));
}

TEST(DensityOperator, RejectsEachDefect) {
  ComplexMatrix m = maximally_mixed(2);
  m(0, 1) = 0.3;
  EXPECT_THROW(state(m), InvalidState);

  EXPECT_THROW(state(2.0 * maximally_mixed(3)), InvalidState);

  ComplexMatrix neg{{1.2, 0.0}, {0.0, -0.2}};
  EXPECT_THROW(state(neg), InvalidState);
}

TEST(DensityOperator, DefectsReported) {
  ComplexMatrix neg{{1.2, 0.0}, {0.0, -0.2}};
  const StateDefects d = state_defects(neg);
  EXPECT_NEAR(d.negativity, 0.2, 1e-12);
  EXPECT_NEAR(d.trace, 0.0, 1e-15);
  EXPECT_EQ(d.hermiticity, 0.0);
  EXPECT_NEAR(d.worst(), 0.2, 1e-12);
}

TEST(Wigner, MaximallyMixedIsFlat) {
  for (const Kernel& k : kernels_up_to(7)) {
    const std::size_t d = k.dim();
    const WignerGrid w = wigner(Quantizer::build(PhaseGrid(d, 0.4), k), state(maximally_mixed(d)));
    for (double v : w.values()) EXPECT_NEAR(v, 1.0 / static_cast<double>(d * d), 1e-14) << k.label();
  }
}

TEST(Wigner, SymmetricFockStateIsUniformInPhase) {
  const PhaseGrid grid(5, 0.3);
  const WignerGrid w = wigner(Quantizer::build(grid, symmetric_kernel(2)), state(fock_state(5, 3)));
  for (std::size_t m = 0; m < 5; ++m)
    for (std::size_t n = 0; n < 5; ++n) EXPECT_NEAR(w(m, n), n == 3 ? 0.2 : 0.0, 1e-14);
}

TEST(Wigner, QubitPoleGivesHalfZeroHalfZero) {
  const WignerGrid w = wigner(Quantizer::build(PhaseGrid(2, 0.0), almost_symmetric_kernel(1, kPi / 4)),
                              state(qubit_state(0, 0, 1)));
  const std::vector<double> expected{0.5, 0.0, 0.5, 0.0};
  EXPECT_LT(ts::max_abs(w.values(), expected), 1e-14);
}

TEST(Wigner, SymmetricClosedForm) {
  const PhaseGrid grid(7, -0.5);
  const DensityOperator rho = state(ts::random_density(7));
  const WignerGrid a = wigner(Quantizer::build(grid, symmetric_kernel(3)), rho);
  EXPECT_LT(ts::max_abs(a.values(), wigner_symmetric_closed(grid, rho).values()), 1e-13);
}

TEST(Wigner, AlmostSymmetricClosedForm) {
  const PhaseGrid grid(6, 0.2);
  const DensityOperator rho = state(ts::random_density(6));
  const WignerGrid a = wigner(Quantizer::build(grid, almost_symmetric_kernel(3, 0.4)), rho);
  EXPECT_LT(ts::max_abs(a.values(), wigner_almost_symmetric_closed(grid, 0.4, rho).values()), 1e-13);
}

TEST(Wigner, WoottersClosedForms) {
  for (std::size_t n : {1, 2, 3}) {
    const PhaseGrid grid(2 * n + 1, 0.8);
    const DensityOperator rho = state(ts::random_density(2 * n + 1));
    const WignerGrid a = wigner(Quantizer::build(grid, wootters_kernel(n)), rho);
    EXPECT_LT(ts::max_abs(a.values(), wigner_wootters_number_form(grid, rho).values()), 1e-13);
    EXPECT_LT(ts::max_abs(a.values(), wigner_wootters_phase_form(grid, rho).values()), 1e-13);
  }
}

TEST(Wigner, WoottersRSumAgreesBelowTheWrap) {
  // Support on photon numbers <= N and n <= N: then n' + n'' = 2n never wraps mod 2N+1.
  const PhaseGrid grid(5, 0.0);
  ComplexMatrix small = ts::random_density(3);
  ComplexMatrix rho(5);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) rho(i, j) = small(i, j);
  const WignerGrid a = wigner(Quantizer::build(grid, wootters_kernel(2)), state(rho));
  for (std::size_t m = 0; m < 5; ++m)
    for (std::size_t n = 0; n <= 2; ++n) EXPECT_NEAR(a(m, n), wootters_r_sum(grid, rho, m, n), 1e-13);
  // Above the wrap the literal sum misses the pairs with n' + n'' = 2n - (2N+1).
  double missed = 0.0;
  for (std::size_t m = 0; m < 5; ++m) missed = std::max(missed, std::abs(a(m, 3) - wootters_r_sum(grid, rho, m, 3)));
  EXPECT_GT(missed, 1e-3);
}

TEST(Wigner, WoottersFockStateMatchesRSum) {
  const PhaseGrid grid(5, 0.0);
  const ComplexMatrix rho = fock_state(5, 2);
  const WignerGrid a = wigner(Quantizer::build(grid, wootters_kernel(2)), state(rho));
  for (std::size_t m = 0; m < 5; ++m)
    for (std::size_t n = 0; n < 5; ++n) EXPECT_NEAR(a(m, n), wootters_r_sum(grid, rho, m, n), 1e-14);
}

TEST(Wigner, DirectEvaluationMatchesQuantizer) {
  for (const Kernel& k : kernels_up_to(6)) {
    const PhaseGrid grid(k.dim(), 1.2);
    const ComplexMatrix rho = ts::random_density(k.dim());
    const WignerGrid a = wigner(Quantizer::build(grid, k), state(rho));
    EXPECT_LT(ts::max_abs(a.values(), DirectWigner(grid, k, rho).grid_values().values()), 1e-13) << k.label();
  }
}

TEST(Wigner, NormalizedAndLinear) {
  const PhaseGrid grid(5, 0.0);
  const Quantizer q = Quantizer::build(grid, wootters_kernel(2));
  const ComplexMatrix r1 = ts::random_density(5), r2 = ts::random_pure(5);
  const double alpha = 0.35;
  const WignerGrid w1 = wigner(q, state(r1)), w2 = wigner(q, state(r2));
  const WignerGrid mix = wigner(q, state(alpha * r1 + (1.0 - alpha) * r2));
  EXPECT_NEAR(w1.total(), 1.0, 1e-13);
  EXPECT_NEAR(w2.total(), 1.0, 1e-13);
  for (std::size_t i = 0; i < 25; ++i)
    EXPECT_NEAR(mix.values()[i], alpha * w1.values()[i] + (1.0 - alpha) * w2.values()[i], 1e-14);
}

TEST(Wigner, RejectsDimensionMismatch) {
  const Quantizer q = Quantizer::build(PhaseGrid(3), symmetric_kernel(1));
  EXPECT_THROW(wigner(q, state(maximally_mixed(4))), DimensionMismatch);
}

TEST(Expectation, ConstantAndNumber) {
  const PhaseGrid grid(5, 0.1);
  const Quantizer q = Quantizer::build(grid, symmetric_kernel(2));
  const WignerGrid w = wigner(q, state(fock_state(5, 3)));
  EXPECT_NEAR(std::abs(expectation(w, tabulate(grid, [](std::size_t, std::size_t) { return Complex(1.0); })) - 1.0), 0.0,
              1e-13);
  EXPECT_NEAR(std::abs(expectation(w, tabulate(grid, [](std::size_t, std::size_t n) { return Complex(double(n)); })) - 3.0),
              0.0, 1e-13);
}

TEST(Expectation, MatchesTraceWithQuantizedObservable) {
  for (const Kernel& k : kernels_up_to(5)) {
    const PhaseGrid grid(k.dim(), 0.6);
    const Quantizer q = Quantizer::build(grid, k);
    const ComplexMatrix rho = ts::random_density(k.dim());
    const GridFunction f = ts::random_function(grid);
    EXPECT_LT(std::abs(expectation(wigner(q, state(rho)), f) - trace_of_product(quantize(q, f), rho)), 1e-12);
  }
}

TEST(Expectation, RejectsForeignGrid) {
  const Quantizer q = Quantizer::build(PhaseGrid(3), symmetric_kernel(1));
  const WignerGrid w = wigner(q, state(maximally_mixed(3)));
  EXPECT_THROW(expectation(w, GridFunction(PhaseGrid(5))), GridMismatch);
}

TEST(Marginals, PhaseAndNumberStates) {
  const PhaseGrid grid(5, 0.25);
  const Quantizer q = Quantizer::build(grid, wootters_kernel(2));
  const Marginals a = marginals(wigner(q, state(phase_state(grid, 2))));
  const Marginals b = marginals(wigner(q, state(fock_state(5, 4))));
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(a.phase[i], i == 2 ? 1.0 : 0.0, 1e-13);
    EXPECT_NEAR(b.number[i], i == 4 ? 1.0 : 0.0, 1e-13);
  }
}

TEST(Marginals, MatchMatrixElementsForEveryKernel) {
  for (const Kernel& k : kernels_up_to(7)) {
    const PhaseGrid grid(k.dim(), -0.9);
    const ComplexMatrix rho = ts::random_density(k.dim());
    const Marginals mg = marginals(wigner(Quantizer::build(grid, k), state(rho)));
    for (std::size_t i = 0; i < k.dim(); ++i) {
      const auto phi = ts::ref_phase_ket(k.dim(), -0.9, static_cast<long long>(i));
      EXPECT_NEAR(mg.phase[i], matrix_element(phi, rho, phi).real(), 1e-12);
      EXPECT_NEAR(mg.number[i], rho(i, i).real(), 1e-12);
    }
  }
}

TEST(Reconstruct, RoundTripsForEveryKernel) {
  for (const Kernel& k : kernels_up_to(7)) {
    const PhaseGrid grid(k.dim(), 0.45);
    const Quantizer q = Quantizer::build(grid, k);
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix rho = ts::random_density(k.dim());
      const WignerGrid w = wigner(q, state(rho));
      const DensityOperator back = reconstruct(w, k);
      EXPECT_LT(frob_dist(back.matrix(), rho), 1e-9) << k.label() << " " << k.dim();
      EXPECT_LT(ts::max_abs(wigner(q, back).values(), w.values()), 1e-10);
    }
  }
}

TEST(Reconstruct, QuantizerPathsAgree) {
  const PhaseGrid grid(5, 0.2);
  const Quantizer qw = Quantizer::build(grid, wootters_kernel(2));
  const ComplexMatrix rho = ts::random_density(5);
  const WignerGrid w = wigner(qw, state(rho));
  EXPECT_LT(frob_dist(reconstruct_unimodular(qw, w), rho), 1e-11);
  EXPECT_LT(frob_dist(reconstruct_via_quantizer(qw, w), rho), 1e-11);

  const Quantizer qs = Quantizer::build(grid, symmetric_kernel(2));
  const WignerGrid ws = wigner(qs, state(rho));
  EXPECT_LT(frob_dist(reconstruct_via_quantizer(qs, ws), rho), 1e-11);
  EXPECT_THROW(reconstruct_unimodular(qs, ws), WrongKernelFamily);
}

TEST(Reconstruct, SymmetricFormulasAgreeWithGeneralPath) {
  for (std::size_t n : {1, 2, 3}) {
    const PhaseGrid grid(2 * n + 1, 0.3);
    const ComplexMatrix rho = ts::random_density(2 * n + 1);
    const WignerGrid w = wigner(Quantizer::build(grid, symmetric_kernel(n)), state(rho));
    EXPECT_LT(frob_dist(symmetric_phase_elements(w), phase_basis_elements(w, symmetric_kernel(n))), 1e-11);
    EXPECT_LT(frob_dist(reconstruct_symmetric(w), rho), 1e-11);
    EXPECT_LT(frob_dist(symmetric_number_elements(w), rho), 1e-11);
  }
}

TEST(Reconstruct, SymmetricDenominatorsNeverVanishOnOddGrids) {
  // k (phi_r - phi_r') = pi (mod 2 pi) would need 2k(r - r')/d odd, impossible for odd d.
  for (std::size_t d : {3, 5, 7, 9}) {
    const PhaseGrid grid(d, -kPi / static_cast<double>(d));
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t rp = 0; rp < d; ++rp) EXPECT_TRUE(detail::symmetric_inner_sum(grid, m, r, rp).has_value());
  }
}

TEST(Reconstruct, KernelMismatchIsRejected) {
  const PhaseGrid grid(3, 0.0);
  const WignerGrid w = wigner(Quantizer::build(grid, wootters_kernel(1)), state(maximally_mixed(3)));
  EXPECT_THROW(reconstruct(w, symmetric_kernel(1)), KernelMismatch);
  EXPECT_THROW(reconstruct(w, symmetric_kernel(2)), DimensionMismatch);
  EXPECT_THROW(reconstruct_symmetric(w), KernelMismatch);
}

TEST(Reconstruct, TamperedGridIsNotAState) {
  const PhaseGrid grid(3, 0.0);
  WignerGrid w = wigner(Quantizer::build(grid, symmetric_kernel(1)), state(fock_state(3, 0)));
  w(0, 0) += 0.1;
  const ComplexMatrix m = reconstruct_matrix(w, symmetric_kernel(1));
  EXPECT_GT(state_defects(m).worst(), 1e-3);
  EXPECT_THROW(reconstruct(w, symmetric_kernel(1)), InvalidState);
}

TEST(Reconstruct, CustomComplexKernelRoundTrips) {
  for (std::size_t d = 2; d <= 6; ++d) {
    const Kernel k = ts::random_valid_kernel(d);
    const PhaseGrid grid(d, 0.5);
    const ComplexMatrix rho = ts::random_density(d);
    const WignerGrid w = wigner(Quantizer::build(grid, k), state(rho));
    EXPECT_LT(frob_dist(reconstruct(w, k).matrix(), rho), 1e-10) << d;
  }
}
