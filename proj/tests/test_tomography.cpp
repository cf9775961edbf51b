#include <gtest/gtest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "dwigner/states.hpp"
#include "dwigner/tomography.hpp"
#include "test_support.hpp"

using namespace dwigner;
namespace ts = testing_support;

namespace {

using Points = std::vector<std::pair<std::size_t, std::size_t>>;

DensityOperator state(const ComplexMatrix& m) { return DensityOperator::from_matrix(m); }

}  // namespace

TEST(LinePoints, AxisAndTiltedLines) {
  EXPECT_EQ(line_points(Line{1, 0, 2, 3}), (Points{{2, 0}, {2, 1}, {2, 2}}));
  EXPECT_EQ(line_points(Line{0, 1, 1, 3}), (Points{{0, 1}, {1, 1}, {2, 1}}));
  EXPECT_EQ(line_points(Line{1, 1, 0, 3}), (Points{{0, 0}, {1, 2}, {2, 1}}));
}

TEST(LinePoints, DegenerateCases) {
  EXPECT_TRUE(line_points(Line{0, 0, 1, 3}).empty());
  EXPECT_EQ(line_points(Line{0, 0, 0, 3}).size(), 9u);
  EXPECT_TRUE(is_degenerate(Line{0, 0, 0, 3}));
  EXPECT_TRUE(is_degenerate(Line{3, 6, 1, 9}));
  EXPECT_FALSE(is_degenerate(Line{3, 1, 1, 9}));
}

TEST(LinePoints, ParallelLinesPartitionTheGrid) {
  for (std::size_t d : {3, 5, 7}) {
    const auto dl = static_cast<long long>(d);
    for (long long n1 = 0; n1 < dl; ++n1)
      for (long long n2 = 0; n2 < dl; ++n2) {
        if (is_degenerate(Line{n1, n2, 0, d})) continue;
        std::vector<int> hits(d * d, 0);
        for (long long n3 = 0; n3 < dl; ++n3) {
          const auto pts = line_points(Line{n1, n2, n3, d});
          EXPECT_EQ(pts.size(), d);
          for (const auto& [m, n] : pts) ++hits[m * d + n];
        }
        for (int h : hits) EXPECT_EQ(h, 1);
      }
  }
}

TEST(LineProjector, WoottersAxisLines) {
  const PhaseGrid grid(5, 0.6);
  const Quantizer q = Quantizer::build(grid, wootters_kernel(2));
  for (long long r = 0; r < 5; ++r) {
    const auto phi = ts::ref_phase_ket(5, 0.6, r);
    EXPECT_LT(frob_dist(line_projector(q, Line{1, 0, r, 5}), outer(phi, phi)), 1e-12);
    EXPECT_LT(frob_dist(line_projector(q, Line{0, 1, r, 5}), fock_state(5, static_cast<std::size_t>(r))), 1e-12);
  }
}

TEST(LineProjector, WoottersSuiteAtDimsThreeFiveSeven) {
  for (std::size_t n : {1, 2, 3}) {
    const LineSuiteReport r = line_suite(Quantizer::build(PhaseGrid(2 * n + 1, 0.1), wootters_kernel(n)));
    EXPECT_TRUE(r.passes()) << "dim " << 2 * n + 1 << " idem " << r.idempotency << " orth " << r.orthogonality;
    EXPECT_GT(r.families, 0u);
  }
}

TEST(LineProjector, SymmetricTiltedLineIsNotProjective) {
  const Quantizer q = Quantizer::build(PhaseGrid(3, 0.0), symmetric_kernel(1));
  const ComplexMatrix p = line_projector(q, Line{1, 1, 0, 3});
  EXPECT_GT(frob_dist(matmul(p, p), p), 1e-3);
  const LineSuiteReport r = line_suite(q);
  EXPECT_FALSE(r.projective());
  // The axis lines still give the marginal projectors.
  EXPECT_LT(r.phase_axis, 1e-12);
  EXPECT_LT(r.number_axis, 1e-12);
  EXPECT_LT(r.completeness, 1e-12);
}

TEST(LineProjector, Errors) {
  const Quantizer even = Quantizer::build(PhaseGrid(4), almost_symmetric_kernel(2, 0.25));
  EXPECT_THROW(line_projector(even, Line{1, 0, 0, 4}), std::invalid_argument);
  const Quantizer q = Quantizer::build(PhaseGrid(3), wootters_kernel(1));
  EXPECT_THROW(line_projector(q, Line{1, 0, 0, 5}), DimensionMismatch);
  EXPECT_THROW(line_projector(q, Line{0, 0, 0, 3}), DegenerateLine);
}

TEST(WoottersClosedForms, MatrixElements) {
  const Quantizer q = Quantizer::build(PhaseGrid(3, 0.0), wootters_kernel(1));
  EXPECT_LT(std::abs(wootters_matrix_element(q, 0, 0, 0, 0) - 1.0), 1e-15);
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n)
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
          const Complex e = wootters_matrix_element(q, m, n, a, b);
          if ((a + b) % 3 != (2 * n) % 3) {
            EXPECT_EQ(e, Complex{});
          }
          EXPECT_LT(std::abs(e - q.omega(m, n)(a, b)), 1e-12);
        }
  const Quantizer s = Quantizer::build(PhaseGrid(3), symmetric_kernel(1));
  EXPECT_THROW(wootters_matrix_element(s, 0, 0, 0, 0), WrongKernelFamily);
}

TEST(WoottersClosedForms, PhaseSumForm) {
  const PhaseGrid grid(5, 0.4);
  const Quantizer q = Quantizer::build(grid, wootters_kernel(2));
  for (std::size_t m = 0; m < 5; ++m)
    for (std::size_t n = 0; n < 5; ++n) EXPECT_LT(frob_dist(wootters_phase_point(grid, m, n), q.omega(m, n)), 1e-12);
}

TEST(HalfIntegerGrid, GroundStateValues) {
  const HalfIntegerWignerGrid w = leonhardt_wigner(1, 0.0, state(fock_state(2, 0)));
  EXPECT_EQ(w.side(), 4u);
  EXPECT_NEAR(w.total(), 1.0, 1e-14);
  for (std::size_t mm = 0; mm < 4; ++mm) {
    EXPECT_NEAR(w(mm, 0), 0.25, 1e-14);
    EXPECT_NEAR(w(mm, 1), 0.0, 1e-14);
    EXPECT_NEAR(w(mm, 2), mm % 2 == 0 ? 0.25 : -0.25, 1e-14);
    EXPECT_NEAR(w(mm, 3), 0.0, 1e-14);
  }
}

TEST(HalfIntegerGrid, NumberFormMatchesPhaseForm) {
  for (std::size_t big_n : {1, 2, 3}) {
    const DensityOperator rho = state(ts::random_density(2 * big_n));
    const auto a = leonhardt_wigner(big_n, 0.3, rho);
    const auto b = leonhardt_wigner_number_form(big_n, 0.3, rho);
    EXPECT_LT(ts::max_abs(a.values(), b.values()), 1e-13) << big_n;
    EXPECT_NEAR(a.total(), 1.0, 1e-13);
  }
}

TEST(HalfIntegerGrid, TraceFormMatchesDirectSum) {
  const std::size_t big_n = 2;
  const PhaseGrid grid(4, 0.7);
  const ComplexMatrix rho = ts::random_density(4);
  const auto w = leonhardt_wigner(big_n, 0.7, state(rho));
  for (std::size_t mm = 0; mm < 8; ++mm)
    for (std::size_t qq = 0; qq < 8; ++qq)
      EXPECT_NEAR(w(mm, qq), trace_of_product(rho, leonhardt_phase_point(grid, mm, qq)).real() / 4.0, 1e-13);
}

TEST(HalfIntegerGrid, OddNumberIndexOnlySeesOddPairs) {
  // Diagonal-in-parity states (no <a|rho|b> with a + b odd) vanish at half-odd n.
  ComplexMatrix rho(4);
  rho(0, 0) = 0.4;
  rho(1, 1) = 0.3;
  rho(2, 2) = 0.2;
  rho(3, 3) = 0.1;
  rho(0, 2) = rho(2, 0) = 0.1;
  const auto w = leonhardt_wigner(2, 0.0, state(rho));
  for (std::size_t mm = 0; mm < 8; ++mm)
    for (std::size_t qq = 1; qq < 8; qq += 2) EXPECT_NEAR(w(mm, qq), 0.0, 1e-14);
}

TEST(HalfIntegerGrid, ReconstructRoundTrips) {
  for (std::size_t big_n : {1, 2}) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix rho = ts::random_density(2 * big_n);
      const auto back = leonhardt_reconstruct(leonhardt_wigner(big_n, -0.2, state(rho)));
      EXPECT_LT(frob_dist(back.matrix(), rho), 1e-10);
    }
  }
  const auto mixed = leonhardt_reconstruct(leonhardt_wigner(1, 0.0, state(maximally_mixed(2))));
  EXPECT_LT(frob_dist(mixed.matrix(), 0.5 * ComplexMatrix::identity(2)), 1e-13);
  const PhaseGrid grid(4, 0.5);
  const ComplexMatrix ph = phase_state(grid, 0);
  EXPECT_LT(frob_dist(leonhardt_reconstruct(leonhardt_wigner(2, 0.5, state(ph))).matrix(), ph), 1e-12);
}

TEST(HalfIntegerGrid, InconsistentGridIsRejected) {
  auto w = leonhardt_wigner(1, 0.0, state(fock_state(2, 0)));
  std::vector<double> values(w.values().begin(), w.values().end());
  values[1] += 0.05;
  values[0] -= 0.05;
  EXPECT_THROW(leonhardt_reconstruct(HalfIntegerWignerGrid(1, 0.0, values)), std::exception);
}

TEST(RelateOdd, MatchesSymmetricKernel) {
  for (std::size_t n : {1, 2}) {
    const PhaseGrid grid(2 * n + 1, 0.5);
    const Quantizer qw = Quantizer::build(grid, wootters_kernel(n));
    const Quantizer qs = Quantizer::build(grid, symmetric_kernel(n));
    std::vector<ComplexMatrix> states{fock_state(2 * n + 1, 0), maximally_mixed(2 * n + 1)};
    for (int t = 0; t < 20; ++t) states.push_back(ts::random_density(2 * n + 1));
    for (const auto& rho : states) {
      const WignerGrid out = relate_odd(wigner(qw, state(rho)));
      EXPECT_EQ(out.kernel_label(), "symmetric");
      EXPECT_LT(ts::max_abs(out.values(), wigner(qs, state(rho)).values()), 1e-12);
    }
  }
  const WignerGrid flat = relate_odd(wigner(Quantizer::build(PhaseGrid(3), wootters_kernel(1)), state(maximally_mixed(3))));
  for (double v : flat.values()) EXPECT_NEAR(v, 1.0 / 9.0, 1e-14);
}

TEST(RelateOdd, RejectsOtherKernels) {
  const WignerGrid w = wigner(Quantizer::build(PhaseGrid(3), symmetric_kernel(1)), state(maximally_mixed(3)));
  EXPECT_THROW(relate_odd(w), KernelMismatch);
}

TEST(RelateEven, QubitPoleMatchesClosedValues) {
  const WignerGrid out = relate_even(leonhardt_wigner(1, 0.0, state(qubit_state(0, 0, 1))), kPi / 4);
  const std::vector<double> expected{0.5, 0.0, 0.5, 0.0};
  EXPECT_LT(ts::max_abs(out.values(), expected), 1e-13);
  EXPECT_EQ(out.kernel_label(), "almost-symmetric");
  ASSERT_TRUE(out.epsilon().has_value());
  EXPECT_DOUBLE_EQ(*out.epsilon(), kPi / 4);
}

TEST(RelateEven, MatchesAlmostSymmetricKernel) {
  for (std::size_t big_n : {1, 2, 3}) {
    const PhaseGrid grid(2 * big_n, 0.15);
    const Quantizer qa = Quantizer::build(grid, almost_symmetric_kernel(big_n, 0.25));
    for (int t = 0; t < 20; ++t) {
      const DensityOperator rho = state(ts::random_density(2 * big_n));
      EXPECT_LT(ts::max_abs(relate_even(leonhardt_wigner(big_n, 0.15, rho), 0.25).values(), wigner(qa, rho).values()), 1e-12);
    }
  }
}

TEST(RelateEven, MaximallyMixedStaysConstant) {
  const WignerGrid out = relate_even(leonhardt_wigner(2, 0.0, state(maximally_mixed(4))), 0.25);
  for (double v : out.values()) EXPECT_NEAR(v, 1.0 / 16.0, 1e-14);
}

TEST(RelateEven, RejectsVanishingCosine) {
  const auto w = leonhardt_wigner(1, 0.0, state(maximally_mixed(2)));
  EXPECT_THROW(relate_even(w, kPi / 2), InvalidKernel);
}

TEST(Continuum, EmbedAndSupport) {
  const ComplexMatrix rho = superposition01();
  const ComplexMatrix big = embed(rho, 7);
  EXPECT_EQ(big.dim(), 7u);
  EXPECT_EQ(big(1, 0), rho(1, 0));
  EXPECT_EQ(support_max(big), 1u);
  EXPECT_THROW(embed(big, 3), EmbeddingError);
}

TEST(Continuum, WoottersTargetIsQuarterPiAndPhaseIndependent) {
  const ComplexMatrix rho = superposition01();
  for (double phi : {0.0, 0.7, 2.0})
    for (std::size_t n : {0, 1}) EXPECT_NEAR(continuum_wootters_target(rho, n, phi), 1.0 / (4.0 * kPi), 1e-15);
}

TEST(Continuum, SymmetricTarget) {
  const ComplexMatrix rho = superposition01();
  for (double phi : {0.0, 0.7, 2.0})
    EXPECT_NEAR(continuum_symmetric_target(rho, 0, phi), (1.0 + std::cos(phi)) / (4.0 * kPi), 1e-15);
  EXPECT_NEAR(continuum_phase_density(rho, 0.7), (1.0 + std::cos(0.7)) / (2.0 * kPi), 1e-15);
}

TEST(Continuum, WoottersStudyConverges) {
  const std::vector<std::size_t> ns{5, 10, 20, 40, 80};
  for (std::size_t n : {0, 1}) {
    const ConvergenceReport r = continuum_study(superposition01(), n, 0.0, ns, KernelFamily::Wootters);
    ASSERT_EQ(r.rows.size(), ns.size());
    EXPECT_TRUE(r.monotone);
    EXPECT_NEAR(r.rows.back().scaled_value, 1.0 / (4.0 * kPi), 1e-6);
    EXPECT_NEAR(r.target_number_sum, 1.0 / (2.0 * kPi), 1e-14);
    EXPECT_NEAR(r.phase_density, 1.0 / kPi, 1e-14);
  }
}

TEST(Continuum, SymmetricStudyRecoversPhaseMarginal) {
  const std::vector<std::size_t> ns{5, 10, 20, 40};
  const ConvergenceReport r = continuum_study(superposition01(), 0, 0.0, ns, KernelFamily::Symmetric);
  EXPECT_TRUE(r.monotone);
  EXPECT_NEAR(r.rows.back().scaled_value, 1.0 / (2.0 * kPi), 1e-12);
  EXPECT_NEAR(r.target_number_sum, r.phase_density, 1e-14);
}

TEST(Continuum, FockZeroIsConstantAtEveryN) {
  const std::vector<std::size_t> ns{5, 10, 20, 40, 80};
  const ConvergenceReport r = continuum_study(fock_state(1, 0), 0, 1.0, ns, KernelFamily::Symmetric);
  for (const auto& row : r.rows) {
    EXPECT_NEAR(row.scaled_value, 1.0 / (2.0 * kPi), 1e-13);
    EXPECT_NEAR(row.target, 1.0 / (2.0 * kPi), 1e-15);
    EXPECT_LE(std::abs(row.phi_offset), kPi / static_cast<double>(2 * row.big_n + 1) + 1e-12);
  }
}

TEST(Continuum, NearestGridPointAndOffset) {
  const std::vector<std::size_t> ns{5};
  const ConvergenceReport r = continuum_study(superposition01(), 0, 1.0, ns, KernelFamily::Symmetric, 0.0);
  const double step = 2.0 * kPi / 11.0;
  EXPECT_NEAR(r.rows[0].phi_grid, 2.0 * step, 1e-14);
  EXPECT_NEAR(r.rows[0].phi_offset, 1.0 - 2.0 * step, 1e-14);
}

TEST(Continuum, EmbeddingTooSmallIsRejected) {
  ComplexMatrix rho = fock_state(4, 3);
  const std::vector<std::size_t> ns{5, 3};
  EXPECT_THROW(continuum_study(rho, 0, 0.0, ns, KernelFamily::Wootters), EmbeddingError);
}
