#pragma once

// Named state generators used by the command line and the tests.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dwigner/numerics.hpp"
#include "dwigner/phase_space.hpp"
#include "dwigner/wigner.hpp"

namespace dwigner {

/// |n0><n0|
inline ComplexMatrix fock_state(std::size_t dim, std::size_t n0) {
  if (n0 >= dim) throw InvalidState("fock state: n0 = " + std::to_string(n0) + " does not fit in dimension " + std::to_string(dim));
  ComplexMatrix m(dim);
  m(n0, n0) = 1.0;
  return m;
}

/// |phi_m0><phi_m0|
inline ComplexMatrix phase_state(const PhaseGrid& grid, long long m0) {
  const auto ket = phase_ket(grid, m0);
  return outer(ket, ket);
}

inline ComplexMatrix maximally_mixed(std::size_t dim) {
  return (1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim);
}

/// (1 + a1 s1 + a2 s2 + a3 s3)/2; |a| <= 1 for a physical state.
inline ComplexMatrix qubit_state(double a1, double a2, double a3) {
  return ComplexMatrix{{0.5 * (1.0 + a3), 0.5 * Complex(a1, -a2)}, {0.5 * Complex(a1, a2), 0.5 * (1.0 - a3)}};
}

/// (|0> + |1>)(<0| + <1|)/2, padded to dim.
inline ComplexMatrix superposition01(std::size_t dim = 2) {
  if (dim < 2) throw InvalidState("superposition01 needs dimension >= 2");
  ComplexMatrix m(dim);
  m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
  return m;
}

/// Smallest dimension that can hold a named state, if the name fixes one.
inline std::optional<std::size_t> natural_dim(const std::vector<std::string>& state_args) {
  if (state_args.empty()) return std::nullopt;
  const std::string& name = state_args[0];
  if (name == "qubit" || name == "superposition01") return 2;
  if (name == "fock" && state_args.size() == 2) {
    try {
      return static_cast<std::size_t>(std::stoull(state_args[1])) + 1;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

inline bool is_named_state(const std::string& name) {
  return name == "fock" || name == "phase" || name == "mixed" || name == "qubit" || name == "superposition01";
}

namespace detail {

inline double parse_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw InvalidState(std::string(what) + ": '" + s + "' is not a number");
  return v;
}

inline long long parse_index(const std::string& s, const char* what) {
  const double v = parse_number(s, what);
  if (v != std::floor(v)) throw InvalidState(std::string(what) + ": '" + s + "' is not an integer");
  return static_cast<long long>(v);
}

inline void expect_args(const std::vector<std::string>& state_args, std::size_t n) {
  if (state_args.size() != n + 1)
    throw InvalidState("state '" + state_args[0] + "' takes " + std::to_string(n) + " parameter(s), got " + std::to_string(state_args.size() - 1));
}

}  // namespace detail

/// Builds a named state: `fock n0`, `phase m0`, `mixed`, `qubit a1 a2 a3`, `superposition01`.
/// The result is validated as a density operator.
inline DensityOperator named_state(const std::vector<std::string>& state_args, const PhaseGrid& grid) {
  if (state_args.empty()) throw InvalidState("empty state specification");
  const std::string& name = state_args[0];
  const std::size_t d = grid.dim();
  ComplexMatrix m(d);
  if (name == "fock") {
    detail::expect_args(state_args, 1);
    const long long n0 = detail::parse_index(state_args[1], "fock");
    if (n0 < 0) throw InvalidState("fock: n0 must be non-negative");
    m = fock_state(d, static_cast<std::size_t>(n0));
  } else if (name == "phase") {
    detail::expect_args(state_args, 1);
    m = phase_state(grid, detail::parse_index(state_args[1], "phase"));
  } else if (name == "mixed") {
    detail::expect_args(state_args, 0);
    m = maximally_mixed(d);
  } else if (name == "qubit") {
    detail::expect_args(state_args, 3);
    if (d != 2) throw InvalidState("qubit state needs dimension 2, got " + std::to_string(d));
    m = qubit_state(detail::parse_number(state_args[1], "qubit"), detail::parse_number(state_args[2], "qubit"),
                    detail::parse_number(state_args[3], "qubit"));
  } else if (name == "superposition01") {
    detail::expect_args(state_args, 0);
    m = superposition01(d);
  } else {
    throw InvalidState("unknown state '" + name + "'");
  }
  return DensityOperator::from_matrix(std::move(m));
}

}  // namespace dwigner
