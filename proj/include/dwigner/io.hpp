#pragma once

// JSON and CSV serialization of kernels, density matrices, Wigner grids and convergence tables.
//
// Complex numbers are written as [re, im] pairs. Tables are row-major nested arrays.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dwigner/kernels.hpp"
#include "dwigner/numerics.hpp"
#include "dwigner/tomography.hpp"
#include "dwigner/wigner.hpp"

namespace dwigner {

using Json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, enough for a lossless double round trip.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("complex entries must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline std::size_t dim_from_json(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<long long>() <= 0) throw FormatError("'dim' must be a positive integer");
  return d.get<std::size_t>();
}

/// d x d nested array of complex pairs.
inline std::vector<Complex> complex_table(const Json& rows, std::size_t d, const char* what) {
  if (!rows.is_array() || rows.size() != d) throw FormatError(std::string(what) + ": expected " + std::to_string(d) + " rows");
  std::vector<Complex> out;
  out.reserve(d * d);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != d) throw FormatError(std::string(what) + ": every row needs " + std::to_string(d) + " entries");
    for (const auto& x : row) out.push_back(complex_from_json(x));
  }
  return out;
}

inline std::vector<double> real_table(const Json& rows, std::size_t d, const char* what) {
  if (!rows.is_array() || rows.size() != d) throw FormatError(std::string(what) + ": expected " + std::to_string(d) + " rows");
  std::vector<double> out;
  out.reserve(d * d);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != d) throw FormatError(std::string(what) + ": every row needs " + std::to_string(d) + " entries");
    for (const auto& x : row) {
      if (!x.is_number()) throw FormatError(std::string(what) + ": entries must be numbers");
      out.push_back(x.get<double>());
    }
  }
  return out;
}

inline Json complex_rows(std::span<const Complex> values, std::size_t d) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < d; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < d; ++j) row.push_back(complex_to_json(values[i * d + j]));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json real_rows(std::span<const double> values, std::size_t d) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < d; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < d; ++j) row.push_back(values[i * d + j]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

// --- kernels: { "dim": d, "values": [[[re,im], ...], ...] }, rows indexed by k

inline Json kernel_to_json(const Kernel& k) {
  return Json{{"dim", k.dim()}, {"values", detail::complex_rows(k.values(), k.dim())}};
}

/// The result carries the "custom" label; run validate() before use.
inline Kernel kernel_from_json(const Json& j) {
  const std::size_t d = detail::dim_from_json(j);
  return Kernel(d, detail::complex_table(detail::field(j, "values"), d, "kernel values"));
}

// --- density matrices: { "dim": d, "matrix": [[[re,im], ...], ...] }

inline Json matrix_to_json(const ComplexMatrix& m) {
  return Json{{"dim", m.dim()}, {"matrix", detail::complex_rows(m.entries(), m.dim())}};
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t d = detail::dim_from_json(j);
  return ComplexMatrix(d, detail::complex_table(detail::field(j, "matrix"), d, "density matrix"));
}

/// Parses and validates; Hermiticity and trace within tol, PSD within the pivot slack.
inline DensityOperator density_from_json(const Json& j, double tol = kTol) {
  return DensityOperator::from_matrix(matrix_from_json(j), tol);
}

// --- Wigner grids: { "dim", "phi0", "kernel", "values": [[...]] } plus "epsilon" when set

inline Json wigner_to_json(const WignerGrid& w) {
  Json j{{"dim", w.dim()},
         {"phi0", w.grid().phi0()},
         {"kernel", w.kernel_label()},
         {"values", detail::real_rows(w.values(), w.dim())}};
  if (w.epsilon()) j["epsilon"] = *w.epsilon();
  return j;
}

inline WignerGrid wigner_from_json(const Json& j) {
  const std::size_t d = detail::dim_from_json(j);
  const Json& phi0 = detail::field(j, "phi0");
  const Json& label = detail::field(j, "kernel");
  if (!phi0.is_number()) throw FormatError("'phi0' must be a number");
  if (!label.is_string()) throw FormatError("'kernel' must be a string");
  std::optional<double> eps;
  if (j.contains("epsilon")) {
    if (!j.at("epsilon").is_number()) throw FormatError("'epsilon' must be a number");
    eps = j.at("epsilon").get<double>();
  }
  return WignerGrid(PhaseGrid(d, phi0.get<double>()), label.get<std::string>(),
                    detail::real_table(detail::field(j, "values"), d, "Wigner values"), eps);
}

/// Header m,n,phi,value; one row per grid point.
inline std::string wigner_to_csv(const WignerGrid& w) {
  std::string out = "m,n,phi,value\n";
  for (std::size_t m = 0; m < w.dim(); ++m)
    for (std::size_t n = 0; n < w.dim(); ++n)
      out += std::to_string(m) + "," + std::to_string(n) + "," + format_double(w.grid().phi(static_cast<long long>(m))) +
             "," + format_double(w(m, n)) + "\n";
  return out;
}

// --- half-integer grids: { "dim": 2N, "N", "phi0", "kernel": "leonhardt", "values": 4N x 4N }

inline constexpr const char* kLeonhardtLabel = "leonhardt";

inline Json half_grid_to_json(const HalfIntegerWignerGrid& w) {
  return Json{{"dim", w.dim()},
              {"N", w.big_n()},
              {"phi0", w.phi0()},
              {"kernel", kLeonhardtLabel},
              {"values", detail::real_rows(w.values(), w.side())}};
}

inline HalfIntegerWignerGrid half_grid_from_json(const Json& j) {
  const std::size_t d = detail::dim_from_json(j);
  if (d % 2 != 0) throw FormatError("half-integer grid needs an even 'dim'");
  const Json& phi0 = detail::field(j, "phi0");
  if (!phi0.is_number()) throw FormatError("'phi0' must be a number");
  const std::size_t big_n = d / 2;
  return HalfIntegerWignerGrid(big_n, phi0.get<double>(), detail::real_table(detail::field(j, "values"), 4 * big_n, "Wigner values"));
}

/// Header m,n,phi,value with half-integer m and n written as decimals.
inline std::string half_grid_to_csv(const HalfIntegerWignerGrid& w) {
  const PhaseGrid grid = w.grid();
  std::string out = "m,n,phi,value\n";
  for (std::size_t mm = 0; mm < w.side(); ++mm)
    for (std::size_t qq = 0; qq < w.side(); ++qq)
      out += format_double(0.5 * static_cast<double>(mm)) + "," + format_double(0.5 * static_cast<double>(qq)) + "," +
             format_double(grid.phi_half(static_cast<long long>(mm))) + "," + format_double(w(mm, qq)) + "\n";
  return out;
}

/// True when a parsed grid document holds the half-integer construction.
inline bool is_half_grid_json(const Json& j) {
  return j.is_object() && j.contains("kernel") && j.at("kernel").is_string() &&
         j.at("kernel").get<std::string>() == kLeonhardtLabel;
}

// --- convergence tables

inline std::string convergence_to_csv(const ConvergenceReport& r) {
  std::string out = "N,n,phi_grid,scaled_value,target,abs_error\n";
  for (const auto& row : r.rows)
    out += std::to_string(row.big_n) + "," + std::to_string(row.n) + "," + format_double(row.phi_grid) + "," +
           format_double(row.scaled_value) + "," + format_double(row.target) + "," + format_double(row.abs_error) + "\n";
  return out;
}

}  // namespace dwigner
