#pragma once

// Command-line front end. run_cli() parses arguments, dispatches to one subcommand and
// returns the process exit code:
//   0 success, 1 verification failure, 2 invalid input (state, file, arguments),
//   3 kernel/dimension mismatch, 4 reconstruction residual above 10*tol,
//   5 invalid embedding for a convergence study.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dwigner/io.hpp"
#include "dwigner/kernels.hpp"
#include "dwigner/quantizer.hpp"
#include "dwigner/states.hpp"
#include "dwigner/tomography.hpp"
#include "dwigner/wigner.hpp"

namespace dwigner::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitInvalidInput = 2,
  kExitKernelMismatch = 3,
  kExitResidual = 4,
  kExitEmbedding = 5,
};

struct RunConfig {
  std::optional<std::size_t> dim;
  double phi0 = 0.0;
  std::string kernel = "symmetric";
  std::optional<double> epsilon;
  std::vector<std::string> state;
  std::string out;
  std::string format = "json";
};

/// Kernel choice that is not compatible with the requested dimension or command.
class KernelChoiceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline constexpr const char* kFilePrefix = "file:";

inline bool is_file_kernel(const std::string& choice) { return choice.rfind(kFilePrefix, 0) == 0; }

inline Kernel load_kernel_file(const std::string& choice) {
  return kernel_from_json(parse_json(read_text_file(choice.substr(std::string(kFilePrefix).size()))));
}

/// --dim, else the kernel file's dimension, else the state's natural dimension.
inline std::size_t resolve_dim(const RunConfig& cfg) {
  if (cfg.dim) {
    if (*cfg.dim == 0) throw InvalidState("--dim must be positive");
    return *cfg.dim;
  }
  if (is_file_kernel(cfg.kernel)) return load_kernel_file(cfg.kernel).dim();
  if (auto d = natural_dim(cfg.state)) return *d;
  throw InvalidState("--dim is required for this state");
}

/// Named or file kernel on dimension d.
inline Kernel resolve_kernel(const RunConfig& cfg, std::size_t d) {
  const std::string& choice = cfg.kernel;
  if (choice == "symmetric" || choice == "wootters") {
    if (d % 2 == 0) throw KernelChoiceError("kernel '" + choice + "' needs an odd dimension, got " + std::to_string(d));
    return choice == "symmetric" ? symmetric_kernel(d / 2) : wootters_kernel(d / 2);
  }
  if (choice == "almost-symmetric") {
    if (d % 2 != 0) throw KernelChoiceError("kernel 'almost-symmetric' needs an even dimension, got " + std::to_string(d));
    try {
      return almost_symmetric_kernel(d / 2, cfg.epsilon.value_or(default_epsilon(d / 2)));
    } catch (const InvalidKernel& e) {
      throw KernelChoiceError(e.what());
    }
  }
  if (is_file_kernel(choice)) {
    Kernel k = load_kernel_file(choice);
    if (k.dim() != d) throw KernelChoiceError("kernel file has dimension " + std::to_string(k.dim()) + ", expected " + std::to_string(d));
    return k;
  }
  throw KernelChoiceError("kernel '" + choice + "' is not usable here");
}

/// Named generator, or a single token naming a density-matrix JSON file.
inline DensityOperator resolve_state(const std::vector<std::string>& state_args, const PhaseGrid& grid) {
  if (state_args.empty()) throw InvalidState("--state is required");
  if (is_named_state(state_args[0])) return named_state(state_args, grid);
  if (state_args.size() != 1) throw InvalidState("unknown state '" + state_args[0] + "'");
  DensityOperator rho = density_from_json(parse_json(read_text_file(state_args[0])));
  if (rho.dim() != grid.dim())
    throw DimensionMismatch("state file '" + state_args[0] + "'", rho.dim(), grid.dim());
  return rho;
}

/// Writes text to the --out path, or to the stream when no path was given.
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text_file(path, text);
}

inline std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << x;
  return ss.str();
}

/// Where the human-readable summary goes: stdout when the data goes to a file,
/// stderr when the data itself is on stdout.
inline std::ostream& summary_stream(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return cfg.out.empty() ? err : out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// wigner

inline int cmd_wigner(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::size_t d = detail::resolve_dim(cfg);
  const PhaseGrid grid(d, cfg.phi0);
  std::ostream& info = detail::summary_stream(cfg, out, err);

  if (cfg.kernel == kLeonhardtLabel) {
    if (d % 2 != 0) throw KernelChoiceError("kernel 'leonhardt' needs an even dimension, got " + std::to_string(d));
    const DensityOperator rho = detail::resolve_state(cfg.state, grid);
    const HalfIntegerWignerGrid w = leonhardt_wigner(d / 2, cfg.phi0, rho);
    detail::emit(cfg.out, cfg.format == "csv" ? half_grid_to_csv(w) : half_grid_to_json(w).dump(2) + "\n", out);
    info << "kernel: leonhardt (dim " << d << ", " << w.side() << "x" << w.side() << " half-integer grid)\n";
    info << "normalization: " << format_double(w.total()) << "\n";
    return kExitOk;
  }

  const Kernel kernel = detail::resolve_kernel(cfg, d);
  if (!validate(kernel).valid()) throw KernelChoiceError("kernel '" + cfg.kernel + "' fails validation");
  const DensityOperator rho = detail::resolve_state(cfg.state, grid);
  const Quantizer q = Quantizer::build(grid, kernel);
  if (q.ill_conditioned())
    err << "warning: min |K| = " << detail::fmt(kernel.min_abs()) << " is below " << detail::fmt(kConditioningThreshold)
        << "; the inverse map is ill-conditioned\n";
  const WignerGrid w = wigner(q, rho);
  detail::emit(cfg.out, cfg.format == "csv" ? wigner_to_csv(w) : wigner_to_json(w).dump(2) + "\n", out);

  const Marginals marg = marginals(w);
  double phase_dev = 0.0, number_dev = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const auto phi = phase_ket(grid, static_cast<long long>(i));
    phase_dev = std::max(phase_dev, std::abs(marg.phase[i] - matrix_element(phi, rho.matrix(), phi).real()));
    number_dev = std::max(number_dev, std::abs(marg.number[i] - rho.matrix()(i, i).real()));
  }
  info << "kernel: " << kernel.label() << " (dim " << d << ", phi0 " << cfg.phi0 << ")\n";
  info << "normalization: " << format_double(w.total()) << "\n";
  info << "phase marginal max deviation: " << detail::fmt(phase_dev) << "\n";
  info << "number marginal max deviation: " << detail::fmt(number_dev) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reconstruct

namespace detail {

/// Kernel a stored grid was produced with; --kernel may confirm or (for custom grids) supply it.
inline Kernel kernel_for_grid(const WignerGrid& w, const RunConfig& cfg, bool kernel_given) {
  const std::size_t d = w.dim();
  if (w.kernel_label() == family_label(KernelFamily::Custom)) {
    if (!is_file_kernel(cfg.kernel)) throw KernelChoiceError("grid uses a custom kernel; pass --kernel file:<path>");
    return resolve_kernel(cfg, d);
  }
  if (kernel_given && cfg.kernel != w.kernel_label())
    throw KernelMismatch("grid was produced with kernel '" + w.kernel_label() + "', not '" + cfg.kernel + "'");
  RunConfig k = cfg;
  k.kernel = w.kernel_label();
  if (w.epsilon()) k.epsilon = w.epsilon();
  return resolve_kernel(k, d);
}

}  // namespace detail

/// Residual = max(round-trip deviation of the grid, Hermiticity defect, |Tr - 1|, negativity).
inline int cmd_reconstruct(const RunConfig& cfg, const std::string& grid_path, bool kernel_given, std::ostream& out,
                           std::ostream& err) {
  const Json doc = parse_json(read_text_file(grid_path));
  std::ostream& info = detail::summary_stream(cfg, out, err);
  ComplexMatrix rho(1);
  double round_trip = 0.0;

  if (is_half_grid_json(doc)) {
    const HalfIntegerWignerGrid w = half_grid_from_json(doc);
    rho = leonhardt_reconstruct_matrix(w);
    const HalfIntegerWignerGrid again = dwigner::detail::leonhardt_values(w.big_n(), w.phi0(), rho);
    for (std::size_t i = 0; i < w.values().size(); ++i)
      round_trip = std::max(round_trip, std::abs(again.values()[i] - w.values()[i]));
  } else {
    const WignerGrid w = wigner_from_json(doc);
    const Kernel kernel = detail::kernel_for_grid(w, cfg, kernel_given);
    if (!validate(kernel).valid()) throw KernelChoiceError("kernel fails validation");
    rho = from_phase_elements(w.grid(), phase_basis_elements(w, kernel));
    const WignerGrid again = DirectWigner(w.grid(), kernel, rho).grid_values();
    for (std::size_t i = 0; i < w.values().size(); ++i)
      round_trip = std::max(round_trip, std::abs(again.values()[i] - w.values()[i]));
  }

  const StateDefects defects = state_defects(rho);
  const double residual = std::max(round_trip, defects.worst());
  info << "dim: " << rho.dim() << "\n";
  info << "round-trip deviation: " << detail::fmt(round_trip) << "\n";
  info << "trace deviation: " << detail::fmt(defects.trace) << "\n";
  info << "negativity: " << detail::fmt(defects.negativity) << "\n";
  info << "residual: " << detail::fmt(residual) << "\n";
  if (residual > 10.0 * kTol) {
    err << "error: reconstruction residual " << detail::fmt(residual) << " exceeds " << detail::fmt(10.0 * kTol) << "\n";
    return kExitResidual;
  }
  detail::emit(cfg.out, matrix_to_json(rho).dump(2) + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

namespace detail {

class CheckPrinter {
 public:
  explicit CheckPrinter(std::ostream& out) : out_(out) {}

  void check(const std::string& name, bool ok, std::optional<double> deviation = std::nullopt) {
    out_ << (ok ? "PASS  " : "FAIL  ") << name;
    if (deviation) out_ << "  (deviation " << fmt(*deviation) << ")";
    out_ << "\n";
    if (!ok) failed_ = true;
  }

  void not_applicable(const std::string& name, const std::string& why) { out_ << "n/a   " << name << "  (" << why << ")\n"; }

  void note(const std::string& name, const std::string& what) { out_ << "info  " << name << "  (" << what << ")\n"; }

  bool failed() const { return failed_; }

 private:
  std::ostream& out_;
  bool failed_ = false;
};

}  // namespace detail

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::size_t d = detail::resolve_dim(cfg);
  const PhaseGrid grid(d, cfg.phi0);
  const Kernel kernel = detail::resolve_kernel(cfg, d);
  detail::CheckPrinter p(out);
  out << "kernel: " << kernel.label() << " (dim " << d << ", phi0 " << cfg.phi0;
  if (kernel.epsilon()) out << ", epsilon " << *kernel.epsilon();
  out << ")\n";

  const ValidityReport v = validate(kernel);
  p.check("kernel entries nonvanishing", v.nonvanishing);
  p.check("kernel Hermiticity conditions", v.hermitian());
  p.check("kernel phase column K(k,0) = 1", v.phase_column_unit);
  p.check("kernel number row K(0,l) = 1", v.number_row_unit);
  if (!v.valid()) {
    out << "kernel is not valid; quantizer checks skipped\n";
    return kExitVerifyFailed;
  }

  const Quantizer q = Quantizer::build(grid, kernel);
  if (q.ill_conditioned()) p.note("conditioning", "min |K| = " + detail::fmt(kernel.min_abs()) + ", inverse map ill-conditioned");
  const QuantizerReport r = verify(q);
  p.check("phase-point operators Hermitian", r.holds(r.hermiticity), r.hermiticity);
  p.check("phase-point operators unit trace", r.holds(r.unit_trace), r.unit_trace);
  p.check("phase marginal of phase-point operators", r.holds(r.phase_marginal), r.phase_marginal);
  p.check("number marginal of phase-point operators", r.holds(r.number_marginal), r.number_marginal);
  p.check("resolution of identity", r.holds(r.resolution), r.resolution);
  p.check("trace overlap (kernel form)", r.holds(r.overlap), r.overlap);
  if (r.unimodular)
    p.check("trace overlap (delta form)", r.holds(r.delta_overlap), r.delta_overlap);
  else
    p.not_applicable("trace overlap (delta form)", "kernel not unimodular; deviation " + detail::fmt(r.delta_overlap));
  p.check("displacement operators from phase-point operators", r.holds(r.displacement), r.displacement);

  const KernelFamily fam = kernel.family();
  if (fam == KernelFamily::Symmetric || fam == KernelFamily::AlmostSymmetric) {
    std::mt19937_64 rng(20240101);
    std::normal_distribution<double> g;
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      ComplexVector f1(d), f2(d);
      for (auto& x : f1) x = {g(rng), g(rng)};
      for (auto& x : f2) x = {g(rng), g(rng)};
      worst = std::max(worst, ordering_check(q, f1, f2).deviation);
    }
    p.check(fam == KernelFamily::Symmetric ? "symmetric ordering of f(phi) g(n)" : "almost-symmetric ordering of f(phi) g(n)",
            worst <= kTol, worst);
  } else {
    p.not_applicable("ordering rule", "no closed ordering rule for kernel '" + kernel.label() + "'");
  }

  if (d % 2 == 0) {
    p.not_applicable("line projectors", "even dim");
  } else {
    const LineSuiteReport lines = line_suite(q);
    p.check("line operators Hermitian", lines.hermiticity <= kTol, lines.hermiticity);
    p.check("line operators complete", lines.completeness <= kTol, lines.completeness);
    p.check("vertical lines give phase projectors", lines.phase_axis <= kTol, lines.phase_axis);
    p.check("horizontal lines give number projectors", lines.number_axis <= kTol, lines.number_axis);
    if (fam == KernelFamily::Wootters) {
      p.check("line operators idempotent", lines.idempotency <= kTol, lines.idempotency);
      p.check("parallel line operators orthogonal", lines.orthogonality <= kTol, lines.orthogonality);
    } else {
      p.note("line operators idempotent", std::string(lines.projective() ? "yes" : "no") + ", max ||P^2 - P|| = " +
                                              detail::fmt(lines.idempotency) + "; only required for the wootters kernel");
    }
  }
  out << (p.failed() ? "result: FAIL\n" : "result: PASS\n");
  return p.failed() ? kExitVerifyFailed : kExitOk;
}

// ---------------------------------------------------------------------------
// converge

inline std::vector<std::size_t> parse_ns(const std::string& text) {
  std::vector<std::size_t> ns;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v <= 0) throw InvalidState("--Ns: '" + item + "' is not a positive integer");
    ns.push_back(static_cast<std::size_t>(v));
  }
  if (ns.empty()) throw InvalidState("--Ns: empty list");
  return ns;
}

inline int cmd_converge(const RunConfig& cfg, const std::string& ns_text, std::size_t n, double phi, std::ostream& out,
                        std::ostream& err) {
  KernelFamily fam;
  if (cfg.kernel == "symmetric")
    fam = KernelFamily::Symmetric;
  else if (cfg.kernel == "wootters")
    fam = KernelFamily::Wootters;
  else if (cfg.kernel == "almost-symmetric")
    fam = KernelFamily::AlmostSymmetric;
  else
    throw KernelChoiceError("converge supports the symmetric, wootters and almost-symmetric kernels");
  const std::vector<std::size_t> ns = parse_ns(ns_text);
  const std::size_t small_dim = detail::resolve_dim(cfg);
  const DensityOperator rho = detail::resolve_state(cfg.state, PhaseGrid(small_dim, cfg.phi0));
  const ConvergenceReport rep = continuum_study(rho.matrix(), n, phi, ns, fam, cfg.phi0);

  detail::emit(cfg.out, convergence_to_csv(rep), out);
  std::ostream& info = detail::summary_stream(cfg, out, err);
  info << "kernel: " << family_label(fam) << ", n = " << n << ", phi = " << phi << "\n";
  const ConvergenceRow& last = rep.rows.back();
  info << "N = " << last.big_n << ": scaled value " << format_double(last.scaled_value) << ", target "
       << format_double(last.target) << ", abs error " << detail::fmt(last.abs_error) << "\n";
  info << "monotone error decrease: " << (rep.monotone ? "yes" : "no") << "\n";
  info << "continuum target summed over n: " << format_double(rep.target_number_sum) << "\n";
  info << "continuum phase density <phi|rho|phi>: " << format_double(rep.phase_density) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// relate

inline int cmd_relate(const RunConfig& cfg, const std::string& direction, const std::string& grid_path,
                      std::ostream& out, std::ostream& err) {
  const Json doc = parse_json(read_text_file(grid_path));
  std::ostream& info = detail::summary_stream(cfg, out, err);
  WignerGrid result(PhaseGrid(1), "");
  Kernel target_kernel = symmetric_kernel(0);

  if (direction == "odd") {
    if (is_half_grid_json(doc)) throw KernelMismatch("relate odd: input is a half-integer grid; use 'relate even'");
    const WignerGrid w = wigner_from_json(doc);
    result = relate_odd(w);
    target_kernel = symmetric_kernel(w.dim() / 2);
  } else {
    if (!is_half_grid_json(doc)) throw KernelMismatch("relate even: input must be a half-integer ('leonhardt') grid");
    const HalfIntegerWignerGrid w = half_grid_from_json(doc);
    const double eps = cfg.epsilon.value_or(default_epsilon(w.big_n()));
    try {
      result = relate_even(w, eps);
      target_kernel = almost_symmetric_table(w.big_n(), eps);
    } catch (const InvalidKernel& e) {
      throw KernelChoiceError(e.what());
    }
  }
  detail::emit(cfg.out, cfg.format == "csv" ? wigner_to_csv(result) : wigner_to_json(result).dump(2) + "\n", out);
  info << "output kernel: " << result.kernel_label() << " (dim " << result.dim() << ")\n";
  info << "normalization: " << format_double(result.total()) << "\n";
  if (!cfg.state.empty()) {
    const DensityOperator rho = detail::resolve_state(cfg.state, result.grid());
    // The forward map only; the almost-symmetric table may have zero entries for this eps.
    const WignerGrid direct = DirectWigner(result.grid(), target_kernel, rho.matrix()).grid_values();
    double dev = 0.0;
    for (std::size_t i = 0; i < direct.values().size(); ++i)
      dev = std::max(dev, std::abs(direct.values()[i] - result.values()[i]));
    info << "max deviation vs direct computation: " << detail::fmt(dev) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// entry point

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Wigner functions on finite phase-space grids", "dwigner"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::size_t dim_value = 0;
  std::string ns_text = "5,10,20,40,80";
  std::size_t n_fixed = 0;
  double phi_fixed = 0.0;
  std::string grid_path;
  std::string direction;

  const auto kernel_check = CLI::Validator(
      [](std::string& s) -> std::string {
        if (s == "symmetric" || s == "wootters" || s == "almost-symmetric" || s == kLeonhardtLabel ||
            detail::is_file_kernel(s))
          return {};
        return "expected symmetric, wootters, almost-symmetric, leonhardt or file:<path>";
      },
      "KERNEL");

  const auto add_common = [&](CLI::App* sub, bool with_state) {
    sub->add_option("--dim", dim_value, "Hilbert-space dimension s+1");
    sub->add_option("--phi0", cfg.phi0, "Reference phase phi0 in radians");
    sub->add_option("--kernel", cfg.kernel, "symmetric | wootters | almost-symmetric | leonhardt | file:<path>")
        ->check(kernel_check);
    sub->add_option("--epsilon", cfg.epsilon, "Shift of the almost-symmetric kernel (radians)");
    if (with_state)
      sub->add_option("--state", cfg.state, "fock n0 | phase m0 | mixed | qubit a1 a2 a3 | superposition01 | <file.json>")
          ->expected(1, 4);
    sub->add_option("--out", cfg.out, "Output path (default: stdout)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* wigner_cmd = app.add_subcommand("wigner", "Wigner function of a state");
  add_common(wigner_cmd, true);

  CLI::App* reconstruct_cmd = app.add_subcommand("reconstruct", "Density matrix from a Wigner grid file");
  add_common(reconstruct_cmd, false);
  reconstruct_cmd->add_option("grid", grid_path, "Wigner grid JSON file")->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "Kernel, quantizer, ordering and line checks");
  add_common(verify_cmd, false);

  CLI::App* converge_cmd = app.add_subcommand("converge", "Scaled Wigner values against their continuum limit");
  add_common(converge_cmd, true);
  converge_cmd->add_option("--Ns", ns_text, "Comma-separated list of N values");
  converge_cmd->add_option("--n", n_fixed, "Photon number n");
  converge_cmd->add_option("--phi", phi_fixed, "Phase angle in radians");

  CLI::App* relate_cmd = app.add_subcommand("relate", "Map a Wootters or half-integer grid to the symmetric-type kernel");
  add_common(relate_cmd, true);
  relate_cmd->add_option("direction", direction, "odd | even")->required()->check(CLI::IsMember({"odd", "even"}));
  relate_cmd->add_option("grid", grid_path, "Input grid JSON file")->required();

  std::vector<std::string> argv_storage{"dwigner"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  const auto has = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
  CLI::App* chosen = app.get_subcommands().front();
  if (has(chosen, "--dim")) cfg.dim = dim_value;
  const bool kernel_given = has(chosen, "--kernel");

  try {
    if (chosen == wigner_cmd) return cmd_wigner(cfg, out, err);
    if (chosen == reconstruct_cmd) return cmd_reconstruct(cfg, grid_path, kernel_given, out, err);
    if (chosen == verify_cmd) return cmd_verify(cfg, out);
    if (chosen == converge_cmd) return cmd_converge(cfg, ns_text, n_fixed, phi_fixed, out, err);
    return cmd_relate(cfg, direction, grid_path, out, err);
  } catch (const EmbeddingError& e) {
    err << "error: " << e.what() << "\n";
    return kExitEmbedding;
  } catch (const ReconstructionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResidual;
  } catch (const InvalidState& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const KernelChoiceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitKernelMismatch;
  } catch (const KernelMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitKernelMismatch;
  } catch (const InvalidKernel& e) {
    err << "error: " << e.what() << "\n";
    return kExitKernelMismatch;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitKernelMismatch;
  } catch (const GridMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitKernelMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

}  // namespace dwigner::cli
