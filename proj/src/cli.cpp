// Copyright 2026 The dwq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "dwq/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dwq/io.hpp"
#include "dwq/linalg.hpp"
#include "dwq/pathsum.hpp"
#include "dwq/quantization.hpp"
#include "dwq/symbol_lang.hpp"
#include "dwq/weyl.hpp"

namespace dwq {

bool RunReport::passed() const {
  for (const Metric& m : metrics)
    if (!m.passed()) return false;
  return true;
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : parameters) params[k] = v;
  doc["parameters"] = params;
  nlohmann::ordered_json ms = nlohmann::ordered_json::array();
  for (const Metric& m : metrics) {
    nlohmann::ordered_json item;
    item["name"] = m.name;
    item["value"] = std::isfinite(m.value) ? nlohmann::ordered_json(m.value) : nlohmann::ordered_json(nullptr);
    item["tolerance"] = m.tolerance ? nlohmann::ordered_json(*m.tolerance) : nlohmann::ordered_json(nullptr);
    ms.push_back(item);
  }
  doc["metrics"] = ms;
  doc["status"] = passed() ? "PASS" : "FAIL";
  return doc.dump();
}

std::string RunReport::to_table() const {
  std::ostringstream os;
  os << command << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& [k, v] : parameters) os << "  " << std::left << std::setw(28) << k << v << "\n";
  for (const Metric& m : metrics) {
    os << "  " << std::left << std::setw(28) << m.name << std::setw(28) << format_double(m.value);
    if (m.tolerance) os << "<= " << format_double(*m.tolerance) << (m.passed() ? "  ok" : "  EXCEEDED");
    os << "\n";
  }
  return os.str();
}

namespace {

struct SymbolInput {
  std::string file;
  std::string expr;
  std::size_t n = 0;
};

void add_symbol_input(CLI::App* cmd, SymbolInput& in) {
  cmd->add_option("symbol", in.file, "Symbol JSON file");
  cmd->add_option("--expr", in.expr, "Real symbol expression in p, q, n (instead of a file)");
  cmd->add_option("--n", in.n, "Dimension for --expr");
}

Symbol load_symbol(const SymbolInput& in, RunReport& report) {
  if (!in.expr.empty()) {
    if (!in.file.empty()) throw CLI::ValidationError("give either a symbol file or --expr, not both");
    if (in.n == 0) throw CLI::ValidationError("--expr needs --n >= 1");
    report.parameters.emplace_back("expr", in.expr);
    report.parameters.emplace_back("n", std::to_string(in.n));
    return symbol_from_expr(*parse_expr(in.expr), in.n);
  }
  if (in.file.empty()) throw CLI::ValidationError("a symbol file or --expr is required");
  report.parameters.emplace_back("symbol", in.file);
  SymbolDocument doc = symbol_from_json(read_text_file(in.file));
  if (doc.expr) report.parameters.emplace_back("expr", *doc.expr);
  report.parameters.emplace_back("n", std::to_string(doc.symbol.n()));
  return std::move(doc.symbol);
}

int finish(const RunReport& report, bool pretty, std::ostream& out) {
  out << (pretty ? report.to_table() : report.to_json() + "\n");
  return report.passed() ? kExitOk : kExitNumerical;
}

CMatrix matrix_power(const CMatrix& step, std::size_t count) {
  CMatrix total = step;
  for (std::size_t k = 1; k < count; ++k) total = mat_mul(step, total);
  return total;
}

double tolerance_or(const std::optional<double>& eps, double fallback) { return eps ? *eps : fallback; }

// weyl ----------------------------------------------------------------------

int cmd_weyl(std::size_t n, const std::string& out_dir, std::optional<double> eps, bool pretty, std::ostream& out) {
  RunReport report{"weyl", {{"n", std::to_string(n)}, {"out", out_dir}}, {}};
  const WeylPair wp = weyl_pair(n);
  const double defect = frob_dist(wp.u * wp.v, wp.omega * (wp.v * wp.u));
  std::filesystem::path dir(out_dir);
  write_text_file((dir / "U.json").string(), matrix_to_json(wp.u));
  write_text_file((dir / "V.json").string(), matrix_to_json(wp.v));
  report.metrics.push_back({"commutation_defect", defect, tolerance_or(eps, 1e-12)});
  return finish(report, pretty, out);
}

// quantize ------------------------------------------------------------------

int cmd_quantize(const SymbolInput& in, const std::string& ordering, const std::string& out_file,
                 std::optional<double> eps, bool pretty, std::ostream& out) {
  RunReport report{"quantize", {}, {}};
  const Symbol m = load_symbol(in, report);
  const Ordering ord = ordering == "symmetric" ? Ordering::kSymmetricWeyl : Ordering::kAsymmetricLeft;
  report.parameters.emplace_back("ordering", ordering);
  const CMatrix op = quantize(m, ord);
  if (!out_file.empty()) {
    write_text_file(out_file, matrix_to_json(op));
    report.parameters.emplace_back("out", out_file);
  }
  Complex mean = 0.0;
  for (const Complex& z : m.values()) mean += z;
  mean /= static_cast<double>(m.n());
  report.metrics.push_back({"trace_residual", std::abs(op.trace() - mean), tolerance_or(eps, 1e-10)});
  report.metrics.push_back({"hermiticity_defect", hermiticity_defect(op), std::nullopt});
  return finish(report, pretty, out);
}

// dequantize ----------------------------------------------------------------

int cmd_dequantize(const std::string& matrix_file, const std::string& out_file, std::optional<double> eps,
                   bool pretty, std::ostream& out) {
  RunReport report{"dequantize", {{"matrix", matrix_file}}, {}};
  const CMatrix op = matrix_from_json(read_text_file(matrix_file));
  const Symbol s = dequantize_l(op);
  if (!out_file.empty()) {
    write_text_file(out_file, symbol_to_json(s));
    report.parameters.emplace_back("out", out_file);
  }
  report.metrics.push_back(
      {"roundtrip_residual", frob_dist(quantize(s, Ordering::kAsymmetricLeft), op), tolerance_or(eps, 1e-10)});
  return finish(report, pretty, out);
}

// propagate -----------------------------------------------------------------

int cmd_propagate(const SymbolInput& in, double total_time, std::size_t n_steps, const std::string& mode,
                  const std::string& out_file, std::optional<double> eps, double zero_eps, bool pretty,
                  std::ostream& out, std::ostream& err) {
  RunReport report{"propagate", {}, {}};
  const Symbol h = load_symbol(in, report);
  report.parameters.emplace_back("time", format_double(total_time));
  report.parameters.emplace_back("steps", std::to_string(n_steps));
  report.parameters.emplace_back("mode", mode);
  const double dt = total_time / static_cast<double>(n_steps);
  const StepSpec spec{h, dt};

  CMatrix composed(h.n());
  if (mode == "exact") {
    const CMatrix exact_step = step_operator_exact(spec);
    const EffectiveHamiltonian h_eff = effective_hamiltonian(exact_step, dt, zero_eps);
    const CMatrix effective_step = quantize(effective_step_symbol(h_eff), Ordering::kAsymmetricLeft);
    composed = matrix_power(effective_step, n_steps);
    report.metrics.push_back(
        {"oracle_defect", frob_dist(composed, matrix_power(exact_step, n_steps)), tolerance_or(eps, 1e-9)});
    report.metrics.push_back({"absent_points", static_cast<double>(h_eff.absent_count()), std::nullopt});
  } else {
    const CMatrix h_op = quantize(h, Ordering::kAsymmetricLeft);
    const double herm = hermiticity_defect(h_op);
    composed = matrix_power(step_operator_approx(spec), n_steps);
    report.metrics.push_back({"hermiticity_defect", herm, 1e-8});
    if (herm > 1e-8) {
      err << "quantized Hamiltonian is not Hermitian: ||H - H^dagger||_F = " << format_double(herm) << "\n";
      finish(report, pretty, out);
      return kExitNumerical;
    }
    const CMatrix oracle = mat_exp(Complex{0.0, -total_time} * h_op);
    report.metrics.push_back({"trotter_defect", frob_dist(composed, oracle), eps});
  }
  if (!out_file.empty()) {
    write_text_file(out_file, matrix_to_json(composed));
    report.parameters.emplace_back("out", out_file);
  }
  return finish(report, pretty, out);
}

// converge ------------------------------------------------------------------

constexpr double kErrorFloor = 1e-12;

int cmd_converge(const SymbolInput& in, double total_time, const std::vector<std::size_t>& list,
                 const std::string& out_csv, bool pretty, std::ostream& out) {
  RunReport report{"converge", {}, {}};
  if (list.size() < 2) throw CLI::ValidationError("--steps needs at least two step counts");
  const Symbol h = load_symbol(in, report);
  report.parameters.emplace_back("time", format_double(total_time));

  const std::vector<ConvergencePoint> points = convergence_order(h, total_time, list);
  std::string csv = "N,dt,error,ratio_to_previous\n";
  bool all_below_floor = true;
  double last_ratio = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ConvergencePoint& pt = points[i];
    double ratio = 0.0;
    if (i > 0 && pt.error > kErrorFloor) ratio = points[i - 1].error / pt.error;
    if (pt.error > kErrorFloor) all_below_floor = false;
    last_ratio = ratio;
    csv += std::to_string(pt.steps) + "," + format_double(pt.dt) + "," + format_double(pt.error) + "," +
           format_double(ratio) + "\n";
  }
  if (!out_csv.empty()) {
    write_text_file(out_csv, csv);
    report.parameters.emplace_back("out", out_csv);
  }
  report.metrics.push_back({"final_error", points.back().error, std::nullopt});
  report.metrics.push_back({"final_ratio", last_ratio, std::nullopt});
  // Ratio window [1.5, 2.5]; errors at rounding level count as converged.
  const bool ok = all_below_floor || (last_ratio >= 1.5 && last_ratio <= 2.5);
  report.metrics.push_back({"order_window_violation", ok ? 0.0 : 1.0, 0.0});
  return finish(report, pretty, out);
}

// paths ---------------------------------------------------------------------

int cmd_paths(const SymbolInput& in, std::size_t n_steps, double dt, std::size_t q_start, std::size_t q_end,
              const std::string& mode, const std::string& out_csv, std::optional<double> eps,
              const PathSumConfig& base, bool pretty, std::ostream& out) {
  RunReport report{"paths", {}, {}};
  const Symbol h = load_symbol(in, report);
  const std::size_t n = h.n();
  if (q_start >= n || q_end >= n) throw CLI::ValidationError("--q-start and --q-end must lie in [0, n)");
  report.parameters.emplace_back("steps", std::to_string(n_steps));
  report.parameters.emplace_back("dt", format_double(dt));
  report.parameters.emplace_back("q_start", std::to_string(q_start));
  report.parameters.emplace_back("q_end", std::to_string(q_end));
  report.parameters.emplace_back("mode", mode);

  PathSumConfig cfg = base;
  cfg.mode = mode == "exact" ? PathSumMode::kExactEffective : PathSumMode::kApproxFirstOrder;
  const std::vector<StepSpec> steps(n_steps, StepSpec{h, dt});

  std::string csv;
  for (std::size_t k = 0; k <= n_steps; ++k) csv += "q_" + std::to_string(k) + ",";
  for (std::size_t k = 0; k < n_steps; ++k) csv += "p_" + std::to_string(k) + ",";
  csv += "action_radians,amplitude_re,amplitude_im\n";

  Complex aggregate = 0.0;
  std::uint64_t rows = 0;
  for_each_path(steps, q_start, q_end, cfg, [&](const PhasePath& path, double action, Complex amp) {
    for (std::size_t v : path.q) csv += std::to_string(v) + ",";
    for (std::size_t v : path.p) csv += std::to_string(v) + ",";
    csv += format_double(action) + "," + format_double(amp.real()) + "," + format_double(amp.imag()) + "\n";
    aggregate += amp;
    ++rows;
  });
  if (!out_csv.empty()) {
    write_text_file(out_csv, csv);
    report.parameters.emplace_back("out", out_csv);
  }

  const Complex element = pathsum_contract(steps, cfg)(q_end, q_start);
  const PathSumResult brute = pathsum_bruteforce(steps, q_start, q_end, cfg);
  report.parameters.emplace_back("element_re", format_double(aggregate.real()));
  report.parameters.emplace_back("element_im", format_double(aggregate.imag()));
  report.metrics.push_back({"rows", static_cast<double>(rows), std::nullopt});
  report.metrics.push_back({"terms_visited", static_cast<double>(brute.terms_visited), std::nullopt});
  report.metrics.push_back({"contract_defect", std::abs(aggregate - element), tolerance_or(eps, 1e-9)});
  report.metrics.push_back({"bruteforce_defect", std::abs(brute.amplitude - element), tolerance_or(eps, 1e-9)});
  return finish(report, pretty, out);
}

// dft -----------------------------------------------------------------------

int cmd_dft(std::size_t n, std::optional<double> eps, const PathSumConfig& base, bool pretty, std::ostream& out) {
  RunReport report{"dft", {{"n", std::to_string(n)}}, {}};
  const double tol = tolerance_or(eps, 1e-10);
  const CMatrix f = dft_matrix(n);
  const Symbol s = dequantize_l(f);
  const auto nn = static_cast<long long>(n);
  const double root_n = std::sqrt(static_cast<double>(n));

  double diag_err = 0.0;
  double off_diag = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) {
        const Complex expected = root_n * root_of_unity(static_cast<long long>(q * q), nn);
        diag_err = std::max(diag_err, std::abs(s(p, q) - expected));
      } else {
        off_diag = std::max(off_diag, std::abs(s(p, q)));
      }
    }
  const CMatrix f2 = f * f;
  const double f4_defect = frob_dist(f2 * f2, CMatrix::identity(n));

  PathSumConfig cfg = base;
  cfg.collapse_momenta = true;
  const std::vector<CMatrix> steps(4, f);
  CMatrix assembled(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) assembled(b, a) = pathsum_bruteforce_operators(steps, a, b, cfg).amplitude;

  report.metrics.push_back({"symbol_diagonal_error", diag_err, tol});
  report.metrics.push_back({"symbol_off_diagonal_max", off_diag, tol});
  report.metrics.push_back({"f4_identity_defect", f4_defect, tol});
  report.metrics.push_back({"collapsed_pathsum_defect", frob_dist(assembled, CMatrix::identity(n)), tol});
  return finish(report, pretty, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete Weyl quantization and phase-space path sums", "dwq"};
  app.require_subcommand(1);

  bool pretty = false;
  std::optional<double> eps;
  double zero_eps = 1e-12;
  std::uint64_t max_terms = 10'000'000;
  std::string out_path;
  std::size_t n = 0;

  auto common = [&](CLI::App* cmd) {
    cmd->add_flag("--pretty", pretty, "Human-readable table instead of JSON");
    cmd->add_option("--eps", eps, "Tolerance for the command's pass/fail metrics");
    cmd->add_option("--out", out_path, "Output path");
  };

  CLI::App* weyl = app.add_subcommand("weyl", "Write the Weyl pair U, V and check U V = w V U");
  common(weyl);
  weyl->add_option("--n", n, "Dimension")->required()->check(CLI::PositiveNumber);

  SymbolInput sym;
  std::string ordering = "left";
  CLI::App* quant = app.add_subcommand("quantize", "Operator of a symbol");
  common(quant);
  add_symbol_input(quant, sym);
  quant->add_option("--ordering", ordering, "left | symmetric")->check(CLI::IsMember({"left", "symmetric"}));

  std::string matrix_file;
  CLI::App* dequant = app.add_subcommand("dequantize", "Left-ordered symbol of an operator");
  common(dequant);
  dequant->add_option("matrix", matrix_file, "Matrix JSON file")->required();

  double total_time = 0.0;
  std::size_t steps = 0;
  std::string mode = "approx";
  CLI::App* prop = app.add_subcommand("propagate", "Compose step propagators");
  common(prop);
  add_symbol_input(prop, sym);
  prop->add_option("--time", total_time, "Total evolution time")->required();
  prop->add_option("--steps", steps, "Number of time steps")->required()->check(CLI::PositiveNumber);
  prop->add_option("--mode", mode, "approx | exact")->check(CLI::IsMember({"approx", "exact"}));
  prop->add_option("--zero-eps", zero_eps, "Relative threshold for absent symbol values");

  std::vector<std::size_t> step_list;
  CLI::App* conv = app.add_subcommand("converge", "Measure the Trotter error against the exact evolution");
  common(conv);
  add_symbol_input(conv, sym);
  conv->add_option("--time", total_time, "Total evolution time")->required();
  conv->add_option("--steps", step_list, "Step counts, e.g. 8,16,32,64")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);

  double dt = 0.0;
  std::size_t q_start = 0;
  std::size_t q_end = 0;
  CLI::App* paths = app.add_subcommand("paths", "Dump every phase-space path of one matrix element");
  common(paths);
  add_symbol_input(paths, sym);
  paths->add_option("--steps", steps, "Number of time steps")->required()->check(CLI::PositiveNumber);
  paths->add_option("--dt", dt, "Time step")->required();
  paths->add_option("--q-start", q_start, "Initial coordinate (ket)")->required();
  paths->add_option("--q-end", q_end, "Final coordinate (bra)")->required();
  paths->add_option("--mode", mode, "approx | exact")->check(CLI::IsMember({"approx", "exact"}));
  paths->add_option("--max-terms", max_terms, "Enumeration budget")->check(CLI::PositiveNumber);
  paths->add_option("--zero-eps", zero_eps, "Relative threshold for absent symbol values");

  CLI::App* dft = app.add_subcommand("dft", "Check the symbol and path sum of the DFT matrix");
  common(dft);
  dft->add_option("--n", n, "Dimension")->required()->check(CLI::PositiveNumber);
  dft->add_option("--max-terms", max_terms, "Enumeration budget")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("dwq");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  PathSumConfig cfg;
  cfg.zero_eps = zero_eps;
  cfg.max_terms = max_terms;

  try {
    if (weyl->parsed()) return cmd_weyl(n, out_path.empty() ? "." : out_path, eps, pretty, out);
    if (quant->parsed()) return cmd_quantize(sym, ordering, out_path, eps, pretty, out);
    if (dequant->parsed()) return cmd_dequantize(matrix_file, out_path, eps, pretty, out);
    if (prop->parsed())
      return cmd_propagate(sym, total_time, steps, mode, out_path, eps, zero_eps, pretty, out, err);
    if (conv->parsed()) return cmd_converge(sym, total_time, step_list, out_path, pretty, out);
    if (paths->parsed())
      return cmd_paths(sym, steps, dt, q_start, q_end, mode, out_path, eps, cfg, pretty, out);
    if (dft->parsed()) return cmd_dft(n, eps, cfg, pretty, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitFormat;
  } catch (const EvalError& e) {
    err << e.what() << "\n";
    return kExitFormat;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const BudgetError& e) {
    err << e.what() << " (required terms: " << e.required_terms() << ")\n";
    return kExitNumerical;
  } catch (const HermiticityError& e) {
    err << e.what() << "\n";
    return kExitNumerical;
  } catch (const DimensionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFormat;
  }
  err << "usage error: no command given\n";
  return kExitUsage;
}

}  // namespace dwq
