// SPDX-License-Identifier: Apache-2.0
//
// expsig: expected signatures of Gaussian processes from their covariance
// density. Subcommands:
//   compute  expected-signature report (JSON)
//   verify   three-oracle cross-check per word (JSON, exit 0 iff all agree)
//   hsweep   canonical term and cross-pairing bound over a Hurst grid (CSV)

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expsig/discrete_oracle.hpp"
#include "expsig/errors.hpp"
#include "expsig/expected_signature.hpp"
#include "expsig/kernels.hpp"
#include "expsig/pairings.hpp"
#include "expsig/quadrature.hpp"
#include "expsig/rng.hpp"
#include "expsig/serialize.hpp"

namespace {

using namespace expsig;

struct RunConfig {
  std::string kernel = "fbm";  // fbm | brownian | const
  double hurst = 0.75;
  double f_value = 1.0;  // density level of the const kernel
  int dimension = 1;
  int truncation = 2;
  double horizon = 1.0;
  std::string method = "auto";  // auto | mc | sorted-stratified-mc
  std::int64_t samples = 100'000;
  std::uint64_t seed = 0;
  double target = 0.0;
  int max_batches = 64;
  int depth = 6;      // discrete-oracle dyadic depth m
  int mc_depth = 10;  // path-oracle dyadic depth
  std::int64_t mc_samples = 100'000;
  std::vector<double> grid;  // hsweep Hurst grid
  int sweep_n = 2;
  std::string out = "-";
  std::string config_path;
};

// Config-file pass: JSON values become the defaults, flags override them.
void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ArgumentError("config: cannot open \"" + path + "\"");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError("config: invalid JSON in \"" + path +
                        "\": " + e.what());
  }
  if (!doc.is_object()) {
    throw ArgumentError("config: top level must be a JSON object");
  }
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "kernel") value.get_to(cfg.kernel);
      else if (key == "hurst") value.get_to(cfg.hurst);
      else if (key == "f-value") value.get_to(cfg.f_value);
      else if (key == "d") value.get_to(cfg.dimension);
      else if (key == "N") value.get_to(cfg.truncation);
      else if (key == "T") value.get_to(cfg.horizon);
      else if (key == "method") value.get_to(cfg.method);
      else if (key == "samples") value.get_to(cfg.samples);
      else if (key == "seed") value.get_to(cfg.seed);
      else if (key == "target") value.get_to(cfg.target);
      else if (key == "max-batches") value.get_to(cfg.max_batches);
      else if (key == "m") value.get_to(cfg.depth);
      else if (key == "mc-m") value.get_to(cfg.mc_depth);
      else if (key == "mc-samples") value.get_to(cfg.mc_samples);
      else if (key == "grid") value.get_to(cfg.grid);
      else if (key == "n") value.get_to(cfg.sweep_n);
      else if (key == "out") value.get_to(cfg.out);
      else throw ArgumentError("config: unknown key \"" + key + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("config: bad value type: ") + e.what());
  }
}

QuadratureSettings make_settings(const RunConfig& cfg) {
  QuadratureSettings s;
  std::string method = cfg.method;
  if (method == "auto") {
    // Stratification earns its keep near the singular diagonal, i.e. for
    // rough fBm; elsewhere plain sorted MC is just as good and cheaper.
    method = (cfg.kernel == "fbm" && cfg.hurst < 0.65) ? "sorted-stratified-mc"
                                                       : "mc";
  }
  s.method = parse_method(method);
  s.samples = cfg.samples;
  s.seed = cfg.seed;
  s.target_rel_stderr = cfg.target;
  s.max_batches = cfg.max_batches;
  return s;
}

std::unique_ptr<Kernel> make_kernel(const RunConfig& cfg) {
  if (cfg.kernel == "fbm") return std::make_unique<FbmKernel>(cfg.hurst);
  if (cfg.kernel == "const") {
    return std::make_unique<ExplicitFKernel>(
        constant_density_kernel(cfg.f_value));
  }
  throw ArgumentError("kernel: unknown kernel \"" + cfg.kernel +
                      "\" (expected fbm, brownian, or const)");
}

// Diagnostics are one line on stderr so wrappers can parse them.
std::string one_line(const char* text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void write_output(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) {
    throw ArgumentError("output: cannot open \"" + cfg.out + "\" for writing");
  }
  out << payload;
  if (!out) {
    throw ArgumentError("output: write to \"" + cfg.out + "\" failed");
  }
}

// Number of nondecreasing cell tuples the discrete oracle would enumerate;
// checked up front so a doomed verify run fails before the quadrature runs.
double tuple_count(double cells, int tuple_len) {
  double r = 1.0;
  for (int i = 1; i <= tuple_len; ++i) {
    r *= (cells + tuple_len - i) / static_cast<double>(i);
  }
  return r;
}

int cmd_compute(const RunConfig& cfg) {
  const QuadratureSettings settings = make_settings(cfg);
  ExpectedSignatureReport report;
  if (cfg.kernel == "brownian") {
    report = brownian_expected_signature(cfg.dimension, cfg.truncation,
                                         cfg.horizon);
    report.settings = settings;
  } else {
    const auto kernel = make_kernel(cfg);
    report = expected_signature(*kernel, cfg.dimension, cfg.truncation,
                                cfg.horizon, settings);
  }
  write_output(cfg, to_json(report));
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.kernel == "brownian") {
    throw ArgumentError(
        "verify: the brownian reference has no covariance density; "
        "use kernel fbm or const");
  }
  if (cfg.depth < 1) {
    throw ArgumentError("verify: the discrete oracle needs depth m >= 1");
  }
  const auto kernel = make_kernel(cfg);
  const QuadratureSettings settings = make_settings(cfg);

  // Validate every downstream guard before any computation starts.
  const int worst_len = cfg.truncation - cfg.truncation % 2;
  if (worst_len > 0 &&
      tuple_count(std::pow(2.0, cfg.depth), worst_len) > 1e8) {
    throw ResourceError(
        "verify: words of length " + std::to_string(worst_len) +
        " at depth " + std::to_string(cfg.depth) +
        " exceed the 1e8 tuple cap of the discrete oracle; lower -m or -N");
  }
  if (cfg.truncation > 6) {
    throw ResourceError("verify: the path oracle caps the truncation at 6");
  }
  if (cfg.mc_samples < 2) {
    throw ArgumentError("verify: need at least 2 path samples");
  }

  const ExpectedSignatureReport theorem = expected_signature(
      *kernel, cfg.dimension, cfg.truncation, cfg.horizon, settings);
  const CellCovariance cov_coarse =
      dyadic_c_matrix(*kernel, cfg.depth - 1, cfg.horizon);
  const CellCovariance cov = dyadic_c_matrix(*kernel, cfg.depth, cfg.horizon);
  const MCEstimate paths =
      mc_signature_estimate(*kernel, cfg.dimension, cfg.mc_depth,
                            cfg.truncation, cfg.horizon, cfg.mc_samples,
                            cfg.seed);

  VerifyReport report;
  report.dimension = cfg.dimension;
  report.truncation = cfg.truncation;
  report.horizon = cfg.horizon;
  report.kernel = kernel->describe();
  report.settings = settings;
  report.depth = cfg.depth;
  report.mc_depth = cfg.mc_depth;
  report.mc_samples = cfg.mc_samples;

  auto agree = [](double a, double ea, double b, double eb) {
    return std::abs(a - b) <= 3.0 * std::sqrt(ea * ea + eb * eb) + 1e-12;
  };
  for (const TermEntry& term : theorem.terms) {
    VerifyRow row;
    row.theorem_value = term.value;
    row.theorem_stderr = term.std_error;
    row.discrete_value = discrete_expected_word(term.word, cov);
    row.discrete_err =
        std::abs(row.discrete_value - discrete_expected_word(term.word,
                                                             cov_coarse));
    row.mc_value = project_word(paths.mean, term.word);
    row.mc_stderr = project_word(paths.std_error, term.word);
    row.agree_theorem_discrete = agree(row.theorem_value, row.theorem_stderr,
                                       row.discrete_value, row.discrete_err);
    row.agree_theorem_mc = agree(row.theorem_value, row.theorem_stderr,
                                 row.mc_value, row.mc_stderr);
    row.agree_discrete_mc = agree(row.discrete_value, row.discrete_err,
                                  row.mc_value, row.mc_stderr);
    row.word = term.word;
    report.rows.push_back(std::move(row));
  }
  const bool pass = report.pass();
  write_output(cfg, to_json(report));
  return pass ? 0 : 1;
}

int cmd_hsweep(const RunConfig& cfg) {
  if (cfg.grid.empty()) {
    throw ArgumentError("hsweep: --grid needs at least one Hurst value");
  }
  for (double h : cfg.grid) {
    if (!std::isfinite(h) || h <= 0.5 || h >= 1.0) {
      throw ArgumentError("hsweep: grid values must lie in (1/2, 1)");
    }
  }
  if (cfg.sweep_n < 1 || 2 * cfg.sweep_n > 16) {
    throw ArgumentError("hsweep: n must lie in 1..8");
  }
  const QuadratureSettings base = make_settings(cfg);
  const double brownian_value =
      std::pow(0.5, cfg.sweep_n) / std::tgamma(cfg.sweep_n + 1.0);
  const auto pairings = enumerate_pairings(cfg.sweep_n);
  const Pairing canonical = canonical_pairing(cfg.sweep_n);

  std::vector<SweepRow> rows;
  for (double h : cfg.grid) {
    const FbmKernel kernel(h);
    SweepRow row;
    row.hurst = h;
    row.canonical_term = canonical_In(cfg.sweep_n, h, base).value;
    row.brownian_gap = std::abs(row.canonical_term - brownian_value);
    row.cross_bound = cross_pairing_bound(h);
    row.max_noncanonical = 0.0;
    const std::uint64_t h_seed =
        mix64(base.seed ^ std::bit_cast<std::uint64_t>(h));
    std::uint64_t index = 0;
    for (const Pairing& pi : pairings) {
      ++index;
      if (pi == canonical) continue;
      QuadratureSettings per_pairing = base;
      per_pairing.seed = mix64(h_seed ^ index);
      const auto term =
          simplex_pairing_integral(pi, kernel, cfg.sweep_n, 1.0, per_pairing);
      row.max_noncanonical = std::max(row.max_noncanonical, term.value);
    }
    rows.push_back(row);
  }
  write_output(cfg, to_csv(rows));
  return 0;
}

void add_quadrature_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--method", cfg.method,
                  "Quadrature method: auto, mc, or sorted-stratified-mc");
  cmd->add_option("--samples", cfg.samples,
                  "Simplex MC samples per batch (>= 1000)");
  cmd->add_option("--seed", cfg.seed, "RNG seed (64-bit)");
  cmd->add_option("--target", cfg.target,
                  "Target relative stderr; 0 runs a single batch");
  cmd->add_option("--max-batches", cfg.max_batches,
                  "Batch cap when --target is set");
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--kernel", cfg.kernel, "Kernel: fbm, brownian, or const");
  cmd->add_option("--hurst", cfg.hurst, "Hurst index of fbm, in (1/2, 1)");
  cmd->add_option("--f-value", cfg.f_value, "Density level of the const kernel");
  cmd->add_option("-d,--dimension", cfg.dimension, "State dimension (<= 4)");
  cmd->add_option("-N,--truncation", cfg.truncation,
                  "Signature truncation level");
  cmd->add_option("-T,--horizon", cfg.horizon, "Time horizon");
  add_quadrature_flags(cmd, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    // The config file fills defaults before CLI11 parses the flags, so the
    // precedence is flags over file over built-in defaults.
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc) {
        apply_config_file(cfg, argv[i + 1]);
        break;
      }
      if (arg.rfind("--config=", 0) == 0) {
        apply_config_file(cfg, arg.substr(9));
        break;
      }
    }

    CLI::App app{
        "Expected signatures of Gaussian processes with strictly regular "
        "kernels"};
    app.require_subcommand(1);
    app.fallthrough(false);

    CLI::App* compute = app.add_subcommand(
        "compute", "Expected-signature report as JSON");
    add_common_flags(compute, cfg);
    compute->add_option("--config", cfg.config_path, "JSON config file");
    compute->add_option("-o,--out", cfg.out, "Output path (- for stdout)");

    CLI::App* verify = app.add_subcommand(
        "verify", "Cross-check the quadrature against the discrete and "
                  "path-MC oracles");
    add_common_flags(verify, cfg);
    verify->add_option("-m,--depth", cfg.depth,
                       "Discrete-oracle dyadic depth");
    verify->add_option("--mc-m", cfg.mc_depth, "Path-oracle dyadic depth");
    verify->add_option("--mc-samples", cfg.mc_samples, "Path-oracle samples");
    verify->add_option("--config", cfg.config_path, "JSON config file");
    verify->add_option("-o,--out", cfg.out, "Output path (- for stdout)");

    CLI::App* hsweep = app.add_subcommand(
        "hsweep", "Canonical term vs the Brownian limit over a Hurst grid "
                  "(CSV)");
    hsweep->add_option("--grid", cfg.grid, "Hurst grid, each in (1/2, 1)")
        ->expected(-1);
    hsweep->add_option("-n,--order", cfg.sweep_n,
                       "Half word length of the canonical pairing");
    add_quadrature_flags(hsweep, cfg);
    hsweep->add_option("--config", cfg.config_path, "JSON config file");
    hsweep->add_option("-o,--out", cfg.out, "Output path (- for stdout)");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        return app.exit(e);  // --help
      }
      throw ArgumentError(e.what());
    }

    if (compute->parsed()) return cmd_compute(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    return cmd_hsweep(cfg);
  } catch (const ArgumentError& e) {
    std::cerr << "error: kind=argument message=\"" << one_line(e.what())
              << "\"\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: kind=resource message=\"" << one_line(e.what())
              << "\"\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error: kind=numeric message=\"" << one_line(e.what())
              << "\"\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: kind=internal message=\"" << one_line(e.what())
              << "\"\n";
    return 1;
  }
}
