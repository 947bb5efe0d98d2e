//==============================================================================
// czsi — command-line front end.
//
//   czsi check-division <kernel-file>       polynomial division condition
//   czsi check-invertible <kernel-file>     co-factor invertibility
//   czsi factorize <kernel-file>            full factorization report
//   czsi experiment <id> [--config f] [--print-defaults]
//   czsi witness <name> --grid N,L          construct + verify + dump
//   czsi suite                              all experiments, aggregated
//   czsi constants                          the frozen constants ledger
//
// Exit codes: 0 all verdicts pass (informational never fails a run),
// 1 failed verdict, 2 config error, 3 internal error.
//==============================================================================
#include <CLI11.hpp>
#include <json.hpp>

#include "czsi/algebra.hpp"
#include "czsi/experiments.hpp"
#include "czsi/grid.hpp"
#include "czsi/kernels.hpp"
#include "czsi/serialize.hpp"
#include "czsi/witness.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using czsi::ConfigError;

std::string resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("CZSI_OUT_DIR")) return env;
  return ".";
}

czsi::KernelSpec load_kernel(const std::string& path) {
  try {
    return czsi::read_kernel_spec(path);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot load kernel file: ") + e.what());
  }
}

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json(nullptr);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

czsi::Grid parse_grid(const std::string& text, int dim) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ConfigError("--grid expects N,L (e.g. --grid 512,16)");
  try {
    long n = std::stol(text.substr(0, comma));
    double l = std::stod(text.substr(comma + 1));
    return czsi::Grid::make(dim, l, n);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad --grid value: ") + e.what());
  }
}

int run_experiment_cmd(const std::string& id, const std::string& config_path,
                       bool print_defaults, const std::string& out_dir) {
  if (print_defaults) {
    std::cout << czsi::default_config(id).dump(2) << "\n";
    return 0;
  }
  czsi::Report report = czsi::run_experiment(id, load_config(config_path));
  std::string path = czsi::write_report(report, resolve_out_dir(out_dir));
  std::cout << report.text();
  std::cout << "report: " << path << "\n";
  return report.verdict == czsi::Verdict::fail ? 1 : 0;
}

int run_witness_cmd(const std::string& name, const std::string& grid_text,
                    const std::string& out_dir) {
  int dim = (name == "first-order-1d") ? 1 : 2;
  czsi::Grid grid = parse_grid(grid_text, dim);

  czsi::WitnessFunction w;
  if (name == "second-order") {
    w = czsi::b_second_order(2, grid);
  } else if (name == "first-order-1d") {
    w = czsi::b_first_order_1d_witness(grid);
  } else if (name == "first-order-2d:1" || name == "first-order-2d:2") {
    w = czsi::b_first_order_2d(name.back() - '0', grid);
  } else if (name == "bilaplacian") {
    w = czsi::b_bilaplacian(czsi::HomoPoly::zero(4), grid).b;
  } else if (name == "psi") {
    w = czsi::psi_beta0(grid).psi;
  } else if (name == "beta0") {
    w = czsi::psi_beta0(grid).beta0;
  } else {
    throw ConfigError(
        "unknown witness '" + name +
        "' (known: second-order, first-order-1d, first-order-2d:1, "
        "first-order-2d:2, bilaplacian, psi, beta0)");
  }

  std::string dir = resolve_out_dir(out_dir);
  std::string path = dir + "/" + name + ".field";
  czsi::write_field_binary(path, w.samples);

  std::cout << "witness: " << name << "\n";
  std::cout << "closed-form: " << w.closed_form << "\n";
  std::cout << "flags: bounded=" << w.flags.bounded
            << " compact=" << w.flags.compactly_supported
            << " bmo=" << w.flags.bmo << " zero-mean=" << w.flags.zero_mean
            << "\n";
  if (w.support_radius)
    std::cout << "support-radius: " << *w.support_radius << "\n";
  if (w.decay_exponent)
    std::cout << "decay-exponent: " << *w.decay_exponent << "\n";
  std::cout << "field: " << path << "\n";
  return 0;
}

int run_suite(const std::string& out_dir) {
  bool any_fail = false;
  std::string dir = resolve_out_dir(out_dir);
  for (const auto& id : czsi::experiment_ids()) {
    czsi::Report report = czsi::run_experiment(id, nlohmann::json(nullptr));
    std::string path = czsi::write_report(report, dir);
    std::cout << id << ": " << czsi::verdict_name(report.verdict) << "  ("
              << path << ")\n";
    if (report.verdict == czsi::Verdict::fail) any_fail = true;
  }
  return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singular-integral toolkit"};
  app.require_subcommand(1);

  std::string kernel_path, config_path, out_dir, experiment_id, witness_name,
      grid_text;
  bool print_defaults = false;

  auto* division = app.add_subcommand("check-division",
                                      "polynomial division condition");
  division->add_option("kernel", kernel_path, "kernel file")->required();

  auto* invertible = app.add_subcommand("check-invertible",
                                        "co-factor invertibility");
  invertible->add_option("kernel", kernel_path, "kernel file")->required();

  auto* factor = app.add_subcommand("factorize", "full factorization report");
  factor->add_option("kernel", kernel_path, "kernel file")->required();

  auto* experiment = app.add_subcommand("experiment", "run one experiment");
  experiment->add_option("id", experiment_id, "experiment id")->required();
  experiment->add_option("--config", config_path,
                         "JSON config file merged over the defaults");
  experiment->add_flag("--print-defaults", print_defaults,
                       "print the default config and exit");
  experiment->add_option("--out,-o", out_dir, "output directory");

  auto* witness = app.add_subcommand("witness", "construct and dump a witness");
  witness->add_option("name", witness_name, "witness name")->required();
  witness->add_option("--grid", grid_text, "grid as N,L")->required();
  witness->add_option("--out,-o", out_dir, "output directory");

  auto* suite = app.add_subcommand("suite", "run all experiments");
  suite->add_option("--out,-o", out_dir, "output directory");

  auto* constants = app.add_subcommand("constants",
                                       "print the frozen constants ledger");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (division->parsed()) {
      czsi::DivisionReport rep = czsi::division_condition(load_kernel(kernel_path));
      std::cout << czsi::division_report_text(rep);
      return rep.holds ? 0 : 1;
    }
    if (invertible->parsed()) {
      czsi::KernelSpec spec = load_kernel(kernel_path);
      czsi::Factorization fact = czsi::factorize(spec);
      if (!fact.ok) {
        std::cout << "invertible: no\n";
        std::cout << "note: no factorization exists, so there is no co-factor "
                     "to invert\n";
        if (!fact.diagnostic.empty())
          std::cout << "diagnostic: " << fact.diagnostic << "\n";
        return 1;
      }
      czsi::InvertibilityReport rep = czsi::invertibility(fact.u);
      std::cout << czsi::invertibility_report_text(rep);
      return rep.invertible ? 0 : 1;
    }
    if (factor->parsed()) {
      czsi::Factorization fact = czsi::factorize(load_kernel(kernel_path));
      std::cout << czsi::factorization_text(fact);
      return fact.ok ? 0 : 1;
    }
    if (experiment->parsed())
      return run_experiment_cmd(experiment_id, config_path, print_defaults,
                                out_dir);
    if (witness->parsed()) return run_witness_cmd(witness_name, grid_text, out_dir);
    if (suite->parsed()) return run_suite(out_dir);
    if (constants->parsed()) {
      std::cout << czsi::constants_ledger();
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
