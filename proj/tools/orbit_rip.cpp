// Command-line front end: verification suite, phase-transition and
// delta-scaling sweeps, orbit-constant reports, and matrix export.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "orbitrip/analysis.hpp"
#include "orbitrip/experiment.hpp"
#include "orbitrip/rng.hpp"
#include "orbitrip/sensing.hpp"

namespace {

using namespace orbitrip;

struct SubArgs {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;

  bool has_seed() const { return seed_opt != nullptr && seed_opt->count() > 0; }
};

void add_common_options(CLI::App* sub, SubArgs& args, bool config_required) {
  CLI::Option* config =
      sub->add_option("--config", args.config_path, "experiment config file");
  if (config_required) config->required();
  sub->add_option("--out", args.out_path,
                  "output file (stdout when omitted)");
  args.seed_opt =
      sub->add_option("--seed", args.seed, "override master_seed");
}

int write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return std::cout ? 0 : 1;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << out_path << "\n";
    return 1;
  }
  out << text;
  return out ? 0 : 1;
}

ExperimentConfig load_with_seed(const SubArgs& args) {
  ExperimentConfig config = load_config(args.config_path);
  if (args.has_seed()) config.master_seed = args.seed;
  return config;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_verify(const SubArgs& args) {
  std::vector<CheckResult> checks =
      run_verification_suite(args.has_seed() ? args.seed : 2026);
  if (!args.config_path.empty()) {
    CheckResult config_check{"config_valid", true, 1.0, 1.0, 0.0};
    try {
      ExperimentConfig config = load_with_seed(args);
      build_representation(config);
    } catch (const std::exception& e) {
      config_check.pass = false;
      config_check.measured = 0.0;
      std::cerr << "config error: " << e.what() << "\n";
    }
    checks.push_back(config_check);
  }
  bool all_pass = true;
  for (const CheckResult& c : checks) all_pass = all_pass && c.pass;
  const int io = write_output(args.out_path, format_report(checks));
  if (io != 0) return io;
  return all_pass ? 0 : 2;
}

int run_phase_cmd(const SubArgs& args) {
  const ResultTable table = run_phase_transition(load_with_seed(args));
  return write_output(args.out_path, table.to_csv());
}

int run_scaling_cmd(const SubArgs& args) {
  const ResultTable table = run_delta_scaling(load_with_seed(args));
  return write_output(args.out_path, table.to_csv());
}

int run_constant_cmd(const SubArgs& args) {
  const ExperimentConfig config = load_with_seed(args);
  const Representation rep = build_representation(config);
  std::vector<Element> allowed;
  const bool restricted =
      config.omega_restriction == OmegaRestriction::affine_axis;
  if (restricted) {
    if (rep.group().kind() != FiniteGroup::Kind::affine) {
      throw std::invalid_argument(
          "affine_axis restriction requires an affine group");
    }
    allowed = affine_axis_subset(rep.group().param());
  }
  std::ostringstream os;
  for (std::int64_t m : config.m_list) {
    const std::uint64_t key = derive_key(config.master_seed, "constant",
                                         {static_cast<std::uint64_t>(m)});
    const SamplingSet omega =
        restricted ? random_sampling_set(rep.group(), m, allowed, key)
                   : random_sampling_set(rep.group(), m, key);
    const OrbitConstantReport report = orbit_constant_exact(rep, omega);
    os << "m=" << m << " constant=" << format_double(report.value)
       << " argmax_index=" << report.argmax_index << "\n";
  }
  return write_output(args.out_path, os.str());
}

int run_matrix_cmd(const SubArgs& args) {
  const ExperimentConfig config = load_with_seed(args);
  const Representation rep = build_representation(config);
  if (config.m_list.empty()) {
    throw std::invalid_argument("m_list must not be empty");
  }
  const std::int64_t m = config.m_list.front();
  std::vector<Element> allowed;
  const bool restricted =
      config.omega_restriction == OmegaRestriction::affine_axis;
  if (restricted) {
    if (rep.group().kind() != FiniteGroup::Kind::affine) {
      throw std::invalid_argument(
          "affine_axis restriction requires an affine group");
    }
    allowed = affine_axis_subset(rep.group().param());
  }
  const std::uint64_t key = derive_key(config.master_seed, "matrix",
                                       {static_cast<std::uint64_t>(m)});
  const SamplingSet omega =
      restricted
          ? random_sampling_set(rep.group(), m, allowed,
                                derive_key(key, "omega"))
          : random_sampling_set(rep.group(), m, derive_key(key, "omega"));
  Eigen::MatrixXcd entries;
  if (config.debug_phi == DebugPhi::identity) {
    entries = Eigen::MatrixXcd::Identity(config.n, config.n);
  } else {
    const GeneratorSpec spec{config.distribution, config.n,
                             derive_key(key, "xi")};
    entries = build_measurement_matrix(rep, omega, spec).entries;
  }
  std::ostringstream os;
  save_matrix_text(os, entries);
  return write_output(args.out_path, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sensing matrices from group orbits"};
  app.require_subcommand(1);

  SubArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "run the built-in verification suite");
  add_common_options(verify, verify_args, /*config_required=*/false);

  SubArgs phase_args;
  CLI::App* phase = app.add_subcommand(
      "phase", "phase-transition sweep over (m, s) cells");
  add_common_options(phase, phase_args, /*config_required=*/true);

  SubArgs scaling_args;
  CLI::App* scaling = app.add_subcommand(
      "scaling", "delta_s scaling sweep with slope fits");
  add_common_options(scaling, scaling_args, /*config_required=*/true);

  SubArgs constant_args;
  CLI::App* constant = app.add_subcommand(
      "constant", "orbit constant for each m in m_list");
  add_common_options(constant, constant_args, /*config_required=*/true);

  SubArgs matrix_args;
  CLI::App* matrix = app.add_subcommand(
      "matrix", "export the sensing matrix for the first m in m_list");
  add_common_options(matrix, matrix_args, /*config_required=*/true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(verify_args);
    if (phase->parsed()) return run_phase_cmd(phase_args);
    if (scaling->parsed()) return run_scaling_cmd(scaling_args);
    if (constant->parsed()) return run_constant_cmd(constant_args);
    if (matrix->parsed()) return run_matrix_cmd(matrix_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
