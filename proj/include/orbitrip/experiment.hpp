#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitrip/group.hpp"
#include "orbitrip/representation.hpp"
#include "orbitrip/sensing.hpp"

namespace orbitrip {

enum class SolverKind { iht, omp };
enum class OmegaRestriction { none, affine_axis };
enum class DebugPhi { none, identity };

/// Group description as it appears in config files.
struct GroupConfig {
  std::string kind;  // "cyclic" | "affine" | "direct_product"
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::vector<GroupConfig> factors;

  bool operator==(const GroupConfig& other) const;
};

struct ExperimentConfig {
  GroupConfig group;
  std::string representation_kind;  // left_regular | affine_quasi_regular |
                                    // trivial | fourier | weyl_heisenberg
  std::int64_t n = 0;
  Distribution distribution = Distribution::gaussian;
  std::vector<int> sparsity_list;
  std::vector<std::int64_t> m_list;
  int trials_per_cell = 0;
  double success_threshold = 1e-4;
  std::uint64_t master_seed = 0;
  OmegaRestriction omega_restriction = OmegaRestriction::none;
  SolverKind solver = SolverKind::iht;
  bool compute_delta_s = false;
  DebugPhi debug_phi = DebugPhi::none;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the JSON config text. Unknown keys at any level are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string emit_config(const ExperimentConfig& config);

FiniteGroup build_group(const GroupConfig& gc);
/// Builds the configured representation and validates its dimension and group
/// against the config.
Representation build_representation(const ExperimentConfig& config);

struct ResultRow {
  std::int64_t m = 0;
  int s = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double median_rel_error = 0.0;
  std::optional<double> median_delta_s;
  std::uint64_t seed = 0;
};

struct SlopeFit {
  int s = 0;
  double slope = 0.0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  /// Fitted slope of log(median delta_s) against log(m) per sparsity level;
  /// filled by the scaling run when every median is positive.
  std::vector<SlopeFit> slopes;

  /// Header m,s,trials,successes,success_rate,median_rel_error,
  /// median_delta_s,seed; floats carry 17 significant digits; slope fits are
  /// appended as '#'-prefixed trailer lines.
  std::string to_csv() const;
};

/// Monte-Carlo recovery sweep over the (m, s) grid. Per-trial seeds are a
/// pure function of (master_seed, m, s, trial), and aggregation is
/// order-independent, so any worker count yields identical tables.
ResultTable run_phase_transition(const ExperimentConfig& config,
                                 int threads = 0);

/// Same sweep with the exact restricted isometry constant per trial and
/// log-log slope fits per sparsity level.
ResultTable run_delta_scaling(const ExperimentConfig& config, int threads = 0);

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
};

/// Built-in cross checks: orbit constants of the shift, affine, trivial and
/// frequency-domain families against their closed-form values, the circulant
/// equivalence, and representation unitarity/homomorphism residuals. Every
/// check holds for arbitrary sampling draws, so reseeding must not change
/// any verdict.
std::vector<CheckResult> run_verification_suite(std::uint64_t seed = 2026);

/// One "PASS name measured=... expected=... tol=..." line per check.
std::string format_report(const std::vector<CheckResult>& checks);

}  // namespace orbitrip
