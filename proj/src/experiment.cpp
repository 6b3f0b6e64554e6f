#include "orbitrip/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "orbitrip/analysis.hpp"
#include "orbitrip/parallel.hpp"
#include "orbitrip/recovery.hpp"
#include "orbitrip/rng.hpp"

namespace orbitrip {
namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require_known_keys(const json& obj, const char* context,
                        std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("unknown key '" + item.key() + "' in " +
                                  context);
    }
  }
}

const json& require_field(const json& obj, const char* context,
                          const char* key) {
  if (!obj.contains(key)) {
    throw std::invalid_argument(std::string("missing key '") + key + "' in " +
                                context);
  }
  return obj.at(key);
}

GroupConfig parse_group(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("group description must be an object");
  }
  GroupConfig gc;
  gc.kind = require_field(j, "group", "kind").get<std::string>();
  if (gc.kind == "cyclic") {
    require_known_keys(j, "group", {"kind", "n"});
    gc.n = require_field(j, "group", "n").get<std::int64_t>();
  } else if (gc.kind == "affine") {
    require_known_keys(j, "group", {"kind", "p"});
    gc.p = require_field(j, "group", "p").get<std::int64_t>();
  } else if (gc.kind == "direct_product") {
    require_known_keys(j, "group", {"kind", "factors"});
    const json& factors = require_field(j, "group", "factors");
    if (!factors.is_array() || factors.size() < 2) {
      throw std::invalid_argument(
          "direct_product needs an array of at least two factors");
    }
    for (const json& f : factors) gc.factors.push_back(parse_group(f));
  } else {
    throw std::invalid_argument("unknown group kind: " + gc.kind);
  }
  return gc;
}

json group_to_json(const GroupConfig& gc) {
  json j;
  j["kind"] = gc.kind;
  if (gc.kind == "cyclic") {
    j["n"] = gc.n;
  } else if (gc.kind == "affine") {
    j["p"] = gc.p;
  } else {
    json factors = json::array();
    for (const GroupConfig& f : gc.factors) factors.push_back(group_to_json(f));
    j["factors"] = std::move(factors);
  }
  return j;
}

SolverKind solver_from_string(const std::string& s) {
  if (s == "iht") return SolverKind::iht;
  if (s == "omp") return SolverKind::omp;
  throw std::invalid_argument("unknown solver: " + s);
}

std::string to_string(SolverKind s) {
  return s == SolverKind::iht ? "iht" : "omp";
}

OmegaRestriction restriction_from_string(const std::string& s) {
  if (s == "none") return OmegaRestriction::none;
  if (s == "affine_axis") return OmegaRestriction::affine_axis;
  throw std::invalid_argument("unknown omega_restriction: " + s);
}

std::string to_string(OmegaRestriction r) {
  return r == OmegaRestriction::none ? "none" : "affine_axis";
}

DebugPhi debug_phi_from_string(const std::string& s) {
  if (s == "none") return DebugPhi::none;
  if (s == "identity") return DebugPhi::identity;
  throw std::invalid_argument("unknown debug_phi: " + s);
}

std::string to_string(DebugPhi d) {
  return d == DebugPhi::none ? "none" : "identity";
}

}  // namespace

bool GroupConfig::operator==(const GroupConfig& other) const {
  return kind == other.kind && n == other.n && p == other.p &&
         factors == other.factors;
}

ExperimentConfig parse_config(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_object()) {
    throw std::invalid_argument("config root must be an object");
  }
  require_known_keys(
      j, "config",
      {"group", "representation", "n", "distribution", "sparsity_list",
       "m_list", "trials_per_cell", "success_threshold", "master_seed",
       "omega_restriction", "solver", "compute_delta_s", "debug_phi"});
  ExperimentConfig c;
  c.group = parse_group(require_field(j, "config", "group"));
  c.representation_kind =
      require_field(j, "config", "representation").get<std::string>();
  c.n = require_field(j, "config", "n").get<std::int64_t>();
  c.distribution = distribution_from_string(
      require_field(j, "config", "distribution").get<std::string>());
  c.sparsity_list =
      require_field(j, "config", "sparsity_list").get<std::vector<int>>();
  c.m_list =
      require_field(j, "config", "m_list").get<std::vector<std::int64_t>>();
  c.trials_per_cell = require_field(j, "config", "trials_per_cell").get<int>();
  if (j.contains("success_threshold")) {
    c.success_threshold = j.at("success_threshold").get<double>();
  }
  c.master_seed =
      require_field(j, "config", "master_seed").get<std::uint64_t>();
  if (j.contains("omega_restriction")) {
    c.omega_restriction = restriction_from_string(
        j.at("omega_restriction").get<std::string>());
  }
  if (j.contains("solver")) {
    c.solver = solver_from_string(j.at("solver").get<std::string>());
  }
  if (j.contains("compute_delta_s")) {
    c.compute_delta_s = j.at("compute_delta_s").get<bool>();
  }
  if (j.contains("debug_phi")) {
    c.debug_phi = debug_phi_from_string(j.at("debug_phi").get<std::string>());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const ExperimentConfig& c) {
  json j;
  j["group"] = group_to_json(c.group);
  j["representation"] = c.representation_kind;
  j["n"] = c.n;
  j["distribution"] = to_string(c.distribution);
  j["sparsity_list"] = c.sparsity_list;
  j["m_list"] = c.m_list;
  j["trials_per_cell"] = c.trials_per_cell;
  j["success_threshold"] = c.success_threshold;
  j["master_seed"] = c.master_seed;
  j["omega_restriction"] = to_string(c.omega_restriction);
  j["solver"] = to_string(c.solver);
  j["compute_delta_s"] = c.compute_delta_s;
  j["debug_phi"] = to_string(c.debug_phi);
  return j.dump(2) + "\n";
}

FiniteGroup build_group(const GroupConfig& gc) {
  if (gc.kind == "cyclic") return make_cyclic(gc.n);
  if (gc.kind == "affine") return make_affine(gc.p);
  if (gc.kind == "direct_product") {
    if (gc.factors.size() < 2) {
      throw std::invalid_argument(
          "direct_product needs at least two factors");
    }
    FiniteGroup g = build_group(gc.factors[0]);
    for (std::size_t i = 1; i < gc.factors.size(); ++i) {
      g = make_direct_product(g, build_group(gc.factors[i]));
    }
    return g;
  }
  throw std::invalid_argument("unknown group kind: " + gc.kind);
}

Representation build_representation(const ExperimentConfig& config) {
  const std::string& kind = config.representation_kind;
  if (kind == "weyl_heisenberg") {
    // Built over Zn x Zn directly; the configured group must spell out that
    // product so the sampling domain is explicit in the config.
    const GroupConfig& gc = config.group;
    const bool shape_ok =
        gc.kind == "direct_product" && gc.factors.size() == 2 &&
        gc.factors[0].kind == "cyclic" && gc.factors[1].kind == "cyclic" &&
        gc.factors[0].n == config.n && gc.factors[1].n == config.n;
    if (!shape_ok) {
      throw std::invalid_argument(
          "weyl_heisenberg requires group = direct_product of two cyclic "
          "factors of size n");
    }
    return weyl_heisenberg(config.n);
  }
  FiniteGroup group = build_group(config.group);
  if (kind == "left_regular") {
    if (group.order() != config.n) {
      throw std::invalid_argument(
          "left_regular requires n equal to the group order");
    }
    return left_regular(group);
  }
  if (kind == "affine_quasi_regular") {
    if (group.kind() != FiniteGroup::Kind::affine) {
      throw std::invalid_argument(
          "affine_quasi_regular requires an affine group");
    }
    if (config.n != group.param()) {
      throw std::invalid_argument(
          "affine_quasi_regular requires n equal to the prime p");
    }
    return affine_quasi_regular(group.param());
  }
  if (kind == "trivial") {
    return trivial(group, config.n);
  }
  if (kind == "fourier") {
    if (group.kind() != FiniteGroup::Kind::cyclic ||
        group.order() != config.n) {
      throw std::invalid_argument("fourier requires the cyclic group Zn");
    }
    return fourier_realization(config.n);
  }
  throw std::invalid_argument("unknown representation kind: " + kind);
}

namespace {

struct TrialOutcome {
  bool success = false;
  double rel_error = 0.0;
  double delta = 0.0;
};

Eigen::VectorXcd random_sparse_signal(std::int64_t n, int s,
                                      std::uint64_t key) {
  CounterRng rng(key);
  std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), std::int64_t{0});
  for (int i = 0; i < s; ++i) {
    const std::uint64_t j =
        static_cast<std::uint64_t>(i) +
        rng.below(static_cast<std::uint64_t>(n - i));
    std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
  }
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < s; ++i) {
    x(idx[static_cast<std::size_t>(i)]) = Complex(rng.gaussian(),
                                                  rng.gaussian());
  }
  const double norm = x.norm();
  if (norm == 0.0) {
    x(idx[0]) = Complex(1.0, 0.0);
    return x;
  }
  x /= norm;
  return x;
}

TrialOutcome run_trial(const ExperimentConfig& config,
                       const Representation& rep,
                       const std::vector<Element>* allowed, std::int64_t m,
                       int s, int t, bool want_delta) {
  const std::uint64_t trial_key = derive_key(
      config.master_seed, "trial",
      {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(s),
       static_cast<std::uint64_t>(t)});
  const FiniteGroup& group = rep.group();
  SamplingSet omega =
      allowed ? random_sampling_set(group, m, *allowed,
                                    derive_key(trial_key, "omega"))
              : random_sampling_set(group, m, derive_key(trial_key, "omega"));
  Eigen::MatrixXcd phi;
  if (config.debug_phi == DebugPhi::identity) {
    phi = Eigen::MatrixXcd::Identity(config.n, config.n);
  } else {
    GeneratorSpec spec{config.distribution, config.n,
                       derive_key(trial_key, "xi")};
    phi = build_measurement_matrix(rep, omega, spec).entries;
  }
  const Eigen::VectorXcd x =
      random_sparse_signal(config.n, s, derive_key(trial_key, "signal"));
  const Eigen::VectorXcd y = phi * x;
  const RecoveryResult result = config.solver == SolverKind::iht
                                    ? iht(phi, y, s, {}, &x)
                                    : omp(phi, y, s, &x);
  TrialOutcome out;
  out.success = recovery_success(x, result, config.success_threshold);
  out.rel_error = result.relative_error.value_or(
      std::numeric_limits<double>::infinity());
  if (want_delta) {
    out.delta =
        restricted_isometry_constant(phi, s, kDefaultRipBudget, 1).delta;
  }
  return out;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t k = values.size();
  if (k % 2 == 1) return values[k / 2];
  return 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

void validate_sweep(const ExperimentConfig& config, const Representation& rep,
                    std::int64_t supply, bool want_delta) {
  if (config.trials_per_cell < 1) {
    throw std::invalid_argument("trials_per_cell must be at least 1");
  }
  if (config.sparsity_list.empty()) {
    throw std::invalid_argument("sparsity_list must not be empty");
  }
  if (config.m_list.empty()) {
    throw std::invalid_argument("m_list must not be empty");
  }
  if (!(config.success_threshold > 0.0)) {
    throw std::invalid_argument("success_threshold must be positive");
  }
  if (config.n != rep.dim()) {
    throw std::invalid_argument("n does not match the representation");
  }
  for (int s : config.sparsity_list) {
    if (s < 1 || s > config.n) {
      throw std::invalid_argument("sparsity values must lie in [1, n]");
    }
    if (want_delta && binomial(config.n, s) >
                          static_cast<std::uint64_t>(kDefaultRipBudget)) {
      throw EnumerationBudgetError(
          "delta_s enumeration exceeds the support budget for s=" +
          std::to_string(s));
    }
  }
  for (std::int64_t m : config.m_list) {
    if (m < 1 || m > supply) {
      throw std::invalid_argument(
          "m_list values must lie in [1, sampling supply]; got m=" +
          std::to_string(m) + " with supply " + std::to_string(supply));
    }
    if (config.solver == SolverKind::omp) {
      for (int s : config.sparsity_list) {
        if (s > m) {
          throw std::invalid_argument(
              "omp needs s <= m in every cell; got s=" + std::to_string(s) +
              ", m=" + std::to_string(m));
        }
      }
    }
  }
}

ResultTable run_sweep(const ExperimentConfig& config, bool fit_slopes,
                      int threads) {
  const Representation rep = build_representation(config);
  std::vector<Element> allowed_storage;
  const std::vector<Element>* allowed = nullptr;
  if (config.omega_restriction == OmegaRestriction::affine_axis) {
    if (rep.group().kind() != FiniteGroup::Kind::affine) {
      throw std::invalid_argument(
          "affine_axis restriction requires an affine group");
    }
    allowed_storage = affine_axis_subset(rep.group().param());
    allowed = &allowed_storage;
  }
  const std::int64_t supply =
      allowed ? static_cast<std::int64_t>(allowed_storage.size())
              : rep.group().order();
  const bool want_delta = fit_slopes || config.compute_delta_s;
  validate_sweep(config, rep, supply, want_delta);

  const std::size_t n_m = config.m_list.size();
  const std::size_t n_s = config.sparsity_list.size();
  const std::size_t trials = static_cast<std::size_t>(config.trials_per_cell);
  const std::int64_t total =
      static_cast<std::int64_t>(n_m * n_s * trials);
  std::vector<TrialOutcome> slots(static_cast<std::size_t>(total));

  parallel_for_chunks(total, threads, [&](std::int64_t begin,
                                          std::int64_t end) {
    for (std::int64_t k = begin; k < end; ++k) {
      const std::size_t cell = static_cast<std::size_t>(k) / trials;
      const int t = static_cast<int>(static_cast<std::size_t>(k) % trials);
      const std::size_t si = cell / n_m;
      const std::size_t mi = cell % n_m;
      slots[static_cast<std::size_t>(k)] =
          run_trial(config, rep, allowed, config.m_list[mi],
                    config.sparsity_list[si], t, want_delta);
    }
  });

  ResultTable table;
  for (std::size_t si = 0; si < n_s; ++si) {
    for (std::size_t mi = 0; mi < n_m; ++mi) {
      const std::size_t base = (si * n_m + mi) * trials;
      ResultRow row;
      row.m = config.m_list[mi];
      row.s = config.sparsity_list[si];
      row.trials = config.trials_per_cell;
      std::vector<double> errors;
      std::vector<double> deltas;
      errors.reserve(trials);
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialOutcome& o = slots[base + t];
        if (o.success) row.successes += 1;
        errors.push_back(o.rel_error);
        if (want_delta) deltas.push_back(o.delta);
      }
      row.success_rate =
          static_cast<double>(row.successes) / static_cast<double>(trials);
      row.median_rel_error = median_of(std::move(errors));
      if (want_delta) row.median_delta_s = median_of(std::move(deltas));
      row.seed = derive_key(config.master_seed, "cell",
                            {static_cast<std::uint64_t>(row.m),
                             static_cast<std::uint64_t>(row.s)});
      table.rows.push_back(std::move(row));
    }
  }

  if (fit_slopes && n_m >= 2) {
    for (std::size_t si = 0; si < n_s; ++si) {
      std::vector<double> xs;
      std::vector<double> ys;
      bool usable = true;
      for (std::size_t mi = 0; mi < n_m; ++mi) {
        const ResultRow& row = table.rows[si * n_m + mi];
        const double d = row.median_delta_s.value_or(0.0);
        if (!(d > 0.0) || !std::isfinite(d)) {
          usable = false;
          break;
        }
        xs.push_back(std::log(static_cast<double>(row.m)));
        ys.push_back(std::log(d));
      }
      if (!usable) continue;
      const double xbar =
          std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
      const double ybar =
          std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
      double num = 0.0;
      double den = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xbar) * (ys[i] - ybar);
        den += (xs[i] - xbar) * (xs[i] - xbar);
      }
      if (den > 0.0) {
        table.slopes.push_back({config.sparsity_list[si], num / den});
      }
    }
  }
  return table;
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::ostringstream os;
  os << "m,s,trials,successes,success_rate,median_rel_error,median_delta_s,"
        "seed\n";
  for (const ResultRow& row : rows) {
    os << row.m << ',' << row.s << ',' << row.trials << ',' << row.successes
       << ',' << format_double(row.success_rate) << ','
       << format_double(row.median_rel_error) << ',';
    if (row.median_delta_s) os << format_double(*row.median_delta_s);
    os << ',' << row.seed << '\n';
  }
  for (const SlopeFit& fit : slopes) {
    os << "# delta_slope s=" << fit.s << ' ' << format_double(fit.slope)
       << '\n';
  }
  return os.str();
}

ResultTable run_phase_transition(const ExperimentConfig& config, int threads) {
  return run_sweep(config, /*fit_slopes=*/false, threads);
}

ResultTable run_delta_scaling(const ExperimentConfig& config, int threads) {
  return run_sweep(config, /*fit_slopes=*/true, threads);
}

namespace {

std::vector<Element> all_elements(const FiniteGroup& group) {
  std::vector<Element> out(static_cast<std::size_t>(group.order()));
  std::iota(out.begin(), out.end(), Element{0});
  return out;
}

}  // namespace

std::vector<CheckResult> run_verification_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  const auto check_eq = [&out](std::string name, double measured,
                               double expected, double tol) {
    out.push_back({std::move(name), std::abs(measured - expected) <= tol,
                   measured, expected, tol});
  };
  const auto check_le = [&out](std::string name, double measured, double bound,
                               double tol) {
    out.push_back(
        {std::move(name), measured <= bound + tol, measured, bound, tol});
  };

  {
    FiniteGroup g = make_cyclic(16);
    SamplingSet omega(g, all_elements(g));
    check_eq("left_regular_cyclic16_constant",
             orbit_constant_exact(left_regular(g), omega).value, 1.0, 1e-12);
  }
  {
    FiniteGroup g = make_affine(5);
    SamplingSet omega(g, all_elements(g));
    check_eq("left_regular_affine5_constant",
             orbit_constant_exact(left_regular(g), omega).value, 1.0, 1e-12);
  }
  {
    FiniteGroup g = make_affine(5);
    Representation rep = affine_quasi_regular(5);
    SamplingSet omega(g, all_elements(g));
    const double bound =
        static_cast<double>(omega_two(omega).size());
    check_le("quasi_regular_affine5_constant_max",
             orbit_constant_exact(rep, omega).value, bound, 1e-12);
  }
  {
    FiniteGroup g = make_affine(5);
    Representation rep = affine_quasi_regular(5);
    SamplingSet omega(g, affine_axis_subset(5));
    check_eq("quasi_regular_affine5_axis_constant",
             orbit_constant_exact(rep, omega).value, 1.0, 1e-12);
  }
  {
    FiniteGroup g = make_cyclic(8);
    Representation rep = trivial(g, 8);
    SamplingSet omega =
        random_sampling_set(g, 4, derive_key(seed, "verify_trivial"));
    check_eq("trivial_cyclic8_constant",
             orbit_constant_exact(rep, omega).value, 4.0, 0.0);
  }
  {
    FiniteGroup g = make_cyclic(8);
    Representation rep = fourier_realization(8);
    SamplingSet omega =
        random_sampling_set(g, 4, derive_key(seed, "verify_fourier"));
    check_eq("fourier_cyclic8_constant",
             orbit_constant_exact(rep, omega).value, 4.0, 1e-9);
  }
  {
    FiniteGroup g = make_cyclic(16);
    Representation rep = left_regular(g);
    SamplingSet omega =
        random_sampling_set(g, 6, derive_key(seed, "verify_circulant"));
    GeneratorSpec spec{Distribution::gaussian, 16,
                       derive_key(seed, "verify_xi")};
    const Eigen::VectorXcd xi = draw_generator(spec);
    const MeasurementMatrix phi = build_measurement_matrix(rep, omega, xi);
    const Eigen::MatrixXcd circ = partial_circulant_direct(xi, omega);
    check_eq("circulant_equivalence_max_diff",
             (phi.entries - circ).cwiseAbs().maxCoeff(), 0.0, 0.0);
  }
  {
    Representation rep = left_regular(make_cyclic(8));
    check_eq("left_regular_cyclic8_unitarity", max_unitarity_residual(rep),
             0.0, 1e-12);
    check_eq("left_regular_cyclic8_homomorphism",
             max_homomorphism_residual(rep).matrix, 0.0, 1e-12);
  }
  {
    Representation rep = fourier_realization(8);
    check_eq("fourier_cyclic8_unitarity", max_unitarity_residual(rep), 0.0,
             1e-10);
  }
  {
    Representation rep = weyl_heisenberg(4);
    const HomomorphismResidual res = max_homomorphism_residual(rep);
    check_eq("weyl_heisenberg4_homomorphism", res.matrix, 0.0, 1e-12);
    check_eq("weyl_heisenberg4_cocycle_modulus", res.cocycle, 0.0, 1e-12);
    check_eq("weyl_heisenberg4_unitarity", max_unitarity_residual(rep), 0.0,
             1e-12);
  }
  return out;
}

std::string format_report(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  for (const CheckResult& c : checks) {
    os << (c.pass ? "PASS" : "FAIL") << ' ' << c.name
       << " measured=" << format_double(c.measured)
       << " expected=" << format_double(c.expected)
       << " tolerance=" << format_double(c.tolerance) << '\n';
  }
  return os.str();
}

}  // namespace orbitrip
