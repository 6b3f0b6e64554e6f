#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitrip/analysis.hpp"
#include "orbitrip/experiment.hpp"

using namespace orbitrip;

namespace {

const char* kMinimalConfig = R"({
  "group": {"kind": "cyclic", "n": 8},
  "representation": "left_regular",
  "n": 8,
  "distribution": "gaussian",
  "sparsity_list": [1],
  "m_list": [4],
  "trials_per_cell": 5,
  "master_seed": 7
})";

ExperimentConfig phase16_config() {
  ExperimentConfig c;
  c.group.kind = "cyclic";
  c.group.n = 16;
  c.representation_kind = "left_regular";
  c.n = 16;
  c.distribution = Distribution::gaussian;
  c.sparsity_list = {1, 2, 3};
  c.m_list = {4, 8, 12, 16};
  c.trials_per_cell = 50;
  c.master_seed = 20260815;
  return c;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("minimal config parses with documented defaults") {
  const ExperimentConfig c = parse_config(kMinimalConfig);
  CHECK(c.group.kind == "cyclic");
  CHECK(c.group.n == 8);
  CHECK(c.representation_kind == "left_regular");
  CHECK(c.n == 8);
  CHECK(c.distribution == Distribution::gaussian);
  CHECK(c.sparsity_list == std::vector<int>{1});
  CHECK(c.m_list == std::vector<std::int64_t>{4});
  CHECK(c.trials_per_cell == 5);
  CHECK(c.master_seed == 7);
  CHECK(c.success_threshold == 1e-4);
  CHECK(c.omega_restriction == OmegaRestriction::none);
  CHECK(c.solver == SolverKind::iht);
  CHECK(c.compute_delta_s == false);
  CHECK(c.debug_phi == DebugPhi::none);
}

TEST_CASE("emit and parse round trip every field") {
  ExperimentConfig c;
  c.group.kind = "affine";
  c.group.p = 5;
  c.representation_kind = "affine_quasi_regular";
  c.n = 5;
  c.distribution = Distribution::steinhaus;
  c.sparsity_list = {1, 2};
  c.m_list = {2, 3};
  c.trials_per_cell = 7;
  c.success_threshold = 1e-5;
  c.master_seed = 99;
  c.omega_restriction = OmegaRestriction::affine_axis;
  c.solver = SolverKind::omp;
  c.compute_delta_s = true;
  c.debug_phi = DebugPhi::identity;
  const ExperimentConfig back = parse_config(emit_config(c));
  CHECK(back == c);

  ExperimentConfig nested;
  nested.group.kind = "direct_product";
  nested.group.factors = {{"cyclic", 2, 0, {}}, {"cyclic", 3, 0, {}}};
  nested.representation_kind = "left_regular";
  nested.n = 6;
  nested.sparsity_list = {1};
  nested.m_list = {3};
  nested.trials_per_cell = 2;
  nested.master_seed = 5;
  CHECK(parse_config(emit_config(nested)) == nested);
}

TEST_CASE("load_config reads the same text from disk") {
  const std::string path = "experiment_config.tmp";
  {
    std::ofstream out(path);
    out << kMinimalConfig;
  }
  CHECK(load_config(path) == parse_config(kMinimalConfig));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("no_such_config.json"), std::runtime_error);
}

TEST_CASE("unknown and missing keys are rejected at every level") {
  CHECK_THROWS_AS(parse_config(R"({
    "group": {"kind": "cyclic", "n": 8}, "representation": "left_regular",
    "n": 8, "distribution": "gaussian", "sparsity_list": [1], "m_list": [4],
    "trials_per_cell": 5, "master_seed": 7, "bogus": 1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({
    "group": {"kind": "cyclic", "n": 8, "extra": 2},
    "representation": "left_regular", "n": 8, "distribution": "gaussian",
    "sparsity_list": [1], "m_list": [4], "trials_per_cell": 5,
    "master_seed": 7})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({
    "group": {"kind": "direct_product", "factors": [
      {"kind": "cyclic", "n": 2, "junk": 0}, {"kind": "cyclic", "n": 3}]},
    "representation": "left_regular", "n": 6, "distribution": "gaussian",
    "sparsity_list": [1], "m_list": [4], "trials_per_cell": 5,
    "master_seed": 7})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({
    "group": {"kind": "cyclic", "n": 8}, "representation": "left_regular",
    "distribution": "gaussian", "sparsity_list": [1], "m_list": [4],
    "trials_per_cell": 5, "master_seed": 7})"),
                  std::invalid_argument);
}

TEST_CASE("bad enum strings are rejected") {
  const std::string base = R"({
    "group": {"kind": "cyclic", "n": 8}, "representation": "left_regular",
    "n": 8, "distribution": "DIST", "sparsity_list": [1], "m_list": [4],
    "trials_per_cell": 5, "master_seed": 7SUFFIX})";
  auto with = [&](const std::string& dist, const std::string& suffix) {
    std::string text = base;
    text.replace(text.find("DIST"), 4, dist);
    text.replace(text.find("SUFFIX"), 6, suffix);
    return text;
  };
  CHECK_THROWS_AS(parse_config(with("poisson", "")), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(with("gaussian", R"(, "solver": "magic")")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_config(with("gaussian", R"(, "omega_restriction": "axis?")")),
      std::invalid_argument);
  CHECK_THROWS_AS(parse_config(with("gaussian", R"(, "debug_phi": "ones")")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_config(with("gaussian", R"(, "group": {"kind": "dihedral"})")),
      std::invalid_argument);
}

TEST_CASE("group construction from configs") {
  GroupConfig nested;
  nested.kind = "direct_product";
  nested.factors = {{"cyclic", 2, 0, {}}, {"cyclic", 3, 0, {}},
                    {"cyclic", 4, 0, {}}};
  const FiniteGroup g = build_group(nested);
  CHECK(g.order() == 24);
  CHECK(g.label() == "Z2 x Z3 x Z4");

  GroupConfig aff;
  aff.kind = "affine";
  aff.p = 7;
  CHECK(build_group(aff).order() == 42);

  GroupConfig lonely;
  lonely.kind = "direct_product";
  lonely.factors = {{"cyclic", 2, 0, {}}};
  CHECK_THROWS_AS(build_group(lonely), std::invalid_argument);
}

TEST_CASE("representation construction validates shape against the config") {
  ExperimentConfig c = parse_config(kMinimalConfig);
  c.n = 4;
  CHECK_THROWS_AS(build_representation(c), std::invalid_argument);

  c = parse_config(kMinimalConfig);
  c.representation_kind = "affine_quasi_regular";
  CHECK_THROWS_AS(build_representation(c), std::invalid_argument);

  c = parse_config(kMinimalConfig);
  c.representation_kind = "fourier";
  c.group.kind = "affine";
  c.group.n = 0;
  c.group.p = 5;
  CHECK_THROWS_AS(build_representation(c), std::invalid_argument);

  c = parse_config(kMinimalConfig);
  c.representation_kind = "weyl_heisenberg";
  c.group.kind = "direct_product";
  c.group.n = 0;
  c.group.factors = {{"cyclic", 2, 0, {}}, {"cyclic", 3, 0, {}}};
  c.n = 2;
  CHECK_THROWS_AS(build_representation(c), std::invalid_argument);

  c = parse_config(kMinimalConfig);
  c.representation_kind = "weyl_heisenberg";
  c.group.kind = "direct_product";
  c.group.n = 0;
  c.group.factors = {{"cyclic", 4, 0, {}}, {"cyclic", 4, 0, {}}};
  c.n = 4;
  const Representation wh = build_representation(c);
  CHECK(wh.dim() == 4);
  CHECK(wh.group().order() == 16);

  c = parse_config(kMinimalConfig);
  c.representation_kind = "nonsense";
  CHECK_THROWS_AS(build_representation(c), std::invalid_argument);
}

TEST_CASE("sweeps are reproducible across worker counts and reruns") {
  ExperimentConfig c = parse_config(kMinimalConfig);
  c.m_list = {2, 4};
  c.trials_per_cell = 10;
  c.master_seed = 31;
  const std::string one = run_phase_transition(c, 1).to_csv();
  const std::string eight = run_phase_transition(c, 8).to_csv();
  const std::string again = run_phase_transition(c, 8).to_csv();
  CHECK(one == eight);
  CHECK(eight == again);
}

TEST_CASE("sweeps reject infeasible grids before running") {
  ExperimentConfig c = parse_config(kMinimalConfig);
  c.m_list = {9};
  CHECK_THROWS_AS(run_phase_transition(c), std::invalid_argument);

  c = parse_config(kMinimalConfig);
  c.solver = SolverKind::omp;
  c.sparsity_list = {3};
  c.m_list = {2};
  CHECK_THROWS_AS(run_phase_transition(c), std::invalid_argument);

  c = parse_config(kMinimalConfig);
  c.trials_per_cell = 0;
  CHECK_THROWS_AS(run_phase_transition(c), std::invalid_argument);
}

TEST_CASE("scaling refuses sparsity levels beyond the support budget") {
  ExperimentConfig c;
  c.group.kind = "cyclic";
  c.group.n = 64;
  c.representation_kind = "left_regular";
  c.n = 64;
  c.sparsity_list = {5};
  c.m_list = {8};
  c.trials_per_cell = 1;
  c.master_seed = 1;
  CHECK(binomial(64, 5) > static_cast<std::uint64_t>(kDefaultRipBudget));
  CHECK_THROWS_AS(run_delta_scaling(c), EnumerationBudgetError);
  const ResultTable ok = run_phase_transition(c);
  CHECK(ok.rows.size() == 1);
}

TEST_CASE("identity debug operator gives exact recovery and zero constants") {
  ExperimentConfig c = parse_config(kMinimalConfig);
  c.debug_phi = DebugPhi::identity;
  c.sparsity_list = {1, 2};
  c.m_list = {2, 4};
  c.trials_per_cell = 3;
  const ResultTable t = run_delta_scaling(c);
  REQUIRE(t.rows.size() == 4);
  for (const ResultRow& row : t.rows) {
    CHECK(row.success_rate == 1.0);
    CHECK(row.median_rel_error == 0.0);
    REQUIRE(row.median_delta_s.has_value());
    CHECK(*row.median_delta_s == 0.0);
  }
  CHECK(t.slopes.empty());
  CHECK(t.to_csv().find('#') == std::string::npos);
}

TEST_CASE("shift-orbit recovery rates rise with the measurement count") {
  const ExperimentConfig c = phase16_config();
  const ResultTable t = run_phase_transition(c);
  REQUIRE(t.rows.size() == 12);
  for (std::size_t si = 0; si < 3; ++si) {
    for (std::size_t mi = 0; mi + 1 < 4; ++mi) {
      const double here = t.rows[si * 4 + mi].success_rate;
      const double next = t.rows[si * 4 + mi + 1].success_rate;
      CHECK(here <= next + 0.15);
    }
  }
  const ResultRow& last = t.rows[1 * 4 + 3];
  CHECK(last.m == 16);
  CHECK(last.s == 2);
  CHECK(last.successes == 43);
}

TEST_CASE("a full orbit with greedy recovery succeeds every time") {
  ExperimentConfig c = phase16_config();
  c.solver = SolverKind::omp;
  c.sparsity_list = {2};
  c.m_list = {16};
  const ResultTable t = run_phase_transition(c);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].successes == 50);
  CHECK(t.rows[0].success_rate == 1.0);
}

TEST_CASE("a constant orbit recovers at roughly chance level") {
  ExperimentConfig c = parse_config(kMinimalConfig);
  c.representation_kind = "trivial";
  c.m_list = {4};
  c.trials_per_cell = 200;
  c.master_seed = 20260815;
  const ResultTable t = run_phase_transition(c);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].success_rate >= 0.02);
  CHECK(t.rows[0].success_rate <= 0.25);
}

TEST_CASE("frequency-domain orbits keep a large constant at every m < n") {
  ExperimentConfig c;
  c.group.kind = "cyclic";
  c.group.n = 32;
  c.representation_kind = "fourier";
  c.n = 32;
  c.sparsity_list = {2};
  c.m_list = {4, 8, 16};
  c.trials_per_cell = 25;
  c.master_seed = 20260815;
  const ResultTable t = run_delta_scaling(c);
  REQUIRE(t.rows.size() == 3);
  for (const ResultRow& row : t.rows) {
    REQUIRE(row.median_delta_s.has_value());
    CHECK(*row.median_delta_s >= 0.9);
  }
}

TEST_CASE("csv output shape") {
  ExperimentConfig c = parse_config(kMinimalConfig);
  c.trials_per_cell = 2;
  const std::string csv = run_phase_transition(c).to_csv();
  const std::string header =
      "m,s,trials,successes,success_rate,median_rel_error,median_delta_s,"
      "seed\n";
  CHECK(csv.rfind(header, 0) == 0);
  CHECK(csv.find(",,") != std::string::npos);
  CHECK(csv.back() == '\n');

  c.compute_delta_s = true;
  const std::string with_delta = run_phase_transition(c).to_csv();
  CHECK(with_delta.find(",,") == std::string::npos);

  ExperimentConfig sc = parse_config(kMinimalConfig);
  sc.trials_per_cell = 3;
  sc.m_list = {2, 4};
  const std::string scaling = run_delta_scaling(sc).to_csv();
  CHECK(scaling.find("# delta_slope s=1 ") != std::string::npos);
}

TEST_CASE("the verification suite passes for arbitrary seeds") {
  for (std::uint64_t seed : {2026ULL, 12345ULL}) {
    const std::vector<CheckResult> checks = run_verification_suite(seed);
    CHECK(checks.size() == 13);
    for (const CheckResult& c : checks) {
      CAPTURE(c.name);
      CHECK(c.pass);
      CHECK(!c.name.empty());
    }
  }
}

TEST_CASE("verification reports are one line per check") {
  const std::vector<CheckResult> checks = run_verification_suite();
  const std::string report = format_report(checks);
  std::size_t lines = 0;
  for (char ch : report) lines += ch == '\n';
  CHECK(lines == checks.size());
  CHECK(report.rfind("PASS ", 0) == 0);
  CHECK(report.find("measured=") != std::string::npos);
  CHECK(report.find("FAIL") == std::string::npos);
}

}  // TEST_SUITE
