#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "orbitrip/group.hpp"
#include "orbitrip/representation.hpp"
#include "orbitrip/rng.hpp"
#include "orbitrip/sensing.hpp"

using namespace orbitrip;

TEST_SUITE("sensing") {

TEST_CASE("distribution names round trip") {
  for (Distribution d : {Distribution::gaussian, Distribution::rademacher,
                         Distribution::steinhaus}) {
    CHECK(distribution_from_string(to_string(d)) == d);
  }
  CHECK_THROWS_AS(distribution_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("generator draws are deterministic in the spec") {
  const GeneratorSpec spec{Distribution::gaussian, 32, 123};
  const Eigen::VectorXcd a = draw_generator(spec);
  const Eigen::VectorXcd b = draw_generator(spec);
  CHECK(a.size() == 32);
  CHECK((a - b).norm() == 0.0);
  const GeneratorSpec other{Distribution::gaussian, 32, 124};
  CHECK((a - draw_generator(other)).norm() != 0.0);
}

TEST_CASE("gaussian generator moments") {
  const GeneratorSpec spec{Distribution::gaussian, 10000, 5};
  const Eigen::VectorXcd xi = draw_generator(spec);
  double mean = 0.0, second = 0.0;
  for (int i = 0; i < xi.size(); ++i) {
    CHECK(xi(i).imag() == 0.0);
    mean += xi(i).real();
    second += std::norm(xi(i));
  }
  mean /= xi.size();
  second /= xi.size();
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(second - 1.0) < 0.06);
}

TEST_CASE("rademacher entries are exact signs") {
  const GeneratorSpec spec{Distribution::rademacher, 512, 9};
  const Eigen::VectorXcd xi = draw_generator(spec);
  int plus = 0;
  for (int i = 0; i < xi.size(); ++i) {
    CHECK(xi(i).imag() == 0.0);
    CHECK(std::abs(xi(i).real()) == 1.0);
    if (xi(i).real() > 0) ++plus;
  }
  CHECK(plus > 180);
  CHECK(plus < 332);
}

TEST_CASE("steinhaus entries sit on the unit circle") {
  const GeneratorSpec spec{Distribution::steinhaus, 256, 21};
  const Eigen::VectorXcd xi = draw_generator(spec);
  for (int i = 0; i < xi.size(); ++i) {
    CHECK(std::abs(std::abs(xi(i)) - 1.0) <= 1e-15);
  }
  CHECK(xi(0) != xi(1));
}

TEST_CASE("measurement rows are scaled conjugated orbit vectors") {
  const FiniteGroup g = make_cyclic(8);
  const Representation rep = left_regular(g);
  const SamplingSet omega(g, {2, 5, 7});
  const GeneratorSpec spec{Distribution::gaussian, 8, 77};
  const Eigen::VectorXcd xi = draw_generator(spec);
  const MeasurementMatrix phi = build_measurement_matrix(rep, omega, spec);
  CHECK(phi.rows() == 3);
  CHECK(phi.cols() == 8);
  CHECK(phi.rep_label == rep.label());
  REQUIRE(phi.generator.has_value());
  CHECK(*phi.generator == spec);
  const double scale = 1.0 / std::sqrt(3.0);
  for (int l = 0; l < 3; ++l) {
    const Eigen::VectorXcd orbit = rep.apply(omega.elements()[l], xi);
    for (int j = 0; j < 8; ++j) {
      CHECK(phi.entries(l, j) == scale * std::conj(orbit(j)));
    }
  }
}

TEST_CASE("measurements are scaled inner products against the orbit") {
  const FiniteGroup g = make_cyclic(8);
  const Representation rep = left_regular(g);
  const SamplingSet omega(g, {0, 3});
  const Eigen::VectorXcd xi = draw_generator({Distribution::steinhaus, 8, 3});
  const MeasurementMatrix phi = build_measurement_matrix(rep, omega, xi);
  Eigen::VectorXcd x(8);
  x.setRandom();
  const Eigen::VectorXcd y = phi.entries * x;
  for (int l = 0; l < 2; ++l) {
    const Eigen::VectorXcd orbit = rep.apply(omega.elements()[l], xi);
    Complex ip(0.0, 0.0);
    for (int i = 0; i < 8; ++i) ip += x(i) * std::conj(orbit(i));
    CHECK(std::abs(y(l) - ip / std::sqrt(2.0)) <= 1e-14);
  }
}

TEST_CASE("measurement construction validates its inputs") {
  const FiniteGroup g = make_cyclic(8);
  const Representation rep = left_regular(g);
  const SamplingSet omega(g, {0, 1});
  CHECK_THROWS_AS(
      build_measurement_matrix(rep, omega, Eigen::VectorXcd::Zero(7)),
      std::invalid_argument);
  const FiniteGroup g4 = make_cyclic(4);
  const SamplingSet omega4(g4, {0, 1});
  CHECK_THROWS_AS(
      build_measurement_matrix(rep, omega4, Eigen::VectorXcd::Zero(8)),
      std::invalid_argument);
}

TEST_CASE("shift-family matrices equal the indexed circulant exactly") {
  const FiniteGroup g = make_cyclic(16);
  const Representation rep = left_regular(g);
  const SamplingSet omega = random_sampling_set(g, 6, 1234);
  for (Distribution d : {Distribution::gaussian, Distribution::steinhaus}) {
    const Eigen::VectorXcd xi = draw_generator({d, 16, 555});
    const MeasurementMatrix phi = build_measurement_matrix(rep, omega, xi);
    const Eigen::MatrixXcd circ = partial_circulant_direct(xi, omega);
    CHECK((phi.entries - circ).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("circulant shortcut validates its inputs") {
  const FiniteGroup aff = make_affine(5);
  const SamplingSet omega(aff, {0, 1});
  CHECK_THROWS_AS(
      partial_circulant_direct(Eigen::VectorXcd::Zero(20), omega),
      std::invalid_argument);
  const FiniteGroup g = make_cyclic(8);
  const SamplingSet cyc(g, {0, 1});
  CHECK_THROWS_AS(partial_circulant_direct(Eigen::VectorXcd::Zero(7), cyc),
                  std::invalid_argument);
}

TEST_CASE("matrix text format round trips bit-faithfully") {
  Eigen::MatrixXcd m(3, 5);
  m.setRandom();
  m(0, 0) = Complex(0.0, -0.0);
  m(1, 2) = Complex(1e-308, 1.7976931348623157e308);
  m(2, 4) = Complex(M_PI, -1.0 / 3.0);
  std::stringstream ss;
  save_matrix_text(ss, m);
  const Eigen::MatrixXcd back = load_matrix_text(ss);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 5);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(back(i, j).real() == m(i, j).real());
      CHECK(back(i, j).imag() == m(i, j).imag());
    }
  }

  const std::string path = "sensing_roundtrip.tmp";
  save_matrix_text(path, m);
  const Eigen::MatrixXcd from_file = load_matrix_text(path);
  CHECK((from_file - m).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("matrix loader rejects malformed input") {
  {
    std::stringstream ss("2 2\n1 2\n");
    CHECK_THROWS_AS(load_matrix_text(ss), std::runtime_error);
  }
  {
    std::stringstream ss("garbage\n");
    CHECK_THROWS_AS(load_matrix_text(ss), std::runtime_error);
  }
  CHECK_THROWS_AS(load_matrix_text(std::string("no_such_file.txt")),
                  std::runtime_error);
}

}  // TEST_SUITE
