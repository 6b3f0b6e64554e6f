#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "orbitrip/group.hpp"
#include "orbitrip/representation.hpp"

namespace orbitrip {

/// Generator laws. All three have mean zero and E|xi_i|^2 = 1, so they are
/// subgaussian with O(1) parameter (gaussian exactly, the bounded laws
/// trivially); that parameter is documentation only and never enters the
/// numerics.
enum class Distribution { gaussian, rademacher, steinhaus };

const char* to_string(Distribution d);
Distribution distribution_from_string(const std::string& s);

struct GeneratorSpec {
  Distribution distribution = Distribution::gaussian;
  std::int64_t dim = 0;
  std::uint64_t seed = 0;

  bool operator==(const GeneratorSpec&) const = default;
};

/// Random generator vector xi in C^dim, deterministic in the spec.
/// gaussian: real standard normal entries; rademacher: +-1; steinhaus:
/// uniform on the complex unit circle.
Eigen::VectorXcd draw_generator(const GeneratorSpec& spec);

/**
 * Sensing matrix whose row l is (1/sqrt(m)) (pi(omega_l) xi)^*, i.e.
 * (Phi x)_l = (1/sqrt(m)) <x, pi(omega_l) xi>. Carries its provenance.
 */
struct MeasurementMatrix {
  Eigen::MatrixXcd entries;
  std::string rep_label;
  SamplingSet omega;
  std::optional<GeneratorSpec> generator;

  std::int64_t rows() const { return entries.rows(); }
  std::int64_t cols() const { return entries.cols(); }
};

MeasurementMatrix build_measurement_matrix(const Representation& rep,
                                           const SamplingSet& omega,
                                           const Eigen::VectorXcd& xi);

/// Same, recording the generator spec that produced xi.
MeasurementMatrix build_measurement_matrix(const Representation& rep,
                                           const SamplingSet& omega,
                                           const GeneratorSpec& spec);

/// Row subset of the circulant matrix of xi by direct index arithmetic:
/// entry (l, j) = (1/sqrt(m)) conj(xi((j - omega_l) mod n)). Must coincide
/// entrywise with the orbit construction for the cyclic shift family.
Eigen::MatrixXcd partial_circulant_direct(const Eigen::VectorXcd& xi,
                                          const SamplingSet& omega);

/// Text format: header "rows cols", then rows*cols lines "re im" in row-major
/// order, 17 significant digits. Round-trips doubles bit-faithfully.
void save_matrix_text(std::ostream& os, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd load_matrix_text(std::istream& is);
void save_matrix_text(const std::string& path, const Eigen::MatrixXcd& m);
Eigen::MatrixXcd load_matrix_text(const std::string& path);

}  // namespace orbitrip
