#include "orbitrip/sensing.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "orbitrip/rng.hpp"

namespace orbitrip {

const char* to_string(Distribution d) {
  switch (d) {
    case Distribution::gaussian: return "gaussian";
    case Distribution::rademacher: return "rademacher";
    case Distribution::steinhaus: return "steinhaus";
  }
  return "gaussian";
}

Distribution distribution_from_string(const std::string& s) {
  if (s == "gaussian") return Distribution::gaussian;
  if (s == "rademacher") return Distribution::rademacher;
  if (s == "steinhaus") return Distribution::steinhaus;
  throw std::invalid_argument("unknown distribution: " + s);
}

Eigen::VectorXcd draw_generator(const GeneratorSpec& spec) {
  if (spec.dim < 1) throw std::invalid_argument("generator dim must be >= 1");
  CounterRng rng(derive_key(spec.seed, "generator"));
  Eigen::VectorXcd xi(spec.dim);
  switch (spec.distribution) {
    case Distribution::gaussian:
      for (std::int64_t i = 0; i < spec.dim; ++i) {
        xi(i) = Complex(rng.gaussian(), 0.0);
      }
      break;
    case Distribution::rademacher:
      for (std::int64_t i = 0; i < spec.dim; ++i) {
        xi(i) = Complex(rng.below(2) == 0 ? -1.0 : 1.0, 0.0);
      }
      break;
    case Distribution::steinhaus:
      for (std::int64_t i = 0; i < spec.dim; ++i) {
        xi(i) = rng.unit_circle();
      }
      break;
  }
  return xi;
}

MeasurementMatrix build_measurement_matrix(const Representation& rep,
                                           const SamplingSet& omega,
                                           const Eigen::VectorXcd& xi) {
  if (xi.size() != rep.dim()) {
    throw std::invalid_argument("generator length does not match rep dim");
  }
  if (omega.group_label() != rep.group().label()) {
    throw std::invalid_argument("sampling set group does not match rep group");
  }
  const std::int64_t m = omega.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Eigen::MatrixXcd phi(m, rep.dim());
  for (std::int64_t l = 0; l < m; ++l) {
    const Eigen::VectorXcd orbit =
        rep.apply(omega.elements()[static_cast<std::size_t>(l)], xi);
    phi.row(l) = scale * orbit.adjoint();
  }
  return MeasurementMatrix{std::move(phi), rep.label(), omega, std::nullopt};
}

MeasurementMatrix build_measurement_matrix(const Representation& rep,
                                           const SamplingSet& omega,
                                           const GeneratorSpec& spec) {
  MeasurementMatrix mm = build_measurement_matrix(rep, omega,
                                                  draw_generator(spec));
  mm.generator = spec;
  return mm;
}

Eigen::MatrixXcd partial_circulant_direct(const Eigen::VectorXcd& xi,
                                          const SamplingSet& omega) {
  const std::int64_t n = xi.size();
  if (n < 1) throw std::invalid_argument("generator must be nonempty");
  if (omega.group().kind() != FiniteGroup::Kind::cyclic ||
      omega.group().order() != n) {
    throw std::invalid_argument("sampling set is not over Z_n");
  }
  const std::int64_t m = omega.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  Eigen::MatrixXcd phi(m, n);
  for (std::int64_t l = 0; l < m; ++l) {
    const Element w = omega.elements()[static_cast<std::size_t>(l)];
    for (std::int64_t j = 0; j < n; ++j) {
      phi(l, j) = scale * std::conj(xi(((j - w) % n + n) % n));
    }
  }
  return phi;
}

void save_matrix_text(std::ostream& os, const Eigen::MatrixXcd& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  char line[80];
  for (std::int64_t i = 0; i < m.rows(); ++i) {
    for (std::int64_t j = 0; j < m.cols(); ++j) {
      std::snprintf(line, sizeof line, "%.17g %.17g\n", m(i, j).real(),
                    m(i, j).imag());
      os << line;
    }
  }
  if (!os) throw std::runtime_error("matrix write failed");
}

Eigen::MatrixXcd load_matrix_text(std::istream& is) {
  std::int64_t rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) {
    throw std::runtime_error("malformed matrix header");
  }
  Eigen::MatrixXcd m(rows, cols);
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      double re = 0.0, im = 0.0;
      if (!(is >> re >> im)) {
        throw std::runtime_error("malformed matrix entry");
      }
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

void save_matrix_text(const std::string& path, const Eigen::MatrixXcd& m) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  save_matrix_text(os, m);
}

Eigen::MatrixXcd load_matrix_text(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for read: " + path);
  return load_matrix_text(is);
}

}  // namespace orbitrip
