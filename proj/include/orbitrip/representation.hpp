#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "orbitrip/group.hpp"

namespace orbitrip {

using Complex = std::complex<double>;

/// One monomial matrix action: (pi(g) x)[i] = phase[i] * x[source[i]].
/// Permutation matrices have unit phases; diagonal matrices have the identity
/// source map.
struct MonomialAction {
  std::vector<Element> source;
  Eigen::VectorXcd phase;
};

/**
 * Unitary representation of a finite group on C^dim, possibly projective
 * (pi(g) pi(h) = lambda(g, h) pi(gh) with unimodular lambda).
 *
 * Shift/permutation/diagonal families carry a compact monomial realization
 * with O(dim) apply; conjugated families fall back to dense matrices.
 * Instances are immutable and safe for concurrent use.
 */
class Representation {
 public:
  enum class Kind { ordinary, projective };

  static Representation monomial(FiniteGroup group, std::int64_t dim,
                                 Kind kind, std::string label,
                                 std::function<MonomialAction(Element)> action);
  static Representation dense(FiniteGroup group, std::int64_t dim, Kind kind,
                              std::string label,
                              std::function<Eigen::MatrixXcd(Element)> matrix);

  const FiniteGroup& group() const;
  std::int64_t dim() const;
  Kind kind() const;
  const std::string& label() const;
  bool is_monomial() const;

  /// Monomial realizations only; throws std::logic_error otherwise.
  MonomialAction action(Element g) const;

  Eigen::MatrixXcd matrix_of(Element g) const;

  Eigen::VectorXcd apply(Element g, const Eigen::VectorXcd& x) const;

  /// lambda(g, h) with pi(g) pi(h) = lambda * pi(gh), read off as the entry
  /// ratio at the dominant coefficient of pi(gh). Computed on demand.
  Complex cocycle(Element g, Element h) const;

 private:
  struct Impl;
  explicit Representation(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Left regular representation (L(g) f)(h) = f(g^{-1} h) on C^{|G|}.
/// Requires |G| <= 4096.
Representation left_regular(const FiniteGroup& group);

/// Quasi-regular action of the affine group on C^p:
/// (rho(k, l) f)(j) = f(l^{-1} (j - k) mod p). Requires p prime, p <= 4096.
Representation affine_quasi_regular(Element p);

/// pi(g) = I on C^n for every g.
Representation trivial(const FiniteGroup& group, std::int64_t n);

/// U pi(.) U^*. The conjugator must satisfy ||U^* U - I||_max <= 1e-10.
Representation conjugate(const Representation& rep,
                         const Eigen::MatrixXcd& unitary,
                         std::string label = "");

/// Left regular representation of Z_n conjugated by the unitary DFT, i.e.
/// realized in the frequency domain where every matrix is diagonal.
Representation fourier_realization(std::int64_t n);

/// Projective time-frequency representation of Z_n x Z_n on C^n:
/// pi(k, l) = M_l T_k with (T_k x)(j) = x(j - k) and
/// (M_l x)(j) = exp(2 pi i l j / n) x(j). Requires n >= 2.
Representation weyl_heisenberg(std::int64_t n);

/// max over g of ||pi(g)^* pi(g) - I||_max.
double max_unitarity_residual(const Representation& rep);

struct HomomorphismResidual {
  /// max over (g, h) of ||pi(g) pi(h) - lambda(g, h) pi(gh)||_max.
  double matrix = 0.0;
  /// Ordinary kind: max |lambda - 1|. Projective kind: max ||lambda| - 1|.
  double cocycle = 0.0;
};

/// Exhaustive over all |G|^2 pairs; intended for desk-scale groups.
HomomorphismResidual max_homomorphism_residual(const Representation& rep);

}  // namespace orbitrip
