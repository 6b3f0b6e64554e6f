#include "orbitrip/representation.hpp"

#include <cmath>
#include <stdexcept>

namespace orbitrip {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kConjugatorTol = 1e-10;

// exp(2 pi i r / n) with the residue reduced first, so equal phases are
// bit-identical across call sites.
Complex root_of_unity(Element r, Element n) {
  const double a = 2.0 * kPi * static_cast<double>(((r % n) + n) % n) /
                   static_cast<double>(n);
  return {std::cos(a), std::sin(a)};
}
}  // namespace

struct Representation::Impl {
  FiniteGroup group;
  std::int64_t dim = 0;
  Kind kind = Kind::ordinary;
  std::string label;
  std::function<MonomialAction(Element)> action_fn;       // monomial form
  std::function<Eigen::MatrixXcd(Element)> matrix_fn;     // dense form

  Impl(FiniteGroup g) : group(std::move(g)) {}
};

Representation::Representation(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

Representation Representation::monomial(
    FiniteGroup group, std::int64_t dim, Kind kind, std::string label,
    std::function<MonomialAction(Element)> action) {
  if (dim < 1) throw std::invalid_argument("representation dimension < 1");
  auto impl = std::make_shared<Impl>(std::move(group));
  impl->dim = dim;
  impl->kind = kind;
  impl->label = std::move(label);
  impl->action_fn = std::move(action);
  return Representation(std::move(impl));
}

Representation Representation::dense(
    FiniteGroup group, std::int64_t dim, Kind kind, std::string label,
    std::function<Eigen::MatrixXcd(Element)> matrix) {
  if (dim < 1) throw std::invalid_argument("representation dimension < 1");
  auto impl = std::make_shared<Impl>(std::move(group));
  impl->dim = dim;
  impl->kind = kind;
  impl->label = std::move(label);
  const Element e = impl->group.identity();
  if (kind == Kind::ordinary) {
    // Ordinary representations map the identity to I exactly; short-circuit
    // so numerically conjugated families keep that guarantee.
    impl->matrix_fn = [fn = std::move(matrix), e,
                       dim](Element g) -> Eigen::MatrixXcd {
      if (g == e) return Eigen::MatrixXcd::Identity(dim, dim);
      return fn(g);
    };
  } else {
    impl->matrix_fn = std::move(matrix);
  }
  return Representation(std::move(impl));
}

const FiniteGroup& Representation::group() const { return impl_->group; }
std::int64_t Representation::dim() const { return impl_->dim; }
Representation::Kind Representation::kind() const { return impl_->kind; }
const std::string& Representation::label() const { return impl_->label; }
bool Representation::is_monomial() const {
  return static_cast<bool>(impl_->action_fn);
}

MonomialAction Representation::action(Element g) const {
  if (!is_monomial()) {
    throw std::logic_error("representation has no monomial realization");
  }
  return impl_->action_fn(g);
}

Eigen::MatrixXcd Representation::matrix_of(Element g) const {
  if (is_monomial()) {
    const MonomialAction act = impl_->action_fn(g);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(impl_->dim, impl_->dim);
    for (std::int64_t i = 0; i < impl_->dim; ++i) {
      m(i, act.source[static_cast<std::size_t>(i)]) = act.phase(i);
    }
    return m;
  }
  return impl_->matrix_fn(g);
}

Eigen::VectorXcd Representation::apply(Element g,
                                       const Eigen::VectorXcd& x) const {
  if (x.size() != impl_->dim) {
    throw std::invalid_argument("apply: vector length does not match dim");
  }
  if (is_monomial()) {
    const MonomialAction act = impl_->action_fn(g);
    Eigen::VectorXcd y(impl_->dim);
    for (std::int64_t i = 0; i < impl_->dim; ++i) {
      y(i) = act.phase(i) * x(act.source[static_cast<std::size_t>(i)]);
    }
    return y;
  }
  return impl_->matrix_fn(g) * x;
}

Complex Representation::cocycle(Element g, Element h) const {
  const Eigen::MatrixXcd prod = matrix_of(g) * matrix_of(h);
  const Eigen::MatrixXcd target = matrix_of(impl_->group.mul(g, h));
  // Dominant entry of pi(gh); unique nonzero per row for monomial forms.
  std::int64_t br = 0, bc = 0;
  double best = -1.0;
  for (std::int64_t r = 0; r < impl_->dim; ++r) {
    for (std::int64_t c = 0; c < impl_->dim; ++c) {
      const double a = std::abs(target(r, c));
      if (a > best) {
        best = a;
        br = r;
        bc = c;
      }
    }
  }
  return prod(br, bc) / target(br, bc);
}

Representation left_regular(const FiniteGroup& group) {
  if (group.order() > 4096) {
    throw std::length_error("left regular representation capped at |G| 4096");
  }
  const std::int64_t n = group.order();
  return Representation::monomial(
      group, n, Representation::Kind::ordinary, "L(" + group.label() + ")",
      [group, n](Element g) {
        MonomialAction act;
        act.source.resize(static_cast<std::size_t>(n));
        act.phase = Eigen::VectorXcd::Ones(n);
        const Element gi = group.inv(g);
        for (Element h = 0; h < n; ++h) {
          act.source[static_cast<std::size_t>(h)] = group.mul(gi, h);
        }
        return act;
      });
}

Representation affine_quasi_regular(Element p) {
  if (p > 4096) {
    throw std::length_error("quasi-regular representation capped at p 4096");
  }
  FiniteGroup group = make_affine(p);  // validates primality
  return Representation::monomial(
      group, p, Representation::Kind::ordinary,
      "quasi_regular(" + group.label() + ")", [p](Element g) {
        const auto [k, l] = affine_decode(p, g);
        // l^{-1} via Fermat; p is prime by construction.
        Element li = 1, base = l % p, e = p - 2;
        while (e > 0) {
          if (e & 1) li = li * base % p;
          base = base * base % p;
          e >>= 1;
        }
        MonomialAction act;
        act.source.resize(static_cast<std::size_t>(p));
        act.phase = Eigen::VectorXcd::Ones(p);
        for (Element j = 0; j < p; ++j) {
          act.source[static_cast<std::size_t>(j)] =
              li * ((j - k) % p + p) % p;
        }
        return act;
      });
}

Representation trivial(const FiniteGroup& group, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("trivial representation needs n >= 1");
  return Representation::monomial(
      group, n, Representation::Kind::ordinary,
      "trivial(" + group.label() + ", n=" + std::to_string(n) + ")",
      [n](Element) {
        MonomialAction act;
        act.source.resize(static_cast<std::size_t>(n));
        for (std::int64_t j = 0; j < n; ++j) {
          act.source[static_cast<std::size_t>(j)] = j;
        }
        act.phase = Eigen::VectorXcd::Ones(n);
        return act;
      });
}

Representation conjugate(const Representation& rep,
                         const Eigen::MatrixXcd& unitary, std::string label) {
  const std::int64_t n = rep.dim();
  if (unitary.rows() != n || unitary.cols() != n) {
    throw std::invalid_argument("conjugator shape does not match dim");
  }
  const Eigen::MatrixXcd gram = unitary.adjoint() * unitary;
  const double residual =
      (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (residual > kConjugatorTol) {
    throw std::invalid_argument("conjugator is not unitary");
  }
  if (label.empty()) label = "conjugated " + rep.label();
  Eigen::MatrixXcd u = unitary;
  Eigen::MatrixXcd uadj = unitary.adjoint();
  return Representation::dense(
      rep.group(), n, rep.kind(), std::move(label),
      [rep, u = std::move(u), uadj = std::move(uadj)](Element g) {
        return Eigen::MatrixXcd(u * rep.matrix_of(g) * uadj);
      });
}

Representation fourier_realization(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("fourier realization needs n >= 1");
  Eigen::MatrixXcd dft(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t k = 0; k < n; ++k) {
      dft(j, k) = scale * root_of_unity(-(j * k) % n, n);
    }
  }
  return conjugate(left_regular(make_cyclic(n)), dft,
                   "fourier(Z" + std::to_string(n) + ")");
}

Representation weyl_heisenberg(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("time-frequency family needs n >= 2");
  FiniteGroup group = make_phase_space_group(n);
  return Representation::monomial(
      group, n, Representation::Kind::projective,
      "weyl_heisenberg(" + std::to_string(n) + ")", [n](Element g) {
        const Element k = g / n;
        const Element l = g % n;
        MonomialAction act;
        act.source.resize(static_cast<std::size_t>(n));
        act.phase = Eigen::VectorXcd(n);
        for (Element j = 0; j < n; ++j) {
          act.source[static_cast<std::size_t>(j)] = ((j - k) % n + n) % n;
          act.phase(j) = root_of_unity(l * j % n, n);
        }
        return act;
      });
}

double max_unitarity_residual(const Representation& rep) {
  const std::int64_t n = rep.dim();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  double worst = 0.0;
  for (Element g = 0; g < rep.group().order(); ++g) {
    const Eigen::MatrixXcd m = rep.matrix_of(g);
    worst = std::max(worst, (m.adjoint() * m - eye).cwiseAbs().maxCoeff());
  }
  return worst;
}

HomomorphismResidual max_homomorphism_residual(const Representation& rep) {
  const Element order = rep.group().order();
  HomomorphismResidual res;
  std::vector<Eigen::MatrixXcd> mats;
  mats.reserve(static_cast<std::size_t>(order));
  for (Element g = 0; g < order; ++g) mats.push_back(rep.matrix_of(g));
  for (Element g = 0; g < order; ++g) {
    for (Element h = 0; h < order; ++h) {
      const Complex lambda = rep.cocycle(g, h);
      const Eigen::MatrixXcd defect =
          mats[static_cast<std::size_t>(g)] * mats[static_cast<std::size_t>(h)] -
          lambda * mats[static_cast<std::size_t>(rep.group().mul(g, h))];
      res.matrix = std::max(res.matrix, defect.cwiseAbs().maxCoeff());
      const double dev = rep.kind() == Representation::Kind::ordinary
                             ? std::abs(lambda - Complex(1.0, 0.0))
                             : std::abs(std::abs(lambda) - 1.0);
      res.cocycle = std::max(res.cocycle, dev);
    }
  }
  return res;
}

}  // namespace orbitrip
