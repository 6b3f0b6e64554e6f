#include "orbitrip/group.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "orbitrip/rng.hpp"

namespace orbitrip {

struct GroupImpl {
  Element order = 0;
  Element identity = 0;
  FiniteGroup::Kind kind = FiniteGroup::Kind::cyclic;
  Element param = 0;
  std::string label;
  std::function<Element(Element, Element)> mul_fn;
  std::function<Element(Element)> inv_fn;
  std::vector<std::int32_t> cayley;
};

namespace {

void check_element(const GroupImpl& impl, Element a) {
  if (a < 0 || a >= impl.order) {
    throw std::out_of_range("group element " + std::to_string(a) +
                            " outside order " + std::to_string(impl.order));
  }
}

std::shared_ptr<const GroupImpl> finalize(GroupImpl impl) {
  if (impl.order <= FiniteGroup::kCayleyCap) {
    impl.cayley.resize(static_cast<std::size_t>(impl.order * impl.order));
    for (Element a = 0; a < impl.order; ++a) {
      for (Element b = 0; b < impl.order; ++b) {
        impl.cayley[static_cast<std::size_t>(a * impl.order + b)] =
            static_cast<std::int32_t>(impl.mul_fn(a, b));
      }
    }
  }
  return std::make_shared<const GroupImpl>(std::move(impl));
}

Element mod_pow(Element base, Element exp, Element mod) {
  Element result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

// Inverse in Z_p^* for prime p (Fermat). p <= 10^6 keeps products in range.
Element mod_inv(Element l, Element p) { return mod_pow(l, p - 2, p); }

}  // namespace

FiniteGroup::FiniteGroup(std::shared_ptr<const GroupImpl> impl)
    : impl_(std::move(impl)) {}

Element FiniteGroup::order() const { return impl_->order; }
Element FiniteGroup::identity() const { return impl_->identity; }
FiniteGroup::Kind FiniteGroup::kind() const { return impl_->kind; }
const std::string& FiniteGroup::label() const { return impl_->label; }
Element FiniteGroup::param() const { return impl_->param; }

Element FiniteGroup::mul(Element a, Element b) const {
  check_element(*impl_, a);
  check_element(*impl_, b);
  if (!impl_->cayley.empty()) {
    return impl_->cayley[static_cast<std::size_t>(a * impl_->order + b)];
  }
  return impl_->mul_fn(a, b);
}

Element FiniteGroup::inv(Element a) const {
  check_element(*impl_, a);
  return impl_->inv_fn(a);
}

bool FiniteGroup::has_cayley_table() const { return !impl_->cayley.empty(); }

const std::vector<std::int32_t>& FiniteGroup::cayley_table() const {
  return impl_->cayley;
}

bool is_prime(Element p) {
  if (p < 2) return false;
  for (Element d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

FiniteGroup make_cyclic(Element n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be >= 1");
  GroupImpl impl;
  impl.order = n;
  impl.identity = 0;
  impl.kind = FiniteGroup::Kind::cyclic;
  impl.param = n;
  impl.label = "Z" + std::to_string(n);
  impl.mul_fn = [n](Element a, Element b) { return (a + b) % n; };
  impl.inv_fn = [n](Element a) { return (n - a) % n; };
  return FiniteGroup(finalize(std::move(impl)));
}

FiniteGroup make_affine(Element p) {
  if (p > 1'000'000) {
    throw std::length_error("affine group prime exceeds the 10^6 cap");
  }
  if (!is_prime(p)) {
    throw std::invalid_argument("affine group requires a prime modulus");
  }
  GroupImpl impl;
  impl.order = p * (p - 1);
  impl.identity = 0;  // (k, l) = (0, 1)
  impl.kind = FiniteGroup::Kind::affine;
  impl.param = p;
  impl.label = "Aff(" + std::to_string(p) + ")";
  impl.mul_fn = [p](Element a, Element b) {
    const auto [k1, l1] = affine_decode(p, a);
    const auto [k2, l2] = affine_decode(p, b);
    return affine_encode(p, (k1 + l1 * k2) % p, l1 * l2 % p);
  };
  impl.inv_fn = [p](Element a) {
    const auto [k, l] = affine_decode(p, a);
    const Element li = mod_inv(l, p);
    return affine_encode(p, (p - li * k % p) % p, li);
  };
  return FiniteGroup(finalize(std::move(impl)));
}

FiniteGroup make_direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() * h.order() > FiniteGroup::kCayleyCap) {
    throw std::length_error("direct product order exceeds " +
                            std::to_string(FiniteGroup::kCayleyCap));
  }
  GroupImpl impl;
  const Element oh = h.order();
  impl.order = g.order() * oh;
  impl.identity = g.identity() * oh + h.identity();
  impl.kind = FiniteGroup::Kind::direct_product;
  impl.param = 0;
  impl.label = g.label() + " x " + h.label();
  impl.mul_fn = [g, h, oh](Element a, Element b) {
    return g.mul(a / oh, b / oh) * oh + h.mul(a % oh, b % oh);
  };
  impl.inv_fn = [g, h, oh](Element a) {
    return g.inv(a / oh) * oh + h.inv(a % oh);
  };
  return FiniteGroup(finalize(std::move(impl)));
}

FiniteGroup make_phase_space_group(Element n) {
  if (n < 1) throw std::invalid_argument("phase space group needs n >= 1");
  GroupImpl impl;
  impl.order = n * n;
  impl.identity = 0;
  impl.kind = FiniteGroup::Kind::direct_product;
  impl.param = n;
  impl.label = "Z" + std::to_string(n) + " x Z" + std::to_string(n);
  impl.mul_fn = [n](Element a, Element b) {
    return (a / n + b / n) % n * n + (a % n + b % n) % n;
  };
  impl.inv_fn = [n](Element a) {
    return (n - a / n) % n * n + (n - a % n) % n;
  };
  return FiniteGroup(finalize(std::move(impl)));
}

Element affine_encode(Element p, Element k, Element l) {
  if (k < 0 || k >= p || l < 1 || l >= p) {
    throw std::invalid_argument("affine pair outside Z_p x Z_p^*");
  }
  return k * (p - 1) + (l - 1);
}

std::pair<Element, Element> affine_decode(Element p, Element index) {
  if (index < 0 || index >= p * (p - 1)) {
    throw std::out_of_range("affine index outside group");
  }
  return {index / (p - 1), index % (p - 1) + 1};
}

std::vector<Element> affine_axis_subset(Element p) {
  if (p > 1'000'000) {
    throw std::length_error("affine group prime exceeds the 10^6 cap");
  }
  if (!is_prime(p)) {
    throw std::invalid_argument("affine group requires a prime modulus");
  }
  std::vector<Element> axis(static_cast<std::size_t>(p));
  for (Element k = 0; k < p; ++k) {
    axis[static_cast<std::size_t>(k)] = k * (p - 1);
  }
  return axis;
}

SamplingSet::SamplingSet(const FiniteGroup& group,
                         std::vector<Element> elements)
    : group_(group), elements_(std::move(elements)) {
  if (elements_.empty()) {
    throw std::invalid_argument("sampling set must be nonempty");
  }
  std::unordered_set<Element> seen;
  seen.reserve(elements_.size());
  for (Element e : elements_) {
    if (e < 0 || e >= group_.order()) {
      throw std::invalid_argument("sampling set element outside group");
    }
    if (!seen.insert(e).second) {
      throw std::invalid_argument("duplicate element in sampling set");
    }
  }
}

SamplingSet random_sampling_set(const FiniteGroup& group, std::int64_t m,
                                std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample size must be >= 1");
  if (m > group.order()) {
    throw std::length_error("sample size exceeds group order");
  }
  // Rejection over the full index range: uniform without replacement, draw
  // order preserved, no |G|-sized scratch (affine groups can be huge).
  CounterRng rng(derive_key(seed, "sampling_set"));
  std::vector<Element> picked;
  picked.reserve(static_cast<std::size_t>(m));
  std::unordered_set<Element> seen;
  seen.reserve(static_cast<std::size_t>(m));
  while (static_cast<std::int64_t>(picked.size()) < m) {
    const Element e = rng.below(group.order());
    if (seen.insert(e).second) picked.push_back(e);
  }
  return SamplingSet(group, std::move(picked));
}

SamplingSet random_sampling_set(const FiniteGroup& group, std::int64_t m,
                                const std::vector<Element>& allowed,
                                std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("sample size must be >= 1");
  if (m > static_cast<std::int64_t>(allowed.size())) {
    throw std::length_error("sample size exceeds the allowed subset");
  }
  // Partial Fisher-Yates over a copy of the allowed pool.
  CounterRng rng(derive_key(seed, "sampling_set_subset"));
  std::vector<Element> pool = allowed;
  for (std::int64_t i = 0; i < m; ++i) {
    const std::int64_t j =
        i + rng.below(static_cast<std::int64_t>(pool.size()) - i);
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(m));
  return SamplingSet(group, std::move(pool));
}

}  // namespace orbitrip
