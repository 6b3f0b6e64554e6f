#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace orbitrip {

using Element = std::int64_t;

struct GroupImpl;

/**
 * Finite group on the index set {0, ..., order-1}.
 *
 * Structured constructors (cyclic, affine, direct product) fix the index
 * codec. A Cayley table is materialized for orders up to kCayleyCap and
 * consulted by mul(); larger groups compute products on demand. Instances
 * share immutable state, so copies are cheap and thread-safe.
 */
class FiniteGroup {
 public:
  enum class Kind { cyclic, affine, direct_product };
  static constexpr Element kCayleyCap = 4096;

  Element order() const;
  Element identity() const;
  Kind kind() const;
  const std::string& label() const;
  /// Structure parameter: n for cyclic, p for affine, the factor size for
  /// square products built by make_phase_space_group, 0 otherwise.
  Element param() const;

  /// Group product. Throws std::out_of_range for indices outside the group.
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;

  bool has_cayley_table() const;
  /// Row-major order x order table; empty when not materialized.
  const std::vector<std::int32_t>& cayley_table() const;

 private:
  explicit FiniteGroup(std::shared_ptr<const GroupImpl> impl);
  std::shared_ptr<const GroupImpl> impl_;

  friend FiniteGroup make_cyclic(Element n);
  friend FiniteGroup make_affine(Element p);
  friend FiniteGroup make_direct_product(const FiniteGroup& g,
                                         const FiniteGroup& h);
  friend FiniteGroup make_phase_space_group(Element n);
};

/// Cyclic group Z_n under addition mod n.
FiniteGroup make_cyclic(Element n);

/**
 * Affine group of the prime field: elements (k, l) with k in Z_p and l in
 * Z_p^*, product (k, l)(k', l') = (k + l k' mod p, l l' mod p), encoded as
 * k*(p-1) + (l-1). Order p(p-1). Requires p prime, p <= 10^6.
 */
FiniteGroup make_affine(Element p);

/// Direct product with index a*|H| + b. The order is capped at kCayleyCap.
FiniteGroup make_direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Z_n x Z_n with index k*n + l. Same codec as make_direct_product of two
/// cyclic factors, but without the order cap (only the Cayley cache is
/// capped); it backs the time-frequency shift representation.
FiniteGroup make_phase_space_group(Element n);

Element affine_encode(Element p, Element k, Element l);
std::pair<Element, Element> affine_decode(Element p, Element index);

/// Indices of the axis subgroup {(k, 1) : k in Z_p} of the affine group.
std::vector<Element> affine_axis_subset(Element p);

bool is_prime(Element p);

/**
 * Ordered set of distinct group elements used as sampling rows. Duplicates
 * and out-of-range indices are rejected at construction.
 */
class SamplingSet {
 public:
  SamplingSet(const FiniteGroup& group, std::vector<Element> elements);

  const std::vector<Element>& elements() const { return elements_; }
  const FiniteGroup& group() const { return group_; }
  const std::string& group_label() const { return group_.label(); }
  std::int64_t size() const {
    return static_cast<std::int64_t>(elements_.size());
  }

 private:
  FiniteGroup group_;
  std::vector<Element> elements_;
};

/// m distinct elements drawn uniformly without replacement, in draw order.
/// Deterministic in (group, m, seed).
SamplingSet random_sampling_set(const FiniteGroup& group, std::int64_t m,
                                std::uint64_t seed);

/// Same, restricted to the `allowed` subset.
SamplingSet random_sampling_set(const FiniteGroup& group, std::int64_t m,
                                const std::vector<Element>& allowed,
                                std::uint64_t seed);

}  // namespace orbitrip
