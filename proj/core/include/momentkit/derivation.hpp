#pragma once

#include "momentkit/tpoly.hpp"

#include <optional>
#include <vector>

namespace momentkit {

/// A k-linear derivation A[t]/t^{N+1} -> A[t]/t^{M+1}, M <= N, determined by
/// its values on the generators and on t, and extended by the Leibniz rule:
///
///   d(f) = sum_i (df/dx_i) d(x_i) + (df/dt) d(t).
///
/// Ordinary vector fields have M = N and d(t) = 0. The module datum of a
/// moment system has M = N - 1 and d(t) = 1. A derivation with M = N must
/// have d(t) divisible by t, otherwise it is not well defined on the
/// truncated ring (d(t^{N+1}) = (N+1) t^N d(t) must vanish).
class Derivation {
public:
  /// Zero derivation with source and target order `order`.
  Derivation(RingPtr ring, unsigned order);

  /// values[i] is d(x_i); all values and t_value share the target order.
  Derivation(std::vector<TPoly> values, std::optional<TPoly> t_value,
             unsigned source_order);

  const RingPtr &ring() const noexcept { return ring_; }
  unsigned source_order() const noexcept { return source_order_; }
  unsigned target_order() const noexcept { return target_order_; }
  const TPoly &value(std::size_t i) const { return values_.at(i); }
  const std::vector<TPoly> &values() const noexcept { return values_; }
  const TPoly &t_value() const noexcept { return t_value_; }

  TPoly apply(const TPoly &f) const;

  friend bool operator==(const Derivation &, const Derivation &) = default;

private:
  RingPtr ring_;
  unsigned source_order_;
  unsigned target_order_;
  std::vector<TPoly> values_;
  TPoly t_value_;
};

/// Convenience for tests and examples: d(f) for a derivation given by values.
inline TPoly derivation_apply(const Derivation &d, const TPoly &f) { return d.apply(f); }

} // namespace momentkit
