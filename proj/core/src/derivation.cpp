#include "momentkit/derivation.hpp"

#include "momentkit/errors.hpp"

namespace momentkit {

Derivation::Derivation(RingPtr ring, unsigned order)
    : ring_(std::move(ring)), source_order_(order), target_order_(order),
      t_value_(ring_, order)
{
  values_.reserve(ring_->arity());
  for (std::size_t i = 0; i < ring_->arity(); ++i)
    values_.emplace_back(ring_, order);
}

Derivation::Derivation(std::vector<TPoly> values, std::optional<TPoly> t_value,
                       unsigned source_order)
    : ring_(values.empty() ? (t_value ? t_value->ring() : nullptr) : values.front().ring()),
      source_order_(source_order),
      target_order_(values.empty() ? (t_value ? t_value->order() : source_order)
                                   : values.front().order()),
      values_(std::move(values)),
      t_value_(t_value ? *t_value : TPoly(ring_, target_order_))
{
  if (!ring_)
    throw ShapeError("derivation over an empty ring needs an explicit t-value");
  if (values_.size() != ring_->arity())
    throw ShapeError("derivation needs one value per generator");
  if (target_order_ > source_order_)
    throw ShapeError("derivation target order exceeds source order");
  for (const auto &v : values_) {
    require_same_ring(ring_, v.ring());
    if (v.order() != target_order_)
      throw ShapeError("derivation values at mixed orders");
  }
  require_same_ring(ring_, t_value_.ring());
  if (t_value_.order() != target_order_)
    throw ShapeError("derivation t-value at wrong order");
  if (target_order_ == source_order_ && !t_value_.coeff(0).is_zero())
    throw PreconditionError("d(t) must be divisible by t when source and target orders agree");
}

TPoly Derivation::apply(const TPoly &f) const
{
  require_same_ring(ring_, f.ring());
  if (f.order() != source_order_)
    throw ShapeError("derivation applied at order " + std::to_string(f.order()) +
                     ", expects " + std::to_string(source_order_));
  TPoly out(ring_, target_order_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].is_zero())
      continue;
    TPoly di = f.partial(i);
    if (di.is_zero())
      continue;
    out += di.truncate(target_order_) * values_[i];
  }
  if (!t_value_.is_zero() && source_order_ > 0) {
    TPoly dt = f.t_derivative(); // order source-1
    TPoly aligned = dt.order() >= target_order_ ? dt.truncate(target_order_)
                                                : dt.lift(target_order_);
    out += aligned * t_value_;
  }
  return out;
}

} // namespace momentkit
