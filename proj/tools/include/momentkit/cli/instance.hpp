#pragma once

#include "momentkit/cli/model.hpp"

#include <momentkit/moment.hpp>
#include <momentkit/poisson.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace momentkit::cli {

/// Base structures used by the generator. Every entry passes verify_jacobi.
struct CatalogEntry {
  std::string name;
  std::size_t min_generators; // entries of variable arity (the zero bracket)
  std::size_t max_generators; // accept any count in this range
  bool nondegenerate;         // symplectic on a dense open set
};

const std::vector<CatalogEntry> &catalog();

/// Order-0 structure of catalog entry `index` on `generators` generators
/// named x, y, z (in that order).
PoissonStructure catalog_structure(std::size_t index, std::size_t generators);

struct InstanceParams {
  std::size_t max_generators = 3;
  unsigned max_order = 4;
  unsigned max_degree = 2;
};

struct Instance {
  ModelFile model;
  GaugeTwist twist;
  std::size_t catalog_index = 0;
};

/// Throws Error when the parameters exceed generators <= 3, n <= 4,
/// degree <= 2, or are zero.
void validate_params(const InstanceParams &p);

/// Random gauge twist at order n >= 1 with coefficient degree <= max_degree.
/// phi_i = x_i + sum_k t^k q_ik, unit = c (1 + t q).
GaugeTwist random_twist(std::uint64_t seed, const RingPtr &ring, unsigned n,
                        unsigned max_degree);

/// Deterministic pseudo-random moment system in disguised form.
///
/// A catalog structure is lifted t-independently to order n with alpha the
/// Hamiltonian-plus-d/dt derivation of a random function (a cocycle for any
/// t-independent table), then twisted by a random gauge. The returned model
/// is the twisted system; `twist` is the gauge that was applied. Seed 0 is
/// the symplectic plane at n = 2 with alpha = 0 and the identity twist.
Instance random_instance(std::uint64_t seed, const InstanceParams &params = {});

} // namespace momentkit::cli
