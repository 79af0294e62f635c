#pragma once

// Seeded generators for valid Boolean-valued models and formulas.

#include <random>
#include <string>
#include <vector>

#include "infkit/bvmodel.hpp"

namespace infkit {

using Rng = std::mt19937_64;

/// Every valid model over a powerset algebra arises this way: each atom
/// carries an equivalence relation on the domain and relations invariant
/// under it; values are read off atomwise.
BValuedModel random_model(const Signature& sig, int atoms, std::size_t domain, Rng& rng);

struct ModelBounds {
  int max_atoms = 3;
  std::size_t max_domain = 3;
};

/// Sizes drawn uniformly from [1, bound].
BValuedModel random_model(const Signature& sig, const ModelBounds& bounds, Rng& rng);

/// Domain = all functions from atoms to {0..base-1}, each atom carrying a
/// random two-valued structure on `base` points. Always has the mixing property.
BValuedModel product_model(const Signature& sig, int atoms, std::size_t base, Rng& rng);

/// Keeps the elements named by constants plus a random subset of the rest.
BValuedModel random_submodel(const BValuedModel& m, Rng& rng);

struct FormulaShape {
  int depth = 3;
  std::size_t max_width = 3;
  std::vector<std::string> bound_vars = {"v0", "v1"};
  bool allow_or_exists = true;
};

/// Random formula whose free variables are among `free`.
Formula random_formula(const Signature& sig, const FormulaShape& shape, const std::vector<std::string>& free,
                       Rng& rng);

}  // namespace infkit
