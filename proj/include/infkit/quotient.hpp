#pragma once

// Quotients of Boolean-valued models by filters, and the Łoś check.

#include <string>
#include <vector>

#include "infkit/bvmodel.hpp"

namespace infkit {

struct QuotientStructure {
  const BValuedModel* source = nullptr;  // not owned
  AlgFilter filter;
  std::vector<std::size_t> class_of;               // domain index -> class
  std::vector<std::vector<std::size_t>> classes;   // class -> members
  std::map<std::string, std::set<Tuple>> relations;
  std::map<std::string, std::size_t> constants;
  /// Failures of the equivalence laws or of well-definedness (expected empty
  /// for valid models).
  std::vector<std::string> issues;

  bool is_ultra() const;
  /// Only meaningful for ultrafilter quotients.
  TarskiStructure as_tarski() const;
};

/// Throws ImproperFilter if the filter contains 0.
QuotientStructure quotient(const BValuedModel& m, const AlgFilter& f);

struct LosViolation {
  std::string formula;
  std::vector<std::string> assignment;  // "v=elt"
  bool tarski = false;
  bool in_filter = false;
};

struct LosReport {
  std::size_t formulas_checked = 0;
  std::size_t instances_checked = 0;
  /// Formulas skipped because some existential subformula is not full.
  std::size_t skipped_not_full = 0;
  std::vector<LosViolation> violations;
  /// Violations among skipped formulas (informational only).
  std::size_t violations_without_fullness = 0;
  bool ok() const { return violations.empty(); }
};

/// The pool may contain formulas with free variables; every assignment of
/// them over the domain is tried.
LosReport los_check(const BValuedModel& m, const AlgFilter& u, const std::vector<Formula>& pool);

/// True when every existential (and every universal, read as a negated
/// existential) subformula of `f` attains its value at every parameter tuple.
bool full_for(const BValuedModel& m, const Formula& f);

struct FactorReport {
  std::vector<std::size_t> map;  // class of M/F -> class of M/F'
  bool well_defined = true;
  bool surjective = true;
  bool ok() const { return well_defined && surjective; }
};

/// Canonical map M/F -> M/F' for F contained in F'.
FactorReport factor_map(const QuotientStructure& fine, const QuotientStructure& coarse);

}  // namespace infkit
