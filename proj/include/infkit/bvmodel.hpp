#pragma once

// Boolean-valued models over finite algebras: evaluation, axiom checking,
// mixing and fullness, and a bounded search for Boolean-valued models.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "infkit/boolalg.hpp"
#include "infkit/syntax.hpp"

namespace infkit {

class UnboundVariable : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

class ShapeError : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

class ModelError : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

using Tuple = std::vector<std::size_t>;
using Assignment = std::map<std::string, std::size_t>;

/// Calls `fn` on every tuple in {0..n-1}^k in lexicographic order.
/// Stops early when `fn` returns false; returns false iff stopped.
template <class Fn>
bool for_each_tuple(std::size_t n, std::size_t k, Fn&& fn) {
  Tuple t(k, 0);
  if (k > 0 && n == 0) return true;
  while (true) {
    if (!fn(static_cast<const Tuple&>(t))) return false;
    std::size_t i = k;
    while (i > 0) {
      if (++t[i - 1] < n) break;
      t[i - 1] = 0;
      --i;
    }
    if (i == 0) return true;
  }
}

class BValuedModel {
 public:
  BValuedModel() = default;
  /// Equality defaults to 1 on the diagonal and 0 elsewhere; relations to 0.
  BValuedModel(Signature sig, FinBooleanAlgebra algebra, std::vector<std::string> domain);

  const Signature& signature() const { return sig_; }
  const FinBooleanAlgebra& algebra() const { return alg_; }
  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  std::optional<std::size_t> index(const std::string& element) const;

  Element eq(std::size_t a, std::size_t b) const { return eq_[a * size() + b]; }
  /// Sets both (a,b) and (b,a).
  void set_eq(std::size_t a, std::size_t b, Element v);
  /// Sets only (a,b); for adversarial inputs.
  void set_eq_directed(std::size_t a, std::size_t b, Element v) { eq_[a * size() + b] = v; }

  Element rel(const std::string& r, const Tuple& args) const;
  void set_rel(const std::string& r, const Tuple& args, Element v);

  const std::map<std::string, std::size_t>& constants() const { return constants_; }
  void set_constant(const std::string& c, std::size_t element);
  std::size_t constant(const std::string& c) const;

  /// Domain elements named by the signature constants must all be set.
  void require_complete() const;

 private:
  std::size_t rel_offset(const std::string& r, const Tuple& args) const;

  Signature sig_;
  FinBooleanAlgebra alg_;
  std::vector<std::string> domain_;
  std::vector<Element> eq_;
  std::map<std::string, std::vector<Element>> rels_;
  std::map<std::string, std::size_t> constants_;
};

struct ModelViolation {
  std::string axiom;  // reflexivity | symmetry | transitivity | congruence
  std::string relation;
  std::vector<std::string> witnesses;
};

struct ModelReport {
  std::vector<ModelViolation> violations;
  std::size_t instances_checked = 0;
  bool ok() const { return violations.empty(); }
};

ModelReport check_model(const BValuedModel& m);

Element eval(const BValuedModel& m, const Formula& f, const Assignment& a = {});

struct MixingResult {
  bool mixing = true;
  std::vector<Element> antichain;  // counterexample
  Tuple targets;
};

/// Decided on the partition into atoms: a mixing element for every map from
/// atoms to the domain refines to any antichain.
MixingResult check_mixing(const BValuedModel& m);
/// Oracle over every antichain and every target family. Exponential.
MixingResult check_mixing_by_antichains(const BValuedModel& m);

struct FullResult {
  bool attained = false;
  Element value;
  Tuple witness;
};

/// `f` must be an Exists formula; checks that its value is attained by a
/// single tuple under assignment `a`.
FullResult check_full(const BValuedModel& m, const Formula& f, const Assignment& a = {});

/// meet_i [[tau_i = sigma_i]] and [[f(tau)]] <= [[f(sigma)]], with `vars`
/// the displayed free variables and `base` covering the remaining ones.
bool check_subst_inequality(const BValuedModel& m, const Formula& f, const std::vector<std::string>& vars,
                            const Tuple& tau, const Tuple& sigma, const Assignment& base = {});

enum class SatMode { Weak, Strong };

struct SatResult {
  bool found = false;
  std::optional<BValuedModel> model;
  std::size_t models_examined = 0;
};

/// Exhaustive search over powerset algebras with 1..max_atoms atoms and
/// domains of size 1..max_domain. Returns the first witness in search order
/// (atoms, then domain size, then lexicographic tables).
SatResult bounded_boolean_sat(const std::vector<Formula>& theory, int max_atoms, int max_domain, SatMode mode);

/// Ordinary two-valued structure, used as an independent evaluator.
struct TarskiStructure {
  std::size_t size = 0;
  std::map<std::string, std::set<Tuple>> relations;
  std::map<std::string, std::size_t> constants;
};

bool tarski_eval(const TarskiStructure& s, const Formula& f, const Assignment& a = {});

}  // namespace infkit
