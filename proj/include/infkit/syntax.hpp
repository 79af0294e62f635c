#pragma once

// Signatures, terms and formulas of the finite-width infinitary language,
// plus the purely syntactic operations on them.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace infkit {

class InfkitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A substituted term would be captured by a binder.
class CaptureError : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

/// Fragment construction could not find a variable unused by some formula.
class PoolExhausted : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

/// Formula does not fit the signature (unknown symbol, wrong arity, ...).
class SignatureError : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

bool is_identifier(std::string_view s);

struct Term {
  enum class Kind : std::uint8_t { Var, Const };

  Kind kind = Kind::Var;
  std::string name;

  static Term var(std::string name) { return {Kind::Var, std::move(name)}; }
  static Term constant(std::string name) { return {Kind::Const, std::move(name)}; }

  bool is_var() const { return kind == Kind::Var; }
  bool is_const() const { return kind == Kind::Const; }

  auto operator<=>(const Term&) const = default;
};

struct RelationSymbol {
  std::string name;
  int arity = 1;

  auto operator<=>(const RelationSymbol&) const = default;
};

class Signature {
 public:
  Signature() = default;
  /// Throws SignatureError on duplicate names, bad identifiers or arity < 1.
  Signature(std::vector<RelationSymbol> relations, std::vector<std::string> constants);

  const std::vector<RelationSymbol>& relations() const { return relations_; }
  const std::vector<std::string>& constants() const { return constants_; }

  std::optional<int> arity(std::string_view relation) const;
  bool has_constant(std::string_view name) const;

  /// Same relations, constants extended by `extra` (duplicates rejected).
  Signature with_constants(const std::vector<std::string>& extra) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<RelationSymbol> relations_;
  std::vector<std::string> constants_;
};

enum class Connective : std::uint8_t { Atom, Eq, Not, And, Or, Forall, Exists };

/// Immutable formula tree. And/Or children are kept as a set: sorted by
/// canonical form with duplicates removed. Quantifier variable lists keep
/// their given order (the calculus instantiates them positionally).
class Formula {
 public:
  static Formula atom(std::string relation, std::vector<Term> args);
  static Formula eq(Term left, Term right);
  static Formula negation(Formula body);
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula forall(std::vector<std::string> vars, Formula body);
  static Formula exists(std::vector<std::string> vars, Formula body);

  Connective kind() const;
  bool is_atomic() const;
  bool is_quantifier() const;

  /// Relation name of an Atom; empty otherwise.
  const std::string& relation() const;
  /// Atom arguments, or the two sides of an Eq.
  std::span<const Term> terms() const;
  /// Not: the body; And/Or: the children; quantifiers: the body.
  std::span<const Formula> children() const;
  const Formula& body() const;
  std::span<const std::string> bound_vars() const;

  const std::string& canonical() const;
  int depth() const;

  bool operator==(const Formula& other) const;
  std::strong_ordering operator<=>(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

using VarSet = std::set<std::string>;
using Substitution = std::map<std::string, Term>;

VarSet free_vars(const Formula& f);
bool is_sentence(const Formula& f);

/// Replaces free occurrences of mapped variables. Throws CaptureError when a
/// replacing variable would fall under a binder of the same name.
Formula substitute(const Formula& f, const Substitution& map);

/// Replaces the given occurrences (0-based, in left-to-right order over all
/// term positions) of constant `from` by `to`.
Formula replace_constant_occurrences(const Formula& f, const std::string& from, const Term& to,
                                     const std::vector<int>& occurrences);
int count_constant_occurrences(const Formula& f, const std::string& name);

/// One step of pushing a negation inward (f is the formula being negated).
Formula move_neg_inside(const Formula& f);
/// Negations only on atoms.
Formula nnf(const Formula& f);

/// f and all its descendants, sorted by canonical form.
std::vector<Formula> subformulas(const Formula& f);
std::string canonical_form(const Formula& f);

std::set<std::string> constants_of(const Formula& f);
std::set<std::string> variables_of(const Formula& f);  // free or bound
std::map<std::string, int> relations_of(const Formula& f);

/// Throws SignatureError if f uses an undeclared relation/constant or a wrong
/// arity. `extra_constants` are accepted in addition to the signature's.
void check_well_formed(const Formula& f, const Signature& sig,
                       const std::set<std::string>& extra_constants = {});

/// Smallest signature covering the symbols used by the formulas. Throws when a
/// relation is used with two arities.
Signature infer_signature(std::span<const Formula> formulas);

/// Sorted, duplicate-free list of formulas.
std::vector<Formula> normalize_set(std::vector<Formula> fs);

struct Fragment {
  Signature signature;
  std::vector<Formula> formulas;  // sorted canonical
  std::vector<std::string> var_pool;
  std::vector<std::string> const_pool;
  int generations = 0;
  bool fixpoint_reached = false;

  bool contains(const Formula& f) const;
};

/// Closure of `seed` under the fragment clauses, truncated after
/// `generation_bound` rounds. Throws PoolExhausted when some seed formula uses
/// every available variable.
Fragment build_fragment(const std::vector<Formula>& seed, const std::vector<std::string>& var_pool,
                        const std::vector<std::string>& const_pool, int generation_bound);

}  // namespace infkit
