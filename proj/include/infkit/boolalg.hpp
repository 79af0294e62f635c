#pragma once

// Finite posets, finite Boolean algebras, filters, and the regular-open
// completion of a poset.

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infkit/syntax.hpp"

namespace infkit {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

class AlgebraError : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

class ZeroRestriction : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class ImproperFilter : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

/// Finite partial order; stores the full reflexive-transitive relation as
/// down-sets (N_p) and up-sets per element.
class FinPoset {
 public:
  FinPoset() = default;
  /// `leq` pairs (q, p) mean q <= p. Closes reflexively and transitively;
  /// throws AlgebraError on unknown names or antisymmetry failure.
  FinPoset(std::vector<std::string> elements, const std::vector<std::pair<std::string, std::string>>& leq);
  /// down[p] must already be reflexive-transitive.
  static FinPoset from_down_sets(std::vector<std::string> elements, std::vector<Bitset> down);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index(std::string_view name) const;

  bool leq(std::size_t q, std::size_t p) const { return down_[p].test(q); }
  /// N_p = { q : q <= p }.
  const Bitset& down(std::size_t p) const { return down_[p]; }
  const Bitset& up(std::size_t p) const { return up_[p]; }
  bool compatible(std::size_t p, std::size_t q) const { return down_[p].intersects(down_[q]); }
  std::vector<std::size_t> minimal_elements() const;
  /// Covering-free list of all strict pairs (q, p), q < p.
  std::vector<std::pair<std::string, std::string>> strict_pairs() const;

  Bitset empty_set() const { return Bitset(size()); }
  Bitset full_set() const;

 private:
  void finish();

  std::vector<std::string> names_;
  std::vector<Bitset> down_;
  std::vector<Bitset> up_;
};

// Order topology: open sets are the downward closed sets.
Bitset up_closure(const FinPoset& p, const Bitset& a);
Bitset interior(const FinPoset& p, const Bitset& b);
Bitset regularize(const FinPoset& p, const Bitset& a);
bool is_open(const FinPoset& p, const Bitset& a);
bool is_regular_open(const FinPoset& p, const Bitset& a);

/// Element of a finite Boolean algebra: the set of atoms below it.
struct Element {
  std::uint64_t bits = 0;
  auto operator<=>(const Element&) const = default;
};

enum class AlgebraKind : std::uint8_t { Powerset, RegularOpen, Table };

/// Operation tables over indices 0..n-1 (adversarial inputs allowed).
struct AlgebraTable {
  std::vector<std::string> names;
  std::vector<std::vector<int>> meet;
  std::vector<std::vector<int>> join;
  std::vector<int> comp;
};

/// Finite (hence complete and atomic) Boolean algebra, stored as the powerset
/// of its atoms. The representation tag keeps how elements are named:
/// powerset elements by atom names, regular-open elements by the poset
/// points of the regular open set, table elements by their table name.
class FinBooleanAlgebra {
 public:
  static constexpr int kMaxAtoms = 63;

  FinBooleanAlgebra() = default;
  static FinBooleanAlgebra powerset(std::vector<std::string> atoms);
  /// Builds from explicit tables; throws AlgebraError listing the first law
  /// violations if the tables are not a Boolean algebra.
  static FinBooleanAlgebra from_table(const AlgebraTable& table);
  /// RO(P) with one atom per minimal point of P (regular open sets of a
  /// finite poset are determined by the minimal points they contain).
  static FinBooleanAlgebra regular_open(std::shared_ptr<const FinPoset> poset);

  AlgebraKind kind() const { return kind_; }
  int atom_count() const { return static_cast<int>(atom_names_.size()); }
  const std::vector<std::string>& atom_names() const { return atom_names_; }
  std::uint64_t size() const { return std::uint64_t{1} << atom_count(); }

  Element bottom() const { return {0}; }
  Element top() const { return {full_mask()}; }
  Element atom(int i) const { return {std::uint64_t{1} << i}; }
  std::vector<Element> atoms() const;
  std::vector<Element> atoms_below(Element b) const;
  bool is_atom(Element b) const;

  Element meet(Element a, Element b) const { return {a.bits & b.bits}; }
  Element join(Element a, Element b) const { return {a.bits | b.bits}; }
  Element complement(Element a) const { return {~a.bits & full_mask()}; }
  bool leq(Element a, Element b) const { return (a.bits & ~b.bits) == 0; }
  bool is_zero(Element a) const { return a.bits == 0; }
  bool is_top(Element a) const { return a.bits == full_mask(); }
  bool contains(Element a) const { return (a.bits & ~full_mask()) == 0; }

  Element sup(std::span<const Element> s) const;
  Element inf(std::span<const Element> s) const;

  /// All elements in increasing bit order. Throws if the algebra is too big
  /// to enumerate (more than 20 atoms).
  std::vector<Element> elements() const;

  /// Sorted names identifying the element (see class comment).
  std::vector<std::string> literal(Element a) const;
  Element parse_literal(const std::vector<std::string>& names) const;
  std::string to_string(Element a) const;

  // Regular-open representation.
  const FinPoset* poset() const { return poset_.get(); }
  /// Regular open set of poset points for `a` (RegularOpen kind only).
  Bitset open_set(Element a) const;
  /// Element whose open set is `a`; throws unless `a` is regular open.
  Element from_open_set(const Bitset& a) const;
  std::size_t atom_point(int atom) const { return atom_points_.at(atom); }

  // Table representation.
  const std::vector<std::string>& table_names() const { return table_names_; }
  const std::vector<Element>& table_elements() const { return table_elements_; }

  bool operator==(const FinBooleanAlgebra& o) const;

 private:
  std::uint64_t full_mask() const {
    return atom_count() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << atom_count()) - 1;
  }

  AlgebraKind kind_ = AlgebraKind::Powerset;
  std::vector<std::string> atom_names_;
  std::shared_ptr<const FinPoset> poset_;
  std::vector<std::size_t> atom_points_;  // minimal poset element per atom
  std::vector<std::string> table_names_;
  std::vector<Element> table_elements_;
};

struct LawViolation {
  std::string law;
  std::vector<std::string> witnesses;
};

struct AlgebraReport {
  std::size_t elements_checked = 0;
  std::vector<LawViolation> violations;
  bool ok() const { return violations.empty(); }
};

AlgebraReport check_algebra(const AlgebraTable& table);
/// For RegularOpen algebras the laws are checked on the set-level operations
/// (intersection, regularized union, interior of the complement) over the
/// regular open sets themselves.
AlgebraReport check_algebra(const FinBooleanAlgebra& b);
AlgebraTable to_table(const FinBooleanAlgebra& b);

struct EmbeddingReport {
  bool order_preserving = true;
  bool incompatibility_preserving = true;
  bool dense_image = true;
  std::vector<std::string> failures;
  bool ok() const { return order_preserving && incompatibility_preserving && dense_image; }
};

struct RoCompletion {
  FinBooleanAlgebra algebra;
  /// p -> Reg(N_p)
  std::vector<Element> embedding;
};

RoCompletion ro_completion(const FinPoset& p);
EmbeddingReport verify_ro_embedding(const FinPoset& p, const RoCompletion& ro);

/// Proper filter on a finite algebra; always principal, kept as its generator.
struct AlgFilter {
  Element generator;
  bool contains(const FinBooleanAlgebra& b, Element x) const { return b.leq(generator, x); }
  std::vector<Element> members(const FinBooleanAlgebra& b) const;
  bool operator==(const AlgFilter&) const = default;
};

/// Validates upward closure, finite-meet closure and properness of `members`.
AlgFilter make_filter(const FinBooleanAlgebra& b, std::span<const Element> members);
AlgFilter principal_filter(const FinBooleanAlgebra& b, Element generator);
bool is_ultrafilter(const FinBooleanAlgebra& b, const AlgFilter& f);
std::vector<AlgFilter> enumerate_ultrafilters(const FinBooleanAlgebra& b);

struct Restriction {
  FinBooleanAlgebra algebra;
  Element bound;                   // b in the parent algebra
  std::vector<int> parent_atoms;   // atom i of the restriction is parent atom parent_atoms[i]

  Element to_parent(Element x) const;
  Element from_parent(Element x) const;  // x must be <= bound
};

Restriction restrict_algebra(const FinBooleanAlgebra& b, Element bound);

bool is_dense(const FinBooleanAlgebra& b, std::span<const Element> d);
bool is_antichain(const FinBooleanAlgebra& b, std::span<const Element> a);
/// All antichains of nonzero elements (including the empty one). Exponential.
std::vector<std::vector<Element>> enumerate_antichains(const FinBooleanAlgebra& b);

}  // namespace infkit
