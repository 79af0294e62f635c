#pragma once

// Consistency properties: clause checking, the forcing poset of conditions,
// dense sets, generic filters on finite posets and the term model A_F.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "infkit/boolalg.hpp"
#include "infkit/bvmodel.hpp"
#include "infkit/syntax.hpp"

namespace infkit {

/// A clause needs a sentence that is not in the declared pool.
class PoolIncomplete : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

/// Term model is not well defined (classes or relations depend on
/// representatives).
class IllDefined : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

/// Sorted, duplicate-free set of sentences.
using SentenceSet = std::vector<Formula>;

std::string set_string(const SentenceSet& s);
SentenceSet set_union(const SentenceSet& a, const SentenceSet& b);
bool set_contains(const SentenceSet& s, const Formula& f);
bool set_subset(const SentenceSet& a, const SentenceSet& b);

/// phi(c1..ck) for a quantified formula phi = Q v1..vk. body.
Formula instantiate(const Formula& quantified, const std::vector<std::string>& constants);

/// All variants of `f` obtained by replacing a nonempty subset of the
/// occurrences of constant `d` by constant `c`.
std::vector<Formula> replacement_variants(const Formula& f, const std::string& d, const std::string& c);

/// Closes `seed` under subformulas, instances of quantified subformulas at
/// the given constants, phi-neg for negations, symmetric equalities and
/// constant replacement in atomic sentences along equalities. Throws
/// InfkitError when the closure exceeds `limit` sentences.
std::vector<Formula> close_pool(const std::vector<Formula>& seed, const std::vector<std::string>& constants,
                                std::size_t limit = 200000);

class ConsistencyProperty {
 public:
  enum class Kind { Explicit, ModelOracle };

  /// Explicit family. If `pool` is empty the closure of the family is used;
  /// otherwise members must lie in the pool (PoolIncomplete otherwise).
  static ConsistencyProperty explicit_family(Signature sig, std::vector<std::string> fresh,
                                             std::vector<SentenceSet> family, std::vector<Formula> pool = {},
                                             bool pool_given = false);
  /// Members are the finite sets r with [[/\ r]] > 0 in `model`; the fresh
  /// constants are the model's domain elements, interpreted as themselves.
  static ConsistencyProperty from_model(const BValuedModel& model, const std::vector<Formula>& pool);
  /// Oracle over a model that already interprets every constant of D and C.
  /// The pool is closed unless `close` is false.
  static ConsistencyProperty oracle(std::shared_ptr<const BValuedModel> model, Signature base,
                                    std::vector<std::string> fresh, const std::vector<Formula>& pool,
                                    bool close = true);

  Kind kind() const { return kind_; }
  bool is_explicit() const { return kind_ == Kind::Explicit; }
  const Signature& signature() const { return sig_; }
  const std::vector<std::string>& fresh() const { return fresh_; }
  /// D followed by C.
  std::vector<std::string> all_constants() const;
  /// Signature extended by the fresh constants.
  Signature full_signature() const { return sig_.with_constants(fresh_); }
  const std::vector<Formula>& pool() const { return pool_; }
  bool pool_given() const { return pool_given_; }
  bool in_pool(const Formula& f) const;
  std::optional<std::size_t> pool_index(const Formula& f) const;

  /// Explicit family in declaration order.
  const std::vector<SentenceSet>& family() const { return family_; }
  /// Explicit: literal membership. Oracle: positive value of the conjunction.
  bool member(const SentenceSet& s) const;
  /// For oracles, the model with constants for its domain.
  const BValuedModel* model() const { return model_.get(); }

  /// Members that the clause checks range over: the explicit family, or for
  /// an oracle the subset-maximal members among pool subsets.
  std::vector<SentenceSet> clause_members() const;

  /// Pool subsets that are members (oracle: enumerated through the oracle).
  /// Throws when the pool has more than `max_pool` sentences.
  std::vector<SentenceSet> enumerate_members(std::size_t max_pool = 22) const;

 private:
  Kind kind_ = Kind::Explicit;
  Signature sig_;
  std::vector<std::string> fresh_;
  std::vector<Formula> pool_;
  std::map<std::string, std::size_t> pool_index_;
  bool pool_given_ = false;
  std::vector<SentenceSet> family_;
  std::set<SentenceSet> family_set_;
  std::shared_ptr<const BValuedModel> model_;
  std::vector<Element> pool_values_;  // oracle only

  void index_pool();
};

struct ClauseViolation {
  std::string clause;
  std::size_t member = 0;  // index into CpReport::members
  std::string sentence;
  std::string detail;
};

struct CpReport {
  std::vector<SentenceSet> members;
  std::map<std::string, std::size_t> instances;  // clause -> instances checked
  std::vector<ClauseViolation> violations;
  /// Non-atomic replacement targets outside the pool, skipped.
  std::size_t str2_out_of_pool = 0;
  bool ok() const { return violations.empty(); }
};

struct CpOptions {
  /// Only check the equality replacement clause for atomic sentences.
  bool str2_atomic_only = false;
};

/// Throws PoolIncomplete when a universally required sentence is not in the
/// pool.
CpReport check_cp(const ConsistencyProperty& s, const CpOptions& opt = {});

struct SmaxReport {
  std::size_t instances = 0;
  std::vector<ClauseViolation> violations;
  std::vector<SentenceSet> members;
  bool ok() const { return violations.empty(); }
};

/// Maximality for every pool sentence whose connective widths are at most
/// `max_width` (0 means unbounded).
SmaxReport check_smax(const ConsistencyProperty& s, std::size_t max_width = 0);

ConsistencyProperty cp_from_model(const BValuedModel& m, const std::vector<Formula>& pool);

/// Explicit copy of the property. With `maximal_only` only the maximal
/// members are listed; otherwise every member among pool subsets.
ConsistencyProperty to_explicit(const ConsistencyProperty& s, bool maximal_only);

/// Conditions: all subsets of members, ordered by reverse inclusion.
struct ForcingPoset {
  std::vector<SentenceSet> conditions;  // sorted
  std::vector<Formula> universe;        // sentences used by conditions
  std::vector<Bitset> masks;            // condition -> universe subset
  FinPoset poset;                       // names: set_string of each condition
  std::map<SentenceSet, std::size_t> index;

  std::optional<std::size_t> find(const SentenceSet& s) const;
  /// Conditions p <= q, i.e. p a superset of q.
  std::vector<std::size_t> below(std::size_t q) const;
  bool is_minimal(std::size_t p) const;
};

ForcingPoset forcing_poset(const ConsistencyProperty& s, std::size_t max_conditions = 1u << 16);

struct DenseSet {
  std::string name;
  std::string kind;                   // or | exists | const
  std::optional<Formula> sentence;    // defining sentence for or/exists
  std::string constant;               // for const
  std::vector<std::size_t> members;   // condition indices
  bool dense = true;
  std::vector<std::size_t> failures;  // conditions with no extension in the set
};

std::vector<DenseSet> dense_sets(const ConsistencyProperty& s, const ForcingPoset& p);

struct PosetFilter {
  std::size_t generator = 0;            // minimal condition
  std::vector<std::size_t> members;     // condition indices
  SentenceSet sigma;                    // union of the members
  bool finite_subsets_match = false;    // [sigma]^{<w} = F
  std::vector<std::string> unmet_dense; // dense sets the filter should meet but misses
  bool generic() const { return unmet_dense.empty(); }
};

/// Up-set of the lexicographically least minimal condition below `root`.
PosetFilter generic_filter(const ConsistencyProperty& s, const ForcingPoset& p, const SentenceSet& root);

struct TermModel {
  std::vector<std::string> constants;             // C and D
  std::vector<std::size_t> class_of;              // constant -> class
  std::vector<std::vector<std::string>> classes;  // sorted members
  std::map<std::string, std::set<Tuple>> relations;
  std::vector<std::string> issues;                // equivalence or independence failures

  std::size_t class_index(const std::string& c) const;
  TarskiStructure as_tarski() const;
};

/// Classes are the equivalence closure of the equalities in sigma; issues
/// are reported, not thrown.
TermModel term_model_from_sigma(const SentenceSet& sigma, const Signature& sig,
                                const std::vector<std::string>& constants);

/// Throws IllDefined if the construction depends on representatives.
TermModel build_AF(const ConsistencyProperty& s, const PosetFilter& f);

struct RealizeReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

RealizeReport verify_realizes(const TermModel& a, const SentenceSet& sigma);

struct IffReport {
  std::size_t checked = 0;
  std::vector<std::string> forward_failures;  // in sigma, false in A_F
  std::vector<std::string> reverse_failures;  // true in A_F, not in sigma
  bool ok() const { return forward_failures.empty() && reverse_failures.empty(); }
};

IffReport check_kappa_omega_iff(const ConsistencyProperty& s, const PosetFilter& f);

}  // namespace infkit
