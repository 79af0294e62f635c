#pragma once

// Mansfield's Boolean-valued model of a consistency property, and the
// converse passage from a finite algebra to a consistency property.

#include <memory>
#include <string>
#include <vector>

#include "infkit/consprop.hpp"

namespace infkit {

class TrivialAlgebra : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

/// The property failed its clause check, so the construction does not apply.
class CpFailed : public InfkitError {
 public:
  using InfkitError::InfkitError;
};

/// Conditions below a root s0 together with RO of that subposet.
class MansfieldFrame {
 public:
  MansfieldFrame(const ConsistencyProperty& s, const SentenceSet& root);

  const ConsistencyProperty& property() const { return *s_; }
  const ForcingPoset& poset() const { return poset_; }
  const SentenceSet& root() const { return root_; }
  /// Poset indices of the conditions below the root.
  const std::vector<std::size_t>& conditions() const { return below_; }
  const FinPoset& subposet() const { return *sub_; }
  const FinBooleanAlgebra& algebra() const { return algebra_; }

  /// Reg(N_t) for t = conditions()[i].
  Element reg_n(std::size_t i) const;
  /// Union of N_t over conditions t below the root that contain phi.
  Bitset support(const Formula& phi) const;
  /// L(phi) = Reg of that union.
  Element L(const Formula& phi) const;
  std::string open_set_string(Element e) const;

 private:
  const ConsistencyProperty* s_;
  SentenceSet root_;
  ForcingPoset poset_;
  std::vector<std::size_t> below_;
  std::shared_ptr<const FinPoset> sub_;
  FinBooleanAlgebra algebra_;
};

Element L_value(const MansfieldFrame& frame, const Formula& phi);

struct MansfieldResult {
  std::shared_ptr<MansfieldFrame> frame;
  BValuedModel model;
  ModelReport model_check;
  /// Root sentences whose value is not 1.
  std::vector<std::string> root_failures;
  bool ok() const { return model_check.ok() && root_failures.empty(); }
};

/// With `require_cp` the clause check must pass first (CpFailed otherwise).
MansfieldResult mansfield_build(const ConsistencyProperty& s, const SentenceSet& root, bool require_cp = true);

struct ClaimReport {
  std::size_t checked = 0;
  std::size_t not_applicable = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// For every s below the root and pool sentence phi such that every t <= s
/// has t + {phi} in P_S: Reg(N_s) <= L(phi).
ClaimReport verify_claim1(const MansfieldFrame& frame, const std::vector<Formula>& pool);
/// L(phi) <= [[phi]] in the Mansfield model, for every pool sentence.
ClaimReport verify_claim2(const MansfieldResult& m, const std::vector<Formula>& pool);

struct DenseEmbeddingReport {
  bool order_preserving = true;
  bool incompatibility_preserving = true;
  bool dense_image = true;
  std::size_t conditions = 0;
  std::vector<std::string> failures;
  bool ok() const { return order_preserving && incompatibility_preserving && dense_image; }
};

struct AlgebraCp {
  FinBooleanAlgebra algebra;
  std::vector<std::string> names;                // constant for each element, by mask
  std::shared_ptr<const BValuedModel> model;      // N_B
  std::shared_ptr<const ConsistencyProperty> property;  // S_B over the full pool
  std::shared_ptr<const ConsistencyProperty> atoms_only;  // S_B over {inG(c_b) : b > 0}
  std::shared_ptr<const ForcingPoset> poset;      // conditions of atoms_only
  std::vector<Element> pi;                        // per condition of `poset`
  DenseEmbeddingReport embedding;

  Element pi_of(const SentenceSet& s) const;
};

std::string element_constant(Element e);

/// Throws TrivialAlgebra when B has no atoms.
AlgebraCp cp_from_algebra(const FinBooleanAlgebra& b);

struct RoundtripReport {
  bool isomorphic = true;
  int ro_atoms = 0;
  int algebra_atoms = 0;
  std::size_t conditions = 0;
  std::vector<std::string> failures;
};

RoundtripReport roundtrip_check(const FinBooleanAlgebra& b);
RoundtripReport roundtrip_check(const AlgebraCp& cp);

}  // namespace infkit
