#pragma once

// Sequent calculus proofs over the {not, and, forall} fragment: checking and
// semantic soundness sampling.

#include <optional>
#include <string>
#include <vector>

#include "infkit/sampling.hpp"
#include "infkit/syntax.hpp"

namespace infkit {

struct Sequent {
  std::vector<Formula> ante;  // sorted, duplicate-free
  std::vector<Formula> succ;

  static Sequent make(std::vector<Formula> ante, std::vector<Formula> succ);
  bool operator==(const Sequent&) const = default;
  std::string to_string() const;
};

struct Rule {
  std::string name;
  std::vector<std::size_t> premises;
  std::optional<Formula> formula;  // cut, negation, conjunction, quantifier and eq2 rules
  Substitution map;                // substitution
  std::vector<Term> terms;         // quant_left
  std::vector<std::string> vars;   // quant_right, eq2
  std::vector<Term> from;          // eq2: t
  std::vector<Term> to;            // eq2: u
};

struct ProofStep {
  Sequent sequent;
  Rule rule;
};

struct Proof {
  std::vector<ProofStep> steps;
  const Sequent& goal() const { return steps.back().sequent; }
};

const std::vector<std::string>& rule_names();

/// Rewrites exists as not-forall-not and or as not-and-not.
Formula to_calculus_fragment(const Formula& f);
bool in_calculus_fragment(const Formula& f);

struct ProofCheck {
  bool accepted = true;
  std::size_t step = 0;
  std::string reason;
};

ProofCheck check_proof(const Proof& p);

struct SoundnessReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::optional<std::size_t> first_violation;  // 1-based sample number
  std::string first_detail;
  bool ok() const { return violations == 0; }
};

/// Samples valid models over the goal's symbols and checks
/// [[/\ ante]] <= [[\/ succ]] under every assignment of its free variables.
SoundnessReport soundness_sample(const Sequent& goal, const ModelBounds& bounds, std::size_t n, std::uint64_t seed,
                                 bool stop_at_first = false);

}  // namespace infkit
