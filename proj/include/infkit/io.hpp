#pragma once

// JSON parsers and emitters for every interchange format. Emitted JSON is
// canonical: object keys sorted, formulas and sentence sets in canonical
// order, two-space indentation and a trailing newline.

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "infkit/boolalg.hpp"
#include "infkit/bvmodel.hpp"
#include "infkit/calculus.hpp"
#include "infkit/consprop.hpp"
#include "infkit/syntax.hpp"

namespace infkit {

using Json = nlohmann::json;

/// Malformed input. `path` locates the fault, e.g. "$.relations[0].arity".
class ParseError : public InfkitError {
 public:
  ParseError(std::string path, const std::string& message)
      : InfkitError(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json load_json(const std::filesystem::path& file);
Json parse_json_text(const std::string& text);
std::string canonical_text(const Json& j);
void write_text(const std::filesystem::path& file, const std::string& text);

Term parse_term(const Json& j, const std::string& path = "$");
Json emit_term(const Term& t);

/// With a signature, relations, arities and constants are checked against it
/// (plus `extra_constants`).
Formula parse_formula(const Json& j, const std::string& path = "$", const Signature* sig = nullptr,
                      const std::set<std::string>& extra_constants = {});
Json emit_formula(const Formula& f);

std::vector<Formula> parse_formula_list(const Json& j, const std::string& path, const Signature* sig = nullptr,
                                        const std::set<std::string>& extra_constants = {});
Json emit_formula_list(const std::vector<Formula>& fs);

Signature parse_signature(const Json& j, const std::string& path = "$");
Json emit_signature(const Signature& s);

FinPoset parse_poset(const Json& j, const std::string& path = "$");
Json emit_poset(const FinPoset& p);

FinBooleanAlgebra parse_algebra(const Json& j, const std::string& path = "$");
Json emit_algebra(const FinBooleanAlgebra& b);

Element parse_element(const FinBooleanAlgebra& b, const Json& j, const std::string& path);
Json emit_element(const FinBooleanAlgebra& b, Element e);

BValuedModel parse_model(const Json& j, const std::string& path = "$");
Json emit_model(const BValuedModel& m);

/// Explicit families only.
ConsistencyProperty parse_cp(const Json& j, const std::string& path = "$");
Json emit_cp(const ConsistencyProperty& s);

/// {"generator": elt}; the filter is principal, ultra-ness is not checked here.
AlgFilter parse_ultrafilter(const FinBooleanAlgebra& b, const Json& j, const std::string& path = "$");
Json emit_ultrafilter(const FinBooleanAlgebra& b, const AlgFilter& f);

Proof parse_proof(const Json& j, const std::string& path = "$");
Json emit_proof(const Proof& p);
Sequent parse_sequent(const Json& j, const std::string& path);
Json emit_sequent(const Sequent& s);

struct Theory {
  Signature signature;
  std::vector<Formula> sentences;
};
Theory parse_theory(const Json& j, const std::string& path = "$");
Json emit_theory(const Theory& t);

/// A pool is a bare array of formulas.
std::vector<Formula> parse_pool(const Json& j, const std::string& path = "$", const Signature* sig = nullptr,
                                const std::set<std::string>& extra_constants = {});
Json emit_pool(const std::vector<Formula>& pool);

enum class FileKind { Signature, Formula, Algebra, Poset, Model, Cp, Ultrafilter, Proof, Theory, Pool, Manifest };

std::string kind_name(FileKind k);
std::optional<FileKind> kind_from_name(std::string_view name);
/// Guesses the format from the top-level shape.
FileKind detect_kind(const Json& j);

/// emit(parse(j)) for the given kind. Ultrafilters need an algebra and are
/// emitted as their generator literal unchanged after parsing as a list.
Json reemit(const Json& j, FileKind kind);

}  // namespace infkit
