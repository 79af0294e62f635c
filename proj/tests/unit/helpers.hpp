#pragma once

#include "infkit/io.hpp"
#include "infkit/sampling.hpp"

namespace infkit::test {

inline Term c(const std::string& n) { return Term::constant(n); }
inline Term v(const std::string& n) { return Term::var(n); }
inline Formula R(const Term& t) { return Formula::atom("R", {t}); }
inline Formula E(const Term& a, const Term& b) { return Formula::atom("E", {a, b}); }

inline Signature small_signature() { return Signature({{"R", 1}, {"E", 2}}, {"c", "d"}); }

// Two-valued model over the two-element algebra from a set of true facts.
inline BValuedModel two_valued(std::size_t n, const std::set<std::size_t>& r, const std::set<Tuple>& e,
                               std::size_t cval = 0, std::size_t dval = 0) {
  std::vector<std::string> dom;
  for (std::size_t i = 0; i < n; ++i) dom.push_back("e" + std::to_string(i));
  BValuedModel m(small_signature(), FinBooleanAlgebra::powerset({"t"}), dom);
  const auto top = m.algebra().top();
  for (auto x : r) m.set_rel("R", {x}, top);
  for (const auto& t : e) m.set_rel("E", t, top);
  m.set_constant("c", cval);
  m.set_constant("d", dval);
  return m;
}

// All four functions {x, y} -> {a, b}: R holds exactly where the value is a.
inline BValuedModel product_of_two() {
  BValuedModel m(small_signature(), FinBooleanAlgebra::powerset({"x", "y"}), {"a", "b", "ab", "ba"});
  const auto& b = m.algebra();
  Element x = b.parse_literal({"x"}), y = b.parse_literal({"y"});
  m.set_rel("R", {0}, x);
  m.set_rel("R", {1}, y);
  m.set_rel("R", {2}, b.top());
  m.set_eq(0, 2, x);
  m.set_eq(1, 2, y);
  m.set_eq(1, 3, x);
  m.set_eq(0, 3, y);
  m.set_constant("c", 0);
  m.set_constant("d", 1);
  return m;
}

inline std::vector<Assignment> assignments(std::size_t n, const std::vector<std::string>& vars) {
  std::vector<Assignment> out;
  for_each_tuple(n, vars.size(), [&](const Tuple& t) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = t[i];
    out.push_back(a);
    return true;
  });
  return out;
}

}  // namespace infkit::test
