#include "infkit/sampling.hpp"

#include <algorithm>

namespace infkit {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool coin(Rng& rng) { return pick(rng, 2) == 1; }

std::vector<std::string> element_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("m" + std::to_string(i));
  return out;
}

std::vector<std::string> atom_names(int k) {
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back("a" + std::to_string(i));
  return out;
}

}  // namespace

BValuedModel random_model(const Signature& sig, int atoms, std::size_t domain, Rng& rng) {
  auto alg = FinBooleanAlgebra::powerset(atom_names(atoms));
  BValuedModel m(sig, alg, element_names(domain));
  // label[x][i]: block of element i in the partition carried by atom x.
  std::vector<std::vector<std::size_t>> label(atoms, std::vector<std::size_t>(domain));
  for (auto& l : label)
    for (auto& v : l) v = pick(rng, domain);
  for (std::size_t i = 0; i < domain; ++i)
    for (std::size_t j = i + 1; j < domain; ++j) {
      Element e{0};
      for (int x = 0; x < atoms; ++x)
        if (label[x][i] == label[x][j]) e.bits |= std::uint64_t{1} << x;
      m.set_eq(i, j, e);
    }
  for (const auto& rel : sig.relations()) {
    const auto k = static_cast<std::size_t>(rel.arity);
    // One random bit per atom and block tuple.
    std::vector<std::map<Tuple, bool>> bits(atoms);
    for_each_tuple(domain, k, [&](const Tuple& t) {
      Element e{0};
      for (int x = 0; x < atoms; ++x) {
        Tuple blocks;
        for (auto i : t) blocks.push_back(label[x][i]);
        auto [it, fresh] = bits[x].emplace(blocks, false);
        if (fresh) it->second = coin(rng);
        if (it->second) e.bits |= std::uint64_t{1} << x;
      }
      m.set_rel(rel.name, t, e);
      return true;
    });
  }
  for (const auto& c : sig.constants()) m.set_constant(c, pick(rng, domain));
  return m;
}

BValuedModel random_model(const Signature& sig, const ModelBounds& bounds, Rng& rng) {
  int k = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(bounds.max_atoms)));
  std::size_t n = 1 + pick(rng, bounds.max_domain);
  return random_model(sig, k, n, rng);
}

BValuedModel product_model(const Signature& sig, int atoms, std::size_t base, Rng& rng) {
  auto alg = FinBooleanAlgebra::powerset(atom_names(atoms));
  std::vector<Tuple> funcs;
  for_each_tuple(base, static_cast<std::size_t>(atoms), [&](const Tuple& t) {
    funcs.push_back(t);
    return true;
  });
  std::vector<std::string> names;
  for (const auto& f : funcs) {
    std::string s = "f";
    for (auto v : f) s += std::to_string(v);
    names.push_back(s);
  }
  BValuedModel m(sig, alg, names);
  const std::size_t n = funcs.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Element e{0};
      for (int x = 0; x < atoms; ++x)
        if (funcs[i][x] == funcs[j][x]) e.bits |= std::uint64_t{1} << x;
      m.set_eq(i, j, e);
    }
  for (const auto& rel : sig.relations()) {
    const auto k = static_cast<std::size_t>(rel.arity);
    std::vector<std::map<Tuple, bool>> coord(atoms);
    for (int x = 0; x < atoms; ++x)
      for_each_tuple(base, k, [&](const Tuple& t) {
        coord[x][t] = coin(rng);
        return true;
      });
    for_each_tuple(n, k, [&](const Tuple& t) {
      Element e{0};
      for (int x = 0; x < atoms; ++x) {
        Tuple proj;
        for (auto i : t) proj.push_back(funcs[i][x]);
        if (coord[x][proj]) e.bits |= std::uint64_t{1} << x;
      }
      m.set_rel(rel.name, t, e);
      return true;
    });
  }
  for (const auto& c : sig.constants()) m.set_constant(c, pick(rng, n));
  return m;
}

BValuedModel random_submodel(const BValuedModel& m, Rng& rng) {
  std::vector<bool> keep(m.size(), false);
  for (const auto& [c, x] : m.constants()) keep[x] = true;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!keep[i]) keep[i] = coin(rng);
  if (std::none_of(keep.begin(), keep.end(), [](bool b) { return b; })) keep[pick(rng, m.size())] = true;
  std::vector<std::size_t> idx;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (keep[i]) {
      idx.push_back(i);
      names.push_back(m.domain()[i]);
    }
  BValuedModel out(m.signature(), m.algebra(), names);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out.set_eq_directed(i, j, m.eq(idx[i], idx[j]));
  for (const auto& rel : m.signature().relations())
    for_each_tuple(idx.size(), static_cast<std::size_t>(rel.arity), [&](const Tuple& t) {
      Tuple src;
      for (auto i : t) src.push_back(idx[i]);
      out.set_rel(rel.name, t, m.rel(rel.name, src));
      return true;
    });
  for (const auto& [c, x] : m.constants())
    out.set_constant(c, static_cast<std::size_t>(std::find(idx.begin(), idx.end(), x) - idx.begin()));
  return out;
}

namespace {

class FormulaGen {
 public:
  FormulaGen(const Signature& sig, const FormulaShape& shape, Rng& rng) : sig_(sig), shape_(shape), rng_(rng) {}

  Formula gen(int depth, std::vector<std::string>& scope) {
    if (depth <= 0 || pick(rng_, 4) == 0) return atomic(scope);
    const std::size_t kinds = shape_.allow_or_exists ? 5 : 3;
    switch (pick(rng_, kinds)) {
      case 0:
        return Formula::negation(gen(depth - 1, scope));
      case 1:
        return Formula::conj(children(depth, scope));
      case 2:
        return quantified(depth, scope, true);
      case 3:
        return Formula::disj(children(depth, scope));
      default:
        return quantified(depth, scope, false);
    }
  }

 private:
  std::vector<Formula> children(int depth, std::vector<std::string>& scope) {
    std::size_t w = pick(rng_, shape_.max_width + 1);
    std::vector<Formula> out;
    for (std::size_t i = 0; i < w; ++i) out.push_back(gen(depth - 1, scope));
    return out;
  }

  Formula quantified(int depth, std::vector<std::string>& scope, bool all) {
    if (shape_.bound_vars.empty()) return gen(depth - 1, scope);
    std::string v = shape_.bound_vars[pick(rng_, shape_.bound_vars.size())];
    bool had = std::find(scope.begin(), scope.end(), v) != scope.end();
    if (!had) scope.push_back(v);
    Formula body = gen(depth - 1, scope);
    if (!had) scope.pop_back();
    return all ? Formula::forall({v}, body) : Formula::exists({v}, body);
  }

  Formula atomic(const std::vector<std::string>& scope) {
    std::vector<Term> terms;
    for (const auto& v : scope) terms.push_back(Term::var(v));
    for (const auto& c : sig_.constants()) terms.push_back(Term::constant(c));
    if (terms.empty()) return coin(rng_) ? Formula::conj({}) : Formula::disj({});
    const auto& rels = sig_.relations();
    std::size_t choice = pick(rng_, rels.size() + 1);
    if (choice == rels.size()) return Formula::eq(terms[pick(rng_, terms.size())], terms[pick(rng_, terms.size())]);
    std::vector<Term> args;
    for (int i = 0; i < rels[choice].arity; ++i) args.push_back(terms[pick(rng_, terms.size())]);
    return Formula::atom(rels[choice].name, args);
  }

  const Signature& sig_;
  const FormulaShape& shape_;
  Rng& rng_;
};

}  // namespace

Formula random_formula(const Signature& sig, const FormulaShape& shape, const std::vector<std::string>& free,
                       Rng& rng) {
  std::vector<std::string> scope = free;
  return FormulaGen(sig, shape, rng).gen(shape.depth, scope);
}

}  // namespace infkit
