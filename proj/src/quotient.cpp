#include "infkit/quotient.hpp"

#include <algorithm>

namespace infkit {

bool QuotientStructure::is_ultra() const { return source && is_ultrafilter(source->algebra(), filter); }

TarskiStructure QuotientStructure::as_tarski() const {
  TarskiStructure t;
  t.size = classes.size();
  t.relations = relations;
  t.constants = constants;
  return t;
}

QuotientStructure quotient(const BValuedModel& m, const AlgFilter& f) {
  const auto& b = m.algebra();
  if (b.is_zero(f.generator)) throw ImproperFilter("filter contains 0");
  QuotientStructure q;
  q.source = &m;
  q.filter = f;
  const std::size_t n = m.size();
  auto in = [&](Element e) { return f.contains(b, e); };
  const auto& names = m.domain();
  for (std::size_t i = 0; i < n; ++i) {
    if (!in(m.eq(i, i))) q.issues.push_back("not reflexive at " + names[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (in(m.eq(i, j)) != in(m.eq(j, i))) q.issues.push_back("not symmetric at " + names[i] + "," + names[j]);
      for (std::size_t k = 0; k < n; ++k)
        if (in(m.eq(i, j)) && in(m.eq(j, k)) && !in(m.eq(i, k)))
          q.issues.push_back("not transitive at " + names[i] + "," + names[j] + "," + names[k]);
    }
  }
  q.class_of.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find_if(q.classes.begin(), q.classes.end(),
                           [&](const std::vector<std::size_t>& c) { return in(m.eq(c.front(), i)); });
    if (it == q.classes.end()) {
      q.class_of[i] = q.classes.size();
      q.classes.push_back({i});
    } else {
      q.class_of[i] = static_cast<std::size_t>(it - q.classes.begin());
      it->push_back(i);
    }
  }
  for (const auto& rel : m.signature().relations()) {
    auto& out = q.relations[rel.name];
    std::map<Tuple, bool> seen;
    for_each_tuple(n, static_cast<std::size_t>(rel.arity), [&](const Tuple& t) {
      Tuple cls;
      for (auto x : t) cls.push_back(q.class_of[x]);
      bool holds = in(m.rel(rel.name, t));
      auto [it, fresh] = seen.emplace(cls, holds);
      if (!fresh && it->second != holds) q.issues.push_back("relation " + rel.name + " depends on representatives");
      if (holds) out.insert(cls);
      return true;
    });
  }
  for (const auto& [c, x] : m.constants()) q.constants[c] = q.class_of[x];
  return q;
}

namespace {

void collect_quantified(const Formula& f, std::vector<Formula>& out) {
  if (f.is_quantifier()) out.push_back(f);
  for (const auto& c : f.children()) collect_quantified(c, out);
}

std::vector<std::string> free_list(const Formula& f) {
  auto s = free_vars(f);
  return {s.begin(), s.end()};
}

}  // namespace

bool full_for(const BValuedModel& m, const Formula& f) {
  std::vector<Formula> qs;
  collect_quantified(f, qs);
  for (const auto& q : qs) {
    // A universal attains its infimum iff the dual existential attains its supremum.
    Formula ex = q.kind() == Connective::Exists
                     ? q
                     : Formula::exists({q.bound_vars().begin(), q.bound_vars().end()}, Formula::negation(q.body()));
    auto params = free_list(ex);
    bool ok = for_each_tuple(m.size(), params.size(), [&](const Tuple& t) {
      Assignment a;
      for (std::size_t i = 0; i < params.size(); ++i) a[params[i]] = t[i];
      return check_full(m, ex, a).attained;
    });
    if (!ok) return false;
  }
  return true;
}

LosReport los_check(const BValuedModel& m, const AlgFilter& u, const std::vector<Formula>& pool) {
  LosReport r;
  const auto& b = m.algebra();
  if (!is_ultrafilter(b, u)) throw AlgebraError("Łoś check needs an ultrafilter");
  auto q = quotient(m, u);
  auto t = q.as_tarski();
  for (const auto& f : pool) {
    const bool full = full_for(m, f);
    if (full) ++r.formulas_checked;
    else ++r.skipped_not_full;
    auto vars = free_list(f);
    for_each_tuple(m.size(), vars.size(), [&](const Tuple& tup) {
      Assignment a, qa;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        a[vars[i]] = tup[i];
        qa[vars[i]] = q.class_of[tup[i]];
      }
      bool lhs = tarski_eval(t, f, qa);
      bool rhs = u.contains(b, eval(m, f, a));
      if (full) ++r.instances_checked;
      if (lhs != rhs) {
        if (!full) {
          ++r.violations_without_fullness;
        } else {
          LosViolation v{f.canonical(), {}, lhs, rhs};
          for (std::size_t i = 0; i < vars.size(); ++i) v.assignment.push_back(vars[i] + "=" + m.domain()[tup[i]]);
          r.violations.push_back(std::move(v));
        }
      }
      return true;
    });
  }
  return r;
}

FactorReport factor_map(const QuotientStructure& fine, const QuotientStructure& coarse) {
  FactorReport r;
  r.map.assign(fine.classes.size(), 0);
  for (std::size_t c = 0; c < fine.classes.size(); ++c) {
    const auto& members = fine.classes[c];
    r.map[c] = coarse.class_of[members.front()];
    for (auto x : members)
      if (coarse.class_of[x] != r.map[c]) r.well_defined = false;
  }
  std::set<std::size_t> image(r.map.begin(), r.map.end());
  r.surjective = image.size() == coarse.classes.size();
  return r;
}

}  // namespace infkit
