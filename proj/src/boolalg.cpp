#include "infkit/boolalg.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace infkit {

// ---------------------------------------------------------------------------
// FinPoset

FinPoset::FinPoset(std::vector<std::string> elements, const std::vector<std::pair<std::string, std::string>>& leq)
    : names_(std::move(elements)) {
  std::set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw AlgebraError("duplicate poset element '" + n + "'");
  const std::size_t n = names_.size();
  down_.assign(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) down_[i].set(i);
  for (const auto& [lo, hi] : leq) {
    auto a = index(lo), b = index(hi);
    if (!a || !b) throw AlgebraError("order pair mentions unknown element ('" + lo + "', '" + hi + "')");
    down_[*b].set(*a);
  }
  // Transitive closure: Warshall over down-sets.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t p = 0; p < n; ++p)
      if (down_[p].test(k)) down_[p] |= down_[k];
  finish();
}

FinPoset FinPoset::from_down_sets(std::vector<std::string> elements, std::vector<Bitset> down) {
  FinPoset p;
  p.names_ = std::move(elements);
  p.down_ = std::move(down);
  p.finish();
  return p;
}

void FinPoset::finish() {
  const std::size_t n = names_.size();
  up_.assign(n, Bitset(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = down_[p].find_first(); q != Bitset::npos; q = down_[p].find_next(q)) up_[q].set(p);
  for (std::size_t p = 0; p < n; ++p) {
    if (!down_[p].test(p)) throw AlgebraError("order is not reflexive at '" + names_[p] + "'");
    for (std::size_t q = down_[p].find_first(); q != Bitset::npos; q = down_[p].find_next(q))
      if (q != p && down_[q].test(p))
        throw AlgebraError("order is not antisymmetric: '" + names_[p] + "' and '" + names_[q] + "'");
  }
}

std::optional<std::size_t> FinPoset::index(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<std::size_t> FinPoset::minimal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < size(); ++p)
    if (down_[p].count() == 1) out.push_back(p);
  return out;
}

std::vector<std::pair<std::string, std::string>> FinPoset::strict_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t p = 0; p < size(); ++p)
    for (std::size_t q = down_[p].find_first(); q != Bitset::npos; q = down_[p].find_next(q))
      if (q != p) out.emplace_back(names_[q], names_[p]);
  std::sort(out.begin(), out.end());
  return out;
}

Bitset FinPoset::full_set() const {
  Bitset b(size());
  b.set();
  return b;
}

Bitset up_closure(const FinPoset& p, const Bitset& a) {
  Bitset out(p.size());
  for (std::size_t q = a.find_first(); q != Bitset::npos; q = a.find_next(q)) out |= p.up(q);
  return out;
}

Bitset interior(const FinPoset& p, const Bitset& b) {
  Bitset out(p.size());
  for (std::size_t q = 0; q < p.size(); ++q)
    if (p.down(q).is_subset_of(b)) out.set(q);
  return out;
}

Bitset regularize(const FinPoset& p, const Bitset& a) { return interior(p, up_closure(p, a)); }

bool is_open(const FinPoset& p, const Bitset& a) {
  for (std::size_t q = a.find_first(); q != Bitset::npos; q = a.find_next(q))
    if (!p.down(q).is_subset_of(a)) return false;
  return true;
}

bool is_regular_open(const FinPoset& p, const Bitset& a) { return regularize(p, a) == a; }

// ---------------------------------------------------------------------------
// FinBooleanAlgebra

FinBooleanAlgebra FinBooleanAlgebra::powerset(std::vector<std::string> atoms) {
  if (static_cast<int>(atoms.size()) > kMaxAtoms) throw AlgebraError("too many atoms");
  std::set<std::string> seen;
  for (const auto& a : atoms)
    if (!seen.insert(a).second) throw AlgebraError("duplicate atom '" + a + "'");
  FinBooleanAlgebra b;
  b.kind_ = AlgebraKind::Powerset;
  b.atom_names_ = std::move(atoms);
  return b;
}

FinBooleanAlgebra FinBooleanAlgebra::regular_open(std::shared_ptr<const FinPoset> poset) {
  FinBooleanAlgebra b;
  b.kind_ = AlgebraKind::RegularOpen;
  b.atom_points_ = poset->minimal_elements();
  if (static_cast<int>(b.atom_points_.size()) > kMaxAtoms) throw AlgebraError("too many minimal points");
  for (auto m : b.atom_points_) b.atom_names_.push_back(poset->name(m));
  b.poset_ = std::move(poset);
  return b;
}

namespace {

std::string join_names(const std::vector<std::string>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i];
  }
  return s + "}";
}

}  // namespace

FinBooleanAlgebra FinBooleanAlgebra::from_table(const AlgebraTable& table) {
  auto report = check_algebra(table);
  if (!report.ok()) {
    std::string msg = "table is not a Boolean algebra: " + report.violations.front().law;
    if (!report.violations.front().witnesses.empty()) msg += " at " + join_names(report.violations.front().witnesses);
    throw AlgebraError(msg);
  }
  const int n = static_cast<int>(table.names.size());
  int zero = -1;
  for (int z = 0; z < n && zero < 0; ++z) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table.meet[z][x] == z;
    if (ok) zero = z;
  }
  std::vector<int> atoms;
  for (int a = 0; a < n; ++a) {
    if (a == zero) continue;
    bool atom = true;
    for (int x = 0; x < n && atom; ++x) atom = table.meet[a][x] == zero || table.meet[a][x] == a;
    if (atom) atoms.push_back(a);
  }
  if (static_cast<int>(atoms.size()) > kMaxAtoms) throw AlgebraError("too many atoms");
  FinBooleanAlgebra b;
  b.kind_ = AlgebraKind::Table;
  for (int a : atoms) b.atom_names_.push_back(table.names[a]);
  b.table_names_ = table.names;
  b.table_elements_.resize(n);
  std::set<std::uint64_t> masks;
  for (int x = 0; x < n; ++x) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (table.meet[atoms[i]][x] == atoms[i]) m |= std::uint64_t{1} << i;
    b.table_elements_[x] = {m};
    masks.insert(m);
  }
  if (masks.size() != static_cast<std::size_t>(n) || masks.size() != b.size())
    throw AlgebraError("table is not atomic over its atoms");
  return b;
}

std::vector<Element> FinBooleanAlgebra::atoms() const {
  std::vector<Element> out;
  for (int i = 0; i < atom_count(); ++i) out.push_back(atom(i));
  return out;
}

std::vector<Element> FinBooleanAlgebra::atoms_below(Element b) const {
  std::vector<Element> out;
  for (int i = 0; i < atom_count(); ++i)
    if (b.bits >> i & 1) out.push_back(atom(i));
  return out;
}

bool FinBooleanAlgebra::is_atom(Element b) const { return std::popcount(b.bits) == 1 && contains(b); }

Element FinBooleanAlgebra::sup(std::span<const Element> s) const {
  Element r = bottom();
  for (auto e : s) r = join(r, e);
  return r;
}

Element FinBooleanAlgebra::inf(std::span<const Element> s) const {
  Element r = top();
  for (auto e : s) r = meet(r, e);
  return r;
}

std::vector<Element> FinBooleanAlgebra::elements() const {
  if (atom_count() > 20) throw AlgebraError("algebra too large to enumerate");
  std::vector<Element> out;
  out.reserve(size());
  for (std::uint64_t m = 0; m < size(); ++m) out.push_back({m});
  return out;
}

Bitset FinBooleanAlgebra::open_set(Element a) const {
  if (kind_ != AlgebraKind::RegularOpen) throw AlgebraError("open_set needs a regular-open algebra");
  const FinPoset& p = *poset_;
  Bitset chosen(p.size());
  for (int i = 0; i < atom_count(); ++i)
    if (a.bits >> i & 1) chosen.set(atom_points_[i]);
  Bitset minimal(p.size());
  for (auto m : atom_points_) minimal.set(m);
  Bitset out(p.size());
  for (std::size_t q = 0; q < p.size(); ++q)
    if ((p.down(q) & minimal).is_subset_of(chosen)) out.set(q);
  return out;
}

Element FinBooleanAlgebra::from_open_set(const Bitset& a) const {
  if (kind_ != AlgebraKind::RegularOpen) throw AlgebraError("from_open_set needs a regular-open algebra");
  if (!is_regular_open(*poset_, a)) throw AlgebraError("set is not regular open");
  Element e{0};
  for (int i = 0; i < atom_count(); ++i)
    if (a.test(atom_points_[i])) e.bits |= std::uint64_t{1} << i;
  return e;
}

std::vector<std::string> FinBooleanAlgebra::literal(Element a) const {
  std::vector<std::string> out;
  switch (kind_) {
    case AlgebraKind::Powerset:
      for (int i = 0; i < atom_count(); ++i)
        if (a.bits >> i & 1) out.push_back(atom_names_[i]);
      break;
    case AlgebraKind::RegularOpen: {
      Bitset s = open_set(a);
      for (std::size_t q = s.find_first(); q != Bitset::npos; q = s.find_next(q)) out.push_back(poset_->name(q));
      break;
    }
    case AlgebraKind::Table: {
      auto it = std::find(table_elements_.begin(), table_elements_.end(), a);
      out.push_back(table_names_[it - table_elements_.begin()]);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Element FinBooleanAlgebra::parse_literal(const std::vector<std::string>& names) const {
  if (names.size() == 1 && names[0] == "0" && kind_ != AlgebraKind::Table) return bottom();
  if (names.size() == 1 && names[0] == "1" && kind_ != AlgebraKind::Table) return top();
  switch (kind_) {
    case AlgebraKind::Powerset: {
      Element e{0};
      for (const auto& n : names) {
        auto it = std::find(atom_names_.begin(), atom_names_.end(), n);
        if (it == atom_names_.end()) throw AlgebraError("unknown atom '" + n + "'");
        e.bits |= std::uint64_t{1} << (it - atom_names_.begin());
      }
      return e;
    }
    case AlgebraKind::RegularOpen: {
      Bitset s(poset_->size());
      for (const auto& n : names) {
        auto i = poset_->index(n);
        if (!i) throw AlgebraError("unknown poset element '" + n + "'");
        s.set(*i);
      }
      if (!is_regular_open(*poset_, s)) throw AlgebraError("element " + join_names(names) + " is not regular open");
      return from_open_set(s);
    }
    case AlgebraKind::Table: {
      if (names.size() != 1) throw AlgebraError("table element literal must name exactly one element");
      auto it = std::find(table_names_.begin(), table_names_.end(), names[0]);
      if (it == table_names_.end()) {
        if (names[0] == "0") return bottom();
        if (names[0] == "1") return top();
        throw AlgebraError("unknown table element '" + names[0] + "'");
      }
      return table_elements_[it - table_names_.begin()];
    }
  }
  return bottom();
}

std::string FinBooleanAlgebra::to_string(Element a) const {
  if (a.bits == 0) return "0";
  if (a == top()) return "1";
  return join_names(literal(a));
}

bool FinBooleanAlgebra::operator==(const FinBooleanAlgebra& o) const {
  if (kind_ != o.kind_ || atom_names_ != o.atom_names_) return false;
  if (kind_ == AlgebraKind::RegularOpen)
    return poset_->names() == o.poset_->names() && poset_->strict_pairs() == o.poset_->strict_pairs();
  if (kind_ == AlgebraKind::Table) return table_names_ == o.table_names_ && table_elements_ == o.table_elements_;
  return true;
}

// ---------------------------------------------------------------------------
// Law checking

namespace {

constexpr std::size_t kMaxViolationsPerLaw = 16;

class LawChecker {
 public:
  explicit LawChecker(const AlgebraTable& t) : t_(t), n_(static_cast<int>(t.names.size())) {}

  AlgebraReport run() {
    report_.elements_checked = n_;
    if (!shape_ok()) return report_;
    int zero = find_identity(t_.join, "bottom (join identity)");
    int one = find_identity(t_.meet, "top (meet identity)");
    for (int a = 0; a < n_; ++a) {
      expect(m(a, a) == a, "idempotence of meet", {a});
      expect(j(a, a) == a, "idempotence of join", {a});
      if (zero >= 0 && one >= 0) {
        expect(m(a, c(a)) == zero, "complement: a meet not-a = 0", {a});
        expect(j(a, c(a)) == one, "complement: a join not-a = 1", {a});
      }
      for (int b = 0; b < n_; ++b) {
        expect(m(a, b) == m(b, a), "commutativity of meet", {a, b});
        expect(j(a, b) == j(b, a), "commutativity of join", {a, b});
        expect(m(a, j(a, b)) == a, "absorption: a meet (a join b) = a", {a, b});
        expect(j(a, m(a, b)) == a, "absorption: a join (a meet b) = a", {a, b});
        for (int x = 0; x < n_; ++x) {
          expect(m(a, m(b, x)) == m(m(a, b), x), "associativity of meet", {a, b, x});
          expect(j(a, j(b, x)) == j(j(a, b), x), "associativity of join", {a, b, x});
          expect(m(a, j(b, x)) == j(m(a, b), m(a, x)), "distributivity of meet over join", {a, b, x});
          expect(j(a, m(b, x)) == m(j(a, b), j(a, x)), "distributivity of join over meet", {a, b, x});
        }
      }
    }
    return report_;
  }

 private:
  int m(int a, int b) const { return t_.meet[a][b]; }
  int j(int a, int b) const { return t_.join[a][b]; }
  int c(int a) const { return t_.comp[a]; }

  bool shape_ok() {
    bool ok = static_cast<int>(t_.meet.size()) == n_ && static_cast<int>(t_.join.size()) == n_ &&
              static_cast<int>(t_.comp.size()) == n_;
    for (int a = 0; ok && a < n_; ++a) {
      ok = static_cast<int>(t_.meet[a].size()) == n_ && static_cast<int>(t_.join[a].size()) == n_;
      for (int b = 0; ok && b < n_; ++b)
        ok = in_range(t_.meet[a][b]) && in_range(t_.join[a][b]);
      ok = ok && in_range(t_.comp[a]);
    }
    if (!ok) report_.violations.push_back({"closure: tables must be n x n with entries in range", {}});
    if (n_ == 0) report_.violations.push_back({"carrier is empty", {}});
    return ok && n_ > 0;
  }

  bool in_range(int x) const { return x >= 0 && x < n_; }

  int find_identity(const std::vector<std::vector<int>>& op, const std::string& what) {
    for (int e = 0; e < n_; ++e) {
      bool ok = true;
      for (int x = 0; x < n_ && ok; ++x) ok = op[e][x] == x && op[x][e] == x;
      if (ok) return e;
    }
    report_.violations.push_back({"missing " + what, {}});
    return -1;
  }

  void expect(bool cond, const char* law, std::initializer_list<int> at) {
    if (cond) return;
    auto& cnt = counts_[law];
    if (cnt++ >= kMaxViolationsPerLaw) return;
    LawViolation v{law, {}};
    for (int i : at) v.witnesses.push_back(t_.names[i]);
    report_.violations.push_back(std::move(v));
  }

  const AlgebraTable& t_;
  int n_;
  AlgebraReport report_;
  std::map<std::string, std::size_t> counts_;
};

}  // namespace

AlgebraReport check_algebra(const AlgebraTable& table) { return LawChecker(table).run(); }

AlgebraTable to_table(const FinBooleanAlgebra& b) {
  AlgebraTable t;
  auto els = b.elements();
  const int n = static_cast<int>(els.size());
  std::map<Element, int> idx;
  for (int i = 0; i < n; ++i) {
    idx[els[i]] = i;
    t.names.push_back(b.to_string(els[i]));
  }
  t.meet.assign(n, std::vector<int>(n));
  t.join.assign(n, std::vector<int>(n));
  t.comp.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    t.comp[i] = idx.at(b.complement(els[i]));
    for (int k = 0; k < n; ++k) {
      t.meet[i][k] = idx.at(b.meet(els[i], els[k]));
      t.join[i][k] = idx.at(b.join(els[i], els[k]));
    }
  }
  return t;
}

AlgebraReport check_algebra(const FinBooleanAlgebra& b) {
  if (b.kind() != AlgebraKind::RegularOpen) return check_algebra(to_table(b));

  // Work on the regular open sets directly.
  const FinPoset& p = *b.poset();
  auto els = b.elements();
  const int n = static_cast<int>(els.size());
  std::vector<Bitset> sets;
  std::map<Bitset, int> idx;
  AlgebraReport closure;
  AlgebraTable t;
  for (int i = 0; i < n; ++i) {
    sets.push_back(b.open_set(els[i]));
    t.names.push_back(b.to_string(els[i]));
    if (!is_regular_open(p, sets.back())) closure.violations.push_back({"carrier set is not regular open", {t.names.back()}});
    if (!idx.emplace(sets.back(), i).second) closure.violations.push_back({"carrier sets are not distinct", {t.names.back()}});
  }
  auto lookup = [&](const Bitset& s, const char* op, std::vector<std::string> at) {
    auto it = idx.find(s);
    if (it != idx.end()) return it->second;
    closure.violations.push_back({std::string("closure under ") + op, std::move(at)});
    return 0;
  };
  t.meet.assign(n, std::vector<int>(n));
  t.join.assign(n, std::vector<int>(n));
  t.comp.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    t.comp[i] = lookup(interior(p, ~sets[i]), "complement", {t.names[i]});
    for (int k = 0; k < n; ++k) {
      t.meet[i][k] = lookup(sets[i] & sets[k], "meet", {t.names[i], t.names[k]});
      t.join[i][k] = lookup(regularize(p, sets[i] | sets[k]), "join", {t.names[i], t.names[k]});
    }
  }
  if (!closure.ok()) {
    closure.elements_checked = n;
    return closure;
  }
  return check_algebra(t);
}

// ---------------------------------------------------------------------------
// Regular-open completion

RoCompletion ro_completion(const FinPoset& p) {
  RoCompletion out;
  out.algebra = FinBooleanAlgebra::regular_open(std::make_shared<const FinPoset>(p));
  const FinPoset& q = *out.algebra.poset();
  for (std::size_t i = 0; i < q.size(); ++i) out.embedding.push_back(out.algebra.from_open_set(regularize(q, q.down(i))));
  return out;
}

EmbeddingReport verify_ro_embedding(const FinPoset& p, const RoCompletion& ro) {
  EmbeddingReport r;
  const auto& b = ro.algebra;
  const auto& e = ro.embedding;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (b.is_zero(e[i])) {
      r.dense_image = false;
      r.failures.push_back("Reg(N_" + p.name(i) + ") is zero");
    }
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p.leq(i, k) && !b.leq(e[i], e[k])) {
        r.order_preserving = false;
        r.failures.push_back("order not preserved: " + p.name(i) + " <= " + p.name(k));
      }
      bool incompatible = !p.compatible(i, k);
      bool disjoint = b.is_zero(b.meet(e[i], e[k]));
      if (incompatible != disjoint) {
        r.incompatibility_preserving = false;
        r.failures.push_back("incompatibility mismatch: " + p.name(i) + ", " + p.name(k));
      }
    }
  }
  for (auto x : b.elements()) {
    if (b.is_zero(x)) continue;
    bool hit = std::any_of(e.begin(), e.end(), [&](Element y) { return !b.is_zero(y) && b.leq(y, x); });
    if (!hit) {
      r.dense_image = false;
      r.failures.push_back("no image below " + b.to_string(x));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Filters

std::vector<Element> AlgFilter::members(const FinBooleanAlgebra& b) const {
  std::vector<Element> out;
  for (auto x : b.elements())
    if (b.leq(generator, x)) out.push_back(x);
  return out;
}

AlgFilter make_filter(const FinBooleanAlgebra& b, std::span<const Element> members) {
  std::set<Element> s(members.begin(), members.end());
  if (s.empty()) throw ImproperFilter("filter must be nonempty");
  for (auto x : s) {
    if (!b.contains(x)) throw AlgebraError("filter member outside the algebra");
    if (b.is_zero(x)) throw ImproperFilter("filter contains 0");
  }
  for (auto x : s)
    for (auto y : b.elements())
      if (b.leq(x, y) && !s.contains(y)) throw AlgebraError("filter is not upward closed at " + b.to_string(y));
  for (auto x : s)
    for (auto y : s)
      if (!s.contains(b.meet(x, y))) throw AlgebraError("filter is not closed under meets");
  return {b.inf(std::vector<Element>(s.begin(), s.end()))};
}

AlgFilter principal_filter(const FinBooleanAlgebra& b, Element generator) {
  if (!b.contains(generator)) throw AlgebraError("generator outside the algebra");
  if (b.is_zero(generator)) throw ImproperFilter("filter generated by 0 is improper");
  return {generator};
}

bool is_ultrafilter(const FinBooleanAlgebra& b, const AlgFilter& f) { return b.is_atom(f.generator); }

std::vector<AlgFilter> enumerate_ultrafilters(const FinBooleanAlgebra& b) {
  std::vector<AlgFilter> out;
  for (auto a : b.atoms()) out.push_back({a});
  return out;
}

// ---------------------------------------------------------------------------
// Restriction, density, antichains

Element Restriction::to_parent(Element x) const {
  Element out{0};
  for (std::size_t i = 0; i < parent_atoms.size(); ++i)
    if (x.bits >> i & 1) out.bits |= std::uint64_t{1} << parent_atoms[i];
  return out;
}

Element Restriction::from_parent(Element x) const {
  Element out{0};
  for (std::size_t i = 0; i < parent_atoms.size(); ++i)
    if (x.bits >> parent_atoms[i] & 1) out.bits |= std::uint64_t{1} << i;
  return out;
}

Restriction restrict_algebra(const FinBooleanAlgebra& b, Element bound) {
  if (b.is_zero(bound)) throw ZeroRestriction("cannot restrict to 0");
  Restriction r;
  r.bound = bound;
  std::vector<std::string> names;
  for (int i = 0; i < b.atom_count(); ++i) {
    if (!(bound.bits >> i & 1)) continue;
    r.parent_atoms.push_back(i);
    names.push_back(b.to_string(b.atom(i)));
  }
  r.algebra = FinBooleanAlgebra::powerset(std::move(names));
  return r;
}

bool is_dense(const FinBooleanAlgebra& b, std::span<const Element> d) {
  // Dense in B+ iff every atom lies below... an atom x needs some nonzero d <= x, i.e. x in d.
  for (auto x : b.atoms()) {
    bool hit = std::any_of(d.begin(), d.end(), [&](Element e) { return !b.is_zero(e) && b.leq(e, x); });
    if (!hit) return false;
  }
  return true;
}

bool is_antichain(const FinBooleanAlgebra& b, std::span<const Element> a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b.is_zero(a[i])) return false;
    for (std::size_t k = i + 1; k < a.size(); ++k)
      if (!b.is_zero(b.meet(a[i], a[k]))) return false;
  }
  return true;
}

std::vector<std::vector<Element>> enumerate_antichains(const FinBooleanAlgebra& b) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> cur;
  auto els = b.elements();
  auto rec = [&](auto&& self, std::size_t from, std::uint64_t used) -> void {
    out.push_back(cur);
    for (std::size_t i = from; i < els.size(); ++i) {
      if (els[i].bits == 0 || (els[i].bits & used)) continue;
      cur.push_back(els[i]);
      self(self, i + 1, used | els[i].bits);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace infkit
