#include "sqrteuler/chow/models.hpp"

#include <algorithm>
#include <set>

#include "sqrteuler/error.hpp"

namespace se::chow {

using arith::VarTable;

namespace {

Polynomial embed_poly(const Polynomial& p, const VarTablePtr& target) { return arith::embed(p, target); }

std::vector<Rule> embed_rules(const std::vector<Rule>& rules, const VarTablePtr& target) {
  std::vector<Rule> out;
  for (const auto& r : rules) out.push_back({Monomial(r.lhs.entries(), *target), embed_poly(r.rhs, target)});
  return out;
}

std::string join_images(const std::vector<Polynomial>& images) {
  std::string out;
  for (const auto& p : images) out += (out.empty() ? "" : ",") + p.str();
  return out;
}

// Monomial of Y obtained by lifting a monomial of X generator by generator.
Monomial lift_monomial(const Monomial& m, const RingMap& lift, const VarTablePtr& target) {
  std::vector<Monomial::Entry> entries;
  for (const auto& [var, exp] : m.entries()) {
    const Polynomial& image = lift.images()[var];
    if (image.size() != 1 || !image.terms().begin()->second.is_one()) {
      throw UnsupportedModel("lift of generator '" + (*lift.source()->table())[var].name + "' is not a monomial");
    }
    for (const auto& [v, e] : image.terms().begin()->first.entries()) entries.emplace_back(v, e * exp);
  }
  return Monomial(entries, *target);
}

}  // namespace

VarietyPtr point() {
  Variety::Spec spec;
  spec.kind = Variety::Kind::Point;
  spec.name = "point";
  spec.key = "pt";
  spec.table = VarTable::make({});
  spec.dimension = 0;
  return std::make_shared<const Variety>(std::move(spec));
}

VarietyPtr make_proj_space(int n, const std::string& generator) {
  if (n < 0) throw DomainError("P(n) needs n >= 0, got " + std::to_string(n));
  auto pb = make_projective_bundle(Bundle::trivial(point(), n + 1), generator, "P(" + std::to_string(n) + ")");
  return pb.total;
}

VarietyPtr with_parameters(const VarietyPtr& base, const std::vector<std::string>& names) {
  std::vector<arith::Variable> extra;
  std::string suffix;
  for (const auto& n : names) {
    if (base->table()->index_of(n)) throw StructuralError("parameter '" + n + "' clashes with a generator");
    extra.push_back({n, 0});
    suffix += (suffix.empty() ? "" : ",") + n;
  }
  Variety::Spec spec;
  spec.kind = Variety::Kind::Parameters;
  spec.name = base->name() + "[" + suffix + "]";
  spec.key = base->key() + "[" + suffix + "]";
  spec.table = base->table()->extended(extra);
  spec.dimension = base->dimension();
  spec.rules = embed_rules(base->rules(), spec.table);
  spec.base = base;
  return std::make_shared<const Variety>(std::move(spec));
}

// ------------------------------------------------------- projective bundles

Class ProjectiveBundle::hyperplane() const {
  return Class(total, Polynomial::variable(total->table(), total->table()->size() - 1));
}

Class ProjectiveBundle::push(const Class& c) const {
  require_same_variety(c.variety(), total, "projective bundle pushforward");
  return Class(bundle.base(), total->push_to_base(c.poly()));
}

ProjectiveBundle make_projective_bundle(const Bundle& E, const std::string& generator, const std::string& name) {
  const VarietyPtr& base = E.base();
  const int r = E.rank();
  if (r < 1) throw DomainError("projectivization of a bundle of rank " + std::to_string(r));
  if (!E.removed().empty()) throw UnsupportedModel("projectivization of a virtual bundle");
  if (base->parameter_count() > 0) throw UnsupportedModel("projective bundle over a parameter extension");
  if (base->table()->index_of(generator)) throw StructuralError("generator '" + generator + "' already in use");

  Variety::Spec spec;
  spec.kind = Variety::Kind::ProjectiveBundle;
  spec.table = base->table()->extended({{generator, 1}});
  spec.dimension = base->dimension() + r - 1;
  spec.rules = embed_rules(base->rules(), spec.table);
  spec.base = base;
  spec.step_data = static_cast<std::size_t>(r);
  const std::size_t h = base->table()->size();
  Polynomial rhs(spec.table);
  std::string chern_key;
  for (int i = 1; i <= r; ++i) {
    const Class ci = E.chern(i);
    chern_key += ci.str() + ";";
    rhs -= embed_poly(ci.poly(), spec.table) *
           Polynomial::monomial(spec.table, Monomial::variable(h, static_cast<std::uint32_t>(r - i), *spec.table),
                                Rational(1));
  }
  spec.rules.push_back({Monomial::variable(h, static_cast<std::uint32_t>(r), *spec.table), rhs});
  spec.key = "P(" + base->key() + "|" + chern_key + "|" + std::to_string(r) + generator + ")";
  bool trivial = base->kind() == Variety::Kind::Point;
  for (int i = 1; i <= r && trivial; ++i) trivial = E.chern(i).is_zero();
  if (trivial) spec.projective_space = r - 1;
  spec.name = name.empty() ? "P(" + base->name() + ")" : name;
  auto total = std::make_shared<const Variety>(std::move(spec));
  return {E, total, RingMap::inclusion(base, total)};
}

Class proj_bundle_pushforward(const Bundle& E, int k) {
  if (k < 0) throw DomainError("negative power in projective bundle pushforward");
  const auto pb = make_projective_bundle(E);
  return pb.push(pb.hyperplane().pow(static_cast<unsigned>(k)));
}

Class quadric_pushforward(const ProjectiveBundle& pf, const Class& c) {
  if (pf.bundle.rank() % 2 != 0) throw DomainError("quadric bundle needs an even-rank bundle");
  return pf.push(c * pf.hyperplane() * Rational(2));
}

// --------------------------------------------------------------- embeddings

void Embedding::self_test() const {
  const auto& xt = source->table();
  if (source->dimension() + codimension() != target->dimension()) {
    throw ConstructionError("embedding " + source->name() + " -> " + target->name() + ": dimensions do not add up");
  }
  for (std::size_t g = 0; g < xt->size(); ++g) {
    const Class gen(source, Polynomial::variable(xt, g));
    if (!(pull(lift(gen)) == gen)) {
      throw ConstructionError("embedding " + source->name() + " -> " + target->name() + ": restriction of the lift of '" +
                              (*xt)[g].name + "' is not the identity");
    }
  }
  if (!(pull(fundamental) == normal.euler())) {
    throw ConstructionError("embedding " + source->name() + " -> " + target->name() +
                            ": self-intersection " + pull(fundamental).str() + " differs from the top Chern class " +
                            normal.euler().str() + " of the normal bundle");
  }
  for (const auto& rule : source->rules()) {
    const Polynomial lhs = lift_map.apply_raw(Polynomial::monomial(xt, rule.lhs, Rational(1)));
    const Polynomial rhs = lift_map.apply_raw(rule.rhs);
    if (!((Class(target, lhs) - Class(target, rhs)) * fundamental).is_zero()) {
      throw ConstructionError("embedding " + source->name() + " -> " + target->name() +
                              ": pushforward does not respect the relation on " + rule.lhs.str(*xt));
    }
  }
}

Embedding make_embedding(const VarietyPtr& x, const VarietyPtr& y, std::vector<Polynomial> pullback_images,
                         std::vector<Polynomial> lift_images, const Class& fundamental, const Bundle& normal) {
  require_same_variety(fundamental.variety(), y, "fundamental class");
  require_same_variety(normal.base(), x, "normal bundle");
  Embedding e{x,
              y,
              RingMap(y, x, std::move(pullback_images)),
              RingMap(x, y, std::move(lift_images)),
              fundamental,
              normal};
  e.self_test();
  return e;
}

Embedding identity_embedding(const VarietyPtr& y) {
  return Embedding{y, y, RingMap::identity(y), RingMap::identity(y), Class::one(y), Bundle::trivial(y, 0)};
}

Embedding linear_subspace(const VarietyPtr& y, int k) {
  const auto m = y->projective_space();
  if (!m) throw UnsupportedModel("linear subspaces are only modelled inside projective spaces, not in " + y->name());
  if (k < 0 || k > *m) throw DomainError("no linear P(" + std::to_string(k) + ") inside " + y->name());
  if (k == *m) return identity_embedding(y);
  const std::string gen = (*y->table())[0].name;
  const VarietyPtr x = make_proj_space(k, gen);
  const Class hy = Class::generator(y, gen);
  const Class hx = Class::generator(x, gen);
  std::vector<Class> roots(static_cast<std::size_t>(*m - k), hx);
  return make_embedding(x, y, {hx.poly()}, {hy.poly()}, hy.pow(static_cast<unsigned>(*m - k)), Bundle(x, roots));
}

Embedding compose(const Embedding& inner, const Embedding& outer) {
  require_same_variety(inner.target, outer.source, "embedding composition");
  Embedding e{inner.source,
              outer.target,
              outer.pullback.then(inner.pullback),
              inner.lift_map.then(outer.lift_map),
              outer.push(inner.fundamental),
              inner.normal + outer.normal.pullback(inner.pullback)};
  e.self_test();
  return e;
}

// ------------------------------------------------------------------ blowups

Class Blowup::exceptional_class() const {
  return Class(total, Polynomial::variable(total->table(), total->step_data()));
}

Class Blowup::push(const Class& c) const {
  require_same_variety(c.variety(), total, "blowup pushforward");
  return Class(center.target, total->push_to_base(c.poly()));
}

Class Blowup::push_from_exceptional(const Class& c) const {
  require_same_variety(c.variety(), exceptional.total, "exceptional divisor pushforward");
  const auto& xt = center.source->table();
  const std::size_t z = xt->size();
  const Class d = exceptional_class();
  Class out = Class::zero(total);
  for (const auto& [m, coeff] : c.poly().terms()) {
    const std::uint32_t k = m.exponent(z);
    std::vector<Monomial::Entry> rest;
    for (const auto& entry : m.entries()) {
      if (entry.first != z) rest.push_back(entry);
    }
    const Polynomial lifted = center.lift_map.apply_raw(Polynomial::monomial(xt, Monomial(rest, *xt), coeff));
    Class term = pull(Class(center.target, lifted)) * d.pow(k + 1);
    out += k % 2 == 0 ? term : -term;
  }
  return out;
}

Blowup make_blowup(const Embedding& center, const std::string& exceptional, const std::string& fiber) {
  const VarietyPtr& y = center.target;
  const VarietyPtr& x = center.source;
  const int c = center.codimension();
  if (c < 1) throw DomainError("blowup center must have positive codimension");
  if (y->parameter_count() > 0 || x->parameter_count() > 0) throw UnsupportedModel("blowup of a parameter extension");
  if (y->table()->index_of(exceptional)) throw StructuralError("generator '" + exceptional + "' already in use");

  Variety::Spec spec;
  spec.kind = Variety::Kind::Blowup;
  spec.table = y->table()->extended({{exceptional, 1}});
  spec.dimension = y->dimension();
  spec.base = y;
  const std::size_t di = y->table()->size();
  spec.step_data = di;
  const VarTablePtr table = spec.table;
  const Monomial dm = Monomial::variable(di, 1, *table);
  const Polynomial dp = Polynomial::variable(table, di);
  auto lift_to_total = [&](const Polynomial& on_x) { return embed_poly(center.lift_map.apply_raw(on_x), table); };

  spec.rules = embed_rules(y->rules(), table);
  for (std::size_t g = 0; g < y->table()->size(); ++g) {
    const Polynomial image = lift_to_total(center.pullback.images()[g]);
    const Polynomial gen = Polynomial::variable(table, g);
    if (image == gen) continue;
    spec.rules.push_back({dm * Monomial::variable(g, 1, *table), dp * image});
  }
  for (const auto& rule : x->rules()) {
    const Monomial lhs = dm * lift_monomial(rule.lhs, center.lift_map, table);
    const Polynomial rhs = dp * lift_to_total(rule.rhs);
    const bool seen = std::any_of(spec.rules.begin(), spec.rules.end(),
                                  [&](const Rule& r) { return r.lhs == lhs && r.rhs == rhs; });
    if (!seen) spec.rules.push_back({lhs, rhs});
  }
  Polynomial grothendieck = embed_poly(center.fundamental.poly(), table) * Rational(c % 2 == 1 ? 1 : -1);
  for (int i = 1; i < c; ++i) {
    const Polynomial ni = lift_to_total(center.normal.chern(i).poly());
    grothendieck -= ni * dp.pow(static_cast<unsigned>(c - i)) * Rational(i % 2 == 0 ? 1 : -1);
  }
  spec.rules.push_back({Monomial::variable(di, static_cast<std::uint32_t>(c), *table), grothendieck});

  spec.name = "Bl(" + y->name() + "," + x->name() + ")";
  spec.key = "Bl(" + y->key() + "|" + x->key() + "|" + center.fundamental.str() + "|" +
             join_images(center.pullback.images()) + "|" + center.normal.total_chern().str() + "|" + exceptional + ")";
  auto total = std::make_shared<const Variety>(std::move(spec));

  auto d_bundle = make_projective_bundle(center.normal, fiber, "P(N)");
  std::vector<Polynomial> restriction;
  for (std::size_t g = 0; g < y->table()->size(); ++g) {
    restriction.push_back(d_bundle.pullback.apply_raw(center.pullback.images()[g]));
  }
  restriction.push_back(-d_bundle.hyperplane().poly());
  Blowup b{center, total, RingMap::inclusion(y, total), d_bundle,
           RingMap(total, d_bundle.total, std::move(restriction))};

  // Self-tests: rank of the presentation, the key formula j^*j_* = -z,
  // excess intersection and the projection formula.
  const std::string where = "blowup of " + y->name() + " along " + x->name();
  const std::size_t expected =
      y->normal_basis().size() + static_cast<std::size_t>(c - 1) * x->normal_basis().size();
  if (total->normal_basis().size() != expected) {
    throw ConstructionError(where + ": presentation has rank " + std::to_string(total->normal_basis().size()) +
                            ", expected " + std::to_string(expected));
  }
  const Class z = d_bundle.hyperplane();
  for (const auto& m : d_bundle.total->normal_basis()) {
    const Class gamma(d_bundle.total, Polynomial::monomial(d_bundle.total->table(), m, Rational(1)));
    if (!(b.restrict(b.push_from_exceptional(gamma)) == -(z * gamma))) {
      throw ConstructionError(where + ": j^*j_* differs from -z on " + gamma.str());
    }
  }
  const Bundle q = center.normal.pullback(d_bundle.pullback).quotient(-z);
  if (!(b.push_from_exceptional(q.chern(c - 1)) == b.pull(center.fundamental))) {
    throw ConstructionError(where + ": excess intersection check failed");
  }
  for (std::size_t g = 0; g < y->table()->size(); ++g) {
    const Class gen(y, Polynomial::variable(y->table(), g));
    for (const auto& m : total->normal_basis()) {
      const Class basis(total, Polynomial::monomial(table, m, Rational(1)));
      if (!(b.push(b.pull(gen) * basis) == gen * b.push(basis))) {
        throw ConstructionError(where + ": projection formula fails on " + basis.str());
      }
    }
  }
  return b;
}

// ----------------------------------------------------------------- sections

const Embedding& SectionModel::embedding() const {
  if (!zero_locus) throw NotApplicable("the section vanishes nowhere; its zero locus is empty");
  return *zero_locus;
}

SectionModel section_model(const Bundle& v, std::vector<std::size_t> roots) {
  std::set<std::size_t> seen;
  for (auto r : roots) {
    if (r >= v.roots().size()) throw DomainError("section root " + std::to_string(r + 1) + " out of range");
    if (!seen.insert(r).second) throw DomainError("section root " + std::to_string(r + 1) + " listed twice");
  }
  if (!v.removed().empty()) throw UnsupportedModel("sections of virtual bundles are not modelled");
  const VarietyPtr& y = v.base();
  const auto m = y->projective_space();
  if (!m) throw UnsupportedModel("zero loci are only modelled on projective spaces, not on " + y->name());
  SectionModel s{v, std::move(roots), false, std::nullopt};
  const Class h = Class::generator(y, (*y->table())[0].name);
  int cut = 0;
  for (auto r : s.roots) {
    const Class& root = v.roots()[r];
    if (root.is_zero()) {
      s.empty = true;
    } else if (root == h) {
      ++cut;
    } else {
      throw UnsupportedModel("zero locus of a section of a line bundle with c1 = " + root.str() +
                             " is not a linear subspace");
    }
  }
  if (cut > *m) s.empty = true;
  if (!s.empty) s.zero_locus = linear_subspace(y, *m - cut);
  return s;
}

}  // namespace se::chow
