#include "sqrteuler/chow/variety.hpp"

#include <functional>

#include "sqrteuler/error.hpp"

namespace se::chow {

Variety::Variety(Spec spec) : spec_(std::move(spec)) {
  if (!spec_.table) throw StructuralError("variety '" + spec_.name + "' without generator table");
  if (spec_.dimension < 0) throw DomainError("negative dimension for '" + spec_.name + "'");
}

std::size_t Variety::parameter_count() const {
  std::size_t count = 0;
  for (const auto& v : spec_.table->variables()) {
    if (v.degree == 0) ++count;
  }
  return count;
}

Polynomial Variety::normal_monomial(const Monomial& m) const {
  Polynomial out(spec_.table);
  if (m.degree() > spec_.dimension) return out;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
  }
  bool reduced = false;
  for (const auto& rule : spec_.rules) {
    if (!rule.lhs.divides(m)) continue;
    const Monomial rest = m.quotient(rule.lhs);
    for (const auto& [t, c] : rule.rhs.terms()) out += normal_monomial(t * rest) * c;
    reduced = true;
    break;
  }
  if (!reduced) out.add_term(m, Rational(1));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.emplace(m, out);
  return out;
}

Polynomial Variety::normal_form(const Polynomial& p) const {
  if (!arith::same_table(p.table(), spec_.table)) {
    throw StructuralError("class does not live on '" + spec_.name + "'");
  }
  Polynomial out(spec_.table);
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() > spec_.dimension) continue;
    out += normal_monomial(m) * c;
  }
  return out;
}

std::vector<Monomial> Variety::normal_basis() const {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < spec_.table->size(); ++i) {
    if ((*spec_.table)[i].degree > 0) vars.push_back(i);
  }
  std::vector<Monomial> out;
  std::vector<Monomial::Entry> entries;
  std::function<void(std::size_t, int)> walk = [&](std::size_t pos, int budget) {
    if (pos == vars.size()) {
      const Monomial m(entries, *spec_.table);
      for (const auto& rule : spec_.rules) {
        if (rule.lhs.divides(m)) return;
      }
      out.push_back(m);
      return;
    }
    const int deg = (*spec_.table)[vars[pos]].degree;
    for (int e = 0; e * deg <= budget; ++e) {
      entries.emplace_back(static_cast<std::uint32_t>(vars[pos]), static_cast<std::uint32_t>(e));
      walk(pos + 1, budget - e * deg);
      entries.pop_back();
    }
  };
  walk(0, spec_.dimension);
  std::sort(out.begin(), out.end());
  return out;
}

Polynomial restrict_to_prefix(const Polynomial& p, const VarTablePtr& base) {
  Polynomial out(base);
  for (const auto& [m, c] : p.terms()) {
    bool inside = true;
    for (const auto& entry : m.entries()) inside = inside && entry.first < base->size();
    if (inside) out.add_term(Monomial(m.entries(), *base), c);
  }
  return out;
}

Polynomial Variety::push_to_base(const Polynomial& normal) const {
  switch (spec_.kind) {
    case Kind::ProjectiveBundle: {
      const std::size_t h = spec_.base->table()->size();
      const auto top = static_cast<std::uint32_t>(spec_.step_data - 1);
      Polynomial out(spec_.base->table());
      for (const auto& [m, c] : normal.terms()) {
        if (m.exponent(h) != top) continue;
        std::vector<Monomial::Entry> rest;
        for (const auto& entry : m.entries()) {
          if (entry.first != h) rest.push_back(entry);
        }
        out.add_term(Monomial(rest, *spec_.base->table()), c);
      }
      return out;
    }
    case Kind::Blowup:
      return restrict_to_prefix(normal, spec_.base->table());
    case Kind::Parameters:
      throw UnsupportedModel("cannot push down from the parameter extension '" + spec_.name + "'");
    case Kind::Point:
      break;
  }
  throw StructuralError("the point has no base");
}

Rational Variety::integrate(const Polynomial& p) const {
  const Polynomial nf = normal_form(p);
  if (spec_.kind == Kind::Point) return nf.constant_term();
  if (spec_.kind == Kind::Parameters) throw UnsupportedModel("integration over a parameter extension");
  return spec_.base->integrate(push_to_base(nf));
}

bool same_variety(const VarietyPtr& a, const VarietyPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->key() == b->key();
}

void require_same_variety(const VarietyPtr& a, const VarietyPtr& b, const char* context) {
  if (!same_variety(a, b)) {
    throw StructuralError(std::string(context) + ": classes live on different varieties (" +
                          (a ? a->name() : "none") + " vs " + (b ? b->name() : "none") + ")");
  }
}

// ------------------------------------------------------------------ Class

Class::Class(VarietyPtr variety, const Polynomial& p)
    : variety_(std::move(variety)), poly_(variety_->normal_form(p)) {}

Class::Class(VarietyPtr variety, Polynomial p, Normalized) : variety_(std::move(variety)), poly_(std::move(p)) {}

Class Class::zero(VarietyPtr variety) {
  Polynomial p(variety->table());
  return Class(std::move(variety), std::move(p), Normalized{});
}

Class Class::constant(VarietyPtr variety, const Rational& c) {
  return Class(variety, Polynomial::constant(variety->table(), c));
}

Class Class::generator(VarietyPtr variety, std::string_view name) {
  return Class(variety, Polynomial::variable(variety->table(), name));
}

Class Class::part(int degree) const { return Class(variety_, poly_.homogeneous_part(degree), Normalized{}); }

Class Class::operator-() const { return Class(variety_, -poly_, Normalized{}); }

Class& Class::operator+=(const Class& rhs) {
  require_same_variety(variety_, rhs.variety_, "addition");
  poly_ += rhs.poly_;
  return *this;
}

Class& Class::operator-=(const Class& rhs) {
  require_same_variety(variety_, rhs.variety_, "subtraction");
  poly_ -= rhs.poly_;
  return *this;
}

Class& Class::operator*=(const Class& rhs) {
  require_same_variety(variety_, rhs.variety_, "multiplication");
  poly_ = variety_->normal_form(arith::poly_mul(poly_, rhs.poly_, variety_->dimension()).with_cap(std::nullopt));
  return *this;
}

Class& Class::operator*=(const Rational& c) {
  poly_ *= c;
  return *this;
}

Class Class::pow(unsigned exponent) const {
  Class result = one(variety_);
  Class base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const Class& a, const Class& b) {
  return same_variety(a.variety_, b.variety_) && a.poly_ == b.poly_;
}

// ---------------------------------------------------------------- RingMap

RingMap::RingMap(VarietyPtr source, VarietyPtr target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_->table()->size()) {
    throw StructuralError("ring map from '" + source_->name() + "' needs one image per generator");
  }
  for (auto& image : images_) image = target_->normal_form(image);
}

RingMap RingMap::identity(const VarietyPtr& v) { return inclusion(v, v); }

RingMap RingMap::inclusion(const VarietyPtr& source, const VarietyPtr& target) {
  if (!source->table()->is_prefix_of(*target->table())) {
    throw StructuralError("'" + source->name() + "' does not include into '" + target->name() + "'");
  }
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < source->table()->size(); ++i) images.push_back(Polynomial::variable(target->table(), i));
  return RingMap(source, target, std::move(images));
}

Polynomial RingMap::apply_raw(const Polynomial& p) const {
  std::vector<std::optional<Polynomial>> images(images_.begin(), images_.end());
  return target_->normal_form(
      arith::substitute(p, images, target_->table(), target_->dimension()).with_cap(std::nullopt));
}

Class RingMap::operator()(const Class& c) const {
  require_same_variety(c.variety(), source_, "ring map");
  return Class(target_, apply_raw(c.poly()));
}

RingMap RingMap::then(const RingMap& next) const {
  require_same_variety(target_, next.source_, "ring map composition");
  std::vector<Polynomial> images;
  for (const auto& image : images_) images.push_back(next.apply_raw(image));
  return RingMap(source_, next.target_, std::move(images));
}

// ----------------------------------------------------------------- series

Class evaluate_series(const Polynomial& series, const Class& x) {
  const auto& v = x.variety();
  Class out = Class::zero(v);
  Class power = Class::one(v);
  for (int k = 0; k <= v->dimension(); ++k) {
    const Rational c = series.coefficient(Monomial::variable(0, static_cast<std::uint32_t>(k), *series.table()));
    if (k > 0) power *= x;
    if (!c.is_zero()) out += power * c;
  }
  return out;
}

Class exp_class(const Class& x) {
  if (!x.part(0).is_zero()) throw DomainError("exp of a class with nonzero degree-0 part");
  const auto& v = x.variety();
  Class out = Class::one(v);
  Class power = Class::one(v);
  for (int k = 1; k <= v->dimension(); ++k) {
    power *= x;
    if (power.is_zero()) break;
    out += power * arith::inverse_factorial(k);
  }
  return out;
}

Class inverse_class(const Class& x) {
  const Class x0 = x.part(0);
  if (!x0.poly().is_constant() || x0.is_zero()) throw DomainError("class " + x.str() + " is not invertible");
  const Rational inv0 = Rational(1) / x0.poly().constant_term();
  const auto& v = x.variety();
  const Class y = Class::one(v) - x * inv0;
  Class out = Class::one(v);
  Class power = Class::one(v);
  for (int k = 1; k <= v->dimension(); ++k) {
    power *= y;
    if (power.is_zero()) break;
    out += power;
  }
  return out * inv0;
}

}  // namespace se::chow
