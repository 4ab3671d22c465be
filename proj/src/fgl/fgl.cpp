#include "sqrteuler/fgl/fgl.hpp"

#include <algorithm>

#include "sqrteuler/arith/series.hpp"
#include "sqrteuler/chow/models.hpp"
#include "sqrteuler/error.hpp"

namespace se::fgl {

using arith::Monomial;

namespace {

VarTablePtr law_table(const std::vector<std::string>& params) {
  std::vector<arith::Variable> vars{{"u", 1}, {"v", 1}, {"w", 1}};
  for (const auto& p : params) vars.push_back({p, 0});
  return arith::VarTable::make(std::move(vars));
}

// Images sending u -> a, v -> b, w -> w and parameters to themselves.
std::vector<std::optional<Polynomial>> images(const VarTablePtr& t, const Polynomial& a, const Polynomial& b, int cap) {
  std::vector<std::optional<Polynomial>> out{a, b};
  for (std::size_t i = 2; i < t->size(); ++i) out.emplace_back(Polynomial::variable(t, i, cap));
  return out;
}

}  // namespace

FormalGroupLaw::FormalGroupLaw(std::string name, VarTablePtr table, Polynomial series, int cap)
    : name_(std::move(name)), table_(std::move(table)), series_(series.with_cap(cap + 1)), cap_(cap) {
  if (cap < 1) throw DomainError("formal group law cap must be at least 1");
}

std::vector<arith::Variable> FormalGroupLaw::parameters() const {
  return {table_->variables().begin() + 3, table_->variables().end()};
}

Polynomial FormalGroupLaw::evaluate(const Polynomial& a, const Polynomial& b) const {
  return arith::substitute(series_, images(table_, a, b, precision()), table_, precision());
}

Polynomial FormalGroupLaw::compose(const Polynomial& series_in_u, const Polynomial& x) const {
  return arith::substitute(series_in_u, images(table_, x, v(), precision()), table_, precision());
}

bool FormalGroupLaw::has_unit() const {
  const Polynomial zero(table_, precision());
  return evaluate(u(), zero) == u() && evaluate(zero, v()) == v();
}

bool FormalGroupLaw::is_symmetric() const { return evaluate(v(), u()) == series_; }

bool FormalGroupLaw::is_associative() const {
  return evaluate(evaluate(u(), v()), w()) == evaluate(u(), evaluate(v(), w()));
}

FormalGroupLaw FormalGroupLaw::additive(int cap) {
  const auto t = law_table({});
  return FormalGroupLaw("additive", t, Polynomial::variable(t, "u") + Polynomial::variable(t, "v"), cap);
}

FormalGroupLaw FormalGroupLaw::multiplicative(int cap, const std::string& parameter) {
  const auto t = law_table({parameter});
  const auto uu = Polynomial::variable(t, "u");
  const auto vv = Polynomial::variable(t, "v");
  return FormalGroupLaw("multiplicative", t, uu + vv - Polynomial::variable(t, parameter) * uu * vv, cap);
}

FormalGroupLaw FormalGroupLaw::from_logarithm(const std::vector<Rational>& coefficients, int cap) {
  const auto t = law_table({});
  const auto x = arith::VarTable::make({{"x", 1}});
  const int p = cap + 1;
  // log as a series in x, then its compositional inverse by fixed point:
  // e = x - (log(e) - e).
  Polynomial log = Polynomial::variable(x, "x", p);
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    log.add_term(Monomial::variable(0, static_cast<std::uint32_t>(k + 2), *x), coefficients[k]);
  }
  auto compose1 = [&](const Polynomial& outer, const Polynomial& inner) {
    return arith::substitute(outer, {inner}, x, p);
  };
  Polynomial exp = Polynomial::variable(x, "x", p);
  for (int i = 0; i <= p; ++i) exp = exp - (compose1(log, exp) - Polynomial::variable(x, "x", p));
  const auto uu = Polynomial::variable(t, "u", p);
  const auto vv = Polynomial::variable(t, "v", p);
  const Polynomial sum = arith::substitute(log, {uu}, t, p) + arith::substitute(log, {vv}, t, p);
  return FormalGroupLaw("logarithmic", t, arith::substitute(exp, {sum}, t, p), cap);
}

FormalGroupLaw FormalGroupLaw::from_coefficients(const std::map<std::pair<int, int>, Rational>& coefficients, int cap,
                                                 const std::string& name) {
  const auto t = law_table({});
  Polynomial f = Polynomial::variable(t, "u") + Polynomial::variable(t, "v");
  for (const auto& [ij, c] : coefficients) {
    if (ij.first < 1 || ij.second < 1) throw DomainError("coefficient table violates F(u, 0) = u");
    f.add_term(Monomial({{0, static_cast<std::uint32_t>(ij.first)}, {1, static_cast<std::uint32_t>(ij.second)}}, *t),
               c);
  }
  FormalGroupLaw law(name, t, f, cap);
  if (!law.is_symmetric()) throw DomainError("coefficient table is not symmetric");
  if (!law.is_associative()) {
    throw DomainError("coefficient table is not associative up to degree " + std::to_string(cap + 1));
  }
  return law;
}

Polynomial fgl_inverse(const FormalGroupLaw& f) {
  Polynomial chi = -f.u();
  for (int i = 0; i <= f.precision(); ++i) chi = chi - f.evaluate(f.u(), chi);
  return chi;
}

Polynomial g_series(const FormalGroupLaw& f) {
  const Polynomial chi = fgl_inverse(f);
  Polynomial g(f.table(), f.cap());
  for (const auto& [m, c] : chi.terms()) {
    if (m.exponent(0) == 0) throw DomainError("inverse series has a term without u");
    g.add_term(m.quotient(Monomial::variable(0, 1, *f.table())), c);
  }
  return g;
}

HSeries h_series(std::size_t n, const FormalGroupLaw& f) {
  if (n < 1) throw DomainError("h needs n >= 1");
  const auto tables = arith::symmetric_tables(n, f.parameters());
  const int cap = f.cap();
  const Polynomial g = g_series(f);
  Polynomial prod = Polynomial::constant(tables.roots, Rational(n % 2 == 0 ? 1 : -1), cap);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::optional<Polynomial>> im{Polynomial::variable(tables.roots, i, cap), Polynomial(tables.roots, cap),
                                              Polynomial(tables.roots, cap)};
    for (std::size_t p = 0; p < f.parameters().size(); ++p) {
      im.emplace_back(Polynomial::variable(tables.roots, n + p, cap));
    }
    prod = arith::poly_mul(prod, arith::substitute(g, im, tables.roots, cap), cap);
  }
  return {tables, arith::to_elementary_symmetric(prod, tables)};
}

HSeries sqrt_h_series(std::size_t n, const FormalGroupLaw& f) {
  HSeries h = h_series(n, f);
  h.value = arith::series_sqrt(h.value, f.cap());
  return h;
}

chow::VarietyPtr coefficient_ring(const chow::VarietyPtr& base, const FormalGroupLaw& f) {
  const auto params = f.parameters();
  if (params.empty()) return base;
  const std::size_t k = base->parameter_count();
  if (k == params.size()) {
    bool same = true;
    const auto& vars = base->table()->variables();
    for (std::size_t i = 0; i < k; ++i) same = same && vars[vars.size() - k + i].name == params[i].name;
    if (same) return base;
  }
  std::vector<std::string> names;
  for (const auto& p : params) names.push_back(p.name);
  return chow::with_parameters(base, names);
}

chow::Class promote(const chow::Class& c, const chow::VarietyPtr& target) {
  if (chow::same_variety(c.variety(), target)) return c;
  return chow::RingMap::inclusion(c.variety(), target)(c);
}

namespace {

// Images for the law's parameters inside `ring`, which ends with them.
void append_parameters(std::vector<std::optional<Polynomial>>& im, const chow::VarietyPtr& ring, const FormalGroupLaw& f) {
  const std::size_t k = f.parameters().size();
  const std::size_t offset = ring->table()->size() - k;
  for (std::size_t p = 0; p < k; ++p) im.emplace_back(Polynomial::variable(ring->table(), offset + p));
}

}  // namespace

chow::Class evaluate_series(const Polynomial& series_in_u, const chow::Class& x, const FormalGroupLaw& f) {
  const auto ring = coefficient_ring(x.variety(), f);
  const Polynomial zero(ring->table());
  std::vector<std::optional<Polynomial>> im{promote(x, ring).poly(), zero, zero};
  append_parameters(im, ring, f);
  return chow::Class(ring, arith::substitute(series_in_u, im, ring->table(), ring->dimension()).with_cap(std::nullopt));
}

std::vector<chow::Class> dual_roots(const chow::Bundle& v, const FormalGroupLaw& f) {
  if (!v.removed().empty()) throw UnsupportedModel("dual of a virtual bundle");
  const Polynomial chi = fgl_inverse(f);
  std::vector<chow::Class> roots;
  for (const auto& r : v.roots()) roots.push_back(evaluate_series(chi, r, f));
  return roots;
}

chow::Class sqrt_h_apply(const chow::Bundle& v, const FormalGroupLaw& f) {
  if (!v.removed().empty()) throw UnsupportedModel("sqrt_h of a virtual bundle");
  if (v.roots().empty()) return chow::Class::one(coefficient_ring(v.base(), f));
  return sqrt_h_apply(v.roots(), f);
}

chow::Class sqrt_h_apply(const std::vector<chow::Class>& roots, const FormalGroupLaw& f) {
  if (roots.empty()) throw DomainError("sqrt_h needs at least one root or a base");
  const auto ring = coefficient_ring(roots.front().variety(), f);
  if (f.cap() < ring->dimension()) {
    throw DomainError("series cap " + std::to_string(f.cap()) + " is below the dimension of " + ring->name());
  }
  const std::size_t n = roots.size();
  std::vector<chow::Class> e(n + 1, chow::Class::zero(ring));
  e[0] = chow::Class::one(ring);
  for (const auto& r : roots) {
    const chow::Class x = promote(r, ring);
    for (std::size_t k = n; k >= 1; --k) e[k] += x * e[k - 1];
  }
  const HSeries sh = sqrt_h_series(n, f);
  std::vector<std::optional<Polynomial>> im;
  for (std::size_t i = 1; i <= n; ++i) im.emplace_back(e[i].poly());
  append_parameters(im, ring, f);
  return chow::Class(ring, arith::substitute(sh.value, im, ring->table(), ring->dimension()).with_cap(std::nullopt));
}

IsotropicComparison compare_maximal_isotropics(const chow::Bundle& v, const std::vector<std::size_t>& swapped,
                                               const FormalGroupLaw& f) {
  if (!v.removed().empty()) throw UnsupportedModel("isotropic comparison on a virtual bundle");
  const auto ring = coefficient_ring(v.base(), f);
  const Polynomial chi = fgl_inverse(f);
  std::vector<chow::Class> first;
  for (const auto& r : v.roots()) first.push_back(promote(r, ring));
  std::vector<chow::Class> second = first;
  for (auto i : swapped) {
    if (i >= second.size()) throw DomainError("swapped root index out of range");
    second[i] = evaluate_series(chi, v.roots()[i], f);
  }
  auto twisted_euler = [&](const std::vector<chow::Class>& roots) {
    chow::Class e = chow::Class::one(ring);
    for (const auto& r : roots) e *= r;
    return roots.empty() ? e : sqrt_h_apply(roots, f) * e;
  };
  return {twisted_euler(first), twisted_euler(second), swapped.size() % 2 == 0};
}

}  // namespace se::fgl
