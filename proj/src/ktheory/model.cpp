#include "sqrteuler/ktheory/model.hpp"

#include "sqrteuler/arith/series.hpp"
#include "sqrteuler/error.hpp"

namespace se::ktheory {

using arith::Monomial;

namespace {

// One-variable series table for the Chern character helpers.
const VarTablePtr& series_table() {
  static const VarTablePtr t = arith::VarTable::make({{"x", 1}});
  return t;
}

// Coefficients of x / (1 - e^{-x}) up to degree cap.
Polynomial todd_series(int cap) {
  Polynomial q(series_table(), cap);
  for (int k = 0; k <= cap; ++k) {
    // (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
    q.add_term(Monomial::variable(0, static_cast<std::uint32_t>(k), *series_table()),
               arith::inverse_factorial(k + 1) * Rational(k % 2 == 0 ? 1 : -1));
  }
  return arith::series_inverse(q, cap);
}

}  // namespace

Class todd_root(const Class& x) { return chow::evaluate_series(todd_series(x.variety()->dimension()), x); }

Class todd(const Bundle& b) {
  Class out = Class::one(b.base());
  for (const auto& r : b.roots()) out *= todd_root(r);
  for (const auto& q : b.removed()) out *= chow::inverse_class(todd_root(q));
  return out;
}

Class ch_euler(const Bundle& v) {
  const auto& base = v.base();
  // lambda_t(V^dual) = prod (1 + t e^{-x}) as a list of t-coefficients.
  std::vector<Class> p{Class::one(base)};
  for (const auto& r : v.roots()) {
    const Class e = chow::exp_class(-r);
    p.push_back(Class::zero(base));
    for (std::size_t k = p.size() - 1; k >= 1; --k) p[k] += e * p[k - 1];
  }
  // Divide by (1 + t e^{-q}) for every removed root.
  for (const auto& q : v.removed()) {
    const Class e = chow::exp_class(-q);
    std::vector<Class> quotient(p.size(), Class::zero(base));
    for (std::size_t k = 0; k < p.size(); ++k) {
      quotient[k] = p[k];
      if (k > 0) quotient[k] -= e * quotient[k - 1];
    }
    p = std::move(quotient);
  }
  Class out = Class::zero(base);
  for (int k = 0; k <= v.rank() && k < static_cast<int>(p.size()); ++k) {
    out += k % 2 == 0 ? p[static_cast<std::size_t>(k)] : -p[static_cast<std::size_t>(k)];
  }
  return out;
}

Class ch_sqrt_euler(const orth::OrthBundle& f) {
  const Bundle& v = f.positive_part();
  if (!v.removed().empty()) {
    // sqrt(det V) e(V) for a quotient: e^{c1/2} times the Euler class.
    return chow::exp_class(v.chern(1) * Rational(1, 2)) * ch_euler(v) * Rational(f.sign());
  }
  Class out = Class::constant(v.base(), Rational(f.sign()));
  for (const auto& r : v.roots()) {
    const Class half = r * Rational(1, 2);
    out *= chow::exp_class(half) - chow::exp_class(-half);
  }
  return out;
}

Class ch_gysin_push(const chow::Embedding& e, const Class& y) {
  return e.push(y * chow::inverse_class(todd(e.normal)));
}

// ---------------------------------------------------------------- localized

KLocalizedSqrtEuler::KLocalizedSqrtEuler(orth::OrthBundle f, chow::SectionModel s)
    : bundle_(f), chow_(std::move(f), std::move(s)) {}

KDecomposition KLocalizedSqrtEuler::canonical(const Class& xi) const {
  if (chow_.localized().blowup() == nullptr) return {Class::zero(xi.variety()), std::nullopt, center().pull(xi)};
  return {xi, std::nullopt, Class::zero(center().source)};
}

std::optional<Class> KLocalizedSqrtEuler::alpha(const KDecomposition& dec) const {
  const auto* b = chow_.localized().blowup();
  if (b == nullptr) return std::nullopt;
  Class a = b->pull(dec.base);
  if (dec.gamma) {
    // The normal bundle of D is O(D)|_D with c1 = -z.
    const Class z = b->exceptional.hyperplane();
    a += b->push_from_exceptional(*dec.gamma * chow::inverse_class(todd_root(-z)));
  }
  return a;
}

void KLocalizedSqrtEuler::check(const Class& xi, const KDecomposition& dec) const {
  const auto* b = chow_.localized().blowup();
  Class on_x = dec.beta;
  if (dec.gamma) {
    if (b == nullptr) throw DomainError("decomposition has an exceptional term but nothing is blown up");
    const Class z = b->exceptional.hyperplane();
    const Bundle relative = b->center.normal.pullback(b->exceptional.pullback).twist(z);
    on_x += b->push_to_center(*dec.gamma * todd(relative));
  }
  const Class total = dec.base + ch_gysin_push(center(), on_x);
  if (b == nullptr && !dec.base.is_zero()) throw DomainError("decomposition has an alpha term but nothing is blown up");
  if (!(total == xi)) {
    throw DomainError("inconsistent K-theoretic decomposition: it pushes forward to " + total.str() + ", not " +
                      xi.str());
  }
}

Class KLocalizedSqrtEuler::twisted_reduced_class() const {
  const auto* b = chow_.localized().blowup();
  if (b == nullptr) throw NotApplicable("nothing is blown up");
  const Bundle v = bundle_.positive_part().pullback(b->pullback);
  const Bundle quotient = v.quotient(b->exceptional_class());
  return chow::exp_class(v.chern(1) * Rational(1, 2)) * ch_euler(quotient) * Rational(bundle_.sign());
}

Class KLocalizedSqrtEuler::apply(const Class& xi, const KDecomposition& dec) const {
  check(xi, dec);
  const Class beta_term = ch_sqrt_euler(bundle_.pullback(center().pullback)) * dec.beta;
  const auto a = alpha(dec);
  if (!a) return beta_term;
  const auto* b = chow_.localized().blowup();
  const Class z = b->exceptional.hyperplane();
  const Bundle relative = b->center.normal.pullback(b->exceptional.pullback).twist(z);
  const Class on_d = b->restrict(twisted_reduced_class() * *a) * todd(relative);
  return b->push_to_center(on_d) + beta_term;
}

// ------------------------------------------------------------ augmentation

AugmentationForm to_augmentation(const Class& ch) {
  const auto& v = ch.variety();
  const auto& table = v->table();
  std::vector<std::string> names;
  for (const auto& var : table->variables()) {
    if (var.degree != 1) throw UnsupportedModel("augmentation coordinates need degree-1 generators");
    names.push_back("l_" + var.name);
  }
  KRing ring(names, v->dimension());
  Polynomial out = ring.zero();
  Class rest = ch;
  // ch(l_g) = 1 - e^{g} starts with -g, so l-monomials are triangular over
  // normal monomials.
  std::vector<Class> ch_l;
  for (std::size_t g = 0; g < table->size(); ++g) {
    const Class gen(v, Polynomial::variable(table, g));
    ch_l.push_back(Class::one(v) - chow::exp_class(gen));
  }
  for (int deg = 0; deg <= v->dimension(); ++deg) {
    const Class part = rest.part(deg);
    for (const auto& [m, c] : part.poly().terms()) {
      const Rational coeff = c * Rational(deg % 2 == 0 ? 1 : -1);
      out.add_term(Monomial(m.entries(), *ring.table()), coeff);
      Class image = Class::constant(v, coeff);
      for (const auto& [var, exp] : m.entries()) image *= ch_l[var].pow(exp);
      rest -= image;
    }
  }
  if (!rest.is_zero()) throw DomainError("augmentation conversion did not terminate cleanly");
  return {ring, out};
}

}  // namespace se::ktheory
