#include "sqrteuler/orth/orth.hpp"

#include <algorithm>
#include <set>

#include "sqrteuler/error.hpp"

namespace se::orth {

using arith::Polynomial;
using arith::Rational;

namespace {

bool same_bundle(const Bundle& a, const Bundle& b) {
  if (!chow::same_variety(a.base(), b.base())) return false;
  return a.roots() == b.roots() && a.removed() == b.removed();
}

void require_section_of(const Bundle& v, const SectionModel& s) {
  if (!same_bundle(v, s.bundle)) {
    throw UnsupportedModel("the section is not valued in the positive maximal isotropic subbundle");
  }
}

}  // namespace

OrthBundle::OrthBundle(Bundle positive, int sign) : positive_(std::move(positive)), sign_(sign) {
  if (sign != 1 && sign != -1) throw DomainError("orientation sign must be +1 or -1");
}

Class sqrt_euler(const OrthBundle& f) { return f.positive_part().euler() * Rational(f.sign()); }

Class euler(const OrthBundle& f) { return f.underlying().euler(); }

bool sqrt_euler_squared_check(const OrthBundle& f) {
  const Class s = sqrt_euler(f);
  return s * s == euler(f) * Rational(f.half_rank() % 2 == 0 ? 1 : -1);
}

Bundle isotropic_sub(const OrthBundle& f, const std::vector<std::size_t>& k) {
  std::set<std::size_t> seen;
  for (auto i : k) {
    if (i >= f.positive_part().roots().size() || !seen.insert(i).second) {
      throw DomainError("isotropic subbundle is not a sub-multiset of the roots of V");
    }
  }
  return f.positive_part().select(k);
}

OrthBundle isotropic_reduce(const OrthBundle& f, const std::vector<std::size_t>& k) {
  isotropic_sub(f, k);
  return OrthBundle(f.positive_part().without(k), f.sign());
}

OrthBundle isotropic_reduce(const OrthBundle& f, const Bundle& k) {
  chow::require_same_variety(f.base(), k.base(), "isotropic reduction");
  if (!k.removed().empty()) throw DomainError("isotropic subbundle must be split");
  std::vector<std::size_t> indices;
  const auto& roots = f.positive_part().roots();
  for (const auto& r : k.roots()) {
    bool found = false;
    for (std::size_t i = 0; i < roots.size() && !found; ++i) {
      if (roots[i] == r && std::find(indices.begin(), indices.end(), i) == indices.end()) {
        indices.push_back(i);
        found = true;
      }
    }
    if (!found) throw DomainError("root " + r.str() + " of K is not a root of V");
  }
  return isotropic_reduce(f, indices);
}

// ------------------------------------------------------- localized classes

LocalizedSqrtEuler::LocalizedSqrtEuler(OrthBundle f, SectionModel s)
    : bundle_(std::move(f)), euler_((require_section_of(bundle_.positive_part(), s), std::move(s))) {}

OrthBundle LocalizedSqrtEuler::reduced() const { return OrthBundle(euler_.quotient_bundle(), bundle_.sign()); }

Class LocalizedSqrtEuler::first_term(const Decomposition& dec) const {
  if (!dec.alpha) return Class::zero(center().source);
  const Class a = sqrt_euler(reduced());
  const auto* b = euler_.blowup();
  return b->push_to_center(b->restrict(a * *dec.alpha));
}

Class LocalizedSqrtEuler::second_term(const Decomposition& dec) const {
  return sqrt_euler(bundle_.pullback(center().pullback)) * dec.beta;
}

Class LocalizedSqrtEuler::apply(const Class& xi, const Decomposition& dec) const {
  euler_.check(xi, dec);
  return first_term(dec) + second_term(dec);
}

Class LocalizedSqrtEuler::apply_lci(const Class& xi) const {
  return euler_.apply_lci(xi) * Rational(bundle_.sign());
}

// ------------------------------------------------------------ two sections

TwoSectionLocalized::TwoSectionLocalized(SectionModel s, SectionModel t, int sign)
    : t_(std::move(t)), sign_(sign), euler_(std::move(s)) {
  const auto& s_model = euler_.section();
  if (!same_bundle(s_model.bundle, t_.bundle)) throw UnsupportedModel("s and t must be sections of the same bundle");
  for (auto r : t_.roots) {
    if (std::find(s_model.roots.begin(), s_model.roots.end(), r) != s_model.roots.end()) {
      throw IndependenceError("s and t share the summand " + std::to_string(r + 1));
    }
  }
  if (sign != 1 && sign != -1) throw DomainError("orientation sign must be +1 or -1");
}

TwoSectionResult TwoSectionLocalized::apply(const Class& xi, const Decomposition& dec) const {
  euler_.check(xi, dec);
  const chow::Embedding& x_in_y = euler_.center();
  const VarietyPtr& x = x_in_y.source;
  const Bundle v_on_x = x_in_y.pull(t_.bundle);
  const SectionModel t_on_x = t_.empty ? SectionModel{v_on_x, t_.roots, true, std::nullopt}
                                       : chow::section_model(v_on_x, t_.roots);
  if (t_on_x.empty) return {Class::zero(x), chow::identity_embedding(x), true};
  const chow::Embedding& w_in_x = t_on_x.embedding();
  const Rational sign(sign_);

  Class value = w_in_x.pull(v_on_x.without(t_.roots).euler() * dec.beta) * sign;
  if (dec.alpha) {
    const chow::Blowup& b = *euler_.blowup();
    const Bundle rest = t_.bundle.without(t_.roots).pullback(b.pullback).quotient(b.exceptional_class());
    const Class on_d = b.restrict(rest.euler() * *dec.alpha);
    const auto d_w = chow::make_projective_bundle(w_in_x.pull(x_in_y.normal), "z", "P(N|W)");
    std::vector<Polynomial> images;
    for (const auto& image : w_in_x.pullback.images()) images.push_back(d_w.pullback.apply_raw(image));
    images.push_back(d_w.hyperplane().poly());
    const chow::RingMap to_d_w(b.exceptional.total, d_w.total, std::move(images));
    value += d_w.push(to_d_w(on_d)) * sign;
  }
  return {value, w_in_x, false};
}

Class TwoSectionLocalized::push_to_center(const TwoSectionResult& r) const { return r.to_center.push(r.value); }

TwoSectionResult sqrt_euler_two_sections(const OrthBundle& f, const SectionModel& s, const SectionModel& t,
                                         const Class& xi, const std::optional<Decomposition>& dec) {
  require_section_of(f.positive_part(), s);
  require_section_of(f.positive_part(), t);
  const TwoSectionLocalized two(s, t, f.sign());
  return dec ? two.apply(xi, *dec) : two.apply(xi);
}

TwoSectionResult localized_euler_two_sections(const SectionModel& s, const SectionModel& t, const Class& xi,
                                              const std::optional<Decomposition>& dec) {
  const TwoSectionLocalized two(s, t, 1);
  return dec ? two.apply(xi, *dec) : two.apply(xi);
}

// --------------------------------------------------------------- vanishing

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed(); });
}

VerificationReport vanishing_by_unit_section(const OrthBundle& f, const UnitPairingSection& t,
                                             const std::optional<SectionModel>& s) {
  if (f.half_rank() == 0) throw NotApplicable("a rank-0 orthogonal bundle carries no nonzero section");
  if (t.root >= f.positive_part().roots().size()) throw DomainError("unit section root out of range");
  if (!f.positive_part().roots()[t.root].is_zero()) {
    throw NotApplicable("the unit section needs a trivial summand; root " + std::to_string(t.root + 1) + " is " +
                        f.positive_part().roots()[t.root].str());
  }
  if (t.square().is_zero()) throw NotApplicable("t^2 = 0: the section does not pair to a unit");

  VerificationReport report;
  report.checks.push_back({"sqrt_euler(F) = 0", sqrt_euler(f), Class::zero(f.base())});
  if (s) {
    if (std::find(s->roots.begin(), s->roots.end(), t.root) != s->roots.end()) {
      throw NotApplicable("s.t != 0: s has a component in the summand of t");
    }
    const LocalizedSqrtEuler local(f, *s);
    const Class xi = Class::one(f.base());
    Decomposition dec = local.canonical(xi);
    if (local.localized().blowup() != nullptr) dec = local.shifted(xi, local.localized().blowup()->exceptional.hyperplane());
    const Class zero = Class::zero(local.center().source);
    report.checks.push_back({"first term of sqrt_euler(F, s) = 0", local.first_term(dec), zero});
    report.checks.push_back({"second term of sqrt_euler(F, s) = 0", local.second_term(dec), zero});
    report.checks.push_back({"sqrt_euler(F, s) = 0", local.apply(xi, dec), zero});
  }
  return report;
}

}  // namespace se::orth
