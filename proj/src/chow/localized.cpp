#include "sqrteuler/chow/localized.hpp"

#include "sqrteuler/error.hpp"

namespace se::chow {

LocalizedEuler::LocalizedEuler(SectionModel s) : section_(std::move(s)) {
  if (section_.empty) throw NotApplicable("the section vanishes nowhere; there is no zero locus to localize to");
  if (center().codimension() > 0) blowup_ = make_blowup(center());
}

Bundle LocalizedEuler::quotient_bundle() const {
  if (!blowup_) throw NotApplicable("the zero locus is the whole space; nothing is blown up");
  return section_.bundle.pullback(blowup_->pullback).quotient(blowup_->exceptional_class());
}

Decomposition LocalizedEuler::canonical(const Class& xi) const {
  require_same_variety(xi.variety(), ambient(), "decomposition");
  if (!blowup_) return {std::nullopt, center().pull(xi)};
  return {blowup_->pull(xi), Class::zero(center().source)};
}

Decomposition LocalizedEuler::shifted(const Class& xi, const Class& gamma) const {
  if (!blowup_) throw NotApplicable("the zero locus is the whole space; there is no exceptional divisor");
  Decomposition dec = canonical(xi);
  dec.alpha = *dec.alpha + blowup_->push_from_exceptional(gamma);
  dec.beta = dec.beta - blowup_->push_to_center(gamma);
  return dec;
}

void LocalizedEuler::check(const Class& xi, const Decomposition& dec) const {
  require_same_variety(xi.variety(), ambient(), "decomposition");
  require_same_variety(dec.beta.variety(), center().source, "decomposition beta");
  Class total = center().push(dec.beta);
  if (dec.alpha) {
    if (!blowup_) throw DomainError("decomposition has an alpha term but nothing is blown up");
    require_same_variety(dec.alpha->variety(), blowup_->total, "decomposition alpha");
    total += blowup_->push(*dec.alpha);
  }
  if (!(total == xi)) {
    throw DomainError("inconsistent decomposition: rho_* alpha + iota_* beta = " + total.str() + " but xi = " +
                      xi.str());
  }
}

Class LocalizedEuler::combine(const Class& a, const Class& b, const Decomposition& dec) const {
  Class out = b * dec.beta;
  if (dec.alpha) out += blowup_->push_to_center(blowup_->restrict(a * *dec.alpha));
  return out;
}

Class LocalizedEuler::apply(const Class& xi, const Decomposition& dec) const {
  check(xi, dec);
  const Class b = center().pull(section_.bundle).euler();
  const Class a = blowup_ ? quotient_bundle().euler() : Class::zero(ambient());
  return combine(a, b, dec);
}

Class LocalizedEuler::apply_lci(const Class& xi) const {
  require_same_variety(xi.variety(), ambient(), "localized Euler class");
  return center().pull(section_.complement()).euler() * center().pull(xi);
}

}  // namespace se::chow
