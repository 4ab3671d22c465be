#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqrteuler/chow/bundle.hpp"
#include "sqrteuler/chow/localized.hpp"
#include "sqrteuler/chow/models.hpp"

namespace se::orth {

using chow::Bundle;
using chow::Class;
using chow::Decomposition;
using chow::SectionModel;
using chow::VarietyPtr;

// Hyperbolic orthogonal bundle V + V^dual with V as the designated maximal
// isotropic subbundle. sign = +1 when V is positive for the orientation.
class OrthBundle {
 public:
  OrthBundle() = default;
  explicit OrthBundle(Bundle positive, int sign = 1);

  const Bundle& positive_part() const { return positive_; }
  int sign() const { return sign_; }
  int half_rank() const { return positive_.rank(); }
  int rank() const { return 2 * positive_.rank(); }
  const VarietyPtr& base() const { return positive_.base(); }

  Bundle underlying() const { return positive_ + positive_.dual(); }
  OrthBundle flipped() const { return OrthBundle(positive_, -sign_); }
  OrthBundle pullback(const chow::RingMap& f) const { return OrthBundle(positive_.pullback(f), sign_); }

  friend OrthBundle operator+(const OrthBundle& a, const OrthBundle& b) {
    return OrthBundle(a.positive_ + b.positive_, a.sign_ * b.sign_);
  }

 private:
  Bundle positive_;
  int sign_ = 1;
};

// sign * e(V).
Class sqrt_euler(const OrthBundle& f);
// e(V + V^dual), computed from all 2n roots.
Class euler(const OrthBundle& f);
// sqrt_euler(F)^2 == (-1)^n e(F).
bool sqrt_euler_squared_check(const OrthBundle& f);

// Indices (0-based) of the roots of V spanning K.
Bundle isotropic_sub(const OrthBundle& f, const std::vector<std::size_t>& k);
// K^perp / K, hyperbolic on V/K with the induced orientation.
OrthBundle isotropic_reduce(const OrthBundle& f, const std::vector<std::size_t>& k);
// Same, with K given by its roots; it must be a sub-multiset of the roots of V.
OrthBundle isotropic_reduce(const OrthBundle& f, const Bundle& k);

// sqrt_euler localized to the zero locus of a section valued in V:
//   rho'_* j^* (sqrt_e(Ftilde) alpha) + sqrt_e(F) beta
// with Ftilde = hyperbolic(rho^* V / O(D)).
class LocalizedSqrtEuler {
 public:
  LocalizedSqrtEuler(OrthBundle f, SectionModel s);

  const OrthBundle& bundle() const { return bundle_; }
  const chow::LocalizedEuler& localized() const { return euler_; }
  const chow::Embedding& center() const { return euler_.center(); }
  OrthBundle reduced() const;

  Decomposition canonical(const Class& xi) const { return euler_.canonical(xi); }
  Decomposition shifted(const Class& xi, const Class& gamma) const { return euler_.shifted(xi, gamma); }

  Class first_term(const Decomposition& dec) const;
  Class second_term(const Decomposition& dec) const;
  Class apply(const Class& xi, const Decomposition& dec) const;
  Class apply(const Class& xi) const { return apply(xi, canonical(xi)); }
  // sqrt_e(N^perp / N) after the Gysin pullback: sign * e(V / V_s)|_X * i^* xi.
  Class apply_lci(const Class& xi) const;

 private:
  OrthBundle bundle_;
  chow::LocalizedEuler euler_;
};

// Result of a two-section localization, living on W = X cap Z. An empty W
// (t vanishes nowhere on X) yields zero on X.
struct TwoSectionResult {
  Class value;
  chow::Embedding to_center;
  bool empty = false;
};

// Localization by s, refined by an independent section t living in other
// summands. sign = +1 gives the vector-bundle version e(V, s; t).
class TwoSectionLocalized {
 public:
  TwoSectionLocalized(SectionModel s, SectionModel t, int sign = 1);

  const chow::LocalizedEuler& localized() const { return euler_; }
  TwoSectionResult apply(const Class& xi, const Decomposition& dec) const;
  TwoSectionResult apply(const Class& xi) const { return apply(xi, euler_.canonical(xi)); }
  // Pushforward from W to X.
  Class push_to_center(const TwoSectionResult& r) const;

 private:
  SectionModel t_;
  int sign_;
  chow::LocalizedEuler euler_;
};

TwoSectionResult sqrt_euler_two_sections(const OrthBundle& f, const SectionModel& s, const SectionModel& t,
                                         const Class& xi, const std::optional<Decomposition>& dec = std::nullopt);
TwoSectionResult localized_euler_two_sections(const SectionModel& s, const SectionModel& t, const Class& xi,
                                              const std::optional<Decomposition>& dec = std::nullopt);

// One identity of a verification report.
struct IdentityCheck {
  std::string identity;
  Class lhs;
  Class rhs;
  bool passed() const { return lhs == rhs; }
};

struct VerificationReport {
  std::vector<IdentityCheck> checks;
  bool passed() const;
};

// A section t = (t2, t1) of the trivial summand root and its dual. The
// pairing is t^2 = 2 t1 t2.
struct UnitPairingSection {
  std::size_t root = 0;
  arith::Rational t1{1};
  arith::Rational t2{1};
  arith::Rational square() const { return arith::Rational(2) * t1 * t2; }
};

// Certifies sqrt_e(F) = 0 and, given s with s.t = 0, sqrt_e(F, s) = 0 term by
// term. Throws NotApplicable when t^2 = 0 or the hypotheses fail.
VerificationReport vanishing_by_unit_section(const OrthBundle& f, const UnitPairingSection& t,
                                             const std::optional<SectionModel>& s = std::nullopt);

}  // namespace se::orth
