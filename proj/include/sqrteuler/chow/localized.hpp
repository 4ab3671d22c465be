#pragma once

#include <optional>

#include "sqrteuler/chow/models.hpp"

namespace se::chow {

// xi = rho_* alpha + iota_* beta, with alpha on the blowup and beta on the
// zero locus. When the zero locus is all of Y there is no blowup and alpha
// stays empty.
struct Decomposition {
  std::optional<Class> alpha;
  Class beta;
};

// Localized top Chern class e(V, s) of a regular section, computed on the
// blowup of Y along X = s^{-1}(0):
//   e(V, s) xi = rho'_* (e(Vbar) j^* alpha) + e(V|_X) beta,
// with Vbar = rho^* V / O(D).
class LocalizedEuler {
 public:
  explicit LocalizedEuler(SectionModel s);

  const SectionModel& section() const { return section_; }
  const Bundle& bundle() const { return section_.bundle; }
  const Embedding& center() const { return section_.embedding(); }
  const Blowup* blowup() const { return blowup_ ? &*blowup_ : nullptr; }
  const VarietyPtr& ambient() const { return section_.bundle.base(); }

  // rho^* V / O(D) on the blowup.
  Bundle quotient_bundle() const;

  Decomposition canonical(const Class& xi) const;
  // alpha = rho^* xi + j_* gamma, beta = -rho'_* gamma for gamma on D.
  Decomposition shifted(const Class& xi, const Class& gamma) const;
  // Throws DomainError unless rho_* alpha + iota_* beta = xi.
  void check(const Class& xi, const Decomposition& dec) const;

  // rho'_*(j^*(a * alpha)) + b * beta for a on the blowup and b on X.
  Class combine(const Class& a, const Class& b, const Decomposition& dec) const;

  Class apply(const Class& xi, const Decomposition& dec) const;
  Class apply(const Class& xi) const { return apply(xi, canonical(xi)); }

  // Lci description: e(V / V_s)|_X * i^* xi.
  Class apply_lci(const Class& xi) const;

 private:
  SectionModel section_;
  std::optional<Blowup> blowup_;
};

}  // namespace se::chow
