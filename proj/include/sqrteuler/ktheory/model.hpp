#pragma once

#include <optional>

#include "sqrteuler/ktheory/kclass.hpp"
#include "sqrteuler/orth/orth.hpp"

namespace se::ktheory {

using chow::Bundle;
using chow::Class;

// K-theory of model varieties, represented through the Chern character in
// the rational Chow ring. Pushforwards follow Grothendieck-Riemann-Roch.

// x / (1 - e^{-x}).
Class todd_root(const Class& x);
Class todd(const Bundle& b);
// ch of lambda_{-1}(V^dual), truncated at the rank (V may be a quotient).
Class ch_euler(const Bundle& v);
// sign * prod 2 sinh(x_j / 2) over the roots of V.
Class ch_sqrt_euler(const orth::OrthBundle& f);
// ch(i_! y) = i_*(y / td(N)).
Class ch_gysin_push(const chow::Embedding& e, const Class& y);

// Decomposition xi = rho_!(rho^* a + j_! gamma) + i_! beta, all entries given
// by their Chern characters.
struct KDecomposition {
  Class base;
  std::optional<Class> gamma;
  Class beta;
};

// K-theoretic localized square-root Euler class:
//   rho'_!(j^*(sqrt(L) sqrt_e(Ftilde) alpha)) + sqrt_e(F) beta.
class KLocalizedSqrtEuler {
 public:
  KLocalizedSqrtEuler(orth::OrthBundle f, chow::SectionModel s);

  const orth::LocalizedSqrtEuler& chow_class() const { return chow_; }
  const chow::Embedding& center() const { return chow_.center(); }

  KDecomposition canonical(const Class& xi) const;
  // Throws DomainError unless the decomposition pushes forward to xi.
  void check(const Class& xi, const KDecomposition& dec) const;
  Class apply(const Class& xi, const KDecomposition& dec) const;
  Class apply(const Class& xi) const { return apply(xi, canonical(xi)); }

  // ch of sqrt(L) sqrt_e(Ftilde) on the blowup.
  Class twisted_reduced_class() const;

 private:
  std::optional<Class> alpha(const KDecomposition& dec) const;

  orth::OrthBundle bundle_;
  orth::LocalizedSqrtEuler chow_;
};

// Expresses a Chern character on a model variety in the augmentation
// coordinates l_g = 1 - O(g) of its generators.
struct AugmentationForm {
  KRing ring;
  Polynomial value;
};
AugmentationForm to_augmentation(const Class& ch);

}  // namespace se::ktheory
