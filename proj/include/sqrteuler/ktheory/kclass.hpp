#pragma once

#include <string>
#include <vector>

#include "sqrteuler/arith/polynomial.hpp"

namespace se::ktheory {

using arith::Polynomial;
using arith::Rational;
using arith::VarTablePtr;

// K-classes of split bundles written in augmentation variables l_j = 1 - L_j,
// truncated above a nilpotence cap.
class KRing {
 public:
  KRing(std::vector<std::string> names, int cap);
  // Variables l1..lk.
  static KRing standard(std::size_t k, int cap);

  const VarTablePtr& table() const { return table_; }
  int cap() const { return cap_; }
  std::size_t size() const { return table_->size(); }

  Polynomial zero() const { return Polynomial(table_, cap_); }
  Polynomial constant(const Rational& c) const { return Polynomial::constant(table_, c, cap_); }
  Polynomial variable(std::size_t j) const { return Polynomial::variable(table_, j, cap_); }
  // prod_j L_j^{k_j} with L_j = 1 - l_j (negative powers expanded).
  Polynomial line(const std::vector<long>& twist) const;

 private:
  VarTablePtr table_;
  int cap_;
};

// a_i = binomial(2i-2, i-1) / (i 2^{2i-1}).
Rational sqrt_line_coefficient(long i);

// Recovers the twist of a line bundle class; DomainError if L is not a line.
std::vector<long> line_twist(const KRing& ring, const Polynomial& L);

Polynomial dual_line(const KRing& ring, const Polynomial& L);
// 1 - sum_{i>=1} a_i (1 - L)^i.
Polynomial sqrt_line(const KRing& ring, const Polynomial& L);
// prod (1 - L_j^dual): the lambda_{-1} class of the dual.
Polynomial euler_k(const KRing& ring, const std::vector<Polynomial>& lines);

// Hyperbolic orthogonal bundle over K-theory: positive part given by lines.
struct KOrthBundle {
  std::vector<Polynomial> positive;
  int sign = 1;
};

Polynomial det(const KRing& ring, const std::vector<Polynomial>& lines);
// sign * sqrt(det V) * e(V).
Polynomial sqrt_euler_k(const KRing& ring, const KOrthBundle& f);
// e(V + V^dual).
Polynomial euler_k(const KRing& ring, const KOrthBundle& f);
KOrthBundle reduce(const KOrthBundle& f, const std::vector<std::size_t>& k);

}  // namespace se::ktheory
