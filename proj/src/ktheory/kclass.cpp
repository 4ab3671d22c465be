#include "sqrteuler/ktheory/kclass.hpp"

#include <algorithm>
#include <set>

#include "sqrteuler/arith/series.hpp"
#include "sqrteuler/error.hpp"

namespace se::ktheory {

using arith::Monomial;

KRing::KRing(std::vector<std::string> names, int cap) : cap_(cap) {
  if (cap < 0) throw DomainError("negative nilpotence cap");
  std::vector<arith::Variable> vars;
  for (auto& n : names) vars.push_back({std::move(n), 1});
  table_ = arith::VarTable::make(std::move(vars));
}

KRing KRing::standard(std::size_t k, int cap) {
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= k; ++j) names.push_back("l" + std::to_string(j));
  return KRing(std::move(names), cap);
}

Polynomial KRing::line(const std::vector<long>& twist) const {
  if (twist.size() != size()) throw StructuralError("line twist has the wrong number of entries");
  Polynomial out = constant(Rational(1));
  for (std::size_t j = 0; j < twist.size(); ++j) {
    if (twist[j] == 0) continue;
    Polynomial base = constant(Rational(1)) - variable(j);
    if (twist[j] < 0) base = arith::series_inverse(base, cap_);
    out = arith::poly_mul(out, base.pow(static_cast<unsigned>(std::labs(twist[j]))), cap_);
  }
  return out;
}

Rational sqrt_line_coefficient(long i) {
  if (i < 1) throw DomainError("a_i needs i >= 1, got " + std::to_string(i));
  mpz_class pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(2 * i - 1));
  return arith::binomial(2 * i - 2, i - 1) / Rational(mpz_class(pow2 * i));
}

std::vector<long> line_twist(const KRing& ring, const Polynomial& L) {
  if (!arith::same_table(L.table(), ring.table())) throw StructuralError("K-class from another ring");
  const Polynomial l = L.with_cap(ring.cap());
  std::vector<long> twist(ring.size(), 0);
  if (ring.cap() >= 1) {
    for (std::size_t j = 0; j < ring.size(); ++j) {
      const Rational c = -l.coefficient(Monomial::variable(j, 1, *ring.table()));
      if (!c.is_integer()) throw DomainError("K-class " + L.str() + " is not a line bundle");
      twist[j] = c.numerator().get_si();
    }
  }
  if (!(ring.line(twist) == l)) throw DomainError("K-class " + L.str() + " is not a line bundle");
  return twist;
}

Polynomial dual_line(const KRing& ring, const Polynomial& L) {
  auto twist = line_twist(ring, L);
  for (auto& k : twist) k = -k;
  return ring.line(twist);
}

Polynomial sqrt_line(const KRing& ring, const Polynomial& L) {
  line_twist(ring, L);
  const Polynomial x = ring.constant(Rational(1)) - L.with_cap(ring.cap());
  Polynomial out = ring.constant(Rational(1));
  Polynomial power = ring.constant(Rational(1));
  for (long i = 1; i <= ring.cap(); ++i) {
    power = arith::poly_mul(power, x, ring.cap());
    if (power.is_zero()) break;
    out -= power * sqrt_line_coefficient(i);
  }
  return out;
}

Polynomial euler_k(const KRing& ring, const std::vector<Polynomial>& lines) {
  Polynomial out = ring.constant(Rational(1));
  for (const auto& L : lines) {
    out = arith::poly_mul(out, ring.constant(Rational(1)) - dual_line(ring, L), ring.cap());
  }
  return out;
}

Polynomial det(const KRing& ring, const std::vector<Polynomial>& lines) {
  Polynomial out = ring.constant(Rational(1));
  for (const auto& L : lines) out = arith::poly_mul(out, L, ring.cap());
  return out;
}

Polynomial sqrt_euler_k(const KRing& ring, const KOrthBundle& f) {
  if (f.sign != 1 && f.sign != -1) throw DomainError("orientation sign must be +1 or -1");
  return arith::poly_mul(sqrt_line(ring, det(ring, f.positive)), euler_k(ring, f.positive), ring.cap()) *
         Rational(f.sign);
}

Polynomial euler_k(const KRing& ring, const KOrthBundle& f) {
  std::vector<Polynomial> all = f.positive;
  for (const auto& L : f.positive) all.push_back(dual_line(ring, L));
  return euler_k(ring, all);
}

KOrthBundle reduce(const KOrthBundle& f, const std::vector<std::size_t>& k) {
  std::set<std::size_t> drop;
  for (auto i : k) {
    if (i >= f.positive.size() || !drop.insert(i).second) {
      throw DomainError("isotropic subbundle is not a sub-multiset of the roots of V");
    }
  }
  KOrthBundle out{{}, f.sign};
  for (std::size_t i = 0; i < f.positive.size(); ++i) {
    if (!drop.count(i)) out.positive.push_back(f.positive[i]);
  }
  return out;
}

}  // namespace se::ktheory
