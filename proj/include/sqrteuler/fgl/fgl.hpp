#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sqrteuler/arith/polynomial.hpp"
#include "sqrteuler/arith/symmetric.hpp"
#include "sqrteuler/chow/bundle.hpp"

namespace se::fgl {

using arith::Polynomial;
using arith::Rational;
using arith::VarTablePtr;

inline constexpr int kDefaultCap = 8;

// F(u, v) = u + v + sum a_ij u^i v^j over the table [u, v, w, parameters...].
// The law is held through degree cap + 1 so that g, h and sqrt_h are exact
// through degree cap.
class FormalGroupLaw {
 public:
  static FormalGroupLaw additive(int cap = kDefaultCap);
  // u + v - beta u v.
  static FormalGroupLaw multiplicative(int cap = kDefaultCap, const std::string& parameter = "beta");
  // exp(log u + log v) with log u = u + sum_{k>=2} coefficients[k-2] u^k.
  static FormalGroupLaw from_logarithm(const std::vector<Rational>& coefficients, int cap = kDefaultCap);
  // Explicit coefficients a_ij (i, j >= 1), taken as the law through degree
  // cap + 1; checked for unit, symmetry and associativity to that degree.
  static FormalGroupLaw from_coefficients(const std::map<std::pair<int, int>, Rational>& coefficients,
                                          int cap = kDefaultCap, const std::string& name = "custom");

  const std::string& name() const { return name_; }
  const VarTablePtr& table() const { return table_; }
  int cap() const { return cap_; }
  int precision() const { return cap_ + 1; }
  const Polynomial& series() const { return series_; }
  std::vector<arith::Variable> parameters() const;

  Polynomial u() const { return Polynomial::variable(table_, std::size_t{0}, precision()); }
  Polynomial v() const { return Polynomial::variable(table_, std::size_t{1}, precision()); }
  Polynomial w() const { return Polynomial::variable(table_, std::size_t{2}, precision()); }
  // F(a, b) for a, b over the law's table.
  Polynomial evaluate(const Polynomial& a, const Polynomial& b) const;
  // Substitutes u -> x in a series in u.
  Polynomial compose(const Polynomial& series_in_u, const Polynomial& x) const;

  bool is_associative() const;
  bool is_symmetric() const;
  bool has_unit() const;

 private:
  FormalGroupLaw(std::string name, VarTablePtr table, Polynomial series, int cap);

  std::string name_;
  VarTablePtr table_;
  Polynomial series_;
  int cap_;
};

// chi(u) with F(u, chi(u)) = 0.
Polynomial fgl_inverse(const FormalGroupLaw& f);
// g(u) = chi(u) / u.
Polynomial g_series(const FormalGroupLaw& f);

struct HSeries {
  arith::SymmetricTables tables;
  Polynomial value;
};

// (-1)^n prod g(u_i) in elementary symmetric variables s_1..s_n.
HSeries h_series(std::size_t n, const FormalGroupLaw& f);
// The square root with constant term 1.
HSeries sqrt_h_series(std::size_t n, const FormalGroupLaw& f);

// Ring over which a law acts on a variety: the variety itself, with the law's
// parameters adjoined when it has any.
chow::VarietyPtr coefficient_ring(const chow::VarietyPtr& base, const FormalGroupLaw& f);
chow::Class promote(const chow::Class& c, const chow::VarietyPtr& target);
// A series in u evaluated at a class, over coefficient_ring(x.variety(), F).
chow::Class evaluate_series(const Polynomial& series_in_u, const chow::Class& x, const FormalGroupLaw& f);
// Chern roots of the dual in the theory of F: x -> chi(x). These are not
// homogeneous, so they are kept as a plain list of classes.
std::vector<chow::Class> dual_roots(const chow::Bundle& v, const FormalGroupLaw& f);
// sqrt_h(c_1(V), ..., c_n(V)) on coefficient_ring(V.base(), F).
chow::Class sqrt_h_apply(const chow::Bundle& v, const FormalGroupLaw& f);
// The same from Chern roots in the theory of F.
chow::Class sqrt_h_apply(const std::vector<chow::Class>& roots, const FormalGroupLaw& f);

// Compares sqrt_h(L1) e(L1) with sqrt_h(L2) e(L2) for the maximal isotropic
// L1 = V of V + V^dual and L2 obtained by swapping the listed roots with
// their duals. Reports only; the general answer is open.
struct IsotropicComparison {
  chow::Class first;
  chow::Class second;
  bool same_parity = true;
  bool equal() const { return first == second; }
};
IsotropicComparison compare_maximal_isotropics(const chow::Bundle& v, const std::vector<std::size_t>& swapped,
                                               const FormalGroupLaw& f);

}  // namespace se::fgl
