#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqrteuler/arith/rational.hpp"

namespace se::arith {

struct Variable {
  std::string name;
  int degree = 1;

  friend bool operator==(const Variable&, const Variable&) = default;
};

class VarTable;
using VarTablePtr = std::shared_ptr<const VarTable>;

// Ordered list of named variables with their weights. Degree-0 variables are
// coefficient parameters (e.g. the formal parameter of a group law): they
// never count towards truncation.
class VarTable {
 public:
  explicit VarTable(std::vector<Variable> vars);
  static VarTablePtr make(std::vector<Variable> vars);

  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<Variable>& variables() const { return vars_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require(std::string_view name) const;

  VarTablePtr extended(const std::vector<Variable>& extra) const;
  bool is_prefix_of(const VarTable& other) const;

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.vars_ == b.vars_; }

 private:
  std::vector<Variable> vars_;
};

bool same_table(const VarTablePtr& a, const VarTablePtr& b);

// Sparse exponent vector: sorted (variable index, exponent) pairs, no zero
// exponents. The weighted degree is fixed at construction.
class Monomial {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;
  Monomial(std::vector<Entry> entries, const VarTable& table);
  static Monomial variable(std::size_t index, std::uint32_t exponent, const VarTable& table);

  const std::vector<Entry>& entries() const { return entries_; }
  int degree() const { return degree_; }
  bool is_one() const { return entries_.empty(); }
  std::uint32_t exponent(std::size_t index) const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& rhs) const;
  // Requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;

  std::string str(const VarTable& table) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.entries_ == b.entries_;
  }
  // Graded order: lower degree first; within a degree, lexicographically
  // larger exponent vectors (earlier variables dominant) come first.
  friend bool operator<(const Monomial& a, const Monomial& b);

 private:
  std::vector<Entry> entries_;
  int degree_ = 0;
};

// Element of Q[vars], optionally truncated above a weighted degree cap.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(VarTablePtr table, std::optional<int> cap = std::nullopt);

  static Polynomial constant(VarTablePtr table, const Rational& c, std::optional<int> cap = std::nullopt);
  static Polynomial variable(VarTablePtr table, std::string_view name, std::optional<int> cap = std::nullopt);
  static Polynomial variable(VarTablePtr table, std::size_t index, std::optional<int> cap = std::nullopt);
  static Polynomial monomial(VarTablePtr table, const Monomial& m, const Rational& c,
                             std::optional<int> cap = std::nullopt);

  const VarTablePtr& table() const { return table_; }
  std::optional<int> cap() const { return cap_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  std::optional<int> min_degree() const;
  std::optional<int> max_degree() const;
  bool is_homogeneous() const;

  Polynomial homogeneous_part(int degree) const;
  Polynomial truncated(int cap) const;
  Polynomial with_cap(std::optional<int> cap) const;

  // Adds c * m in place (drops the term if it cancels or exceeds the cap).
  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(Polynomial a, const Rational& c) {
    a.add_term(Monomial(), c);
    return a;
  }
  friend Polynomial operator+(const Rational& c, Polynomial a) { return std::move(a) + c; }
  friend Polynomial operator-(Polynomial a, const Rational& c) { return std::move(a) + (-c); }
  friend Polynomial operator-(const Rational& c, const Polynomial& a) { return -a + c; }

  Polynomial pow(unsigned exponent) const;

  std::string str() const;

  // Structural equality on normalized term maps (the cap is not compared).
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_compatible(const Polynomial& other) const;

  VarTablePtr table_;
  TermMap terms_;
  std::optional<int> cap_;
};

std::optional<int> min_cap(std::optional<int> a, std::optional<int> b);

// Exact product with every term above `cap` dropped.
Polynomial poly_mul(const Polynomial& a, const Polynomial& b, std::optional<int> cap);

// Ring homomorphism Q[source vars] -> Q[target vars] sending variable i to
// images[i]. Unmapped variables (nullopt) are an error.
Polynomial substitute(const Polynomial& p, const std::vector<std::optional<Polynomial>>& images,
                      const VarTablePtr& target, std::optional<int> cap);

// Reinterprets p over a table that has p's table as a prefix.
Polynomial embed(const Polynomial& p, const VarTablePtr& target);

}  // namespace se::arith
