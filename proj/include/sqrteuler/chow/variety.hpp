#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sqrteuler/arith/polynomial.hpp"

namespace se::chow {

using arith::Monomial;
using arith::Polynomial;
using arith::Rational;
using arith::VarTablePtr;

class Variety;
using VarietyPtr = std::shared_ptr<const Variety>;

// lhs -> rhs, applied to any monomial divisible by lhs.
struct Rule {
  Monomial lhs;
  Polynomial rhs;
};

// A model Chow ring Q[generators]/(rules), graded by codimension. Every
// variety except the point is built over a base by one construction step,
// which also fixes how classes are pushed down to that base.
class Variety {
 public:
  enum class Kind { Point, ProjectiveBundle, Blowup, Parameters };

  struct Spec {
    Kind kind = Kind::Point;
    std::string name;
    std::string key;
    VarTablePtr table;
    int dimension = 0;
    std::vector<Rule> rules;
    VarietyPtr base;
    // Projective bundles: rank of the bundle. Blowups: index of the
    // exceptional generator.
    std::size_t step_data = 0;
    std::optional<int> projective_space;
  };

  explicit Variety(Spec spec);
  Variety(const Variety&) = delete;
  Variety& operator=(const Variety&) = delete;

  Kind kind() const { return spec_.kind; }
  const std::string& name() const { return spec_.name; }
  const std::string& key() const { return spec_.key; }
  const VarTablePtr& table() const { return spec_.table; }
  int dimension() const { return spec_.dimension; }
  const std::vector<Rule>& rules() const { return spec_.rules; }
  const VarietyPtr& base() const { return spec_.base; }
  std::size_t step_data() const { return spec_.step_data; }
  // Set when the variety is P(n) built over the point.
  std::optional<int> projective_space() const { return spec_.projective_space; }
  // Number of degree-0 parameters at the end of the table.
  std::size_t parameter_count() const;

  Polynomial normal_form(const Polynomial& p) const;
  // Normal monomials in the non-parameter generators.
  std::vector<Monomial> normal_basis() const;

  // One step down the construction tower (input must be a normal form).
  Polynomial push_to_base(const Polynomial& normal) const;
  Rational integrate(const Polynomial& p) const;

 private:
  Polynomial normal_monomial(const Monomial& m) const;

  Spec spec_;
  mutable std::mutex cache_mutex_;
  mutable std::map<Monomial, Polynomial> cache_;
};

bool same_variety(const VarietyPtr& a, const VarietyPtr& b);
void require_same_variety(const VarietyPtr& a, const VarietyPtr& b, const char* context);

// Keeps the terms of p that only involve the first base->size() variables,
// re-expressed over the base table.
Polynomial restrict_to_prefix(const Polynomial& p, const VarTablePtr& base);

// An element of a model Chow ring, always stored in normal form.
class Class {
 public:
  Class() = default;
  Class(VarietyPtr variety, const Polynomial& p);

  static Class zero(VarietyPtr variety);
  static Class constant(VarietyPtr variety, const Rational& c);
  static Class one(VarietyPtr variety) { return constant(std::move(variety), Rational(1)); }
  static Class generator(VarietyPtr variety, std::string_view name);

  const VarietyPtr& variety() const { return variety_; }
  const Polynomial& poly() const { return poly_; }

  bool is_zero() const { return poly_.is_zero(); }
  std::optional<int> lowest_degree() const { return poly_.min_degree(); }
  std::optional<int> highest_degree() const { return poly_.max_degree(); }
  Class part(int degree) const;
  Rational integrate() const { return variety_->integrate(poly_); }
  std::string str() const { return poly_.str(); }

  Class operator-() const;
  Class& operator+=(const Class& rhs);
  Class& operator-=(const Class& rhs);
  Class& operator*=(const Class& rhs);
  Class& operator*=(const Rational& c);

  friend Class operator+(Class a, const Class& b) { return a += b; }
  friend Class operator-(Class a, const Class& b) { return a -= b; }
  friend Class operator*(Class a, const Class& b) { return a *= b; }
  friend Class operator*(Class a, const Rational& c) { return a *= c; }
  friend Class operator*(const Rational& c, Class a) { return a *= c; }
  friend Class operator+(Class a, const Rational& c) { return a += constant(a.variety_, c); }
  friend Class operator-(Class a, const Rational& c) { return a -= constant(a.variety_, c); }

  Class pow(unsigned exponent) const;

  friend bool operator==(const Class& a, const Class& b);

 private:
  struct Normalized {};
  Class(VarietyPtr variety, Polynomial p, Normalized);

  VarietyPtr variety_;
  Polynomial poly_;
};

// Ring homomorphism between model Chow rings, given by the images of the
// source generators (parameters included).
class RingMap {
 public:
  RingMap() = default;
  RingMap(VarietyPtr source, VarietyPtr target, std::vector<Polynomial> images);

  static RingMap identity(const VarietyPtr& v);
  // Source table must be a prefix of the target table.
  static RingMap inclusion(const VarietyPtr& source, const VarietyPtr& target);

  const VarietyPtr& source() const { return source_; }
  const VarietyPtr& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }

  Class operator()(const Class& c) const;
  Polynomial apply_raw(const Polynomial& p) const;
  // next after this.
  RingMap then(const RingMap& next) const;

 private:
  VarietyPtr source_;
  VarietyPtr target_;
  std::vector<Polynomial> images_;
};

// Evaluates a one-variable power series (over any table whose first variable
// is the series variable) at a class; truncation comes from the dimension.
Class evaluate_series(const Polynomial& series, const Class& x);
Class exp_class(const Class& x);
// 1/x for x with nonzero constant term.
Class inverse_class(const Class& x);

}  // namespace se::chow
