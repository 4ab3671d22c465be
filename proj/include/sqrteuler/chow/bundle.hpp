#pragma once

#include <vector>

#include "sqrteuler/chow/variety.hpp"

namespace se::chow {

// Split vector bundle given by Chern roots. `removed` roots model quotients by
// line subbundles (V/L has the roots of V with c1(L) removed), so
// c = prod(1 + root) / prod(1 + removed).
class Bundle {
 public:
  Bundle() = default;
  Bundle(VarietyPtr base, std::vector<Class> roots, std::vector<Class> removed = {});

  static Bundle trivial(const VarietyPtr& base, int rank);
  static Bundle line(const Class& c1);

  const VarietyPtr& base() const { return base_; }
  const std::vector<Class>& roots() const { return roots_; }
  const std::vector<Class>& removed() const { return removed_; }
  int rank() const { return static_cast<int>(roots_.size()) - static_cast<int>(removed_.size()); }

  Class total_chern() const;
  Class chern(int i) const;
  Class total_segre() const;
  Class segre(int i) const;
  // Top Chern class c_rank.
  Class euler() const;

  Bundle dual() const;
  Bundle pullback(const RingMap& f) const;
  // Quotient by a line subbundle with first Chern class c1.
  Bundle quotient(const Class& c1) const;
  // Keeps the roots whose indices are not listed.
  Bundle without(const std::vector<std::size_t>& indices) const;
  Bundle select(const std::vector<std::size_t>& indices) const;
  // Twist by a line bundle with first Chern class c1.
  Bundle twist(const Class& c1) const;

  friend Bundle operator+(const Bundle& a, const Bundle& b);

 private:
  VarietyPtr base_;
  std::vector<Class> roots_;
  std::vector<Class> removed_;
};

}  // namespace se::chow
