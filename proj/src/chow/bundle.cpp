#include "sqrteuler/chow/bundle.hpp"

#include <algorithm>

#include "sqrteuler/error.hpp"

namespace se::chow {

namespace {

void check_root(const VarietyPtr& base, const Class& root) {
  require_same_variety(root.variety(), base, "bundle root");
  if (!root.is_zero() && !(root.part(1) == root)) {
    throw DomainError("Chern root " + root.str() + " is not a degree-1 class");
  }
}

}  // namespace

Bundle::Bundle(VarietyPtr base, std::vector<Class> roots, std::vector<Class> removed)
    : base_(std::move(base)), roots_(std::move(roots)), removed_(std::move(removed)) {
  if (!base_) throw StructuralError("bundle without base");
  for (const auto& r : roots_) check_root(base_, r);
  for (const auto& r : removed_) check_root(base_, r);
  if (rank() < 0) throw DomainError("bundle of negative rank");
}

Bundle Bundle::trivial(const VarietyPtr& base, int rank) {
  if (rank < 0) throw DomainError("negative rank");
  return Bundle(base, std::vector<Class>(static_cast<std::size_t>(rank), Class::zero(base)));
}

Bundle Bundle::line(const Class& c1) { return Bundle(c1.variety(), {c1}); }

Class Bundle::total_chern() const {
  Class c = Class::one(base_);
  for (const auto& r : roots_) c *= Class::one(base_) + r;
  for (const auto& q : removed_) c *= inverse_class(Class::one(base_) + q);
  return c;
}

Class Bundle::chern(int i) const {
  if (i < 0) return Class::zero(base_);
  return total_chern().part(i);
}

Class Bundle::total_segre() const { return inverse_class(total_chern()); }

Class Bundle::segre(int i) const {
  if (i < 0) return Class::zero(base_);
  return total_segre().part(i);
}

Class Bundle::euler() const { return chern(rank()); }

Bundle Bundle::dual() const {
  std::vector<Class> roots;
  std::vector<Class> removed;
  for (const auto& r : roots_) roots.push_back(-r);
  for (const auto& q : removed_) removed.push_back(-q);
  return Bundle(base_, std::move(roots), std::move(removed));
}

Bundle Bundle::pullback(const RingMap& f) const {
  require_same_variety(f.source(), base_, "bundle pullback");
  std::vector<Class> roots;
  std::vector<Class> removed;
  for (const auto& r : roots_) roots.push_back(f(r));
  for (const auto& q : removed_) removed.push_back(f(q));
  return Bundle(f.target(), std::move(roots), std::move(removed));
}

Bundle Bundle::quotient(const Class& c1) const {
  auto removed = removed_;
  removed.push_back(c1);
  return Bundle(base_, roots_, std::move(removed));
}

Bundle Bundle::without(const std::vector<std::size_t>& indices) const {
  std::vector<Class> roots;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (std::find(indices.begin(), indices.end(), i) == indices.end()) roots.push_back(roots_[i]);
  }
  for (auto i : indices) {
    if (i >= roots_.size()) throw DomainError("root index " + std::to_string(i + 1) + " out of range");
  }
  return Bundle(base_, std::move(roots), removed_);
}

Bundle Bundle::select(const std::vector<std::size_t>& indices) const {
  std::vector<Class> roots;
  for (auto i : indices) {
    if (i >= roots_.size()) throw DomainError("root index " + std::to_string(i + 1) + " out of range");
    roots.push_back(roots_[i]);
  }
  return Bundle(base_, std::move(roots));
}

Bundle Bundle::twist(const Class& c1) const {
  std::vector<Class> roots;
  std::vector<Class> removed;
  for (const auto& r : roots_) roots.push_back(r + c1);
  for (const auto& q : removed_) removed.push_back(q + c1);
  return Bundle(base_, std::move(roots), std::move(removed));
}

Bundle operator+(const Bundle& a, const Bundle& b) {
  require_same_variety(a.base_, b.base_, "direct sum");
  auto roots = a.roots_;
  roots.insert(roots.end(), b.roots_.begin(), b.roots_.end());
  auto removed = a.removed_;
  removed.insert(removed.end(), b.removed_.begin(), b.removed_.end());
  return Bundle(a.base_, std::move(roots), std::move(removed));
}

}  // namespace se::chow
