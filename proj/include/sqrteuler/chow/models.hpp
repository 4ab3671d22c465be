#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqrteuler/chow/bundle.hpp"
#include "sqrteuler/chow/variety.hpp"

namespace se::chow {

VarietyPtr point();

// Q[H]/(H^{n+1}), built as the projectivization of a trivial bundle over the
// point.
VarietyPtr make_proj_space(int n, const std::string& generator = "H");

// Adjoins degree-0 parameters (coefficient variables) to a ring.
VarietyPtr with_parameters(const VarietyPtr& base, const std::vector<std::string>& names);

// P(E) of lines in E with h = c1(O(1)) and relation sum c_i(E) h^{r-i} = 0.
struct ProjectiveBundle {
  Bundle bundle;
  VarietyPtr total;
  RingMap pullback;

  Class hyperplane() const;
  // p_*, reading off the coefficient of h^{r-1}.
  Class push(const Class& c) const;
};

ProjectiveBundle make_projective_bundle(const Bundle& E, const std::string& generator = "h",
                                        const std::string& name = "");

// p_*(h^k) = s_{k-r+1}(E).
Class proj_bundle_pushforward(const Bundle& E, int k);

// Pushforward from the quadric bundle Q in P(F) (F of even rank) of a class
// written on P(F): multiply by [Q] = 2h and push down.
Class quadric_pushforward(const ProjectiveBundle& pf, const Class& c);

// Regular embedding i: X -> Y. The lift sends each generator of X to a
// generator of Y whose restriction is that generator, so that
// i_*(x) = lift(x) * [X].
struct Embedding {
  VarietyPtr source;
  VarietyPtr target;
  RingMap pullback;
  RingMap lift_map;
  Class fundamental;
  Bundle normal;

  int codimension() const { return normal.rank(); }
  Class pull(const Class& y) const { return pullback(y); }
  Class lift(const Class& x) const { return lift_map(x); }
  Class push(const Class& x) const { return lift(x) * fundamental; }
  Bundle pull(const Bundle& b) const { return b.pullback(pullback); }
  // Throws ConstructionError when the Gysin data is inconsistent.
  void self_test() const;
};

Embedding make_embedding(const VarietyPtr& x, const VarietyPtr& y, std::vector<Polynomial> pullback_images,
                         std::vector<Polynomial> lift_images, const Class& fundamental, const Bundle& normal);
Embedding identity_embedding(const VarietyPtr& y);
// P(k) inside P(m) cut out by m-k hyperplanes.
Embedding linear_subspace(const VarietyPtr& y, int k);
// inner: W -> X, outer: X -> Y.
Embedding compose(const Embedding& inner, const Embedding& outer);

// Blowup of Y along a regularly embedded X with exceptional divisor
// D = P(N) over X.
struct Blowup {
  Embedding center;
  VarietyPtr total;
  RingMap pullback;
  ProjectiveBundle exceptional;
  RingMap restrict_to_exceptional;

  Class exceptional_class() const;
  Class push(const Class& c) const;
  Class push_from_exceptional(const Class& c) const;
  Class push_to_center(const Class& c) const { return exceptional.push(c); }
  Class pull(const Class& y) const { return pullback(y); }
  Class restrict(const Class& c) const { return restrict_to_exceptional(c); }
};

Blowup make_blowup(const Embedding& center, const std::string& exceptional = "d", const std::string& fiber = "z");

// A section of a split bundle V on a projective space living in the summands
// `roots`. Each such root must be O(1) (its zero locus is a hyperplane) or
// trivial (a nowhere-vanishing constant section).
struct SectionModel {
  Bundle bundle;
  std::vector<std::size_t> roots;
  bool empty = false;
  std::optional<Embedding> zero_locus;

  const Embedding& embedding() const;
  Bundle section_bundle() const { return bundle.select(roots); }
  Bundle complement() const { return bundle.without(roots); }
};

SectionModel section_model(const Bundle& v, std::vector<std::size_t> roots);

}  // namespace se::chow
