#include <random>

#include "doctest.h"
#include "sqrteuler/chow/bundle.hpp"
#include "sqrteuler/chow/localized.hpp"
#include "sqrteuler/chow/models.hpp"
#include "sqrteuler/error.hpp"

using namespace se::chow;
using se::arith::Rational;

namespace {

Class H(const VarietyPtr& v) { return Class::generator(v, "H"); }

Bundle split(const VarietyPtr& v, const std::vector<int>& twists) {
  std::vector<Class> roots;
  for (int t : twists) roots.push_back(H(v) * Rational(t));
  return Bundle(v, roots);
}

}  // namespace

TEST_CASE("projective spaces") {
  const auto p0 = make_proj_space(0);
  CHECK(Class::one(p0).integrate() == Rational(1));
  const auto p2 = make_proj_space(2);
  CHECK(H(p2).pow(3).is_zero());
  const auto p4 = make_proj_space(4);
  CHECK(H(p4).pow(4).integrate() == Rational(1));
  CHECK(H(p4).pow(3).integrate() == Rational(0));
  CHECK((H(p4).pow(4) * Rational(4)).integrate() == Rational(4));
  const auto p3 = make_proj_space(3);
  CHECK(H(p3).pow(3).integrate() == Rational(1));
  CHECK(H(p3).pow(2).integrate() == Rational(0));
  CHECK_THROWS_AS(make_proj_space(-1), se::DomainError);
  CHECK(same_variety(p2, make_proj_space(2)));
  CHECK_FALSE(same_variety(p2, p3));
  CHECK_THROWS_AS(H(p2) + H(p3), se::StructuralError);
}

TEST_CASE("bundle Chern and Segre classes") {
  const auto p3 = make_proj_space(3);
  const Bundle v = split(p3, {1, 2});
  CHECK(v.total_chern() == Class::one(p3) + H(p3) * Rational(3) + H(p3).pow(2) * Rational(2));
  CHECK(v.dual().chern(1) == H(p3) * Rational(-3));
  CHECK((v.total_chern() * v.total_segre()) == Class::one(p3));
  const Bundle w = split(p3, {1, 1}).quotient(H(p3));
  CHECK(w.rank() == 1);
  CHECK(w.total_chern() == Class::one(p3) + H(p3));
  CHECK((v + w).total_chern() == v.total_chern() * w.total_chern());
}

TEST_CASE("projective bundle pushforward") {
  const auto pt = point();
  for (int r = 1; r <= 4; ++r) {
    const Bundle e = Bundle::trivial(pt, r);
    CHECK(proj_bundle_pushforward(e, r - 1) == Class::one(pt));
    CHECK(proj_bundle_pushforward(e, r).is_zero());
  }
  const auto p1 = make_proj_space(1);
  const Bundle e = split(p1, {0, -1});
  CHECK(proj_bundle_pushforward(e, 2) == H(p1));
  CHECK(proj_bundle_pushforward(e, 0).is_zero());
}

TEST_CASE("quadric pushforward") {
  const auto pt = point();
  const auto pf = make_projective_bundle(Bundle::trivial(pt, 4));
  const Class h = pf.hyperplane();
  CHECK(quadric_pushforward(pf, h.pow(2) * Rational(1, 2)) == Class::one(pt));
  CHECK(quadric_pushforward(pf, h * Rational(1, 2)).is_zero());
  const auto p1 = make_proj_space(1);
  const auto pf1 = make_projective_bundle(split(p1, {1, 0, 0, -1}));
  CHECK(quadric_pushforward(pf1, pf1.hyperplane().pow(2) * Rational(1, 2)) == Class::one(p1));
  const auto odd = make_projective_bundle(Bundle::trivial(pt, 3));
  CHECK_THROWS_AS(quadric_pushforward(odd, odd.hyperplane()), se::DomainError);
}

TEST_CASE("quadric pushforward on random split bundles") {
  std::mt19937 rng(56);
  std::uniform_int_distribution<int> twist(-2, 2);
  for (int m = 0; m <= 3; ++m) {
    const auto base = make_proj_space(m);
    for (int n = 1; n <= 4; ++n) {
      std::vector<int> twists;
      for (int i = 0; i < 2 * n; ++i) twists.push_back(twist(rng));
      const auto pf = make_projective_bundle(split(base, twists));
      for (int k = 0; k <= m; ++k) {
        const Class xi = H(base).pow(static_cast<unsigned>(k));
        const Class top = pf.hyperplane().pow(static_cast<unsigned>(2 * n - 2)) * Rational(1, 2);
        CHECK(quadric_pushforward(pf, top * pf.pullback(xi)) == xi);
      }
    }
  }
}

TEST_CASE("blowup of a point in the plane") {
  const auto p2 = make_proj_space(2);
  const Blowup b = make_blowup(linear_subspace(p2, 0));
  const Class d = b.exceptional_class();
  CHECK(b.push(d).is_zero());
  CHECK(b.push(d * d) == -H(p2).pow(2));
  const Class h = b.pull(H(p2));
  // Classical intersection numbers on the blowup of P^2 at a point.
  CHECK((h * h).integrate() == Rational(1));
  CHECK((h * d).integrate() == Rational(0));
  CHECK((d * d).integrate() == Rational(-1));
  CHECK(b.push(b.pull(H(p2))) == H(p2));
}

TEST_CASE("blowups of P^3 match classical intersection numbers") {
  const auto p3 = make_proj_space(3);
  {
    const Blowup b = make_blowup(linear_subspace(p3, 1));
    const Class e = b.exceptional_class();
    const Class h = b.pull(H(p3));
    CHECK((h * h * h).integrate() == Rational(1));
    CHECK((h * h * e).integrate() == Rational(0));
    CHECK((h * e * e).integrate() == Rational(-1));
    CHECK((e * e * e).integrate() == Rational(-2));
  }
  {
    const Blowup b = make_blowup(linear_subspace(p3, 0));
    const Class e = b.exceptional_class();
    CHECK((e * e * e).integrate() == Rational(1));
    CHECK((b.pull(H(p3)) * e).is_zero());
  }
}

TEST_CASE("blowup of P^4 along a plane") {
  const auto p4 = make_proj_space(4);
  const Blowup b = make_blowup(linear_subspace(p4, 2));
  const auto& d_total = b.exceptional.total;
  CHECK(b.push_to_center(Class::one(d_total)).is_zero());
  CHECK(b.push_to_center(b.exceptional.hyperplane()) == Class::one(b.center.source));
  // j^* j_* = -z on a random sample.
  const Class z = b.exceptional.hyperplane();
  const Class g = z * z + b.exceptional.pullback(Class::generator(b.center.source, "H")) * Rational(3);
  CHECK(b.restrict(b.push_from_exceptional(g)) == -(z * g));
}

TEST_CASE("blowup self-tests reject inconsistent data") {
  const auto p2 = make_proj_space(2);
  const auto p1 = make_proj_space(1);
  // A line with a trivial normal bundle has the wrong self-intersection.
  CHECK_THROWS_AS(make_embedding(p1, p2, {H(p1).poly()}, {H(p2).poly()}, H(p2), Bundle::trivial(p1, 1)),
                  se::ConstructionError);
  CHECK_THROWS_AS(make_blowup(identity_embedding(p2)), se::DomainError);
}

TEST_CASE("projection formula on random classes") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coeff(-3, 3);
  const auto p4 = make_proj_space(4);
  for (int k = 0; k <= 3; ++k) {
    const Blowup b = make_blowup(linear_subspace(p4, k));
    const auto basis = b.total->normal_basis();
    for (int round = 0; round < 10; ++round) {
      Class y = Class::zero(b.total);
      for (const auto& m : basis) y += Class(b.total, Polynomial::monomial(b.total->table(), m, Rational(coeff(rng))));
      Class x = Class::zero(p4);
      for (unsigned e = 0; e <= 4; ++e) x += H(p4).pow(e) * Rational(coeff(rng));
      CHECK(b.push(b.pull(x) * y) == x * b.push(y));
    }
  }
}

TEST_CASE("localized Euler class on the blowup") {
  const auto p2 = make_proj_space(2);
  const Bundle v = split(p2, {1});
  const LocalizedEuler e(section_model(v, {0}));
  const Class xi = Class::one(p2);
  CHECK(e.apply(xi) == Class::one(e.center().source));
  const Class beta = Class::one(e.center().source);
  const Decomposition only_beta{Class::zero(e.blowup()->total), beta};
  CHECK(e.apply(e.center().push(beta), only_beta) == e.center().pull(v).euler() * beta);
  CHECK_THROWS_AS(e.apply(xi, {Class::zero(e.blowup()->total), beta}), se::DomainError);

  const Bundle trivial = Bundle::trivial(p2, 2);
  const LocalizedEuler zero_section(section_model(trivial, {}));
  const Class x2 = H(p2) * Rational(5);
  CHECK(zero_section.apply(x2) == trivial.euler() * x2);
}

TEST_CASE("localized Euler class pushes forward to the Euler class") {
  const auto p4 = make_proj_space(4);
  for (std::vector<std::size_t> s : {std::vector<std::size_t>{0}, {0, 1}, {0, 2}}) {
    const Bundle v = split(p4, {1, 1, 1});
    const LocalizedEuler e(section_model(v, s));
    for (unsigned k = 0; k <= 2; ++k) {
      const Class xi = H(p4).pow(k);
      const Class out = e.apply(xi);
      CHECK(e.center().push(out) == v.euler() * xi);
      CHECK(out == e.apply_lci(xi));
      const Class gamma = e.blowup()->exceptional.hyperplane();
      CHECK(e.apply(xi, e.shifted(xi, gamma)) == out);
    }
  }
}
