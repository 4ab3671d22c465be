#include <random>

#include "doctest.h"
#include "sqrteuler/arith/series.hpp"
#include "sqrteuler/chow/models.hpp"
#include "sqrteuler/error.hpp"
#include "sqrteuler/fgl/fgl.hpp"
#include "sqrteuler/ktheory/kclass.hpp"
#include "sqrteuler/orth/orth.hpp"
#include "support.hpp"

using namespace se::fgl;
using se::arith::Monomial;
using se::chow::Bundle;
using se::chow::Class;
using se::chow::make_proj_space;

namespace {

Polynomial u_power(const FormalGroupLaw& f, std::uint32_t k) {
  Polynomial p(f.table(), f.precision());
  p.add_term(Monomial::variable(0, k, *f.table()), Rational(1));
  return p;
}

Polynomial beta(const FormalGroupLaw& f) { return Polynomial::variable(f.table(), std::size_t{3}, f.precision()); }

// Random law with logarithm u + c_2 u^2 + ... and small rational coefficients.
FormalGroupLaw random_law(std::mt19937& rng, int cap) {
  std::vector<Rational> log;
  for (int k = 2; k <= cap; ++k) log.push_back(se::test::random_rational(rng, 3));
  return FormalGroupLaw::from_logarithm(log, cap);
}

Bundle split(const se::chow::VarietyPtr& v, const std::vector<int>& twists) {
  std::vector<Class> roots;
  for (int t : twists) roots.push_back(Class::generator(v, "H") * Rational(t));
  return Bundle(v, roots);
}

Bundle promote_bundle(const Bundle& v, const se::chow::VarietyPtr& ring) {
  std::vector<Class> roots;
  for (const auto& r : v.roots()) roots.push_back(promote(r, ring));
  return Bundle(ring, roots);
}

}  // namespace

TEST_CASE("law construction and invariants") {
  const auto add = FormalGroupLaw::additive();
  CHECK(add.cap() == 8);
  CHECK(add.has_unit());
  CHECK(add.is_symmetric());
  CHECK(add.is_associative());
  const auto mult = FormalGroupLaw::multiplicative(6);
  CHECK(mult.is_associative());
  CHECK(mult.parameters().size() == 1);
  CHECK(mult.parameters()[0].name == "beta");

  // log u = -log(1 - u) gives u + v - uv.
  std::vector<Rational> log;
  for (int k = 2; k <= 7; ++k) log.push_back(Rational(1, k));
  const auto from_log = FormalGroupLaw::from_logarithm(log, 6);
  CHECK(from_log.series() == from_log.u() + from_log.v() - from_log.u() * from_log.v());

  const auto table = FormalGroupLaw::from_coefficients({{{1, 1}, Rational(-3)}}, 6);
  CHECK(table.is_associative());
  CHECK_THROWS_AS(FormalGroupLaw::from_coefficients({{{2, 1}, Rational(1)}}, 5), se::DomainError);
  CHECK_THROWS_AS(FormalGroupLaw::from_coefficients({{{2, 0}, Rational(1)}}, 5), se::DomainError);
  CHECK_THROWS_AS(FormalGroupLaw::from_coefficients({{{1, 1}, Rational(1)}, {{2, 2}, Rational(1)}}, 5),
                  se::DomainError);
  // Lazard: u + v + a uv + b(u^2 v + u v^2) needs b = 0 at degree 3 unless further terms follow.
  CHECK_THROWS_AS(FormalGroupLaw::from_coefficients({{{2, 1}, Rational(1)}, {{1, 2}, Rational(1)}}, 4),
                  se::DomainError);
}

TEST_CASE("inverse series") {
  const auto add = FormalGroupLaw::additive();
  CHECK(fgl_inverse(add) == -add.u());

  const auto mult = FormalGroupLaw::multiplicative(7);
  Polynomial expected(mult.table(), 8);
  for (std::uint32_t k = 1; k <= 8; ++k) expected = expected - beta(mult).pow(k - 1) * u_power(mult, k);
  CHECK(fgl_inverse(mult) == expected);

  std::mt19937 rng(181);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_law(rng, 7);
    const Polynomial chi = fgl_inverse(f);
    CHECK(f.evaluate(f.u(), chi).is_zero());
    CHECK(f.compose(chi, chi) == f.u());
  }
}

TEST_CASE("g series") {
  CHECK(g_series(FormalGroupLaw::additive()) == Polynomial::constant(FormalGroupLaw::additive().table(), Rational(-1)));
  const auto mult = FormalGroupLaw::multiplicative(6);
  const Polynomial g = g_series(mult);
  // g = -1/(1 - beta u)
  CHECK(se::arith::poly_mul(g, Polynomial::constant(mult.table(), Rational(1)) - beta(mult) * mult.u(), 6) ==
        Polynomial::constant(mult.table(), Rational(-1), 6));

  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_law(rng, 6);
    const Polynomial gs = g_series(f);
    CHECK(gs.coefficient(Monomial()) == Rational(-1));
    const Polynomial chi = fgl_inverse(f);
    // g(chi(u)) g(u) = 1
    const Polynomial prod = se::arith::poly_mul(f.compose(gs, chi), gs, 6);
    CHECK(prod == Polynomial::constant(f.table(), Rational(1), 6));
  }
}

TEST_CASE("h and its square root") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto h = h_series(n, FormalGroupLaw::additive());
    CHECK(h.value == Polynomial::constant(h.tables.elementary, Rational(1)));
    CHECK(sqrt_h_series(n, FormalGroupLaw::additive()).value == Polynomial::constant(h.tables.elementary, Rational(1)));
  }

  const auto mult = FormalGroupLaw::multiplicative(3);
  const auto sh = sqrt_h_series(1, mult);
  const auto& t = sh.tables.elementary;
  const auto s1 = Polynomial::variable(t, "s1");
  const auto b = Polynomial::variable(t, "beta");
  const Polynomial expected = Polynomial::constant(t, Rational(1)) + b * s1 * Rational(1, 2) +
                              (b * s1).pow(2) * Rational(3, 8) + (b * s1).pow(3) * Rational(5, 16);
  CHECK(sh.value == expected);
  const auto h1 = h_series(1, FormalGroupLaw::multiplicative(4));
  Polynomial geometric(h1.tables.elementary, 4);
  const auto bs = Polynomial::variable(h1.tables.elementary, "beta") * Polynomial::variable(h1.tables.elementary, "s1");
  for (std::uint32_t k = 0; k <= 4; ++k) geometric = geometric + bs.pow(k);
  CHECK(h1.value == geometric);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const auto f = random_law(rng, 5);
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto h = h_series(n, f);
      const auto r = sqrt_h_series(n, f);
      CHECK(h.value.coefficient(Monomial()) == Rational(1));
      CHECK(se::arith::poly_mul(r.value, r.value, 5) == h.value.with_cap(5));
    }
  }
}

TEST_CASE("sqrt_h on bundles") {
  const auto p4 = make_proj_space(4);
  const auto v = split(p4, {1, -2, 3});
  CHECK(sqrt_h_apply(v, FormalGroupLaw::additive()) == Class::one(p4));

  const auto mult = FormalGroupLaw::multiplicative();
  const auto ring = coefficient_ring(p4, mult);
  CHECK(ring->parameter_count() == 1);
  const auto vd = dual_roots(v, mult);
  auto both = promote_bundle(v, ring).roots();
  both.insert(both.end(), vd.begin(), vd.end());
  CHECK(sqrt_h_apply(both, mult) == Class::one(ring));
  CHECK(sqrt_h_apply(vd, mult) * sqrt_h_apply(v, mult) == Class::one(ring));
  CHECK(Bundle(p4, dual_roots(v, FormalGroupLaw::additive())).total_chern() == v.dual().total_chern());
  // Chow duals are not duals for the multiplicative law.
  CHECK_FALSE(sqrt_h_apply(v.dual(), mult) * sqrt_h_apply(v, mult) == Class::one(ring));

  // sqrt_h(L)^2 (1 - beta c1(L)) = 1
  const auto b = Class::generator(ring, "beta");
  for (int k = -2; k <= 2; ++k) {
    const auto line = split(p4, {k});
    const Class s = sqrt_h_apply(line, mult);
    CHECK(s * s * (Class::one(ring) - b * promote(line.chern(1), ring)) == Class::one(ring));
  }

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> twist(-3, 3);
  std::uniform_int_distribution<int> rank(1, 2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> a(static_cast<std::size_t>(rank(rng))), c(static_cast<std::size_t>(rank(rng)));
    for (auto& x : a) x = twist(rng);
    for (auto& x : c) x = twist(rng);
    const auto va = split(p4, a);
    const auto vc = split(p4, c);
    CHECK(sqrt_h_apply(va + vc, mult) == sqrt_h_apply(va, mult) * sqrt_h_apply(vc, mult));
  }

  const auto low = FormalGroupLaw::multiplicative(2);
  CHECK_THROWS_AS(sqrt_h_apply(v, low), se::DomainError);
}

TEST_CASE("specialization coherence") {
  const auto p4 = make_proj_space(4);
  const auto v = split(p4, {1, 2});
  const se::orth::OrthBundle f(v);
  CHECK(sqrt_h_apply(v, FormalGroupLaw::additive()) * se::orth::sqrt_euler(f) == se::orth::sqrt_euler(f));

  // beta sqrt_h(L) u against the K-theoretic sqrt Euler class of L + L^dual,
  // under l = 1 - L -> -beta u / (1 - beta u).
  const int cap = 7;
  const auto mult = FormalGroupLaw::multiplicative(cap);
  const auto ring = se::ktheory::KRing::standard(1, cap);
  const Polynomial lk = Polynomial::constant(ring.table(), Rational(1), cap) - ring.variable(0);
  const Polynomial k_class = se::ktheory::sqrt_euler_k(ring, {{lk}, 1});
  const Polynomial bu = beta(mult) * mult.u();
  const Polynomial l_image =
      -se::arith::poly_mul(bu, se::arith::series_inverse(Polynomial::constant(mult.table(), Rational(1), cap) - bu, cap), cap);
  const Polynomial k_image = se::arith::substitute(k_class, {l_image}, mult.table(), cap);

  const auto sh = sqrt_h_series(1, mult);
  const Polynomial sh_u = se::arith::substitute(sh.value, {mult.u(), beta(mult)}, mult.table(), cap);
  CHECK(se::arith::poly_mul(beta(mult) * mult.u(), sh_u, cap) == k_image);
}

TEST_CASE("maximal isotropic comparison") {
  const auto p4 = make_proj_space(4);
  const auto v = split(p4, {1, 2});
  const auto add = FormalGroupLaw::additive();
  const auto even = compare_maximal_isotropics(v, {0, 1}, add);
  CHECK(even.same_parity);
  CHECK(even.equal());
  const auto odd = compare_maximal_isotropics(v, {0}, add);
  CHECK_FALSE(odd.same_parity);
  CHECK_FALSE(odd.equal());
  const auto mult = compare_maximal_isotropics(v, {0, 1}, FormalGroupLaw::multiplicative());
  CHECK(mult.same_parity);
  CHECK_THROWS_AS(compare_maximal_isotropics(v, {5}, add), se::DomainError);
}
