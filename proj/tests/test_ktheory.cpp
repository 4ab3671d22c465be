#include <random>

#include "doctest.h"
#include "sqrteuler/arith/series.hpp"
#include "sqrteuler/error.hpp"
#include "sqrteuler/ktheory/kclass.hpp"
#include "sqrteuler/ktheory/model.hpp"

using namespace se::ktheory;
using se::arith::Monomial;
using se::chow::make_proj_space;
using se::chow::section_model;

namespace {

// Taylor coefficient of sqrt(1 - x) at x^i, negated: the generalized binomial
// product (1/2)(1/2 - 1)...(1/2 - i + 1)/i! times (-1)^{i+1}.
Rational taylor_sqrt_coefficient(long i) {
  Rational c(1);
  for (long j = 0; j < i; ++j) c *= (Rational(1, 2) - Rational(j)) / Rational(j + 1);
  return i % 2 == 0 ? -c : c;
}

// Independent expansion of L^dual for a single variable: sum l^k.
Polynomial geometric(const KRing& ring, std::size_t j) {
  Polynomial out = ring.zero();
  for (unsigned k = 0; k <= static_cast<unsigned>(ring.cap()); ++k) out += ring.variable(j).pow(k);
  return out;
}

Class H(const se::chow::VarietyPtr& v) { return Class::generator(v, "H"); }

Bundle split(const se::chow::VarietyPtr& v, const std::vector<int>& twists) {
  std::vector<Class> roots;
  for (int t : twists) roots.push_back(H(v) * Rational(t));
  return Bundle(v, roots);
}

}  // namespace

TEST_CASE("square-root coefficients") {
  CHECK(sqrt_line_coefficient(1) == Rational(1, 2));
  CHECK(sqrt_line_coefficient(2) == Rational(1, 8));
  CHECK(sqrt_line_coefficient(3) == Rational(1, 16));
  CHECK(sqrt_line_coefficient(4) == Rational(5, 128));
  for (long i = 1; i <= 12; ++i) CHECK(sqrt_line_coefficient(i) == taylor_sqrt_coefficient(i));
  CHECK_THROWS_AS(sqrt_line_coefficient(0), se::DomainError);
}

TEST_CASE("sqrt_line examples") {
  const KRing ring = KRing::standard(1, 2);
  CHECK(sqrt_line(ring, ring.constant(Rational(1))) == ring.constant(Rational(1)));
  const Polynomial L = ring.line({1});
  const Polynomial l = ring.variable(0);
  const Polynomial s = sqrt_line(ring, L);
  CHECK(s == ring.constant(Rational(1)) - l * Rational(1, 2) - l * l * Rational(1, 8));
  CHECK(se::arith::poly_mul(s, s, 2) == L);
  const KRing big = KRing::standard(1, 6);
  const Polynomial M = big.line({3});
  CHECK(se::arith::poly_mul(sqrt_line(big, M), sqrt_line(big, dual_line(big, M)), 6) == big.constant(Rational(1)));
  CHECK_THROWS_AS(sqrt_line(ring, ring.constant(Rational(2))), se::DomainError);
  CHECK_THROWS_AS(sqrt_line(ring, L + l * l), se::DomainError);
}

TEST_CASE("sqrt_line identities on random lines") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<long> twist(-3, 3);
  for (int cap = 1; cap <= 10; ++cap) {
    const KRing ring = KRing::standard(2, cap);
    for (int round = 0; round < 3; ++round) {
      const Polynomial L = ring.line({twist(rng), twist(rng)});
      const Polynomial M = ring.line({twist(rng), twist(rng)});
      const Polynomial sl = sqrt_line(ring, L);
      CHECK(se::arith::poly_mul(sl, sl, cap) == L);
      CHECK(sqrt_line(ring, se::arith::poly_mul(L, M, cap)) == se::arith::poly_mul(sl, sqrt_line(ring, M), cap));
    }
  }
}

TEST_CASE("euler_k") {
  const KRing ring = KRing::standard(2, 4);
  CHECK(euler_k(ring, {ring.constant(Rational(1))}).is_zero());
  const Polynomial L1 = ring.line({1, 0});
  const Polynomial L2 = ring.line({0, 1});
  CHECK(euler_k(ring, {L1}) == ring.constant(Rational(1)) - geometric(ring, 0));
  CHECK(euler_k(ring, {L1, L2}) == se::arith::poly_mul(euler_k(ring, {L1}), euler_k(ring, {L2}), 4));
}

TEST_CASE("K-theoretic square root of the Euler class") {
  const KRing ring = KRing::standard(1, 6);
  const Polynomial L = ring.line({1});
  const KOrthBundle f{{L}, 1};
  const Polynomial one = ring.constant(Rational(1));
  const Polynomial dual = geometric(ring, 0);
  // Independent expansion: e(L + L^dual) = (1 - L^dual)(1 - L).
  const Polynomial e = se::arith::poly_mul(one - dual, one - L, 6);
  const Polynomial s = sqrt_euler_k(ring, f);
  CHECK(se::arith::poly_mul(s, s, 6) == -e);
  CHECK(euler_k(ring, f) == e);
  CHECK(sqrt_euler_k(ring, KOrthBundle{{one}, 1}).is_zero());
  CHECK(sqrt_euler_k(ring, KOrthBundle{{L}, -1}) == -s);
}

TEST_CASE("K-theoretic squaring and reduction on random bundles") {
  std::mt19937 rng(170);
  std::uniform_int_distribution<long> twist(-2, 2);
  for (int cap = 2; cap <= 7; ++cap) {
    const KRing ring = KRing::standard(2, cap);
    for (std::size_t n = 0; n <= 3; ++n) {
      KOrthBundle f{{}, n % 2 == 0 ? 1 : -1};
      for (std::size_t i = 0; i < n; ++i) f.positive.push_back(ring.line({twist(rng), twist(rng)}));
      const Polynomial s = sqrt_euler_k(ring, f);
      const Polynomial e = euler_k(ring, f);
      CHECK(se::arith::poly_mul(s, s, cap) == (n % 2 == 0 ? e : -e));
      for (std::size_t mask = 0; mask < (1U << n); ++mask) {
        std::vector<std::size_t> k;
        std::vector<Polynomial> lines;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1U << i)) {
            k.push_back(i);
            lines.push_back(f.positive[i]);
          }
        }
        const Polynomial rhs = se::arith::poly_mul(
            se::arith::poly_mul(sqrt_line(ring, det(ring, lines)), euler_k(ring, lines), cap),
            sqrt_euler_k(ring, reduce(f, k)), cap);
        CHECK(s == rhs);
      }
    }
  }
}

TEST_CASE("Chern character helpers") {
  const auto p3 = make_proj_space(3);
  const Class h = H(p3);
  // ch(1 - L^dual) for L = O(1).
  CHECK(ch_euler(split(p3, {1})) == Class::one(p3) - se::chow::exp_class(-h));
  CHECK(ch_euler(split(p3, {1, 2}).quotient(h * Rational(2))) == ch_euler(split(p3, {1})));
  CHECK(ch_sqrt_euler(se::orth::OrthBundle(split(p3, {1}))).part(1) == h);
  // Todd class of P^3: td(T) = (H / (1 - e^{-H}))^4 integrates to 1.
  CHECK(todd_root(h).pow(4).integrate() == Rational(1));
}

TEST_CASE("K-theoretic localized class on P^4 along a plane") {
  const auto p4 = make_proj_space(4);
  const se::orth::OrthBundle f(split(p4, {1, 1}));
  const KLocalizedSqrtEuler k(f, section_model(f.positive_part(), {0, 1}));
  const Class xi = Class::one(p4);
  const Class out = k.apply(xi);
  // GRR form of the localization identity.
  CHECK(ch_gysin_push(k.center(), out) == ch_sqrt_euler(f) * xi);
  // Leading term agrees with the Chow-level class.
  const Class chow_class = k.chow_class().apply(xi);
  CHECK(out.part(*chow_class.lowest_degree()) == chow_class);
  for (int d = 0; d < *chow_class.lowest_degree(); ++d) CHECK(out.part(d).is_zero());
  // Augmentation coordinates of the result.
  const auto aug = to_augmentation(out);
  CHECK(aug.value.constant_term() == Rational(1));
}

TEST_CASE("K-theoretic localized class on random models") {
  std::mt19937 rng(171);
  std::uniform_int_distribution<int> twist(-1, 2);
  for (int m = 1; m <= 4; ++m) {
    const auto y = make_proj_space(m);
    for (int round = 0; round < 3; ++round) {
      const int cut = 1 + round % std::min(m, 2);
      std::vector<int> twists(static_cast<std::size_t>(cut), 1);
      twists.push_back(twist(rng));
      const se::orth::OrthBundle f(split(y, twists), round == 1 ? -1 : 1);
      std::vector<std::size_t> s;
      for (int i = 0; i < cut; ++i) s.push_back(static_cast<std::size_t>(i));
      const KLocalizedSqrtEuler k(f, section_model(f.positive_part(), s));
      for (unsigned e = 0; e <= static_cast<unsigned>(m); ++e) {
        const Class xi = se::chow::exp_class(H(y)).pow(e);
        CHECK(ch_gysin_push(k.center(), k.apply(xi)) == ch_sqrt_euler(f) * xi);
        const Class z = k.chow_class().localized().blowup()->exceptional.hyperplane();
        KDecomposition dec = k.canonical(xi);
        dec.gamma = z + Class::one(z.variety());
        const Bundle rel = k.center().normal.pullback(k.chow_class().localized().blowup()->exceptional.pullback).twist(z);
        dec.beta = -k.chow_class().localized().blowup()->push_to_center(*dec.gamma * todd(rel));
        CHECK(k.apply(xi, dec) == k.apply(xi));
      }
    }
  }
}

TEST_CASE("K-theoretic localized class degenerate inputs") {
  const auto p3 = make_proj_space(3);
  const se::orth::OrthBundle f(split(p3, {1, 2}));
  const KLocalizedSqrtEuler k(f, section_model(f.positive_part(), {0}));
  const auto& x = k.center().source;
  const Class beta = Class::one(x) + H(x);
  const Class xi = ch_gysin_push(k.center(), beta);
  const KDecomposition only_beta{Class::zero(p3), std::nullopt, beta};
  CHECK(k.apply(xi, only_beta) == ch_sqrt_euler(f.pullback(k.center().pullback)) * beta);
  CHECK_THROWS_AS(k.apply(xi, KDecomposition{Class::zero(p3), std::nullopt, Class::one(x)}), se::DomainError);
  // Trivial section: nothing to blow up, the reduction formula applies directly.
  const se::orth::OrthBundle g(split(p3, {2}));
  const KLocalizedSqrtEuler k0(g, section_model(g.positive_part(), {}));
  CHECK(k0.apply(H(p3)) == ch_sqrt_euler(g) * H(p3));
}
