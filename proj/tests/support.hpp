#pragma once

#include <random>

#include "sqrteuler/arith/polynomial.hpp"

namespace se::test {

inline arith::Rational random_rational(std::mt19937& rng, int bound = 5) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, 3);
  return arith::Rational(num(rng), den(rng));
}

// Sparse polynomial with up to `terms` terms of weighted degree <= max_degree.
inline arith::Polynomial random_polynomial(std::mt19937& rng, const arith::VarTablePtr& table, int terms,
                                           int max_exponent, std::optional<int> cap = std::nullopt) {
  arith::Polynomial p(table, cap);
  std::uniform_int_distribution<int> count(0, terms);
  std::uniform_int_distribution<std::uint32_t> exponent(0, static_cast<std::uint32_t>(max_exponent));
  const int n = count(rng);
  for (int t = 0; t < n; ++t) {
    std::vector<arith::Monomial::Entry> entries;
    for (std::uint32_t v = 0; v < table->size(); ++v) entries.emplace_back(v, exponent(rng));
    p.add_term(arith::Monomial(entries, *table), random_rational(rng));
  }
  return p;
}

}  // namespace se::test
