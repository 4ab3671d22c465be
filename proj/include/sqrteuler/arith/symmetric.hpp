#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sqrteuler/arith/polynomial.hpp"

namespace se::arith {

// Tables [u_1..u_n, params...] and [s_1..s_n, params...] with deg s_i = i.
// Parameters keep their own degrees (normally 0).
struct SymmetricTables {
  VarTablePtr roots;
  VarTablePtr elementary;
  std::size_t n = 0;
};

SymmetricTables symmetric_tables(std::size_t n, const std::vector<Variable>& params = {},
                                 const std::string& root_prefix = "u", const std::string& elementary_prefix = "s");

// e_k(u_1..u_n) over tables.roots.
Polynomial elementary_polynomial(const SymmetricTables& tables, std::size_t k, std::optional<int> cap = std::nullopt);

// Rewrites a symmetric f over tables.roots in the elementary basis.
// Throws DomainError if f is not symmetric.
Polynomial to_elementary_symmetric(const Polynomial& f, const SymmetricTables& tables);

// Substitutes s_i -> e_i(u).
Polynomial from_elementary_symmetric(const Polynomial& f, const SymmetricTables& tables);

}  // namespace se::arith
