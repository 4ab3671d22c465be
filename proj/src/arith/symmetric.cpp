#include "sqrteuler/arith/symmetric.hpp"

#include <algorithm>

#include "sqrteuler/error.hpp"

namespace se::arith {

SymmetricTables symmetric_tables(std::size_t n, const std::vector<Variable>& params, const std::string& root_prefix,
                                 const std::string& elementary_prefix) {
  std::vector<Variable> roots;
  std::vector<Variable> elementary;
  for (std::size_t i = 1; i <= n; ++i) {
    roots.push_back({root_prefix + std::to_string(i), 1});
    elementary.push_back({elementary_prefix + std::to_string(i), static_cast<int>(i)});
  }
  roots.insert(roots.end(), params.begin(), params.end());
  elementary.insert(elementary.end(), params.begin(), params.end());
  return {VarTable::make(std::move(roots)), VarTable::make(std::move(elementary)), n};
}

Polynomial elementary_polynomial(const SymmetricTables& tables, std::size_t k, std::optional<int> cap) {
  Polynomial e = Polynomial::constant(tables.roots, Rational(1), cap);
  if (k == 0) return e;
  if (k > tables.n) return Polynomial(tables.roots, cap);
  // Coefficient of t^k in prod (1 + t u_i), built incrementally.
  std::vector<Polynomial> acc(k + 1, Polynomial(tables.roots, cap));
  acc[0] = e;
  for (std::size_t i = 0; i < tables.n; ++i) {
    const Polynomial u = Polynomial::variable(tables.roots, i, cap);
    for (std::size_t j = std::min(k, i + 1); j >= 1; --j) acc[j] += poly_mul(acc[j - 1], u, cap);
  }
  return acc[k];
}

Polynomial to_elementary_symmetric(const Polynomial& f, const SymmetricTables& tables) {
  if (!same_table(f.table(), tables.roots)) throw StructuralError("to_elementary_symmetric: unexpected variable table");
  const std::size_t n = tables.n;
  const std::optional<int> cap = f.cap();
  std::vector<Polynomial> e;
  for (std::size_t k = 0; k <= n; ++k) e.push_back(elementary_polynomial(tables, k, cap));

  Polynomial rest = f;
  Polynomial out(tables.elementary, cap);
  while (!rest.is_zero()) {
    // Lex-largest root exponent vector among the top-degree terms.
    const int top = *rest.max_degree();
    const Monomial* lead = nullptr;
    std::vector<std::uint32_t> lead_exp;
    for (const auto& [m, c] : rest.terms()) {
      if (m.degree() != top) continue;
      std::vector<std::uint32_t> exp(n);
      for (std::size_t i = 0; i < n; ++i) exp[i] = m.exponent(i);
      if (lead == nullptr || exp > lead_exp) {
        lead = &m;
        lead_exp = std::move(exp);
      }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (lead_exp[i] < lead_exp[i + 1]) {
        throw DomainError("to_elementary_symmetric: input is not symmetric (term " + lead->str(*tables.roots) + ")");
      }
    }
    // Split the leading monomial into its root part and its parameter part.
    std::vector<Monomial::Entry> param_entries;
    for (const auto& entry : lead->entries()) {
      if (entry.first >= n) param_entries.push_back(entry);
    }
    const Monomial param_root_side(param_entries, *tables.roots);
    std::vector<Monomial::Entry> s_entries;
    for (const auto& [var, exp] : param_entries) s_entries.emplace_back(var, exp);
    Polynomial sub = Polynomial::monomial(tables.roots, param_root_side, rest.coefficient(*lead), cap);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t power = lead_exp[i] - (i + 1 < n ? lead_exp[i + 1] : 0);
      if (power == 0) continue;
      s_entries.emplace_back(static_cast<std::uint32_t>(i), power);
      sub = poly_mul(sub, e[i + 1].pow(power), cap);
    }
    out.add_term(Monomial(s_entries, *tables.elementary), rest.coefficient(*lead));
    rest -= sub;
  }
  return out;
}

Polynomial from_elementary_symmetric(const Polynomial& f, const SymmetricTables& tables) {
  if (!same_table(f.table(), tables.elementary)) throw StructuralError("from_elementary_symmetric: unexpected variable table");
  std::vector<std::optional<Polynomial>> images;
  for (std::size_t k = 1; k <= tables.n; ++k) images.emplace_back(elementary_polynomial(tables, k, f.cap()));
  for (std::size_t i = tables.n; i < tables.elementary->size(); ++i) {
    images.emplace_back(Polynomial::variable(tables.roots, i, f.cap()));
  }
  return substitute(f, images, tables.roots, f.cap());
}

}  // namespace se::arith
