#include "sqrteuler/arith/series.hpp"

#include <vector>

#include "sqrteuler/error.hpp"

namespace se::arith {
namespace {

std::vector<Polynomial> graded_parts(const Polynomial& f, int cap) {
  std::vector<Polynomial> parts(static_cast<std::size_t>(cap) + 1, Polynomial(f.table(), cap));
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() <= cap) parts[static_cast<std::size_t>(m.degree())].add_term(m, c);
  }
  return parts;
}

Polynomial assemble(const std::vector<Polynomial>& parts, const VarTablePtr& table, int cap) {
  Polynomial out(table, cap);
  for (const auto& p : parts) out += p;
  return out;
}

void require_unit_constant(const Polynomial& f0, const char* what) {
  if (!(f0 == Polynomial::constant(f0.table(), Rational(1)))) {
    throw DomainError(std::string(what) + ": constant term must be 1, got " + f0.str());
  }
}

}  // namespace

Polynomial series_inverse(const Polynomial& f, int cap) {
  if (cap < 0) throw DomainError("series_inverse: negative cap");
  auto f_parts = graded_parts(f, cap);
  const Polynomial& f0 = f_parts[0];
  if (!f0.is_constant() || f0.is_zero()) {
    throw DomainError("series_inverse: degree-0 part must be a nonzero rational, got " + f0.str());
  }
  const Rational inv0 = Rational(1) / f0.constant_term();
  std::vector<Polynomial> g(f_parts.size(), Polynomial(f.table(), cap));
  g[0] = Polynomial::constant(f.table(), inv0, cap);
  for (std::size_t d = 1; d < g.size(); ++d) {
    Polynomial acc(f.table(), cap);
    for (std::size_t j = 1; j <= d; ++j) {
      if (f_parts[j].is_zero() || g[d - j].is_zero()) continue;
      acc += poly_mul(f_parts[j], g[d - j], cap);
    }
    g[d] = acc * (-inv0);
  }
  return assemble(g, f.table(), cap);
}

Polynomial series_sqrt(const Polynomial& f, int cap) {
  if (cap < 0) throw DomainError("series_sqrt: negative cap");
  auto f_parts = graded_parts(f, cap);
  require_unit_constant(f_parts[0], "series_sqrt");
  std::vector<Polynomial> g(f_parts.size(), Polynomial(f.table(), cap));
  g[0] = Polynomial::constant(f.table(), Rational(1), cap);
  for (std::size_t d = 1; d < g.size(); ++d) {
    Polynomial acc = f_parts[d];
    for (std::size_t j = 1; j < d; ++j) {
      if (g[j].is_zero() || g[d - j].is_zero()) continue;
      acc -= poly_mul(g[j], g[d - j], cap);
    }
    g[d] = acc * Rational(1, 2);
  }
  return assemble(g, f.table(), cap);
}

Polynomial series_exp(const Polynomial& f, int cap) {
  if (cap < 0) throw DomainError("series_exp: negative cap");
  const Polynomial x = f.with_cap(cap);
  if (!x.is_zero() && *x.min_degree() == 0) throw DomainError("series_exp: argument has a degree-0 part");
  Polynomial out = Polynomial::constant(f.table(), Rational(1), cap);
  Polynomial power = out;
  for (int k = 1; k <= cap; ++k) {
    power = poly_mul(power, x, cap);
    if (power.is_zero()) break;
    out += power * inverse_factorial(k);
  }
  return out;
}

Polynomial series_log(const Polynomial& f, int cap) {
  if (cap < 0) throw DomainError("series_log: negative cap");
  const Polynomial g = f.with_cap(cap);
  require_unit_constant(graded_parts(g, cap)[0], "series_log");
  const Polynomial x = g - Polynomial::constant(f.table(), Rational(1), cap);
  Polynomial out(f.table(), cap);
  Polynomial power = Polynomial::constant(f.table(), Rational(1), cap);
  for (int k = 1; k <= cap; ++k) {
    power = poly_mul(power, x, cap);
    if (power.is_zero()) break;
    out += power * Rational(k % 2 == 1 ? 1 : -1, k);
  }
  return out;
}

}  // namespace se::arith
