#include "sqrteuler/arith/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "sqrteuler/error.hpp"

namespace se::arith {

VarTable::VarTable(std::vector<Variable> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].degree < 0) throw DomainError("negative variable degree for '" + vars_[i].name + "'");
    for (std::size_t j = 0; j < i; ++j) {
      if (vars_[j].name == vars_[i].name) throw StructuralError("duplicate variable name '" + vars_[i].name + "'");
    }
  }
}

VarTablePtr VarTable::make(std::vector<Variable> vars) { return std::make_shared<const VarTable>(std::move(vars)); }

std::optional<std::size_t> VarTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t VarTable::require(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw StructuralError("unknown variable '" + std::string(name) + "'");
}

VarTablePtr VarTable::extended(const std::vector<Variable>& extra) const {
  std::vector<Variable> all = vars_;
  all.insert(all.end(), extra.begin(), extra.end());
  return make(std::move(all));
}

bool VarTable::is_prefix_of(const VarTable& other) const {
  if (vars_.size() > other.vars_.size()) return false;
  return std::equal(vars_.begin(), vars_.end(), other.vars_.begin());
}

bool same_table(const VarTablePtr& a, const VarTablePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Entry> entries, const VarTable& table) {
  std::sort(entries.begin(), entries.end());
  for (const auto& [var, exp] : entries) {
    if (var >= table.size()) throw StructuralError("monomial variable index out of range");
    if (exp == 0) continue;
    if (!entries_.empty() && entries_.back().first == var) {
      entries_.back().second += exp;
    } else {
      entries_.emplace_back(var, exp);
    }
    degree_ += static_cast<int>(exp) * table[var].degree;
  }
}

Monomial Monomial::variable(std::size_t index, std::uint32_t exponent, const VarTable& table) {
  return Monomial({{static_cast<std::uint32_t>(index), exponent}}, table);
}

std::uint32_t Monomial::exponent(std::size_t index) const {
  for (const auto& [var, exp] : entries_) {
    if (var == index) return exp;
    if (var > index) break;
  }
  return 0;
}

bool Monomial::divides(const Monomial& other) const {
  auto it = other.entries_.begin();
  for (const auto& [var, exp] : entries_) {
    while (it != other.entries_.end() && it->first < var) ++it;
    if (it == other.entries_.end() || it->first != var || it->second < exp) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  Monomial out;
  out.degree_ = degree_ + rhs.degree_;
  out.entries_.reserve(entries_.size() + rhs.entries_.size());
  auto a = entries_.begin();
  auto b = rhs.entries_.begin();
  while (a != entries_.end() || b != rhs.entries_.end()) {
    if (b == rhs.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial out;
  out.degree_ = degree_ - divisor.degree_;
  for (const auto& [var, exp] : entries_) {
    const std::uint32_t e = exp - divisor.exponent(var);
    if (e > 0) out.entries_.emplace_back(var, e);
  }
  return out;
}

std::string Monomial::str(const VarTable& table) const {
  if (entries_.empty()) return "1";
  std::string out;
  for (const auto& [var, exp] : entries_) {
    if (!out.empty()) out += '*';
    out += table[var].name;
    if (exp > 1) out += '^' + std::to_string(exp);
  }
  return out;
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
  auto x = a.entries_.begin();
  auto y = b.entries_.begin();
  while (x != a.entries_.end() && y != b.entries_.end()) {
    if (x->first != y->first) return x->first < y->first;  // a has the earlier variable
    if (x->second != y->second) return x->second > y->second;
    ++x;
    ++y;
  }
  return x != a.entries_.end() && y == b.entries_.end();
}

// -------------------------------------------------------------- Polynomial

std::optional<int> min_cap(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

Polynomial::Polynomial(VarTablePtr table, std::optional<int> cap) : table_(std::move(table)), cap_(cap) {
  if (!table_) throw StructuralError("polynomial without variable table");
}

Polynomial Polynomial::constant(VarTablePtr table, const Rational& c, std::optional<int> cap) {
  Polynomial p(std::move(table), cap);
  p.add_term(Monomial(), c);
  return p;
}

Polynomial Polynomial::variable(VarTablePtr table, std::string_view name, std::optional<int> cap) {
  const std::size_t i = table->require(name);
  return variable(std::move(table), i, cap);
}

Polynomial Polynomial::variable(VarTablePtr table, std::size_t index, std::optional<int> cap) {
  Polynomial p(table, cap);
  p.add_term(Monomial::variable(index, 1, *table), Rational(1));
  return p;
}

Polynomial Polynomial::monomial(VarTablePtr table, const Monomial& m, const Rational& c, std::optional<int> cap) {
  Polynomial p(std::move(table), cap);
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const { return coefficient(Monomial()); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> Polynomial::min_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.degree();
}

std::optional<int> Polynomial::max_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.degree();
}

bool Polynomial::is_homogeneous() const { return terms_.empty() || *min_degree() == *max_degree(); }

Polynomial Polynomial::homogeneous_part(int degree) const {
  Polynomial out(table_, cap_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() == degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

Polynomial Polynomial::truncated(int cap) const {
  Polynomial out(table_, min_cap(cap_, cap));
  for (const auto& [m, c] : terms_) {
    if (m.degree() <= *out.cap_) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

Polynomial Polynomial::with_cap(std::optional<int> cap) const {
  Polynomial out = cap ? truncated(*cap) : *this;
  out.cap_ = cap;
  return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  if (cap_ && m.degree() > *cap_) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (!same_table(table_, other.table_)) throw StructuralError("polynomials over different variable tables");
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  check_compatible(rhs);
  cap_ = min_cap(cap_, rhs.cap_);
  if (cap_) *this = truncated(*cap_);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  check_compatible(rhs);
  cap_ = min_cap(cap_, rhs.cap_);
  if (cap_) *this = truncated(*cap_);
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b, std::optional<int> cap) {
  if (!same_table(a.table(), b.table())) throw StructuralError("polynomials over different variable tables");
  Polynomial out(a.table(), min_cap(cap, min_cap(a.cap(), b.cap())));
  const std::optional<int> limit = out.cap();
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (limit && ma.degree() + mb.degree() > *limit) {
        // Terms of b are sorted by degree, so nothing further fits.
        break;
      }
      out.add_term(ma * mb, ca * cb);
    }
  }
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return poly_mul(a, b, std::nullopt); }

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(table_, Rational(1), cap_);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c.sign() < 0;
    const Rational magnitude = negative ? -c : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << magnitude;
    } else if (magnitude.is_one()) {
      os << m.str(*table_);
    } else {
      os << magnitude << '*' << m.str(*table_);
    }
  }
  return os.str();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!same_table(a.table_, b.table_)) return false;
  return a.terms_ == b.terms_;
}

Polynomial substitute(const Polynomial& p, const std::vector<std::optional<Polynomial>>& images,
                      const VarTablePtr& target, std::optional<int> cap) {
  if (images.size() != p.table()->size()) throw StructuralError("substitution arity mismatch");
  Polynomial out(target, cap);
  // Powers of each image are reused across terms.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t var, std::uint32_t exp) -> const Polynomial& {
    if (!images[var]) throw StructuralError("substitution leaves variable '" + (*p.table())[var].name + "' unmapped");
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, Rational(1), cap));
    while (cache.size() <= exp) cache.push_back(poly_mul(cache.back(), *images[var], cap));
    return cache[exp];
  };
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c, cap);
    for (const auto& [var, exp] : m.entries()) {
      term = poly_mul(term, power(var, exp), cap);
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

Polynomial embed(const Polynomial& p, const VarTablePtr& target) {
  if (!p.table()->is_prefix_of(*target)) throw StructuralError("cannot embed polynomial: table is not a prefix");
  Polynomial out(target, p.cap());
  for (const auto& [m, c] : p.terms()) out.add_term(Monomial(m.entries(), *target), c);
  return out;
}

}  // namespace se::arith
