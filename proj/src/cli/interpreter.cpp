#include "sqrteuler/cli/interpreter.hpp"

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <variant>

#include "sqrteuler/arith/series.hpp"
#include "sqrteuler/chow/localized.hpp"
#include "sqrteuler/chow/models.hpp"
#include "sqrteuler/io/serialize.hpp"
#include "sqrteuler/ktheory/kclass.hpp"
#include "sqrteuler/orth/orth.hpp"

namespace se::cli {

namespace {

using arith::Polynomial;
using arith::Rational;
using chow::Bundle;
using chow::Class;
using chow::SectionModel;
using chow::VarietyPtr;
using orth::OrthBundle;
using orth::VerificationReport;

constexpr std::size_t kLineVariables = 6;

struct Space {
  VarietyPtr variety;
};
struct Series {
  Polynomial poly;
};
struct Law {
  std::shared_ptr<const fgl::FormalGroupLaw> law;
};

using Value = std::variant<Rational, Class, Bundle, OrthBundle, SectionModel, Space, Series, Law, VerificationReport>;

const char* type_name(const Value& v) {
  static const char* const names[] = {"a number",  "a class",  "a bundle", "an orthogonal bundle",    "a section",
                                      "a space",   "a series", "a law",    "a verification report"};
  return names[v.index()];
}

// How classes move between a space and the space it was built over.
struct MapData {
  VarietyPtr ambient;
  std::function<Class(const Class&)> push;
  std::function<Class(const Class&)> pull;
  std::optional<chow::Embedding> embedding;
  std::optional<chow::ProjectiveBundle> pbundle;
};

std::string describe_bundle(const Bundle& b) {
  return "rank " + std::to_string(b.rank()) + " on " + b.base()->name() + ", c = " + b.total_chern().str();
}

std::string describe(const Value& v) {
  struct Visitor {
    std::string operator()(const Rational& r) const { return r.str(); }
    std::string operator()(const Class& c) const { return c.str(); }
    std::string operator()(const Bundle& b) const { return describe_bundle(b); }
    std::string operator()(const OrthBundle& f) const {
      return "orthogonal rank " + std::to_string(f.rank()) + ", orientation " + std::to_string(f.sign()) +
             ", positive part " + describe_bundle(f.positive_part());
    }
    std::string operator()(const SectionModel& s) const {
      std::string out = "section of rank " + std::to_string(s.roots.size()) + " in " + describe_bundle(s.bundle);
      if (s.empty) return out + ", nowhere zero";
      return out + ", zero locus " + s.embedding().source->name();
    }
    std::string operator()(const Space& s) const {
      return s.variety->name() + " of dimension " + std::to_string(s.variety->dimension());
    }
    std::string operator()(const Series& s) const { return s.poly.str(); }
    std::string operator()(const Law& l) const {
      return l.law->name() + " law, F(u, v) = " + l.law->series().with_cap(l.law->cap()).str();
    }
    std::string operator()(const VerificationReport& r) const {
      std::string out;
      for (const auto& c : r.checks) {
        if (!out.empty()) out += "; ";
        out += c.identity + (c.passed() ? ": holds" : ": fails");
      }
      return out.empty() ? "no identities" : out;
    }
  };
  return std::visit(Visitor{}, v);
}

class Interpreter {
 public:
  explicit Interpreter(const Options& options)
      : options_(options), kring_(line_names(), options.cap) {
    if (options.cap < 1) throw DomainError("cap must be at least 1");
  }

  StatementResult execute(const Statement& st) {
    StatementResult out;
    out.line = st.pos.line;
    out.kind = kind_name(st.kind);
    out.source = st.source;
    switch (st.kind) {
      case Statement::Kind::Use: {
        const Value v = lookup_declared(st.name, st.pos);
        current_ = as<Space>(v, st.pos, "use").variety;
        out.result = current_->name();
        break;
      }
      case Statement::Kind::Print:
        out.result = describe(eval(*st.expr));
        break;
      case Statement::Kind::Check:
        check(st, out);
        break;
      case Statement::Kind::Integrate: {
        const VarietyPtr space = as<Space>(eval(*st.on), st.on->pos, "integrate ... on").variety;
        const Value v = with_space(space, [&] { return eval(*st.expr); });
        Class c = to_class(v, space, st.expr->pos);
        if (!chow::same_variety(c.variety(), space)) {
          throw ScriptError(st.expr->pos, "class lives on " + c.variety()->name() + ", not on " + space->name());
        }
        out.result = c.integrate().str();
        break;
      }
      default:
        declare(st, out);
        break;
    }
    return out;
  }

 private:
  static std::vector<std::string> line_names() {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= kLineVariables; ++i) names.push_back("l" + std::to_string(i));
    return names;
  }

  template <typename T>
  static const T& as(const Value& v, Position pos, const std::string& context) {
    if (const T* p = std::get_if<T>(&v)) return *p;
    static const Value probe = T{};
    throw ScriptError(pos, context + " expects " + type_name(probe) + ", got " + type_name(v));
  }

  Value with_space(const VarietyPtr& space, const std::function<Value()>& f) {
    const VarietyPtr saved = current_;
    current_ = space;
    try {
      Value result = f();
      current_ = saved;
      return result;
    } catch (...) {
      current_ = saved;
      throw;
    }
  }

  void declare(const Statement& st, StatementResult& out) {
    if (env_.count(st.name)) throw ScriptError(st.pos, "'" + st.name + "' is already defined");
    Value v;
    if (st.kind == Statement::Kind::Bundle && st.on) {
      const VarietyPtr space = as<Space>(eval(*st.on), st.on->pos, "bundle ... on").variety;
      v = with_space(space, [&] { return eval(*st.expr); });
    } else {
      v = eval(*st.expr);
    }
    const Position pos = st.expr->pos;
    switch (st.kind) {
      case Statement::Kind::Space:
        as<Space>(v, pos, "space");
        current_ = std::get<Space>(v).variety;
        break;
      case Statement::Kind::Bundle:
        if (std::holds_alternative<Rational>(v)) {
          throw ScriptError(pos, "bundle expects a bundle, got a number");
        }
        as<Bundle>(v, pos, "bundle");
        break;
      case Statement::Kind::Orth:
        as<OrthBundle>(v, pos, "orth");
        if (st.orientation && *st.orientation == -1) v = std::get<OrthBundle>(v).flipped();
        break;
      case Statement::Kind::Section:
        as<SectionModel>(v, pos, "section");
        break;
      case Statement::Kind::Law:
        as<Law>(v, pos, "law");
        laws_.push_back(std::get<Law>(v));
        break;
      default:
        break;
    }
    out.result = describe(v);
    env_.emplace(st.name, std::move(v));
  }

  void check(const Statement& st, StatementResult& out) {
    const Value lhs = eval(*st.expr);
    if (!st.rhs) {
      if (const auto* r = std::get_if<VerificationReport>(&lhs)) {
        out.passed = r->passed();
        for (const auto& c : r->checks) {
          out.lhs += (out.lhs.empty() ? "" : "; ") + c.lhs.str();
          out.rhs += (out.rhs.empty() ? "" : "; ") + c.rhs.str();
        }
        return;
      }
      throw ScriptError(st.expr->pos, "check expects 'a == b' or a verification report, got " +
                                          std::string(type_name(lhs)));
    }
    const Value rhs = eval(*st.rhs);
    out.lhs = describe(lhs);
    out.rhs = describe(rhs);
    out.passed = equal(lhs, rhs, st.rhs->pos);
  }

  bool equal(const Value& a, const Value& b, Position pos) {
    if (is_classy(a) || is_classy(b)) {
      if (std::holds_alternative<Series>(a) || std::holds_alternative<Series>(b)) {
        const Series x = to_series(a, pos), y = to_series(b, pos);
        return x.poly == y.poly;
      }
      auto [x, y] = unify(a, b, pos);
      return x == y;
    }
    if (std::holds_alternative<Bundle>(a) && std::holds_alternative<Bundle>(b)) {
      const auto& x = std::get<Bundle>(a);
      const auto& y = std::get<Bundle>(b);
      return x.rank() == y.rank() && x.total_chern() == y.total_chern();
    }
    if (std::holds_alternative<OrthBundle>(a) && std::holds_alternative<OrthBundle>(b)) {
      const auto& x = std::get<OrthBundle>(a);
      const auto& y = std::get<OrthBundle>(b);
      return x.rank() == y.rank() && x.sign() == y.sign() &&
             x.positive_part().total_chern() == y.positive_part().total_chern();
    }
    throw ScriptError(pos, std::string("cannot compare ") + type_name(a) + " with " + type_name(b));
  }

  static bool is_classy(const Value& v) {
    return std::holds_alternative<Rational>(v) || std::holds_alternative<Class>(v) ||
           std::holds_alternative<Series>(v);
  }

  Series to_series(const Value& v, Position pos) const {
    if (const auto* s = std::get_if<Series>(&v)) return *s;
    if (const auto* r = std::get_if<Rational>(&v)) return {Polynomial::constant(kring_.table(), *r, options_.cap)};
    throw ScriptError(pos, std::string("expected a series, got ") + type_name(v));
  }

  Class to_class(const Value& v, const VarietyPtr& space, Position pos) const {
    if (const auto* c = std::get_if<Class>(&v)) return *c;
    if (const auto* r = std::get_if<Rational>(&v)) {
      if (!space) throw ScriptError(pos, "a number needs a space to become a class");
      return Class::constant(space, *r);
    }
    throw ScriptError(pos, std::string("expected a class, got ") + type_name(v));
  }

  // Brings two classes (or a class and a number) onto a common ring.
  std::pair<Class, Class> unify(const Value& a, const Value& b, Position pos) const {
    if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b)) {
      const VarietyPtr p = chow::point();
      return {Class::constant(p, std::get<Rational>(a)), Class::constant(p, std::get<Rational>(b))};
    }
    const VarietyPtr space =
        std::holds_alternative<Class>(a) ? std::get<Class>(a).variety() : std::get<Class>(b).variety();
    Class x = to_class(a, space, pos);
    Class y = to_class(b, space, pos);
    if (chow::same_variety(x.variety(), y.variety())) return {x, y};
    if (extends(y.variety(), x.variety())) return {fgl::promote(x, y.variety()), y};
    if (extends(x.variety(), y.variety())) return {x, fgl::promote(y, x.variety())};
    throw ScriptError(pos, "classes live on different spaces " + x.variety()->name() + " and " + y.variety()->name());
  }

  static bool extends(const VarietyPtr& big, const VarietyPtr& small) {
    return big->kind() == chow::Variety::Kind::Parameters && chow::same_variety(big->base(), small);
  }

  VarietyPtr require_space(Position pos) const {
    if (!current_) throw ScriptError(pos, "no current space; declare one with 'space'");
    return current_;
  }

  Value lookup_declared(const std::string& name, Position pos) const {
    const auto it = env_.find(name);
    if (it == env_.end()) throw ScriptError(pos, "unknown identifier '" + name + "'");
    return it->second;
  }

  Value name(const Expr& e) {
    if (const auto it = env_.find(e.text); it != env_.end()) return it->second;
    if (e.text == "point" || e.text == "additive" || e.text == "multiplicative" || e.text == "O") {
      Expr call = e;
      call.kind = Expr::Kind::Call;
      return this->call(call);
    }
    if (current_) {
      const auto& vars = current_->table()->variables();
      for (const auto& v : vars) {
        if (v.name == e.text) return Class::generator(current_, e.text);
      }
      for (const auto& law : laws_) {
        for (const auto& p : law.law->parameters()) {
          if (p.name == e.text) return Class::generator(fgl::coefficient_ring(current_, *law.law), e.text);
        }
      }
    }
    for (std::size_t i = 0; i < kring_.size(); ++i) {
      if (kring_.table()->variables()[i].name == e.text) return Series{kring_.variable(i)};
    }
    throw ScriptError(e.pos, "unknown identifier '" + e.text + "'");
  }

  Value eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Number:
        return Rational::parse(e.text);
      case Expr::Kind::Name:
        return name(e);
      case Expr::Kind::Negate:
        return negate(eval(*e.args[0]), e.pos);
      case Expr::Kind::Binary:
        return binary(e.text, eval(*e.args[0]), eval(*e.args[1]), e.pos);
      case Expr::Kind::Power:
        return power(eval(*e.args[0]), integer(eval(*e.args[1]), e.args[1]->pos, "exponent"), e.pos);
      case Expr::Kind::Call:
        try {
          return call(e);
        } catch (const ScriptError&) {
          throw;
        } catch (const Error& err) {
          throw ScriptError(e.pos, e.text + ": " + err.what());
        }
    }
    throw ScriptError(e.pos, "malformed expression");
  }

  static long integer(const Value& v, Position pos, const std::string& context) {
    const auto* r = std::get_if<Rational>(&v);
    if (!r || !r->is_integer() || !r->numerator().fits_slong_p()) {
      throw ScriptError(pos, context + " must be an integer");
    }
    return r->numerator().get_si();
  }

  Value negate(const Value& v, Position pos) {
    if (const auto* r = std::get_if<Rational>(&v)) return -*r;
    if (const auto* c = std::get_if<Class>(&v)) return -*c;
    if (const auto* s = std::get_if<Series>(&v)) return Series{-s->poly};
    throw ScriptError(pos, std::string("cannot negate ") + type_name(v));
  }

  Value binary(const std::string& op, const Value& a, const Value& b, Position pos) {
    if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b)) {
      const auto& x = std::get<Rational>(a);
      const auto& y = std::get<Rational>(b);
      if (op == "+") return x + y;
      if (op == "-") return x - y;
      if (op == "*") return x * y;
      if (y.is_zero()) throw ScriptError(pos, "division by zero");
      return x / y;
    }
    if (std::holds_alternative<Bundle>(a) && std::holds_alternative<Bundle>(b)) {
      const auto& x = std::get<Bundle>(a);
      const auto& y = std::get<Bundle>(b);
      chow::require_same_variety(x.base(), y.base(), "bundle arithmetic");
      if (op == "+") return x + y;
      if (op == "-") {
        auto roots = x.roots();
        roots.insert(roots.end(), y.removed().begin(), y.removed().end());
        auto removed = x.removed();
        removed.insert(removed.end(), y.roots().begin(), y.roots().end());
        return Bundle(x.base(), roots, removed);
      }
    }
    if (std::holds_alternative<OrthBundle>(a) && std::holds_alternative<OrthBundle>(b) && op == "+") {
      const auto& x = std::get<OrthBundle>(a);
      const auto& y = std::get<OrthBundle>(b);
      chow::require_same_variety(x.base(), y.base(), "orthogonal sum");
      return x + y;
    }
    if (std::holds_alternative<Series>(a) || std::holds_alternative<Series>(b)) {
      const Series x = to_series(a, pos);
      const Series y = to_series(b, pos);
      if (!arith::same_table(x.poly.table(), y.poly.table())) {
        throw ScriptError(pos, "series over different variables");
      }
      if (op == "+") return Series{x.poly + y.poly};
      if (op == "-") return Series{x.poly - y.poly};
      if (op == "*") return Series{arith::poly_mul(x.poly, y.poly, options_.cap)};
      return Series{arith::poly_mul(x.poly, arith::series_inverse(y.poly, options_.cap), options_.cap)};
    }
    if (is_classy(a) && is_classy(b)) {
      if (op == "/" && std::holds_alternative<Rational>(b)) {
        if (std::get<Rational>(b).is_zero()) throw ScriptError(pos, "division by zero");
        return std::get<Class>(a) * (Rational(1) / std::get<Rational>(b));
      }
      auto [x, y] = unify(a, b, pos);
      if (op == "+") return x + y;
      if (op == "-") return x - y;
      if (op == "*") return x * y;
      return x * invert(y, pos);
    }
    throw ScriptError(pos, "cannot apply '" + op + "' to " + type_name(a) + " and " + type_name(b));
  }

  static Class invert(const Class& c, Position pos) {
    if (c.poly().coefficient(arith::Monomial()).is_zero()) {
      throw ScriptError(pos, "class " + c.str() + " has no inverse");
    }
    return chow::inverse_class(c);
  }

  Value power(const Value& base, long k, Position pos) {
    if (const auto* r = std::get_if<Rational>(&base)) {
      if (k < 0 && r->is_zero()) throw ScriptError(pos, "division by zero");
      Rational out(1);
      const Rational b = k < 0 ? Rational(1) / *r : *r;
      for (long i = 0; i < (k < 0 ? -k : k); ++i) out *= b;
      return out;
    }
    if (k > 64 || k < -64) throw ScriptError(pos, "exponent too large");
    if (const auto* c = std::get_if<Class>(&base)) {
      return (k < 0 ? invert(*c, pos) : *c).pow(static_cast<unsigned>(k < 0 ? -k : k));
    }
    if (const auto* s = std::get_if<Series>(&base)) {
      const Polynomial b = k < 0 ? arith::series_inverse(s->poly, options_.cap) : s->poly;
      Polynomial out = Polynomial::constant(b.table(), Rational(1), options_.cap);
      for (long i = 0; i < (k < 0 ? -k : k); ++i) out = arith::poly_mul(out, b, options_.cap);
      return Series{out};
    }
    throw ScriptError(pos, std::string("cannot raise ") + type_name(base) + " to a power");
  }

  // ---- helpers for calls ----

  void arity(const Expr& e, std::size_t lo, std::size_t hi) const {
    if (e.args.size() < lo || e.args.size() > hi) {
      const std::string expected = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
      throw ScriptError(e.pos, e.text + " takes " + expected + " argument" + (hi == 1 ? "" : "s") + ", got " +
                                   std::to_string(e.args.size()));
    }
  }

  std::vector<std::size_t> indices(const Expr& e, const std::string& keyword) {
    const Clause* c = e.clause(keyword);
    if (!c) throw ScriptError(e.pos, e.text + " needs '; " + keyword + " ...'");
    std::vector<std::size_t> out;
    for (const auto& v : c->values) {
      const long i = integer(eval(*v), v->pos, keyword);
      if (i < 0) throw ScriptError(v->pos, keyword + " must be non-negative");
      out.push_back(static_cast<std::size_t>(i));
    }
    return out;
  }

  void allow_clauses(const Expr& e, std::initializer_list<std::string_view> allowed) const {
    for (const auto& c : e.clauses) {
      bool ok = false;
      for (auto a : allowed) ok = ok || c.keyword == a;
      if (!ok) throw ScriptError(c.pos, e.text + " does not accept '" + c.keyword + "'");
    }
  }

  const Expr* single_clause_value(const Expr& e, std::string_view keyword) const {
    const Clause* c = e.clause(keyword);
    if (!c) return nullptr;
    if (c->values.size() != 1) throw ScriptError(c->pos, std::string(keyword) + " takes one value");
    return c->values.front().get();
  }

  void register_map(const VarietyPtr& source, MapData data) { maps_[source.get()] = std::move(data); }

  void register_embedding(const chow::Embedding& emb) {
    register_map(emb.source, {emb.target, [emb](const Class& c) { return emb.push(c); },
                              [emb](const Class& c) { return emb.pull(c); }, emb, std::nullopt});
  }

  void register_section(const SectionModel& s) {
    if (!s.empty) register_embedding(s.embedding());
  }

  const MapData& map_of(const VarietyPtr& v, Position pos) const {
    const auto it = maps_.find(v.get());
    if (it == maps_.end()) throw ScriptError(pos, "no map is known from " + v->name() + " to another space");
    return it->second;
  }

  Class cycle(const Expr& e, const VarietyPtr& ambient) {
    const Expr* x = single_clause_value(e, "cycle");
    if (!x) return Class::one(ambient);
    return to_class(with_space(ambient, [&] { return eval(*x); }), ambient, x->pos);
  }

  chow::Decomposition decomposition(const Expr& e, const chow::LocalizedEuler& loc, const Class& xi) {
    const Expr* shift = single_clause_value(e, "shift");
    if (!shift) return loc.canonical(xi);
    if (!loc.blowup()) throw ScriptError(shift->pos, "no exceptional divisor to shift along");
    const VarietyPtr d = loc.blowup()->exceptional.total;
    const Class gamma = to_class(with_space(d, [&] { return eval(*shift); }), d, shift->pos);
    return loc.shifted(xi, gamma);
  }

  Bundle bundle_arg(const Value& v, Position pos, const std::string& fn) {
    if (const auto* f = std::get_if<OrthBundle>(&v)) return f->positive_part();
    return as<Bundle>(v, pos, fn);
  }

  ktheory::KOrthBundle k_bundle(const OrthBundle& f, Position pos) const {
    const std::size_t n = static_cast<std::size_t>(f.half_rank());
    if (n > kLineVariables) {
      throw ScriptError(pos, "K-theory classes support at most " + std::to_string(kLineVariables) + " lines");
    }
    ktheory::KOrthBundle out;
    out.sign = f.sign();
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<long> twist(kLineVariables, 0);
      twist[i] = 1;
      out.positive.push_back(kring_.line(twist));
    }
    return out;
  }

  std::shared_ptr<const fgl::FormalGroupLaw> law_arg(const Value& v, Position pos, const std::string& fn) {
    return as<Law>(v, pos, fn).law;
  }

  Value call(const Expr& e) {
    const std::string& f = e.text;
    std::vector<Value> args;
    args.reserve(e.args.size());
    auto arg_pos = [&](std::size_t i) { return e.args[i]->pos; };

    // Spaces.
    if (f == "P") {
      arity(e, 1, 1);
      allow_clauses(e, {});
      const long n = integer(eval(*e.args[0]), arg_pos(0), "P");
      if (n < 0 || n > 64) throw ScriptError(arg_pos(0), "P(n) needs 0 <= n <= 64");
      auto& cached = projective_[n];
      if (!cached) cached = chow::make_proj_space(static_cast<int>(n));
      return Space{cached};
    }
    if (f == "point") {
      arity(e, 0, 0);
      return Space{chow::point()};
    }
    for (const auto& a : e.args) {
      if (f == "blowup" || f == "section" || f == "zero" || f == "linear" || f == "pull") break;
      args.push_back(eval(*a));
    }
    if (f == "linear") {
      arity(e, 2, 2);
      const VarietyPtr y = as<Space>(eval(*e.args[0]), arg_pos(0), "linear").variety;
      const long k = integer(eval(*e.args[1]), arg_pos(1), "linear");
      const chow::Embedding emb = chow::linear_subspace(y, static_cast<int>(k));
      register_embedding(emb);
      return Space{emb.source};
    }
    if (f == "zero") {
      arity(e, 1, 1);
      const SectionModel s = as<SectionModel>(eval(*e.args[0]), arg_pos(0), "zero");
      if (s.empty) throw ScriptError(arg_pos(0), "the section vanishes nowhere");
      register_section(s);
      return Space{s.embedding().source};
    }
    if (f == "blowup") {
      arity(e, 1, 1);
      allow_clauses(e, {"along", "normal"});
      const VarietyPtr y = as<Space>(eval(*e.args[0]), arg_pos(0), "blowup").variety;
      const Expr* along = single_clause_value(e, "along");
      if (!along) throw ScriptError(e.pos, "blowup needs 'along X'");
      const VarietyPtr x = as<Space>(eval(*along), along->pos, "blowup along").variety;
      const MapData& m = map_of(x, along->pos);
      if (!m.embedding || !chow::same_variety(m.embedding->target, y)) {
        throw ScriptError(along->pos, x->name() + " is not embedded in " + y->name());
      }
      if (const Expr* normal = single_clause_value(e, "normal")) {
        const Bundle n = as<Bundle>(with_space(x, [&] { return eval(*normal); }), normal->pos, "blowup normal");
        if (n.rank() != m.embedding->normal.rank() || !(n.total_chern() == m.embedding->normal.total_chern())) {
          throw ScriptError(normal->pos, "normal bundle does not match the embedding, whose Chern class is " +
                                             m.embedding->normal.total_chern().str());
        }
      }
      const chow::Blowup b = chow::make_blowup(*m.embedding);
      register_map(b.total, {y, [b](const Class& c) { return b.push(c); }, [b](const Class& c) { return b.pull(c); },
                             std::nullopt, std::nullopt});
      register_map(b.exceptional.total, {b.total, [b](const Class& c) { return b.push_from_exceptional(c); },
                                         [b](const Class& c) { return b.restrict(c); }, std::nullopt,
                                         b.exceptional});
      exceptional_[b.total.get()] = b.exceptional.total;
      return Space{b.total};
    }
    if (f == "exceptional") {
      arity(e, 1, 1);
      const VarietyPtr b = as<Space>(args[0], arg_pos(0), "exceptional").variety;
      const auto it = exceptional_.find(b.get());
      if (it == exceptional_.end()) throw ScriptError(arg_pos(0), b->name() + " is not a blowup");
      return Space{it->second};
    }
    if (f == "pbundle") {
      arity(e, 1, 1);
      const Bundle v = bundle_arg(args[0], arg_pos(0), "pbundle");
      const chow::ProjectiveBundle pb = chow::make_projective_bundle(v, "h", "P(" + v.base()->name() + ")");
      register_map(pb.total, {v.base(), [pb](const Class& c) { return pb.push(c); },
                              [pb](const Class& c) { return pb.pullback(c); }, std::nullopt, pb});
      return Space{pb.total};
    }

    // Bundles.
    if (f == "O") {
      arity(e, 0, 1);
      const VarietyPtr y = require_space(e.pos);
      const Rational d = args.empty() ? Rational(0) : Rational(integer(args[0], arg_pos(0), "O"));
      if (d.is_zero()) return Bundle::trivial(y, 1);
      return Bundle::line(Class::generator(y, hyperplane_name(y, e.pos)) * d);
    }
    if (f == "line") {
      arity(e, 1, 1);
      return Bundle::line(to_class(args[0], require_space(e.pos), arg_pos(0)));
    }
    if (f == "trivial") {
      arity(e, 1, 1);
      return Bundle::trivial(require_space(e.pos), static_cast<int>(integer(args[0], arg_pos(0), "trivial")));
    }
    if (f == "dual") {
      arity(e, 1, 1);
      return as<Bundle>(args[0], arg_pos(0), "dual").dual();
    }
    if (f == "positive") {
      arity(e, 1, 1);
      return as<OrthBundle>(args[0], arg_pos(0), "positive").positive_part();
    }
    if (f == "underlying") {
      arity(e, 1, 1);
      return as<OrthBundle>(args[0], arg_pos(0), "underlying").underlying();
    }
    if (f == "select") {
      arity(e, 1, 1);
      return as<Bundle>(args[0], arg_pos(0), "select").select(indices(e, "roots"));
    }
    if (f == "pullback") {
      arity(e, 2, 2);
      const auto& v = as<Bundle>(args[0], arg_pos(0), "pullback");
      const VarietyPtr target = as<Space>(args[1], arg_pos(1), "pullback").variety;
      std::vector<Class> roots;
      for (const auto& r : v.roots()) roots.push_back(pull_to(r, target, e.pos));
      std::vector<Class> removed;
      for (const auto& r : v.removed()) removed.push_back(pull_to(r, target, e.pos));
      return Bundle(target, roots, removed);
    }

    // Orthogonal bundles and sections.
    if (f == "hyperbolic") {
      arity(e, 1, 1);
      return OrthBundle(as<Bundle>(args[0], arg_pos(0), "hyperbolic"));
    }
    if (f == "flip") {
      arity(e, 1, 1);
      return as<OrthBundle>(args[0], arg_pos(0), "flip").flipped();
    }
    if (f == "reduce") {
      arity(e, 1, 2);
      allow_clauses(e, {"roots"});
      const auto& fb = as<OrthBundle>(args[0], arg_pos(0), "reduce");
      if (args.size() == 2) return orth::isotropic_reduce(fb, as<Bundle>(args[1], arg_pos(1), "reduce"));
      return orth::isotropic_reduce(fb, indices(e, "roots"));
    }
    if (f == "section") {
      arity(e, 1, 1);
      allow_clauses(e, {"roots"});
      const Bundle v = bundle_arg(eval(*e.args[0]), arg_pos(0), "section");
      SectionModel s = chow::section_model(v, indices(e, "roots"));
      register_section(s);
      return s;
    }

    // Classes.
    if (f == "sqrt_euler" || f == "euler") {
      arity(e, 1, 3);
      allow_clauses(e, {"cycle", "shift"});
      const bool root = f == "sqrt_euler";
      if (args.size() == 1) {
        if (!e.clauses.empty()) throw ScriptError(e.clauses.front().pos, f + " of a bundle takes no clauses");
        if (root) return orth::sqrt_euler(as<OrthBundle>(args[0], arg_pos(0), f));
        if (const auto* fb = std::get_if<OrthBundle>(&args[0])) return orth::euler(*fb);
        return as<Bundle>(args[0], arg_pos(0), f).euler();
      }
      const auto& s = as<SectionModel>(args[1], arg_pos(1), f);
      const Class xi = cycle(e, s.bundle.base());
      if (args.size() == 3) {
        if (e.clause("shift")) throw ScriptError(e.pos, "two-section classes take no shift");
        const auto& t = as<SectionModel>(args[2], arg_pos(2), f);
        const orth::TwoSectionResult r =
            root ? orth::sqrt_euler_two_sections(as<OrthBundle>(args[0], arg_pos(0), f), s, t, xi)
                 : orth::localized_euler_two_sections(s, t, xi);
        if (!r.empty) register_embedding(r.to_center);
        return r.value;
      }
      if (root) {
        const orth::LocalizedSqrtEuler loc(as<OrthBundle>(args[0], arg_pos(0), f), s);
        return loc.apply(xi, decomposition(e, loc.localized(), xi));
      }
      require_section_of(as<Bundle>(args[0], arg_pos(0), f), s, arg_pos(1));
      const chow::LocalizedEuler loc(s);
      return loc.apply(xi, decomposition(e, loc, xi));
    }
    if (f == "sqrt_euler_lci" || f == "euler_lci") {
      arity(e, 2, 2);
      allow_clauses(e, {"cycle"});
      const auto& s = as<SectionModel>(args[1], arg_pos(1), f);
      const Class xi = cycle(e, s.bundle.base());
      if (f == "sqrt_euler_lci") {
        return orth::LocalizedSqrtEuler(as<OrthBundle>(args[0], arg_pos(0), f), s).apply_lci(xi);
      }
      require_section_of(as<Bundle>(args[0], arg_pos(0), f), s, arg_pos(1));
      return chow::LocalizedEuler(s).apply_lci(xi);
    }
    if (f == "chern" || f == "segre") {
      arity(e, 1, 2);
      const Bundle v = bundle_arg(args[0], arg_pos(0), f);
      if (args.size() == 1) return f == "chern" ? v.total_chern() : v.total_segre();
      const int i = static_cast<int>(integer(args[1], arg_pos(1), f));
      return f == "chern" ? v.chern(i) : v.segre(i);
    }
    if (f == "rank") {
      arity(e, 1, 1);
      if (const auto* fb = std::get_if<OrthBundle>(&args[0])) return Rational(fb->rank());
      return Rational(as<Bundle>(args[0], arg_pos(0), f).rank());
    }
    if (f == "part") {
      arity(e, 2, 2);
      return to_class(args[0], current_, arg_pos(0)).part(static_cast<int>(integer(args[1], arg_pos(1), f)));
    }
    if (f == "integral") {
      arity(e, 1, 1);
      return to_class(args[0], current_, arg_pos(0)).integrate();
    }
    if (f == "inverse") {
      arity(e, 1, 1);
      if (const auto* s = std::get_if<Series>(&args[0])) return Series{arith::series_inverse(s->poly, options_.cap)};
      return invert(to_class(args[0], current_, arg_pos(0)), arg_pos(0));
    }
    if (f == "push") {
      arity(e, 1, 1);
      const Class c = to_class(args[0], current_, arg_pos(0));
      return map_of(c.variety(), arg_pos(0)).push(c);
    }
    if (f == "pull") {
      // The class is read on the space the target maps to.
      arity(e, 2, 2);
      const VarietyPtr target = as<Space>(eval(*e.args[1]), arg_pos(1), f).variety;
      const VarietyPtr ambient = map_of(target, arg_pos(1)).ambient;
      const Class c = to_class(with_space(ambient, [&] { return eval(*e.args[0]); }), ambient, arg_pos(0));
      return pull_to(c, target, e.pos);
    }
    if (f == "quadric_push") {
      arity(e, 1, 1);
      const Class c = to_class(args[0], current_, arg_pos(0));
      const MapData& m = map_of(c.variety(), arg_pos(0));
      if (!m.pbundle) throw ScriptError(arg_pos(0), c.variety()->name() + " is not a projective bundle");
      return chow::quadric_pushforward(*m.pbundle, c);
    }
    if (f == "vanishing") {
      arity(e, 1, 2);
      allow_clauses(e, {"root", "pairing"});
      const auto& fb = as<OrthBundle>(args[0], arg_pos(0), f);
      const auto root = indices(e, "root");
      if (root.size() != 1) throw ScriptError(e.pos, "vanishing needs exactly one root");
      orth::UnitPairingSection t{root[0], Rational(1), Rational(1)};
      if (const Clause* p = e.clause("pairing")) {
        if (p->values.size() != 2) throw ScriptError(p->pos, "pairing takes two numbers");
        t.t1 = as<Rational>(eval(*p->values[0]), p->values[0]->pos, "pairing");
        t.t2 = as<Rational>(eval(*p->values[1]), p->values[1]->pos, "pairing");
      }
      std::optional<SectionModel> s;
      if (args.size() == 2) s = as<SectionModel>(args[1], arg_pos(1), f);
      return orth::vanishing_by_unit_section(fb, t, s);
    }

    // K-theory.
    if (f == "a") {
      arity(e, 1, 1);
      const long i = integer(args[0], arg_pos(0), f);
      if (i < 1) throw ScriptError(arg_pos(0), "a(i) needs i >= 1");
      return ktheory::sqrt_line_coefficient(i);
    }
    if (f == "kline") {
      arity(e, 1, kLineVariables);
      std::vector<long> twist(kLineVariables, 0);
      for (std::size_t i = 0; i < args.size(); ++i) twist[i] = integer(args[i], arg_pos(i), f);
      return Series{kring_.line(twist)};
    }
    if (f == "sqrt_line" || f == "kdual") {
      arity(e, 1, 1);
      const Series s = to_series(args[0], arg_pos(0));
      return Series{f == "sqrt_line" ? ktheory::sqrt_line(kring_, s.poly) : ktheory::dual_line(kring_, s.poly)};
    }
    if (f == "ksqrt_euler" || f == "keuler") {
      arity(e, 1, 1);
      const auto kb = k_bundle(as<OrthBundle>(args[0], arg_pos(0), f), arg_pos(0));
      return Series{f == "ksqrt_euler" ? ktheory::sqrt_euler_k(kring_, kb) : ktheory::euler_k(kring_, kb)};
    }

    // Formal group laws.
    if (f == "additive") {
      arity(e, 0, 0);
      return Law{std::make_shared<fgl::FormalGroupLaw>(fgl::FormalGroupLaw::additive(options_.cap))};
    }
    if (f == "multiplicative") {
      arity(e, 0, 0);
      return Law{std::make_shared<fgl::FormalGroupLaw>(fgl::FormalGroupLaw::multiplicative(options_.cap))};
    }
    if (f == "logarithm") {
      std::vector<Rational> coeffs;
      for (std::size_t i = 0; i < args.size(); ++i) coeffs.push_back(as<Rational>(args[i], arg_pos(i), f));
      return Law{std::make_shared<fgl::FormalGroupLaw>(fgl::FormalGroupLaw::from_logarithm(coeffs, options_.cap))};
    }
    if (f == "coefficients") {
      if (args.size() % 3 != 0) throw ScriptError(e.pos, "coefficients takes triples i, j, a_ij");
      std::map<std::pair<int, int>, Rational> table;
      for (std::size_t i = 0; i < args.size(); i += 3) {
        const int p = static_cast<int>(integer(args[i], arg_pos(i), f));
        const int q = static_cast<int>(integer(args[i + 1], arg_pos(i + 1), f));
        table[{p, q}] = as<Rational>(args[i + 2], arg_pos(i + 2), f);
      }
      return Law{std::make_shared<fgl::FormalGroupLaw>(fgl::FormalGroupLaw::from_coefficients(table, options_.cap))};
    }
    if (f == "sqrt_h" || f == "h") {
      arity(e, 2, 2);
      allow_clauses(e, {"dual"});
      const auto law = law_arg(args[1], arg_pos(1), f);
      if (const auto* n = std::get_if<Rational>(&args[0])) {
        const long k = integer(*n, arg_pos(0), f);
        if (k < 1 || k > 8) throw ScriptError(arg_pos(0), f + " series needs 1 <= n <= 8");
        const auto h = f == "h" ? fgl::h_series(static_cast<std::size_t>(k), *law)
                                : fgl::sqrt_h_series(static_cast<std::size_t>(k), *law);
        return Series{h.value};
      }
      if (f == "h") throw ScriptError(arg_pos(0), "h expects a number of variables");
      const Bundle v = bundle_arg(args[0], arg_pos(0), f);
      if (e.clause("dual")) {
        if (v.roots().empty()) return Class::one(fgl::coefficient_ring(v.base(), *law));
        return fgl::sqrt_h_apply(fgl::dual_roots(v, *law), *law);
      }
      return fgl::sqrt_h_apply(v, *law);
    }
    if (f == "g" || f == "chi") {
      arity(e, 1, 1);
      const auto law = law_arg(args[0], arg_pos(0), f);
      return Series{f == "g" ? fgl::g_series(*law) : fgl::fgl_inverse(*law).with_cap(law->cap())};
    }
    if (f == "compare_isotropics") {
      arity(e, 2, 2);
      allow_clauses(e, {"roots"});
      const auto law = law_arg(args[1], arg_pos(1), f);
      const auto cmp = fgl::compare_maximal_isotropics(as<Bundle>(args[0], arg_pos(0), f), indices(e, "roots"), *law);
      VerificationReport r;
      r.checks.push_back({"sqrt_h(L1) e(L1) = sqrt_h(L2) e(L2)", cmp.first, cmp.second});
      return r;
    }
    throw ScriptError(e.pos, "unknown function '" + f + "'");
  }

  static std::string hyperplane_name(const VarietyPtr& y, Position pos) {
    for (const auto& v : y->table()->variables()) {
      if (v.name == "H") return "H";
    }
    throw ScriptError(pos, "O(d) needs a space with hyperplane class H; use line(...)");
  }

  static void require_section_of(const Bundle& v, const SectionModel& s, Position pos) {
    if (!chow::same_variety(v.base(), s.bundle.base()) || v.rank() != s.bundle.rank() ||
        !(v.total_chern() == s.bundle.total_chern())) {
      throw ScriptError(pos, "section is not a section of this bundle");
    }
  }

  Class pull_to(const Class& c, const VarietyPtr& target, Position pos) const {
    const MapData& m = map_of(target, pos);
    if (!chow::same_variety(m.ambient, c.variety())) {
      throw ScriptError(pos, "cannot pull a class on " + c.variety()->name() + " back to " + target->name());
    }
    return m.pull(c);
  }

  Options options_;
  ktheory::KRing kring_;
  VarietyPtr current_;
  std::map<std::string, Value> env_;
  std::vector<Law> laws_;
  std::map<const chow::Variety*, MapData> maps_;
  std::map<const chow::Variety*, VarietyPtr> exceptional_;
  std::map<long, VarietyPtr> projective_;
};

}  // namespace

Report run(const Script& script, const Options& options) {
  Report report;
  std::optional<Interpreter> holder;
  try {
    holder.emplace(options);
  } catch (const Error& e) {
    report.error = Diagnostic{{0, 0}, e.what()};
    return report;
  }
  Interpreter& interp = *holder;
  for (const auto& st : script.statements) {
    try {
      StatementResult r = interp.execute(st);
      if (r.passed) (*r.passed ? report.passed : report.failed) += 1;
      report.statements.push_back(std::move(r));
    } catch (const ScriptError& e) {
      report.error = Diagnostic{e.position(), e.message()};
      return report;
    } catch (const Error& e) {
      report.error = Diagnostic{st.pos, e.what()};
      return report;
    }
  }
  return report;
}

Report run_text(std::string_view text, const Options& options) {
  try {
    return run(parse(text), options);
  } catch (const ScriptError& e) {
    Report r;
    r.error = Diagnostic{e.position(), e.message()};
    return r;
  }
}

std::string render_text(const Report& report) {
  std::ostringstream out;
  for (const auto& s : report.statements) {
    if (s.passed) {
      out << "line " << s.line << ": " << (*s.passed ? "pass" : "FAIL") << "  " << s.source << "\n";
      if (!*s.passed) out << "  lhs: " << s.lhs << "\n  rhs: " << s.rhs << "\n";
    } else if (s.kind == "print" || s.kind == "integrate") {
      out << *s.result << "\n";
    }
  }
  if (report.passed + report.failed > 0) {
    out << "checks: " << report.passed << " passed, " << report.failed << " failed\n";
  }
  return out.str();
}

std::string render_json(const Report& report) {
  using io::Json;
  Json statements = Json::array();
  for (const auto& s : report.statements) {
    Json j;
    j["line"] = s.line;
    j["kind"] = s.kind;
    j["source"] = s.source;
    if (s.passed) {
      j["verdict"] = *s.passed ? "pass" : "fail";
      j["lhs"] = s.lhs;
      j["rhs"] = s.rhs;
    } else {
      j["result"] = s.result ? *s.result : "";
    }
    statements.push_back(std::move(j));
  }
  Json out;
  out["statements"] = std::move(statements);
  out["summary"] = Json{{"passed", report.passed}, {"failed", report.failed}};
  if (report.error) {
    out["error"] = Json{{"line", report.error->pos.line},
                        {"column", report.error->pos.column},
                        {"message", report.error->message}};
  }
  return io::dump(out);
}

}  // namespace se::cli
