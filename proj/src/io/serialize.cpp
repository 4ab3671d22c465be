#include "sqrteuler/io/serialize.hpp"

namespace se::io {

namespace {

const char* kind_name(chow::Variety::Kind k) {
  switch (k) {
    case chow::Variety::Kind::Point: return "point";
    case chow::Variety::Kind::ProjectiveBundle: return "projective_bundle";
    case chow::Variety::Kind::Blowup: return "blowup";
    case chow::Variety::Kind::Parameters: return "parameters";
  }
  return "unknown";
}

Json classes(const std::vector<chow::Class>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(c.str());
  return out;
}

}  // namespace

Json to_json(const arith::Rational& r) { return r.str(); }

Json to_json(const arith::Monomial& m, const arith::VarTable& table) {
  Json out = Json::object();
  for (const auto& [index, exponent] : m.entries()) out[table.variables()[index].name] = exponent;
  return out;
}

Json to_json(const arith::Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    terms.push_back(Json{{"monomial", to_json(m, *p.table())}, {"coefficient", to_json(c)}});
  }
  Json out;
  out["text"] = p.str();
  out["cap"] = p.cap() ? Json(*p.cap()) : Json(nullptr);
  out["terms"] = std::move(terms);
  return out;
}

Json to_json(const chow::Variety& v) {
  Json generators = Json::array();
  for (const auto& var : v.table()->variables()) generators.push_back(Json{{"name", var.name}, {"degree", var.degree}});
  Json relations = Json::array();
  for (const auto& rule : v.rules()) {
    relations.push_back(Json{{"lhs", rule.lhs.str(*v.table())}, {"rhs", rule.rhs.str()}});
  }
  Json out;
  out["name"] = v.name();
  out["kind"] = kind_name(v.kind());
  out["dimension"] = v.dimension();
  out["base"] = v.base() ? Json(v.base()->name()) : Json(nullptr);
  out["generators"] = std::move(generators);
  out["relations"] = std::move(relations);
  return out;
}

Json to_json(const chow::Class& c) {
  Json out;
  out["variety"] = c.variety()->name();
  out["text"] = c.str();
  out["terms"] = to_json(c.poly())["terms"];
  return out;
}

Json to_json(const chow::Bundle& b) {
  Json out;
  out["variety"] = b.base()->name();
  out["rank"] = b.rank();
  out["roots"] = classes(b.roots());
  out["removed"] = classes(b.removed());
  out["total_chern"] = b.total_chern().str();
  return out;
}

Json to_json(const orth::OrthBundle& f) {
  Json out;
  out["variety"] = f.base()->name();
  out["rank"] = f.rank();
  out["orientation"] = f.sign();
  out["positive"] = to_json(f.positive_part());
  return out;
}

Json to_json(const orth::IdentityCheck& check) {
  Json out;
  out["identity"] = check.identity;
  out["lhs"] = check.lhs.str();
  out["rhs"] = check.rhs.str();
  out["verdict"] = check.passed() ? "pass" : "fail";
  return out;
}

Json to_json(const orth::VerificationReport& report) {
  Json checks = Json::array();
  std::size_t passed = 0;
  for (const auto& c : report.checks) {
    checks.push_back(to_json(c));
    if (c.passed()) ++passed;
  }
  Json out;
  out["checks"] = std::move(checks);
  out["summary"] = Json{{"passed", passed}, {"failed", report.checks.size() - passed}};
  return out;
}

Json to_json(const ktheory::KRing& ring, const arith::Polynomial& k_class) {
  Json vars = Json::array();
  for (const auto& var : ring.table()->variables()) vars.push_back(var.name);
  Json out;
  out["augmentation_variables"] = std::move(vars);
  out["cap"] = ring.cap();
  out["class"] = to_json(k_class);
  return out;
}

Json to_json(const fgl::FormalGroupLaw& f) {
  Json params = Json::array();
  for (const auto& p : f.parameters()) params.push_back(p.name);
  Json out;
  out["name"] = f.name();
  out["cap"] = f.cap();
  out["parameters"] = std::move(params);
  out["series"] = to_json(f.series());
  return out;
}

Json to_json(const fgl::HSeries& h) {
  Json out;
  out["n"] = h.tables.n;
  out["series"] = to_json(h.value);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace se::io
