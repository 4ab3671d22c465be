#pragma once

#include "json.hpp"
#include "sqrteuler/arith/polynomial.hpp"
#include "sqrteuler/chow/bundle.hpp"
#include "sqrteuler/chow/variety.hpp"
#include "sqrteuler/fgl/fgl.hpp"
#include "sqrteuler/ktheory/kclass.hpp"
#include "sqrteuler/orth/orth.hpp"

// Canonical JSON forms. Keys keep insertion order and term lists follow the
// polynomial's monomial order, so equal objects always serialize identically.
namespace se::io {

using Json = nlohmann::ordered_json;

Json to_json(const arith::Rational& r);
Json to_json(const arith::Monomial& m, const arith::VarTable& table);
Json to_json(const arith::Polynomial& p);
Json to_json(const chow::Variety& v);
Json to_json(const chow::Class& c);
Json to_json(const chow::Bundle& b);
Json to_json(const orth::OrthBundle& f);
Json to_json(const orth::IdentityCheck& check);
Json to_json(const orth::VerificationReport& report);
Json to_json(const ktheory::KRing& ring, const arith::Polynomial& k_class);
Json to_json(const fgl::FormalGroupLaw& f);
Json to_json(const fgl::HSeries& h);

// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace se::io
