#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sqrteuler/chow/models.hpp"
#include "sqrteuler/io/serialize.hpp"

using namespace se;
using arith::Rational;
using chow::Class;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(SQRTEULER_GOLDEN_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

chow::Bundle split(const chow::VarietyPtr& v, const std::vector<int>& twists) {
  std::vector<Class> roots;
  for (int t : twists) roots.push_back(Class::generator(v, "H") * Rational(t));
  return chow::Bundle(v, roots);
}

}  // namespace

TEST_CASE("projective space and blowup presentations") {
  const auto p2 = chow::make_proj_space(2);
  CHECK(io::dump(io::to_json(*p2)) == golden("proj_space_p2.json"));
  const auto b = chow::make_blowup(chow::linear_subspace(p2, 0));
  CHECK(io::dump(io::to_json(*b.total)) == golden("blowup_point_p2.json"));
}

TEST_CASE("classes and orthogonal bundles") {
  const auto p4 = chow::make_proj_space(4);
  const orth::OrthBundle f(split(p4, {1, 2}));
  CHECK(io::dump(io::to_json(orth::sqrt_euler(f))) == golden("sqrt_euler_p4.json"));
  CHECK(io::dump(io::to_json(f)) == golden("hyperbolic_p4.json"));
  const orth::OrthBundle g(split(p4, {0, 1}));
  CHECK(io::dump(io::to_json(orth::vanishing_by_unit_section(g, {0, Rational(1), Rational(1)}))) ==
        golden("vanishing_report.json"));
}

TEST_CASE("K classes and series") {
  const auto ring = ktheory::KRing::standard(1, 3);
  const auto l = ring.constant(Rational(1)) - ring.variable(0);
  CHECK(io::dump(io::to_json(ring, ktheory::sqrt_euler_k(ring, {{l}, 1}))) == golden("sqrt_euler_k_line.json"));
  const auto mult = fgl::FormalGroupLaw::multiplicative(3);
  CHECK(io::dump(io::to_json(mult)) == golden("multiplicative_law.json"));
  CHECK(io::dump(io::to_json(fgl::sqrt_h_series(1, mult))) == golden("sqrt_h_multiplicative.json"));
}

TEST_CASE("serialization is stable") {
  const auto p3 = chow::make_proj_space(3);
  const auto c = Class::generator(p3, "H").pow(2) * Rational(3, 2) - Class::generator(p3, "H");
  CHECK(io::dump(io::to_json(c)) == io::dump(io::to_json(Class(p3, c.poly()))));
  const auto j = io::to_json(c);
  CHECK(j["terms"].size() == 2);
  CHECK(j["terms"][0]["coefficient"] == "-1");
  CHECK(j["terms"][1]["coefficient"] == "3/2");
}
