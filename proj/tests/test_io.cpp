#include <random>

#include "doctest.h"
#include "orbisym/io.hpp"

using namespace orbisym;

TEST_CASE("rational json") {
  CHECK(to_json(Rational(3)) == Json("3"));
  CHECK(to_json(Rational(-1, 2)) == Json("-1/2"));
  CHECK(rational_from_json(Json("6/4")) == Rational(3, 2));
  CHECK(rational_from_json(Json(7)) == Rational(7));
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_json(Json("one")), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), std::invalid_argument);
}

TEST_CASE("algebra specs round trip bit for bit") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const auto spec = builtin_spec(name);
    const std::string text = to_json(spec).dump(2);
    const auto back = algebra_spec_from_json(Json::parse(text));
    CHECK(back == spec);
    CHECK(to_json(back).dump(2) == text);
  }
  const auto j = to_json(builtin_spec("mock2"));
  CHECK(j["struct"][0] == Json::array({0, 0, 0, "1"}));
  CHECK(j["euler"] == Json::array({"0", "24"}));
}

TEST_CASE("malformed specs") {
  auto j = to_json(builtin_spec("mock2"));
  j.erase("unit");
  CHECK_THROWS_WITH_AS(algebra_spec_from_json(j), "missing field 'unit'", std::invalid_argument);
  j = to_json(builtin_spec("mock2"));
  j["struct"][0] = Json::array({0, 0, "1"});
  CHECK_THROWS_AS(algebra_spec_from_json(j), std::invalid_argument);
  j = to_json(builtin_spec("mock2"));
  j["struct"][0][0] = -1;
  CHECK_THROWS_AS(algebra_spec_from_json(j), std::invalid_argument);
  CHECK_THROWS_AS(read_json_file("/nonexistent/spec.json"), std::invalid_argument);
}

TEST_CASE("validation report json") {
  auto spec = builtin_spec("mock2");
  spec.unit = {Rational(0), Rational(1)};
  const auto j = to_json(validate(spec));
  CHECK(j["valid"] == false);
  bool unit = false;
  for (const auto& f : j["failures"]) unit = unit || f["axiom"] == "unit";
  CHECK(unit);
}

TEST_CASE("ring classes round trip") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("abelian"), 3);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    OrbifoldClass x;
    for (int k = 0; k < 4; ++k) x += R->basis_class(rng() % R->dim()) * Rational(static_cast<std::int64_t>(rng() % 7) - 3, 2);
    const auto j = to_json(*R, x);
    CHECK(orbifold_class_from_json(*R, j) == x);
    CHECK(orbifold_class_from_json(*R, Json::parse(j.dump())) == x);
  }
  const auto one = to_json(*R, R->basis_class(R->offset(R->group().index_of(Permutation::parse("(1 2)", 3)))));
  CHECK(one.dump() == R"j([{"perm":"(1 2)","terms":[{"tuple":["1","1"],"coeff":"1"}]}])j");

  const Json wrong_arity = Json::parse(R"j([{"perm":"(1 2)","terms":[{"tuple":["1"],"coeff":"1"}]}])j");
  CHECK_THROWS_AS(orbifold_class_from_json(*R, wrong_arity), std::invalid_argument);
  const Json unknown_label = Json::parse(R"j([{"perm":"()","terms":[{"tuple":["1","1","y"],"coeff":"1"}]}])j");
  CHECK_THROWS_AS(orbifold_class_from_json(*R, unknown_label), std::invalid_argument);
  const GroupTable c3 = close_subgroup(std::vector<Permutation>{Permutation::parse("(1 2 3)", 3)}, 3);
  const OrbifoldRing C(builtin_algebra("abelian"), c3);
  const Json outside = Json::parse(R"j([{"perm":"(1 2)","terms":[]}])j");
  CHECK_THROWS_WITH_AS(orbifold_class_from_json(C, outside), "permutation (1 2) is not in the group",
                       std::invalid_argument);
}

TEST_CASE("Chen-Ruan classes are keyed by representatives") {
  const auto R = OrbifoldRing::symmetric(builtin_algebra("mock2"), 3);
  const std::size_t rep = R->class_rep(R->group().class_of(R->group().index_of(Permutation::parse("(1 2)", 3))));
  CRClass x;
  x.components.emplace(rep, TensorClass::unit(R->algebra(), 2));
  const auto j = to_json(*R, x);
  CHECK(cr_class_from_json(*R, j) == x);
  Json other = j;
  for (const char* p : {"(1 2)", "(1 3)", "(2 3)"})
    if (R->group().index_of(Permutation::parse(p, 3)) != rep) other[0]["perm"] = p;
  CHECK_THROWS_AS(cr_class_from_json(*R, other), std::invalid_argument);
}

TEST_CASE("kummer classes carry torsion") {
  const KummerRing R(3, 4);
  const std::size_t c = R.base().group().index_of(Permutation::parse("(1 2 3)", 3));
  const auto x = KummerClass::single(c, {2, 0, 1, 1}, TensorClass::unit(R.base().algebra(), 1));
  const auto j = to_json(R, x);
  CHECK(j[0]["torsion"] == Json::parse(R"j({"residues":[2,0,1,1],"modulus":3})j"));
  CHECK(kummer_class_from_json(R, j) == x);
  Json bad = j;
  bad[0]["torsion"]["modulus"] = 2;
  CHECK_THROWS_AS(kummer_class_from_json(R, bad), std::invalid_argument);
  bad = j;
  bad[0]["torsion"]["residues"] = Json::array({3, 0, 0, 0});
  CHECK_THROWS_AS(kummer_class_from_json(R, bad), std::invalid_argument);
}

TEST_CASE("results") {
  CHECK(to_json(PoincarePolynomial{{0, 1}, {4, 23}, {12, 2}}).dump() == R"j({"0":1,"4":23,"12":2})j");
  AssocCertificate cert;
  cert.mode = "sampled";
  cert.seed = 9;
  cert.count = 5;
  cert.passed = false;
  cert.witness = std::array<std::size_t, 3>{1, 2, 3};
  CHECK(to_json(cert).dump() == R"j({"mode":"sampled","signed":false,"seed":9,"count":5,"passed":false,"witness":[1,2,3]})j");
  const auto v = to_json(rescaling_obstruction(1));
  CHECK(v["witness"]["verified"] == true);
  CHECK(v["witness"]["rescaled"] == Json::parse(R"j([["-2"]])j"));
}
