#include "orbisym/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace orbisym {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::size_t index_from_json(const Json& j) {
  if (!j.is_number_unsigned()) bad("expected a nonnegative integer index");
  return j.get<std::size_t>();
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_json(r));
  return out;
}

std::size_t element_from_json(const GroupTable& group, const Json& j) {
  if (!j.is_string()) bad("expected a permutation in cycle notation");
  const auto p = Permutation::parse(j.get<std::string>(), group.degree());
  const auto idx = group.find(p);
  if (!idx) bad("permutation " + p.str() + " is not in the group");
  return *idx;
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  bad("expected a rational string or an integer");
}

// ---- algebra specs ----

Json to_json(const FrobeniusAlgebraSpec& spec) {
  Json j;
  j["name"] = spec.name;
  j["d"] = spec.d;
  Json basis = Json::array();
  for (const auto& b : spec.basis) basis.push_back(Json{{"label", b.label}, {"degree", b.degree}});
  j["basis"] = std::move(basis);
  j["unit"] = rationals_to_json(spec.unit);
  Json sc = Json::array();
  for (const auto& c : spec.struct_consts) sc.push_back(Json::array({c.i, c.j, c.k, to_json(c.coeff)}));
  j["struct"] = std::move(sc);
  j["integral"] = rationals_to_json(spec.integral);
  j["euler"] = rationals_to_json(spec.euler);
  return j;
}

FrobeniusAlgebraSpec algebra_spec_from_json(const Json& j) {
  FrobeniusAlgebraSpec spec;
  const auto& name = field(j, "name");
  if (!name.is_string()) bad("'name' must be a string");
  spec.name = name.get<std::string>();
  const auto& d = field(j, "d");
  if (!d.is_number_integer()) bad("'d' must be an integer");
  spec.d = d.get<int>();
  const auto& basis = field(j, "basis");
  if (!basis.is_array()) bad("'basis' must be an array");
  for (const auto& b : basis) {
    const auto& label = field(b, "label");
    const auto& degree = field(b, "degree");
    if (!label.is_string() || !degree.is_number_integer()) bad("basis entries need a string label and an integer degree");
    spec.basis.push_back({label.get<std::string>(), degree.get<int>()});
  }
  spec.unit = rationals_from_json(field(j, "unit"));
  const auto& sc = field(j, "struct");
  if (!sc.is_array()) bad("'struct' must be an array");
  for (const auto& c : sc) {
    if (!c.is_array() || c.size() != 4) bad("struct entries are [i, j, k, coeff]");
    spec.struct_consts.push_back({index_from_json(c[0]), index_from_json(c[1]), index_from_json(c[2]),
                                  rational_from_json(c[3])});
  }
  spec.integral = rationals_from_json(field(j, "integral"));
  spec.euler = rationals_from_json(field(j, "euler"));
  return spec;
}

Json to_json(const ValidationReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) failures.push_back(Json{{"axiom", f.axiom}, {"witness", f.witness}, {"detail", f.detail}});
  return Json{{"valid", report.ok()}, {"failures", std::move(failures)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    bad("'" + path + "' is not valid JSON: " + e.what());
  }
}

AlgebraPtr resolve_algebra(const std::string& name_or_path) {
  for (const auto& name : builtin_names())
    if (name == name_or_path) return builtin_algebra(name);
  return std::make_shared<const FrobeniusAlgebra>(algebra_spec_from_json(read_json_file(name_or_path)));
}

// ---- classes ----

Json terms_to_json(const FrobeniusAlgebra& alg, const TensorClass& x) {
  Json out = Json::array();
  for (const auto& [t, c] : x.terms()) {
    Json labels = Json::array();
    for (std::size_t i = 0; i < t.size(); ++i) labels.push_back(alg.label(t[i]));
    out.push_back(Json{{"tuple", std::move(labels)}, {"coeff", to_json(c)}});
  }
  return out;
}

TensorClass terms_from_json(const FrobeniusAlgebra& alg, const Json& j, std::size_t arity) {
  if (!j.is_array()) bad("'terms' must be an array");
  TensorClass out(arity);
  for (const auto& term : j) {
    const auto& labels = field(term, "tuple");
    if (!labels.is_array() || labels.size() != arity)
      bad("tuple needs " + std::to_string(arity) + " labels, one per orbit");
    Tuple t;
    for (const auto& l : labels) {
      if (!l.is_string()) bad("tuple entries are basis labels");
      t.push_back(alg.index_of(l.get<std::string>()));
    }
    out.add(t, rational_from_json(field(term, "coeff")));
  }
  return out;
}

Json to_json(const OrbifoldRing& ring, const OrbifoldClass& x) {
  Json out = Json::array();
  for (const auto& [g, comp] : x.components())
    out.push_back(Json{{"perm", ring.group().element(g).str()}, {"terms", terms_to_json(ring.algebra(), comp)}});
  return out;
}

OrbifoldClass orbifold_class_from_json(const OrbifoldRing& ring, const Json& j) {
  if (!j.is_array()) bad("a ring element is an array of components");
  OrbifoldClass out;
  for (const auto& comp : j) {
    const std::size_t g = element_from_json(ring.group(), field(comp, "perm"));
    out.add(g, terms_from_json(ring.algebra(), field(comp, "terms"), ring.orbits(g).size()));
  }
  return out;
}

Json to_json(const OrbifoldRing& ring, const CRClass& x) {
  Json out = Json::array();
  for (const auto& [cls, comp] : x.components)
    out.push_back(
        Json{{"perm", ring.group().element(ring.class_rep(cls)).str()}, {"terms", terms_to_json(ring.algebra(), comp)}});
  return out;
}

CRClass cr_class_from_json(const OrbifoldRing& ring, const Json& j) {
  if (!j.is_array()) bad("a Chen-Ruan class is an array of components");
  CRClass out;
  for (const auto& comp : j) {
    const std::size_t g = element_from_json(ring.group(), field(comp, "perm"));
    const std::size_t cls = ring.group().class_of(g);
    if (ring.class_rep(cls) != g)
      bad("component must be keyed by the class representative " + ring.group().element(ring.class_rep(cls)).str());
    auto x = terms_from_json(ring.algebra(), field(comp, "terms"), ring.orbits(g).size());
    auto [it, fresh] = out.components.try_emplace(cls, x);
    if (!fresh) it->second += x;
    if (it->second.is_zero()) out.components.erase(it);
  }
  return out;
}

Json to_json(const KummerRing& ring, const KummerClass& x) {
  Json out = Json::array();
  for (const auto& [k, comp] : x.components())
    out.push_back(Json{{"perm", ring.base().group().element(k.g).str()},
                       {"torsion", Json{{"residues", k.y}, {"modulus", ring.m(k.g)}}},
                       {"terms", terms_to_json(ring.base().algebra(), comp)}});
  return out;
}

KummerClass kummer_class_from_json(const KummerRing& ring, const Json& j) {
  if (!j.is_array()) bad("a Kummer class is an array of components");
  KummerClass out;
  for (const auto& comp : j) {
    const std::size_t g = element_from_json(ring.base().group(), field(comp, "perm"));
    const auto& torsion = field(comp, "torsion");
    const auto& residues = field(torsion, "residues");
    if (!residues.is_array()) bad("torsion residues must be an array");
    Torsion y;
    for (const auto& r : residues) {
      if (!r.is_number_integer()) bad("torsion residues are integers");
      y.push_back(r.get<int>());
    }
    if (const auto it = torsion.find("modulus"); it != torsion.end() && *it != ring.m(g))
      bad("torsion modulus must be m(g) = " + std::to_string(ring.m(g)));
    (void)ring.point_code(g, y);
    out.add(KummerKey{g, y}, terms_from_json(ring.base().algebra(), field(comp, "terms"), ring.base().orbits(g).size()));
  }
  return out;
}

// ---- results ----

Json to_json(const PoincarePolynomial& p) {
  Json out = Json::object();
  for (const auto& [deg, dim] : p) out[std::to_string(deg)] = dim;
  return out;
}

Json to_json(const AssocCertificate& cert) {
  Json j;
  j["mode"] = cert.mode;
  j["signed"] = cert.signed_product;
  j["seed"] = cert.seed;
  j["count"] = cert.count;
  j["passed"] = cert.passed;
  j["witness"] = cert.witness ? Json(*cert.witness) : Json(nullptr);
  return j;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const RescalingVerdict& v) {
  Json j;
  j["n"] = v.n;
  if (v.witness) {
    j["witness"] = Json{{"scale", to_json(v.witness->scale)},
                        {"obstruction_sign", to_json(v.witness->obstruction_sign)},
                        {"rescaled", to_json(v.witness->rescaled)},
                        {"verified", v.witness->verified}};
  }
  if (v.proof) {
    const auto& p = *v.proof;
    Json minors = Json::array();
    for (const auto& m : p.minors) minors.push_back(to_json(m));
    j["proof"] = Json{{"isotropic", p.isotropic},
                      {"all_isotropic", p.all_isotropic},
                      {"isotropic_class", p.isotropic_class ? Json(*p.isotropic_class) : Json(nullptr)},
                      {"minors", std::move(minors)},
                      {"negative_definite", p.negative_definite},
                      {"proven", p.proven}};
  }
  return j;
}

} // namespace orbisym
