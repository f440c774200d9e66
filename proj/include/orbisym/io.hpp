#ifndef ORBISYM_IO_HPP
#define ORBISYM_IO_HPP

#include <string>

#include "json.hpp"
#include "orbisym/assoc.hpp"
#include "orbisym/frobenius.hpp"
#include "orbisym/kummer.hpp"
#include "orbisym/orbifold.hpp"
#include "orbisym/rdp_model.hpp"

namespace orbisym {

using Json = nlohmann::ordered_json;

/// Rationals are written as "num" or "num/den" strings. Reading also accepts
/// JSON integers. Malformed input throws std::invalid_argument.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const FrobeniusAlgebraSpec& spec);
FrobeniusAlgebraSpec algebra_spec_from_json(const Json& j);
Json to_json(const ValidationReport& report);

/// Reads and parses a JSON file; throws std::invalid_argument on I/O or
/// syntax errors.
Json read_json_file(const std::string& path);
/// A built-in name, or a path to an algebra spec file.
AlgebraPtr resolve_algebra(const std::string& name_or_path);

/// [{tuple: [labels], coeff}] in tuple order.
Json terms_to_json(const FrobeniusAlgebra& alg, const TensorClass& x);
TensorClass terms_from_json(const FrobeniusAlgebra& alg, const Json& j, std::size_t arity);

/// [{perm: cycle text, terms}] in element order. Reading is strict: the
/// permutation must be in the group and each tuple needs one label per orbit.
Json to_json(const OrbifoldRing& ring, const OrbifoldClass& x);
OrbifoldClass orbifold_class_from_json(const OrbifoldRing& ring, const Json& j);

/// Same layout keyed by the class representative (first element of the
/// conjugacy class, which reading insists on).
Json to_json(const OrbifoldRing& ring, const CRClass& x);
CRClass cr_class_from_json(const OrbifoldRing& ring, const Json& j);

/// Adds torsion: {residues: [...], modulus: m(g)} to each component.
Json to_json(const KummerRing& ring, const KummerClass& x);
KummerClass kummer_class_from_json(const KummerRing& ring, const Json& j);

/// {"doubled_degree": dim, ...} in increasing degree.
Json to_json(const PoincarePolynomial& p);

Json to_json(const AssocCertificate& cert);
Json to_json(const Matrix& m);
Json to_json(const RescalingVerdict& v);

} // namespace orbisym

#endif // ORBISYM_IO_HPP
