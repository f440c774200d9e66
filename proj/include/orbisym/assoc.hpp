#ifndef ORBISYM_ASSOC_HPP
#define ORBISYM_ASSOC_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbisym/rational.hpp"

namespace orbisym {

struct CheckOptions {
  bool exhaustive = true;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  bool signed_product = false;
  std::size_t max_dim = 200;  // exhaustive mode bound on the ring dimension
  unsigned jobs = 1;
};

struct AssocCertificate {
  std::string mode;  // "exhaustive" or "sampled"
  bool signed_product = false;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;  // triples verified
  bool passed = true;
  std::optional<std::array<std::size_t, 3>> witness;  // basis indices (a, b, c)
};

/// Product of two basis elements, sorted by output index. Must be safe to
/// call from several threads when jobs > 1.
using BasisProduct = std::function<std::vector<std::pair<std::size_t, Rational>>(std::size_t, std::size_t)>;

/// (ab)c = a(bc) for basis triples of an algebra of dimension n.
/// Exhaustive mode tabulates all n^2 basis products and then compares both
/// bracketings for every triple, grouped by the middle factor. Sampled mode
/// draws opts.samples triples from a seeded mt19937_64.
AssocCertificate check_associativity(std::size_t n, const BasisProduct& mul, const CheckOptions& opts);

} // namespace orbisym

#endif // ORBISYM_ASSOC_HPP
