#ifndef ORBISYM_RDP_MODEL_HPP
#define ORBISYM_RDP_MODEL_HPP

#include <optional>
#include <vector>

#include "orbisym/linalg.hpp"
#include "orbisym/rational.hpp"

namespace orbisym {

/// Local model of an A_n point: stabilizer Z/(n+1), twisted classes E_g for
/// g = 1..n, resolution classes F_g on the (-2)-curves. Matrix row and column
/// k correspond to g = k + 1.
class AnModel {
public:
  explicit AnModel(int n);

  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int order() const noexcept { return n_ + 1; }

  /// Coefficient of p_e in E_g . E_h: 1 when g + h = 0 mod n+1, else 0.
  [[nodiscard]] Rational e_product(int g, int h) const;
  /// <E_g, E_h> with the 1/(n+1) quotient weight.
  [[nodiscard]] Matrix orbifold_gram() const;
  /// <F_g, F_h>: the negated A_n Cartan matrix.
  [[nodiscard]] Matrix resolution_gram() const;

private:
  int n_;
};

struct RescalingWitness {
  Rational scale{2};              // F_g -> scale E_g
  Rational obstruction_sign{-1};  // c(g, g^-1) = 1 replaced by this
  Matrix rescaled;                // scale^2 sign <E, E>
  bool verified = false;          // rescaled == resolution_gram
};

struct ObstructionProof {
  std::vector<bool> isotropic;  // <E_g, E_g> = 0 per g
  bool all_isotropic = false;
  // A class whose square misses the untwisted sector, so no rescaling of the
  // E_g or of the c(g,h) makes it non-isotropic.
  std::optional<int> isotropic_class;
  std::vector<Rational> minors;  // leading principal minors of resolution_gram
  bool negative_definite = false;
  bool proven = false;  // isotropic_class && negative_definite
};

struct RescalingVerdict {
  int n = 0;
  std::optional<RescalingWitness> witness;  // n = 1
  std::optional<ObstructionProof> proof;    // n >= 2
};

RescalingVerdict rescaling_obstruction(int n);

} // namespace orbisym

#endif // ORBISYM_RDP_MODEL_HPP
