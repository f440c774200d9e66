#include "orbisym/rdp_model.hpp"

#include <stdexcept>

namespace orbisym {

AnModel::AnModel(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("A_n model needs n >= 1");
}

Rational AnModel::e_product(int g, int h) const {
  if (g <= 0 || g > n_ || h <= 0 || h > n_) throw std::invalid_argument("E classes are indexed by 1..n");
  return (g + h) % order() == 0 ? Rational(1) : Rational(0);
}

Matrix AnModel::orbifold_gram() const {
  const auto N = static_cast<std::size_t>(n_);
  Matrix m(N, N);
  for (int g = 1; g <= n_; ++g)
    for (int h = 1; h <= n_; ++h)
      m(static_cast<std::size_t>(g - 1), static_cast<std::size_t>(h - 1)) = e_product(g, h) * Rational(1, order());
  return m;
}

Matrix AnModel::resolution_gram() const {
  const auto N = static_cast<std::size_t>(n_);
  Matrix m(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    m(i, i) = Rational(-2);
    if (i + 1 < N) m(i, i + 1) = m(i + 1, i) = Rational(1);
  }
  return m;
}

RescalingVerdict rescaling_obstruction(int n) {
  const AnModel model(n);
  RescalingVerdict out;
  out.n = n;
  const Matrix E = model.orbifold_gram(), F = model.resolution_gram();
  if (n == 1) {
    RescalingWitness w;
    w.rescaled = Matrix(1, 1);
    w.rescaled(0, 0) = w.scale * w.scale * w.obstruction_sign * E(0, 0);
    w.verified = w.rescaled == F;
    out.witness = std::move(w);
    return out;
  }
  ObstructionProof p;
  p.all_isotropic = true;
  for (int g = 1; g <= n; ++g) {
    const auto k = static_cast<std::size_t>(g - 1);
    p.isotropic.push_back(E(k, k).is_zero());
    if (!p.isotropic.back()) p.all_isotropic = false;
    if (!p.isotropic_class && (2 * g) % model.order() != 0) p.isotropic_class = g;
  }
  p.minors = F.leading_minors();
  p.negative_definite = true;
  for (std::size_t k = 0; k < p.minors.size(); ++k) {
    const bool odd = k % 2 == 0;  // minor of size k + 1
    if (odd ? !(p.minors[k] < Rational(0)) : !(Rational(0) < p.minors[k])) p.negative_definite = false;
  }
  p.proven = p.isotropic_class.has_value() && p.negative_definite;
  out.proof = std::move(p);
  return out;
}

} // namespace orbisym
