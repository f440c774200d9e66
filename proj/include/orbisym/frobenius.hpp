#ifndef ORBISYM_FROBENIUS_HPP
#define ORBISYM_FROBENIUS_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbisym/linalg.hpp"
#include "orbisym/rational.hpp"

namespace orbisym {

struct BasisElement {
  std::string label;
  int degree = 0;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

struct StructConst {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Rational coeff;
  friend bool operator==(const StructConst&, const StructConst&) = default;
};

/// Plain description of a graded Frobenius algebra H*(S) with dim_C S = d:
/// b_i * b_j = sum_k c b_k, the degree map, and the Euler class c_d(T_S).
struct FrobeniusAlgebraSpec {
  std::string name;
  int d = 0;
  std::vector<BasisElement> basis;
  std::vector<Rational> unit;
  std::vector<StructConst> struct_consts;
  std::vector<Rational> integral;
  std::vector<Rational> euler;
  friend bool operator==(const FrobeniusAlgebraSpec&, const FrobeniusAlgebraSpec&) = default;
};

struct AxiomFailure {
  std::string axiom;
  std::vector<std::size_t> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomFailure> failures;
  [[nodiscard]] bool ok() const noexcept { return failures.empty(); }
};

/// Checks shape, grading, graded commutativity, associativity, unit, top-degree
/// support of the integral, nondegeneracy of the pairing and homogeneity of
/// the Euler class. Failures carry a witness basis triple where one exists.
ValidationReport validate(const FrobeniusAlgebraSpec& spec);

class InvalidAlgebra : public std::invalid_argument {
public:
  InvalidAlgebra(const std::string& what, ValidationReport report)
      : std::invalid_argument(what), report_(std::move(report)) {}
  [[nodiscard]] const ValidationReport& report() const noexcept { return report_; }

private:
  ValidationReport report_;
};

/// A validated algebra with its multiplication table, Gram matrix and the
/// inverse Gram matrix precomputed. Immutable after construction.
class FrobeniusAlgebra {
public:
  /// Throws InvalidAlgebra if validate(spec) reports any failure.
  explicit FrobeniusAlgebra(FrobeniusAlgebraSpec spec);

  [[nodiscard]] const FrobeniusAlgebraSpec& spec() const noexcept { return spec_; }
  [[nodiscard]] const std::string& name() const noexcept { return spec_.name; }
  [[nodiscard]] int d() const noexcept { return spec_.d; }
  [[nodiscard]] int top_degree() const noexcept { return 2 * spec_.d; }
  [[nodiscard]] std::size_t dim() const noexcept { return spec_.basis.size(); }
  [[nodiscard]] int degree(std::size_t i) const { return spec_.basis[i].degree; }
  [[nodiscard]] bool odd(std::size_t i) const { return (spec_.basis[i].degree & 1) != 0; }
  [[nodiscard]] const std::string& label(std::size_t i) const { return spec_.basis[i].label; }
  /// Basis index of a label; throws std::invalid_argument when unknown.
  [[nodiscard]] std::size_t index_of(const std::string& label) const;
  [[nodiscard]] bool has_odd() const noexcept { return has_odd_; }

  [[nodiscard]] const SparseVec& product(std::size_t i, std::size_t j) const { return mult_[i * dim() + j]; }
  [[nodiscard]] SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
  [[nodiscard]] Rational integrate(const SparseVec& a) const;
  [[nodiscard]] Rational integral(std::size_t i) const { return spec_.integral[i]; }
  [[nodiscard]] const SparseVec& unit() const noexcept { return unit_; }
  [[nodiscard]] const SparseVec& euler() const noexcept { return euler_; }
  /// e^k, with e^0 the unit.
  [[nodiscard]] SparseVec euler_power(int k) const;

  /// gram(i, j) = integral of b_i b_j.
  [[nodiscard]] const Rational& gram(std::size_t i, std::size_t j) const { return gram_(i, j); }
  [[nodiscard]] const Matrix& gram_matrix() const noexcept { return gram_; }
  /// Nonzero entries of row i of the inverse Gram matrix, as (column, value).
  [[nodiscard]] const std::vector<std::pair<std::size_t, Rational>>& gram_inverse_row(std::size_t i) const {
    return gram_inv_rows_[i];
  }
  [[nodiscard]] const std::vector<std::size_t>& basis_of_degree(int deg) const;

private:
  FrobeniusAlgebraSpec spec_;
  std::vector<SparseVec> mult_;
  SparseVec unit_;
  SparseVec euler_;
  Matrix gram_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> gram_inv_rows_;
  std::vector<std::vector<std::size_t>> by_degree_;
  bool has_odd_ = false;
};

using AlgebraPtr = std::shared_ptr<const FrobeniusAlgebra>;

/// Built-ins are constructed once and shared.
/// Names of the built-in algebras: mock2, k3, abelian, trivial.
std::vector<std::string> builtin_names();
/// Throws std::invalid_argument for an unknown name.
FrobeniusAlgebraSpec builtin_spec(const std::string& name);
AlgebraPtr builtin_algebra(const std::string& name);

/// K3-like algebra: H^2 carries the given symmetric intersection form (22x22).
/// Without a form, three hyperbolic planes plus sixteen (-1) entries are used.
FrobeniusAlgebraSpec k3_spec(const Matrix* form = nullptr);

} // namespace orbisym

#endif // ORBISYM_FROBENIUS_HPP
