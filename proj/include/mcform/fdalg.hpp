#ifndef MCFORM_FDALG_HPP
#define MCFORM_FDALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "mcform/cyclic.hpp"
#include "mcform/linalg.hpp"
#include "mcform/parse.hpp"
#include "mcform/upoly.hpp"

namespace mcform {

using Elem = std::vector<Scalar>;  ///< coordinates in the algebra basis

/// A finite-dimensional Z2-graded unital algebra given by structure
/// constants.  Associativity and Z2-additivity of degrees are verified
/// exhaustively at construction.
class FiniteDimAlgebra {
 public:
  /// Builds from labels, Z2 degrees and a full product table
  /// table[i*dim+j] = e_i * e_j.  unit_index names the two-sided unit.
  FiniteDimAlgebra(std::vector<std::string> labels, std::vector<int> z2_degrees,
                   std::vector<Elem> table, int unit_index);

  /// Realises a presentation: rules must cover every basis pair, either
  /// directly or through the supercommutative mirror ba = (-1)^{|a||b|} ab.
  /// Fails with IncompleteRules / NotAssociative (reporting the offending
  /// pair or triple).
  static FiniteDimAlgebra from_presentation(const RingBlock& block);

  /// Built-in algebras:
  ///   qh_moduli_sigma2        dim 8, split element h, c1 = 2h
  ///   qh_quadric(n)           dim n+1 (n odd) or n+2 (n even), c1 = n h
  ///   qh_intersection(g)      dim 4g, c1 = (2g-2) h
  ///   clifford(k)             dim 2^k
  ///   exterior(m)             dim 2^m
  static FiniteDimAlgebra builtin(const std::string& name, int param = 0);
  static std::vector<std::string> builtin_names();

  int dimension() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  int z2_degree(int i) const { return z2_[i]; }
  int label_index(const std::string& label) const;  ///< -1 if unknown

  Elem zero() const { return Elem(dimension()); }
  Elem unit() const;
  Elem basis_elem(int i) const;
  /// Parses "1/4*h3 - 4*h" style linear combinations of basis labels.
  Elem parse_element(const std::string& text) const;
  std::string element_str(const Elem& e) const;

  Elem multiply(const Elem& a, const Elem& b) const;
  const Elem& basis_product(int i, int j) const { return table_[i * dimension() + j]; }

  /// Matrix of x -> a*x in the basis.
  DenseMatrix mult_operator(const Elem& a) const;

  /// Minimal polynomial of mult_operator(a): Krylov iteration from the
  /// unit, saturated over the remaining basis vectors so the result
  /// annihilates the whole operator.
  UPoly minimal_polynomial(const Elem& a) const;

  bool idempotent_check(const Elem& e) const;
  /// Distinguished element used by eigensplitting commands (h for the QH
  /// builtins); empty when the algebra has none.
  const std::optional<Elem>& split_element() const { return split_; }
  const std::optional<Elem>& c1() const { return c1_; }

  /// True if span(vectors) is closed under the product.
  bool span_closed_under_product(const std::vector<Elem>& vectors) const;

  /// Marks `label` as the eigensplitting element, with c1 a multiple of it.
  void set_distinguished(const std::string& label, const Scalar& c1_multiple);

 private:
  void verify();

  std::vector<std::string> labels_;
  std::vector<int> z2_;
  std::vector<Elem> table_;
  int unit_;
  std::optional<Elem> split_;
  std::optional<Elem> c1_;
};

/// Builds a scalar algebra from a semidirect product; requires the twist's
/// roots of unity to exist in the field.
FiniteDimAlgebra semidirect_to_algebra(const SemidirectAlgebra& s, Field f);

/// One summand of the generalised-eigenspace decomposition.
struct EigenBlock {
  std::optional<Scalar> eigenvalue;  ///< set for rational eigenvalues
  UPoly factor;                      ///< (x - lambda) or the whole block factor
  int multiplicity;                  ///< exponent in the minimal polynomial
  int dimension;
  std::vector<Elem> space_basis;     ///< basis of ker factor(T)^multiplicity
  Elem idempotent;
};

struct EigenSplit {
  UPoly minpoly;
  std::vector<EigenBlock> blocks;
};

/// Splits A into generalised eigenspaces of mult_operator(a).  The minimal
/// polynomial is factored by square-free decomposition plus rational-root
/// extraction; residual factors are kept whole as blocks.  Idempotents come
/// from the partial-fraction decomposition of 1/minpoly and are verified
/// exactly (sum 1, orthogonal, idempotent, dimensions adding up).
EigenSplit eigen_split(const FiniteDimAlgebra& a, const Elem& elem);

/// Dimension of the generalised 0-eigenspace of mult by elem, computed
/// independently of eigen_split as ker T^dim.
int zero_eigenspace_rank(const FiniteDimAlgebra& a, const Elem& elem);

}  // namespace mcform

#endif
