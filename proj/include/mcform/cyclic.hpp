#ifndef MCFORM_CYCLIC_HPP
#define MCFORM_CYCLIC_HPP

#include <string>
#include <vector>

#include "mcform/polyvec.hpp"

namespace mcform {

/// Diagonal action of Z_n: the generator scales v_i by xi^{w_i} for a
/// primitive n-th root of unity xi, and the dual generators xi_i by
/// xi^{-w_i}.  Roots of unity never appear as numbers anywhere: all
/// equivariance logic is residue arithmetic on weights.
class CyclicAction {
 public:
  CyclicAction(int order, std::vector<int> weights);
  static CyclicAction trivial(int num_vars) { return CyclicAction(1, std::vector<int>(num_vars, 0)); }
  /// The canonical genus-g action: order 2g+1, weights (1, 1, 2g-1).
  static CyclicAction genus(int g);

  int order() const { return order_; }
  const std::vector<int>& weights() const { return weights_; }
  int num_vars() const { return static_cast<int>(weights_.size()); }
  bool is_trivial() const;

  /// Weight of v^a xi_I: sum a_i w_i - sum_{i in I} w_i, mod n.
  int weight(const Monomial& m, FormMask form = 0) const;
  bool is_invariant(const TruncatedSeries& f) const;
  bool is_invariant(const Polyvector& p) const;

  /// Fixed subspace of the k-th power of the generator on V is {0}?
  bool power_has_trivial_fixed_space(int k) const;

  std::string str() const;

 private:
  int order_;
  std::vector<int> weights_;
};

/// Reynolds projection onto the invariants: keeps the weight-0 terms.
TruncatedSeries project_invariant(const TruncatedSeries& f, const CyclicAction& a);
Polyvector project_invariant(const Polyvector& p, const CyclicAction& a);

/// All weight-0 monomials of total degree in [1, d], graded-lex.  When
/// d >= n this list contains a generating set of the invariant ring
/// (Noether degree bound).
std::vector<Monomial> invariant_monomials_up_to(int num_vars, int d, const CyclicAction& a);

/// The semidirect product Lambda(V) x| Z_n.  Basis elements are
/// gamma^k (x) xi_I; the product twists by the action on forms, so the
/// structure constants are rational multiples of root-of-unity powers,
/// stored exactly as (rational, residue) pairs.
class SemidirectAlgebra {
 public:
  SemidirectAlgebra(int num_vars, const CyclicAction& action);

  struct Basis {
    int group_power;  // 0..n-1
    FormMask form;
  };
  struct Coef {
    Scalar rational;   // rational multiplier
    int root_power;    // residue r: the actual scalar is rational * xi^r
    bool is_zero() const { return rational.is_zero(); }
  };

  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<Basis>& basis() const { return basis_; }
  int z2_degree(int i) const { return form_degree(basis_[i].form) & 1; }
  std::string basis_label(int i) const;

  /// Product of basis elements i and j: a single twisted term (or zero).
  struct Product {
    int basis_index;  // -1 when zero
    Coef coef;
  };
  Product product(int i, int j) const;

  int unit_index() const { return unit_; }
  /// Exhaustive associativity check over all basis triples; returns the
  /// first failing triple as {i,j,k} or an empty vector on success.
  std::vector<int> associativity_failure() const;

  /// True when every root-of-unity power appearing in the table is
  /// realisable as a scalar in the given field (n | 2 over Q, n | 4 over
  /// Q(i)).
  bool realisable_over(Field f) const;
  /// Scalar value of xi^r when realisable; used by the fdalg bridge.
  Scalar root_scalar(int r, Field f) const;

  const CyclicAction& action() const { return action_; }

 private:
  int index_of(int group_power, FormMask form) const;

  int num_vars_;
  CyclicAction action_;
  std::vector<Basis> basis_;
  int unit_;
};

}  // namespace mcform

#endif
