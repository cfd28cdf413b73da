#ifndef MCFORM_UPOLY_HPP
#define MCFORM_UPOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "mcform/scalar.hpp"

namespace mcform {

/// Dense univariate polynomial over the exact base field, ascending
/// coefficients, normalised (no trailing zeros).
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { normalise(); }
  static UPoly zero() { return UPoly(); }
  static UPoly constant(const Scalar& c) { return UPoly({c}); }
  static UPoly x() { return UPoly({Scalar::zero(), Scalar::one()}); }
  /// x - r
  static UPoly linear_root(const Scalar& r) { return UPoly({-r, Scalar::one()}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Scalar& coeff(int i) const { return c_[i]; }
  const Scalar& leading() const { return c_.back(); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly scaled(const Scalar& s) const;
  UPoly monic() const;
  UPoly derivative() const;
  UPoly pow(int e) const;

  /// Euclidean division: returns {quotient, remainder}.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  UPoly operator%(const UPoly& d) const { return divmod(d).second; }
  UPoly operator/(const UPoly& d) const { return divmod(d).first; }

  Scalar eval(const Scalar& at) const;

  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  std::string str(const std::string& var = "x") const;

 private:
  void normalise();
  std::vector<Scalar> c_;
};

UPoly upoly_gcd(UPoly a, UPoly b);  ///< monic gcd
/// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic.
std::tuple<UPoly, UPoly, UPoly> upoly_ext_gcd(const UPoly& a, const UPoly& b);

/// Yun square-free decomposition: p = prod f_i^i over the returned
/// (f_i, i) with f_i square-free, pairwise coprime, monic.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& p);

/// Splits off rational roots of a square-free monic polynomial.  Returns
/// the roots and the residual cofactor (monic; constant 1 when the
/// polynomial splits completely).  The residual is reported as a whole
/// block by callers; it is not guaranteed irreducible.
std::pair<std::vector<Scalar>, UPoly> extract_rational_roots(const UPoly& p);

}  // namespace mcform

#endif
