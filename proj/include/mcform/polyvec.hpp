#ifndef MCFORM_POLYVEC_HPP
#define MCFORM_POLYVEC_HPP

#include <map>
#include <string>
#include <vector>

#include "mcform/series.hpp"

namespace mcform {

/// A form index is a strictly increasing subset of {1..n} naming
/// xi_{i1} ^ ... ^ xi_{ik}; we store it as a bitmask (bit i-1 = xi_i).
using FormMask = unsigned;

int form_degree(FormMask m);
std::vector<int> form_indices(FormMask m);               ///< increasing, 1-based
FormMask form_mask(const std::vector<int>& indices);     ///< 1-based
std::string form_str(FormMask m);                        ///< e.g. "xi{1,2}"

/// Sign of normalising the concatenation (A..., B...) into increasing
/// order; 0 when the masks overlap.
int wedge_sign(FormMask a, FormMask b);

/// Components are ordered by form degree, then by mask value; iteration
/// over a Polyvector is deterministic.
struct FormLess {
  bool operator()(FormMask a, FormMask b) const {
    int da = form_degree(a), db = form_degree(b);
    return da != db ? da < db : a < b;
  }
};

/// An element of K[[V^]] (x) Lambda(V): a sparse map from form indices to
/// truncated series.  Zero series are never stored.  This is the model of
/// Hochschild cochains used throughout; Maurer-Cartan data, gauge fields
/// and Koszul differentials all live here.
class Polyvector {
 public:
  explicit Polyvector(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Polyvector zero(ContextPtr ctx) { return Polyvector(std::move(ctx)); }
  static Polyvector from_series(const TruncatedSeries& f);       ///< 0-form
  static Polyvector term(const TruncatedSeries& f, FormMask m);  ///< f * xi_m

  const ContextPtr& context() const { return ctx_; }
  const std::map<FormMask, TruncatedSeries, FormLess>& components() const {
    return comps_;
  }
  TruncatedSeries component(FormMask m) const;
  bool is_zero() const { return comps_.empty(); }

  /// Adds f * xi_m; prunes zero series.
  void add_component(FormMask m, const TruncatedSeries& f);

  Polyvector operator+(const Polyvector& o) const;
  Polyvector operator-(const Polyvector& o) const;
  Polyvector operator-() const;
  Polyvector scaled(const Scalar& c) const;

  /// Exterior product with the shuffle sign; components with a repeated
  /// index vanish.
  Polyvector wedge(const Polyvector& o) const;

  /// True if every component has the given form-degree parity (0 even).
  bool has_form_parity(int parity) const;
  /// Components of the given form-degree parity.
  Polyvector form_parity_part(int parity) const;
  /// Per-component restriction to coefficient degrees <= d.
  Polyvector truncated(int d) const;
  /// Minimum coefficient degree over all components (D+1 if zero).
  int order() const;

  bool operator==(const Polyvector& o) const;
  bool operator!=(const Polyvector& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void check_context(const Polyvector& o) const;

  ContextPtr ctx_;
  std::map<FormMask, TruncatedSeries, FormLess> comps_;
};

std::ostream& operator<<(std::ostream& os, const Polyvector& p);

/// The Schouten bracket on polyvector fields, implemented term-by-term
/// from the two-sum contraction formula.  One polynomial derivative is
/// consumed: results are exact up to coefficient degree D-1.
Polyvector schouten(const Polyvector& a, const Polyvector& b);

/// iota_{dW}: the Koszul contraction xi -> [xi, W].  Equal to
/// schouten(omega, W-as-0-form); lowers form degree by one and vanishes
/// on 0-forms.
Polyvector contract_dw(const Polyvector& omega, const TruncatedSeries& w);

}  // namespace mcform

#endif
