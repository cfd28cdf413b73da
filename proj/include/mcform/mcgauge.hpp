#ifndef MCFORM_MCGAUGE_HPP
#define MCFORM_MCGAUGE_HPP

#include <optional>
#include <string>
#include <vector>

#include "mcform/cyclic.hpp"
#include "mcform/linalg.hpp"
#include "mcform/polyvec.hpp"
#include "mcform/report.hpp"

namespace mcform {

/// A Maurer-Cartan pair (W, eta): a formal function and a formal 2-form,
/// both with coefficients of order >= 3 (the given product on Lambda(V) is
/// not deformed).
struct MCPair {
  TruncatedSeries w;
  Polyvector eta;

  MCPair(TruncatedSeries w_in, Polyvector eta_in);
  explicit MCPair(TruncatedSeries w_in);

  const ContextPtr& context() const { return w.context(); }
  /// W + eta as a single polyvector (the twisting element).
  Polyvector combined() const;
};

/// Outcome of checking the three bracket equations.
struct MCVerdict {
  bool ww_zero = true;   // identically true: the bracket kills 0-forms
  bool eta_eta_zero = true;
  bool w_eta_zero = true;
  std::string failure;   // empty on pass, else names the failing bracket
  std::string note;
  bool pass() const { return ww_zero && eta_eta_zero && w_eta_zero; }
};

/// Verifies [W,W] = [eta,eta] = [W,eta] = 0 exactly up to coefficient
/// degree D-1 (one derivative is consumed by the bracket).
MCVerdict mc_check(const MCPair& p);

/// One gauge move.  Logs of these are replayable: applying the recorded
/// steps to the recorded input reproduces the output bit-exactly.
struct GaugeStep {
  enum class Kind { vector_field, three_form, linear_change, cstar_rescale };
  Kind kind = Kind::cstar_rescale;
  std::optional<Polyvector> field;          // vector_field / three_form payload
  std::vector<std::vector<Scalar>> matrix;  // linear_change payload (n x n)
  Scalar epsilon;                           // cstar_rescale payload

  static GaugeStep vector_field(Polyvector g1);
  static GaugeStep three_form(Polyvector g3);
  static GaugeStep linear_change(std::vector<std::vector<Scalar>> m);
  static GaugeStep cstar_rescale(Scalar eps);

  Report to_report(const ContextPtr& ctx) const;
  static GaugeStep from_report(const Report& r, const ContextPtr& ctx);
};

/// exp(g1) . W through the adjoint action
///   W + sum_{n >= 0} ad(g1)^n / (n+1)!  [g1, W].
/// The series terminates at truncation because g1 has coefficient order
/// >= 2, which is also required (OrderViolation otherwise).
TruncatedSeries exp_vector_field(const TruncatedSeries& w, const Polyvector& g1);
/// Same adjoint series on an arbitrary polyvector (transports eta).
Polyvector exp_adjoint(const Polyvector& x, const Polyvector& g1);

/// (0, g3) . (W, eta) = (W, eta + iota_{dW}(g3)).
MCPair apply_threeform(const MCPair& p, const Polyvector& g3);

/// Rescales the degree-j part of W by eps^{j-2}.
TruncatedSeries cstar_rescale(const TruncatedSeries& w, const Scalar& eps);
/// The same action on a polyvector (coefficient degree j scales by
/// eps^{j-2}); used to transport pairs in gauge-invariance tests.
Polyvector cstar_rescale(const Polyvector& p, const Scalar& eps);

/// Coordinate change v -> M v on series; on polyvectors the dual
/// generators transform by the inverse transpose, which makes the map a
/// Schouten-bracket automorphism.
TruncatedSeries linear_change(const TruncatedSeries& f, const std::vector<std::vector<Scalar>>& m);
Polyvector linear_change(const Polyvector& p, const std::vector<std::vector<Scalar>>& m);

/// Applies one gauge step to a pair.
MCPair apply_gauge_step(const MCPair& p, const GaugeStep& s);
/// Replays a full log.
MCPair replay_gauge_log(const MCPair& p, const std::vector<GaugeStep>& log);

/// Solves [g3, dW] = eta in the Koszul complex: returns the 3-form g3 with
/// contract_dw(g3, W) = eta exactly up to degree D-1, solving degree by
/// degree; the zero solution is chosen on the kernel.  Throws
/// NotCoboundary (with the first infeasible degree) when eta is not a
/// coboundary.
Polyvector solve_eta_coboundary(const MCPair& p);

/// Lemma-level classification of the cubic part.
struct CubicClass {
  enum class Type { type_a, type_b, other };
  Type type = Type::other;
  Scalar lambda;                // the lead coefficient for type A / B
  TruncatedSeries cubic_part;
  /// For type B over Q(i): a G-commuting linear change to type A.
  std::optional<std::vector<std::vector<Scalar>>> to_type_a;

  explicit CubicClass(const ContextPtr& ctx) : cubic_part(TruncatedSeries::zero(ctx)) {}
};
CubicClass classify_cubic(const TruncatedSeries& w, const CyclicAction& a);

/// Result of the finite-determinacy normal-form run.
struct NormalFormReport {
  std::string digest;            // input digest
  std::vector<GaugeStep> log;    // ordered, replayable
  TruncatedSeries input;
  TruncatedSeries output;        // lambda' v1v2v3 + sum mu_i' v_i^{2g+1}
  Scalar lambda;
  std::vector<Scalar> mu;
  bool residual_zero = false;
  std::string status;            // "ok" on success
  /// Exponent bookkeeping for the final reduction to Q: the rescalings
  /// t_i, eps demanded of an algebraic closure, recorded symbolically.
  std::vector<std::string> scaling_relations;

  NormalFormReport(const ContextPtr& ctx)
      : input(TruncatedSeries::zero(ctx)), output(TruncatedSeries::zero(ctx)) {}
};

/// The iterative normal-form algorithm: brings an invariant W with cubic
/// type A to lambda' v1v2v3 + sum mu_i' v_i^{2g+1} by equivariant gauge
/// moves, strictly raising the order of the residual at each step.  For a
/// type-B cubic over Q(i) the classification witness is applied first.
NormalFormReport normal_form(const TruncatedSeries& w, const CyclicAction& a, int genus);

Report normal_form_to_report(const NormalFormReport& r);

}  // namespace mcform

#endif
