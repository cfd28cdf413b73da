#ifndef MCFORM_SERIES_HPP
#define MCFORM_SERIES_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mcform/scalar.hpp"

namespace mcform {

/// Exponent vector of a monomial v^a.  Total degree is cached.
class Monomial {
 public:
  explicit Monomial(int num_vars) : exps_(num_vars, 0), degree_(0) {}
  explicit Monomial(std::vector<int> exps);
  Monomial(std::initializer_list<int> exps) : Monomial(std::vector<int>(exps)) {}
  static Monomial variable(int num_vars, int index);  ///< v_index, 1-based

  int num_vars() const { return static_cast<int>(exps_.size()); }
  int degree() const { return degree_; }
  int exp(int index) const { return exps_[index - 1]; }  ///< 1-based
  const std::vector<int>& exps() const { return exps_; }

  Monomial operator*(const Monomial& o) const;
  /// Lowers exponent of v_index by one; caller checks exp(index) > 0.
  Monomial divide_by_var(int index) const;

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  std::string str(const std::vector<std::string>& names) const;

 private:
  std::vector<int> exps_;
  int degree_;
};

/// Graded lexicographic order: lower total degree first, ties broken
/// lexicographically with v1 heaviest (so v2 < v1 within a degree).
bool graded_lex_less(const Monomial& a, const Monomial& b);
/// Graded reverse-lexicographic order, used only as the independent
/// elimination path in Jacobian-ring cross-checks.
bool graded_revlex_less(const Monomial& a, const Monomial& b);

/// Storage and printing order: degree ascending, lex-descending within a
/// degree, i.e. the usual reading order 1, v1, v2, v1^2, v1*v2, v2^2, ...
/// Canonical and deterministic; every series iterates this way.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return graded_lex_less(b, a);
  }
};

/// Shared shape of a family of series: number of variables, truncation
/// order D (all terms of total degree > D are discarded) and the base
/// field.  Variable names ride along for parsing and printing.
class SeriesContext {
 public:
  SeriesContext(int num_vars, int trunc_order, Field field);
  SeriesContext(std::vector<std::string> names, int trunc_order, Field field);

  int num_vars() const { return num_vars_; }
  int trunc_order() const { return trunc_order_; }
  Field field() const { return field_; }
  const std::vector<std::string>& names() const { return names_; }
  int var_index(const std::string& name) const;  ///< 1-based, 0 if unknown

  bool compatible(const SeriesContext& o) const {
    return num_vars_ == o.num_vars_ && trunc_order_ == o.trunc_order_ &&
           field_ == o.field_;
  }
  /// Same variables/field, possibly different truncation order.
  SeriesContext with_trunc(int trunc_order) const;

 private:
  int num_vars_;
  int trunc_order_;
  Field field_;
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const SeriesContext>;

ContextPtr make_context(int num_vars, int trunc_order, Field field = Field::Q);
ContextPtr make_context(std::vector<std::string> names, int trunc_order,
                        Field field = Field::Q);

/// A sparse multivariate formal power series over Q or Q(i), truncated at
/// total degree D.  The term map is canonical: no zero coefficients are
/// ever stored, and iteration is graded-lex.  Values are immutable in
/// spirit; every operation returns a fresh series.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static TruncatedSeries zero(ContextPtr ctx) { return TruncatedSeries(std::move(ctx)); }
  static TruncatedSeries constant(ContextPtr ctx, const Scalar& c);
  static TruncatedSeries variable(ContextPtr ctx, int index);
  /// Rejects monomials of degree > D with Errc::degree_overflow.
  static TruncatedSeries monomial(ContextPtr ctx, const Monomial& m, const Scalar& c);

  const ContextPtr& context() const { return ctx_; }
  const std::map<Monomial, Scalar, GradedLexLess>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  int order() const;  ///< min stored degree; trunc_order()+1 when empty
  int top_degree() const;  ///< max stored degree; -1 when empty
  Scalar coeff(const Monomial& m) const;
  int size() const { return static_cast<int>(terms_.size()); }

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries scaled(const Scalar& c) const;

  /// Formal partial derivative with respect to v_index (1-based).  Exact on
  /// all stored degrees <= D-1; the degree-D information of the result is
  /// complete because differentiation lowers degree.
  TruncatedSeries partial(int index) const;

  /// f(phi_1, ..., phi_n), exact in K[v]/m^{D+1}.  Each phi must have
  /// order >= 1 (Errc::order_violation otherwise) and share the context.
  TruncatedSeries substitute(const std::vector<TruncatedSeries>& phi) const;

  /// Homogeneous part of total degree d.
  TruncatedSeries homogeneous_part(int d) const;
  /// Terms of total degree <= d.
  TruncatedSeries truncated(int d) const;
  /// Same terms re-homed in a context with a different truncation order;
  /// terms above the new D are dropped.
  TruncatedSeries with_context(const ContextPtr& ctx) const;

  /// Inserts c into the coefficient of m (adding), pruning zeros.  Terms of
  /// degree > D are silently discarded: truncation is part of the ring.
  void add_term(const Monomial& m, const Scalar& c);

  bool operator==(const TruncatedSeries& o) const;
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

  std::string str() const;  ///< canonical rendering, graded-lex term order

 private:
  void check_context(const TruncatedSeries& o) const;

  ContextPtr ctx_;
  std::map<Monomial, Scalar, GradedLexLess> terms_;
};

std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s);

/// All monomials of total degree d in graded-lex order.
std::vector<Monomial> monomials_of_degree(int num_vars, int d);
/// All monomials of total degree <= d in graded-lex order.
std::vector<Monomial> monomials_up_to(int num_vars, int d);

}  // namespace mcform

#endif
