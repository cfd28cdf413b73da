#include "mcform/cyclic.hpp"

#include <sstream>

namespace mcform {

CyclicAction::CyclicAction(int order, std::vector<int> weights)
    : order_(order), weights_(std::move(weights)) {
  if (order_ < 1) fail(Errc::validation_error, "group order must be >= 1");
  for (int& w : weights_) {
    w %= order_;
    if (w < 0) w += order_;
  }
}

CyclicAction CyclicAction::genus(int g) {
  if (g < 2) fail(Errc::bad_params, "genus must be >= 2");
  return CyclicAction(2 * g + 1, {1, 1, 2 * g - 1});
}

bool CyclicAction::is_trivial() const {
  for (int w : weights_)
    if (w != 0) return false;
  return true;
}

int CyclicAction::weight(const Monomial& m, FormMask form) const {
  if (m.num_vars() != num_vars())
    fail(Errc::validation_error, "weight vector length does not match variable count");
  long s = 0;
  for (int i = 1; i <= num_vars(); ++i) s += static_cast<long>(m.exp(i)) * weights_[i - 1];
  for (int i : form_indices(form)) s -= weights_[i - 1];
  int r = static_cast<int>(s % order_);
  return r < 0 ? r + order_ : r;
}

bool CyclicAction::is_invariant(const TruncatedSeries& f) const {
  for (const auto& [m, c] : f.terms())
    if (weight(m) != 0) return false;
  return true;
}

bool CyclicAction::is_invariant(const Polyvector& p) const {
  for (const auto& [mask, f] : p.components())
    for (const auto& [m, c] : f.terms())
      if (weight(m, mask) != 0) return false;
  return true;
}

bool CyclicAction::power_has_trivial_fixed_space(int k) const {
  for (int w : weights_)
    if ((static_cast<long>(k) * w) % order_ == 0) return false;
  return true;
}

std::string CyclicAction::str() const {
  std::ostringstream os;
  os << "Z_" << order_ << " weights (";
  for (size_t i = 0; i < weights_.size(); ++i) os << (i ? "," : "") << weights_[i];
  os << ")";
  return os.str();
}

TruncatedSeries project_invariant(const TruncatedSeries& f, const CyclicAction& a) {
  TruncatedSeries r(f.context());
  for (const auto& [m, c] : f.terms())
    if (a.weight(m) == 0) r.add_term(m, c);
  return r;
}

Polyvector project_invariant(const Polyvector& p, const CyclicAction& a) {
  Polyvector r(p.context());
  for (const auto& [mask, f] : p.components()) {
    TruncatedSeries g(f.context());
    for (const auto& [m, c] : f.terms())
      if (a.weight(m, mask) == 0) g.add_term(m, c);
    r.add_component(mask, g);
  }
  return r;
}

std::vector<Monomial> invariant_monomials_up_to(int num_vars, int d, const CyclicAction& a) {
  if (d < 1) fail(Errc::invalid_argument, "degree bound must be >= 1");
  std::vector<Monomial> out;
  for (const Monomial& m : monomials_up_to(num_vars, d))
    if (m.degree() >= 1 && a.weight(m) == 0) out.push_back(m);
  return out;
}

SemidirectAlgebra::SemidirectAlgebra(int num_vars, const CyclicAction& action)
    : num_vars_(num_vars), action_(action) {
  if (action.num_vars() != num_vars)
    fail(Errc::validation_error, "action size does not match variable count");
  for (int k = 0; k < action_.order(); ++k)
    for (FormMask f = 0; f < (1u << num_vars_); ++f) basis_.push_back({k, f});
  unit_ = index_of(0, 0);
}

int SemidirectAlgebra::index_of(int group_power, FormMask form) const {
  return group_power * (1 << num_vars_) + static_cast<int>(form);
}

std::string SemidirectAlgebra::basis_label(int i) const {
  const Basis& b = basis_[i];
  std::string out = "g^" + std::to_string(b.group_power) + "*";
  out += (b.form == 0) ? "1" : form_str(b.form);
  return out;
}

SemidirectAlgebra::Product SemidirectAlgebra::product(int i, int j) const {
  const Basis& a = basis_[i];
  const Basis& b = basis_[j];
  int sign = wedge_sign(a.form, b.form);
  if (sign == 0) return {-1, {Scalar::zero(), 0}};
  // (g^a (x) w)(g^b (x) w') = g^{a+b} (x) (rho(g^b)^{-1} w) ^ w', and the
  // inverse dual action scales xi_I by xi^{b * sum_{i in I} w_i}.
  long twist = 0;
  for (int idx : form_indices(a.form)) twist += action_.weights()[idx - 1];
  twist = (twist * b.group_power) % action_.order();
  int k = (a.group_power + b.group_power) % action_.order();
  return {index_of(k, a.form | b.form),
          {sign < 0 ? -Scalar::one() : Scalar::one(), static_cast<int>(twist)}};
}

std::vector<int> SemidirectAlgebra::associativity_failure() const {
  const int n = dimension();
  auto combine = [this](const Product& p, int k) -> Product {
    if (p.basis_index < 0) return p;
    Product q = product(p.basis_index, k);
    if (q.basis_index < 0) return q;
    q.coef.rational *= p.coef.rational;
    q.coef.root_power = (q.coef.root_power + p.coef.root_power) % action_.order();
    return q;
  };
  auto combine_left = [this](int i, const Product& p) -> Product {
    if (p.basis_index < 0) return p;
    Product q = product(i, p.basis_index);
    if (q.basis_index < 0) return q;
    q.coef.rational *= p.coef.rational;
    q.coef.root_power = (q.coef.root_power + p.coef.root_power) % action_.order();
    return q;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Product left = combine(product(i, j), k);
        Product right = combine_left(i, product(j, k));
        bool lzero = left.basis_index < 0 || left.coef.is_zero();
        bool rzero = right.basis_index < 0 || right.coef.is_zero();
        if (lzero && rzero) continue;
        if (lzero != rzero || left.basis_index != right.basis_index ||
            left.coef.rational != right.coef.rational ||
            left.coef.root_power != right.coef.root_power)
          return {i, j, k};
      }
  return {};
}

bool SemidirectAlgebra::realisable_over(Field f) const {
  int n = action_.order();
  return f == Field::Q ? (n <= 2) : (n == 1 || n == 2 || n == 4);
}

Scalar SemidirectAlgebra::root_scalar(int r, Field f) const {
  if (!realisable_over(f)) fail(Errc::field_mismatch, "root of unity not in the base field");
  int n = action_.order();
  r %= n;
  if (r < 0) r += n;
  if (n <= 2) return r == 0 ? Scalar::one() : -Scalar::one();
  // n == 4 over Q(i): xi = i
  return Scalar::i().pow(r);
}

}  // namespace mcform
