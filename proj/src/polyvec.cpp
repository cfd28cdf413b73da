#include "mcform/polyvec.hpp"

#include <bit>
#include <ostream>
#include <sstream>

namespace mcform {

int form_degree(FormMask m) { return std::popcount(m); }

std::vector<int> form_indices(FormMask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) out.push_back(i + 1);
  return out;
}

FormMask form_mask(const std::vector<int>& indices) {
  FormMask m = 0;
  for (int i : indices) m |= (1u << (i - 1));
  return m;
}

std::string form_str(FormMask m) {
  if (m == 0) return "1";
  std::string out = "xi{";
  bool first = true;
  for (int i : form_indices(m)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

int wedge_sign(FormMask a, FormMask b) {
  if (a & b) return 0;
  // number of transpositions = sum over bits of b of |{bits of a above it}|
  int inversions = 0;
  for (FormMask bb = b; bb != 0; bb &= bb - 1) {
    int bit = std::countr_zero(bb);
    inversions += std::popcount(a >> (bit + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

Polyvector Polyvector::from_series(const TruncatedSeries& f) {
  Polyvector p(f.context());
  p.add_component(0, f);
  return p;
}

Polyvector Polyvector::term(const TruncatedSeries& f, FormMask m) {
  Polyvector p(f.context());
  p.add_component(m, f);
  return p;
}

TruncatedSeries Polyvector::component(FormMask m) const {
  auto it = comps_.find(m);
  return it == comps_.end() ? TruncatedSeries::zero(ctx_) : it->second;
}

void Polyvector::add_component(FormMask m, const TruncatedSeries& f) {
  if (f.is_zero()) return;
  auto [it, inserted] = comps_.emplace(m, f);
  if (!inserted) {
    it->second = it->second + f;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

void Polyvector::check_context(const Polyvector& o) const {
  if (!ctx_->compatible(*o.ctx_)) fail(Errc::context_mismatch, "polyvector contexts differ");
}

Polyvector Polyvector::operator+(const Polyvector& o) const {
  check_context(o);
  Polyvector r(*this);
  for (const auto& [m, f] : o.comps_) r.add_component(m, f);
  return r;
}

Polyvector Polyvector::operator-(const Polyvector& o) const {
  check_context(o);
  Polyvector r(*this);
  for (const auto& [m, f] : o.comps_) r.add_component(m, -f);
  return r;
}

Polyvector Polyvector::operator-() const {
  Polyvector r(ctx_);
  for (const auto& [m, f] : comps_) r.comps_.emplace(m, -f);
  return r;
}

Polyvector Polyvector::scaled(const Scalar& c) const {
  Polyvector r(ctx_);
  if (c.is_zero()) return r;
  for (const auto& [m, f] : comps_) r.comps_.emplace(m, f.scaled(c));
  return r;
}

Polyvector Polyvector::wedge(const Polyvector& o) const {
  check_context(o);
  Polyvector r(ctx_);
  for (const auto& [ma, fa] : comps_)
    for (const auto& [mb, fb] : o.comps_) {
      int sign = wedge_sign(ma, mb);
      if (sign == 0) continue;
      TruncatedSeries prod = fa * fb;
      if (sign < 0) prod = -prod;
      r.add_component(ma | mb, prod);
    }
  return r;
}

bool Polyvector::has_form_parity(int parity) const {
  for (const auto& [m, f] : comps_)
    if ((form_degree(m) & 1) != parity) return false;
  return true;
}

Polyvector Polyvector::form_parity_part(int parity) const {
  Polyvector r(ctx_);
  for (const auto& [m, f] : comps_)
    if ((form_degree(m) & 1) == parity) r.comps_.emplace(m, f);
  return r;
}

Polyvector Polyvector::truncated(int d) const {
  Polyvector r(ctx_);
  for (const auto& [m, f] : comps_) r.add_component(m, f.truncated(d));
  return r;
}

int Polyvector::order() const {
  int best = ctx_->trunc_order() + 1;
  for (const auto& [m, f] : comps_) best = std::min(best, f.order());
  return best;
}

bool Polyvector::operator==(const Polyvector& o) const {
  return ctx_->compatible(*o.ctx_) && comps_ == o.comps_;
}

std::string Polyvector::str() const {
  if (comps_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, f] : comps_) {
    if (!first) os << " + ";
    os << "(" << f.str() << ")";
    if (m != 0) os << "*" << form_str(m);
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polyvector& p) { return os << p.str(); }

namespace {

int pow_sign(int e) { return (e % 2 == 0) ? 1 : -1; }

// One decomposable bracket [f xi_I, g xi_J], accumulated into out.
void schouten_pair(const TruncatedSeries& f, FormMask maskI, const TruncatedSeries& g,
                   FormMask maskJ, Polyvector& out) {
  const auto I = form_indices(maskI);
  const auto J = form_indices(maskJ);
  const int k = static_cast<int>(I.size());
  const int l = static_cast<int>(J.size());
  // sum over q of (-1)^(k-q-1) f (d_{i_q} g) xi_{I \ i_q} ^ xi_J
  for (int q = 1; q <= k; ++q) {
    FormMask rest = maskI & ~(1u << (I[q - 1] - 1));
    int sign = pow_sign(k - q - 1) * wedge_sign(rest, maskJ);
    if (sign == 0) continue;
    TruncatedSeries coeff = f * g.partial(I[q - 1]);
    out.add_component(rest | maskJ, sign < 0 ? -coeff : coeff);
  }
  // sum over q of (-1)^(l-q+(k-1)(l-1)) g (d_{j_q} f) xi_{J \ j_q} ^ xi_I
  for (int q = 1; q <= l; ++q) {
    FormMask rest = maskJ & ~(1u << (J[q - 1] - 1));
    int sign = pow_sign(l - q + (k - 1) * (l - 1)) * wedge_sign(rest, maskI);
    if (sign == 0) continue;
    TruncatedSeries coeff = g * f.partial(J[q - 1]);
    out.add_component(rest | maskI, sign < 0 ? -coeff : coeff);
  }
}

}  // namespace

Polyvector schouten(const Polyvector& a, const Polyvector& b) {
  if (!a.context()->compatible(*b.context()))
    fail(Errc::context_mismatch, "polyvector contexts differ");
  Polyvector out(a.context());
  for (const auto& [ma, fa] : a.components())
    for (const auto& [mb, fb] : b.components()) schouten_pair(fa, ma, fb, mb, out);
  return out;
}

Polyvector contract_dw(const Polyvector& omega, const TruncatedSeries& w) {
  return schouten(omega, Polyvector::from_series(w));
}

}  // namespace mcform
