#include "mcform/upoly.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace mcform {

void UPoly::normalise() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  std::vector<Scalar> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly UPoly::scaled(const Scalar& s) const {
  std::vector<Scalar> r(c_);
  for (auto& v : r) v *= s;
  return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Scalar> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Scalar(static_cast<long>(i));
  return UPoly(std::move(r));
}

UPoly UPoly::pow(int e) const {
  UPoly acc = UPoly::constant(Scalar::one());
  UPoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) fail(Errc::invalid_argument, "polynomial division by zero");
  UPoly rem = *this;
  std::vector<Scalar> quot(std::max(0, degree() - d.degree() + 1));
  Scalar lead_inv = d.leading().inverse();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int shift = rem.degree() - d.degree();
    Scalar f = rem.leading() * lead_inv;
    quot[shift] = f;
    std::vector<Scalar> sub(shift + d.c_.size());
    for (size_t i = 0; i < d.c_.size(); ++i) sub[shift + i] = d.c_[i] * f;
    rem = rem - UPoly(std::move(sub));
  }
  return {UPoly(std::move(quot)), rem};
}

Scalar UPoly::eval(const Scalar& at) const {
  Scalar acc;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
  return acc;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    if (i == 0 || !c_[i].is_one()) os << c_[i].str();
    if (i > 0 && !c_[i].is_one()) os << "*";
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::tuple<UPoly, UPoly, UPoly> upoly_ext_gcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(Scalar::one()), s1;
  UPoly t0, t1 = UPoly::constant(Scalar::one());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1); r1 = std::move(r);
    UPoly s = s0 - q * s1;
    s0 = std::move(s1); s1 = std::move(s);
    UPoly t = t0 - q * t1;
    t0 = std::move(t1); t1 = std::move(t);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Scalar inv = r0.leading().inverse();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& p) {
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() < 1) return out;
  UPoly a = p.monic();
  UPoly g = upoly_gcd(a, a.derivative());
  UPoly w = a / g;
  int mult = 1;
  while (w.degree() >= 1) {
    UPoly y = upoly_gcd(w, g);
    UPoly factor = w / y;
    if (factor.degree() >= 1) out.emplace_back(factor.monic(), mult);
    w = std::move(y);
    g = g / w;
    ++mult;
  }
  return out;
}

namespace {

// Divisors of |n| from trial division; when a large cofactor survives it is
// kept as a single pseudo-prime factor (missed splits merely leave a larger
// residual block downstream, never a wrong answer).
std::vector<mpz_class> divisors(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  std::vector<std::pair<mpz_class, int>> factors;
  if (n == 0) return {};
  for (mpz_class p = 2; p * p <= n && p < 1000000; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      factors.emplace_back(p, e);
    }
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<mpz_class> divs = {1};
  for (const auto& [p, e] : factors) {
    size_t base = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

std::pair<std::vector<Scalar>, UPoly> extract_rational_roots(const UPoly& p_in) {
  std::vector<Scalar> roots;
  UPoly p = p_in.monic();
  if (p.degree() < 1) return {roots, p};
  // pull out x = 0 first
  while (p.degree() >= 1 && p.coeff(0).is_zero()) {
    roots.push_back(Scalar::zero());
    p = p / UPoly::x();
  }
  if (p.degree() < 1) return {roots, p};
  for (const Scalar& c : p.coeffs())
    if (!c.is_real()) return {roots, p};  // root search only over Q
  // integer model: clear denominators
  mpz_class den = 1;
  for (const Scalar& c : p.coeffs()) {
    mpz_class d = c.re().get_den();
    den = den / gcd(den, d) * d;
  }
  mpz_class a0 = mpq_class(p.coeff(0).re() * den).get_num();
  mpz_class an = mpq_class(p.leading().re() * den).get_num();
  auto ps = divisors(a0);
  auto qs = divisors(an);
  bool found = true;
  while (found && p.degree() >= 1) {
    found = false;
    for (const mpz_class& num : ps) {
      for (const mpz_class& q : qs) {
        for (int sign = 1; sign >= -1 && !found; sign -= 2) {
          mpq_class cand(sign > 0 ? num : mpz_class(-num), q);
          cand.canonicalize();
          Scalar r{cand};
          if (p.eval(r).is_zero()) {
            roots.push_back(r);
            p = p / UPoly::linear_root(r);
            found = true;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) {
    return a.re() < b.re();
  });
  return {roots, p.monic()};
}

}  // namespace mcform
