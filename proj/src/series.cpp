#include "mcform/series.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace mcform {

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)), degree_(0) {
  for (int e : exps_) {
    if (e < 0) fail(Errc::invalid_argument, "negative exponent");
    degree_ += e;
  }
}

Monomial Monomial::variable(int num_vars, int index) {
  Monomial m(num_vars);
  m.exps_[index - 1] = 1;
  m.degree_ = 1;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  r.degree_ += o.degree_;
  return r;
}

Monomial Monomial::divide_by_var(int index) const {
  Monomial r(*this);
  r.exps_[index - 1] -= 1;
  r.degree_ -= 1;
  return r;
}

std::string Monomial::str(const std::vector<std::string>& names) const {
  if (degree_ == 0) return "1";
  std::string out;
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
  }
  return out;
}

bool graded_lex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  // lex with v1 heaviest: larger leading exponent = larger monomial
  const auto& ae = a.exps();
  const auto& be = b.exps();
  for (size_t i = 0; i < ae.size(); ++i)
    if (ae[i] != be[i]) return ae[i] < be[i];
  return false;
}

bool graded_revlex_less(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  // grevlex: compare last differing exponent; larger exponent = smaller
  const auto& ae = a.exps();
  const auto& be = b.exps();
  for (size_t i = ae.size(); i-- > 0;)
    if (ae[i] != be[i]) return ae[i] > be[i];
  return false;
}

SeriesContext::SeriesContext(int num_vars, int trunc_order, Field field)
    : num_vars_(num_vars), trunc_order_(trunc_order), field_(field) {
  if (num_vars < 1) fail(Errc::invalid_argument, "need at least one variable");
  if (trunc_order < 1) fail(Errc::invalid_argument, "truncation order must be >= 1");
  names_.reserve(num_vars);
  for (int i = 1; i <= num_vars; ++i) names_.push_back("v" + std::to_string(i));
}

SeriesContext::SeriesContext(std::vector<std::string> names, int trunc_order, Field field)
    : num_vars_(static_cast<int>(names.size())),
      trunc_order_(trunc_order),
      field_(field),
      names_(std::move(names)) {
  if (num_vars_ < 1) fail(Errc::invalid_argument, "need at least one variable");
  if (trunc_order < 1) fail(Errc::invalid_argument, "truncation order must be >= 1");
}

int SeriesContext::var_index(const std::string& name) const {
  for (int i = 0; i < num_vars_; ++i)
    if (names_[i] == name) return i + 1;
  return 0;
}

SeriesContext SeriesContext::with_trunc(int trunc_order) const {
  return SeriesContext(names_, trunc_order, field_);
}

ContextPtr make_context(int num_vars, int trunc_order, Field field) {
  return std::make_shared<SeriesContext>(num_vars, trunc_order, field);
}

ContextPtr make_context(std::vector<std::string> names, int trunc_order, Field field) {
  return std::make_shared<SeriesContext>(std::move(names), trunc_order, field);
}

void TruncatedSeries::check_context(const TruncatedSeries& o) const {
  if (!ctx_->compatible(*o.ctx_))
    fail(Errc::context_mismatch, "series contexts differ");
}

TruncatedSeries TruncatedSeries::constant(ContextPtr ctx, const Scalar& c) {
  TruncatedSeries s(std::move(ctx));
  s.add_term(Monomial(s.ctx_->num_vars()), c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(ContextPtr ctx, int index) {
  TruncatedSeries s(std::move(ctx));
  if (index < 1 || index > s.ctx_->num_vars())
    fail(Errc::invalid_argument, "variable index out of range");
  s.add_term(Monomial::variable(s.ctx_->num_vars(), index), Scalar::one());
  return s;
}

TruncatedSeries TruncatedSeries::monomial(ContextPtr ctx, const Monomial& m, const Scalar& c) {
  TruncatedSeries s(std::move(ctx));
  if (m.degree() > s.ctx_->trunc_order())
    fail(Errc::degree_overflow,
         "monomial degree " + std::to_string(m.degree()) + " exceeds truncation order " +
             std::to_string(s.ctx_->trunc_order()));
  if (!c.fits(s.ctx_->field()))
    fail(Errc::field_mismatch, "imaginary coefficient over Q");
  s.add_term(m, c);
  return s;
}

int TruncatedSeries::order() const {
  if (terms_.empty()) return ctx_->trunc_order() + 1;
  return terms_.begin()->first.degree();
}

int TruncatedSeries::top_degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.degree();
}

Scalar TruncatedSeries::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar::zero() : it->second;
}

void TruncatedSeries::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero() || m.degree() > ctx_->trunc_order()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_context(o);
  TruncatedSeries r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_context(o);
  TruncatedSeries r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r(ctx_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

TruncatedSeries TruncatedSeries::scaled(const Scalar& c) const {
  TruncatedSeries r(ctx_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_context(o);
  TruncatedSeries r(ctx_);
  const int D = ctx_->trunc_order();
  for (const auto& [ma, ca] : terms_) {
    if (ma.degree() + o.order() > D) continue;
    for (const auto& [mb, cb] : o.terms_) {
      if (ma.degree() + mb.degree() > D) break;  // graded order: later terms only grow
      r.add_term(ma * mb, ca * cb);
    }
  }
  return r;
}

TruncatedSeries TruncatedSeries::partial(int index) const {
  if (index < 1 || index > ctx_->num_vars())
    fail(Errc::invalid_argument, "variable index out of range");
  TruncatedSeries r(ctx_);
  for (const auto& [m, c] : terms_) {
    int e = m.exp(index);
    if (e == 0) continue;
    r.add_term(m.divide_by_var(index), c * Scalar(e));
  }
  return r;
}

TruncatedSeries TruncatedSeries::substitute(const std::vector<TruncatedSeries>& phi) const {
  if (static_cast<int>(phi.size()) != ctx_->num_vars())
    fail(Errc::invalid_argument, "substitute needs one series per variable");
  for (const auto& p : phi) {
    check_context(p);
    if (!p.is_zero() && p.order() < 1)
      fail(Errc::order_violation, "substitution series has a constant term");
  }
  // Power cache per variable; exponents are bounded by D.
  const int D = ctx_->trunc_order();
  std::vector<std::vector<TruncatedSeries>> powers(phi.size());
  for (size_t i = 0; i < phi.size(); ++i)
    powers[i].push_back(TruncatedSeries::constant(ctx_, Scalar::one()));
  TruncatedSeries r(ctx_);
  for (const auto& [m, c] : terms_) {
    TruncatedSeries term = TruncatedSeries::constant(ctx_, c);
    for (int v = 1; v <= ctx_->num_vars() && !term.is_zero(); ++v) {
      int e = m.exp(v);
      if (e == 0) continue;
      auto& pw = powers[v - 1];
      while (static_cast<int>(pw.size()) <= std::min(e, D)) pw.push_back(pw.back() * phi[v - 1]);
      term = term * pw[std::min(e, D)];
    }
    r = r + term;
  }
  return r;
}

TruncatedSeries TruncatedSeries::homogeneous_part(int d) const {
  TruncatedSeries r(ctx_);
  for (const auto& [m, c] : terms_)
    if (m.degree() == d) r.terms_.emplace(m, c);
  return r;
}

TruncatedSeries TruncatedSeries::truncated(int d) const {
  TruncatedSeries r(ctx_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() > d) break;
    r.terms_.emplace(m, c);
  }
  return r;
}

TruncatedSeries TruncatedSeries::with_context(const ContextPtr& ctx) const {
  if (ctx->num_vars() != ctx_->num_vars() || ctx->field() != ctx_->field())
    fail(Errc::context_mismatch, "with_context may only change the truncation order");
  TruncatedSeries r(ctx);
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return ctx_->compatible(*o.ctx_) && terms_ == o.terms_;
}

std::string TruncatedSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool negated = !first && cs.size() && cs[0] == '-' && c.is_real();
    if (!first) os << (negated ? " - " : " + ");
    if (negated) cs = cs.substr(1);
    if (m.degree() == 0) {
      os << cs;
    } else if (cs == "1") {
      os << m.str(ctx_->names());
    } else if (cs == "-1" && c.is_real()) {
      os << "-" << m.str(ctx_->names());
    } else if (c.is_real()) {
      os << cs << "*" << m.str(ctx_->names());
    } else {
      os << "(" << cs << ")*" << m.str(ctx_->names());
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) { return os << s.str(); }

static void enumerate_rec(int num_vars, int var, int remaining, bool exact,
                          std::vector<int>& cur, std::vector<Monomial>& out) {
  if (var == num_vars) {
    if (!exact || remaining == 0) {
      std::vector<int> e = cur;
      out.emplace_back(std::move(e));
    }
    return;
  }
  // descending exponent on the leading variable yields graded-lex descending
  // within a degree; we sort afterwards, so order here is irrelevant.
  for (int e = 0; e <= remaining; ++e) {
    cur[var] = e;
    enumerate_rec(num_vars, var + 1, remaining - e, exact, cur, out);
  }
  cur[var] = 0;
}

std::vector<Monomial> monomials_of_degree(int num_vars, int d) {
  std::vector<Monomial> out;
  std::vector<int> cur(num_vars, 0);
  enumerate_rec(num_vars, 0, d, true, cur, out);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

std::vector<Monomial> monomials_up_to(int num_vars, int d) {
  std::vector<Monomial> out;
  for (int k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(num_vars, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace mcform
