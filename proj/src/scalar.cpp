#include "mcform/scalar.hpp"

#include <ostream>

namespace mcform {

const char* field_name(Field f) { return f == Field::Q ? "Q" : "QI"; }

bool errc_is_math(Errc c) {
  switch (c) {
    case Errc::not_coboundary:
    case Errc::cubic_degenerate:
    case Errc::tail_unsolvable:
    case Errc::truncation_too_small:
    case Errc::not_stabilized:
    case Errc::not_associative:
    case Errc::differential_not_square_zero:
    case Errc::fixed_locus_positive_dimensional:
      return true;
    default:
      return false;
  }
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::syntax_error: return "SyntaxError";
    case Errc::unknown_variable: return "UnknownVariable";
    case Errc::degree_overflow: return "DegreeOverflow";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::validation_error: return "ValidationError";
    case Errc::context_mismatch: return "ContextMismatch";
    case Errc::order_violation: return "OrderViolation";
    case Errc::zero_epsilon: return "ZeroEpsilon";
    case Errc::bad_params: return "BadParams";
    case Errc::incomplete_rules: return "IncompleteRules";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::io_error: return "IOError";
    case Errc::not_coboundary: return "NotCoboundary";
    case Errc::cubic_degenerate: return "CubicDegenerate";
    case Errc::tail_unsolvable: return "TailUnsolvable";
    case Errc::truncation_too_small: return "TruncationTooSmall";
    case Errc::not_stabilized: return "NotStabilized";
    case Errc::not_associative: return "NotAssociative";
    case Errc::differential_not_square_zero: return "DifferentialNotSquareZero";
    case Errc::fixed_locus_positive_dimensional: return "FixedLocusPositiveDimensional";
  }
  return "Error";
}

Scalar::Scalar(long num, long den) : re_(num, den), im_(0) {
  if (den == 0) fail(Errc::invalid_argument, "zero denominator");
  re_.canonicalize();
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (im_ == 0 && o.im_ == 0) return Scalar(re_ * o.re_);
  return Scalar(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(Errc::invalid_argument, "division by zero");
  if (im_ == 0) return Scalar(1 / re_);
  mpq_class n = re_ * re_ + im_ * im_;
  return Scalar(re_ / n, -im_ / n);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar acc = Scalar::one();
  Scalar base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Scalar Scalar::parse_rational(const std::string& text) {
  if (text == "i") return Scalar::i();
  // mpq_class accepts "p" and "p/q"; reject anything it would misread.
  for (char c : text) {
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
      fail(Errc::syntax_error, "bad rational literal '" + text + "'");
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    fail(Errc::syntax_error, "bad rational literal '" + text + "'");
  if (q.get_den() == 0) fail(Errc::syntax_error, "zero denominator in '" + text + "'");
  q.canonicalize();
  return Scalar(q);
}

static std::string rat_str(const mpq_class& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

std::string Scalar::str() const {
  if (im_ == 0) return rat_str(re_);
  std::string imag = rat_str(im_) + "*i";
  if (re_ == 0) return imag;
  return im_ > 0 ? rat_str(re_) + "+" + imag : rat_str(re_) + imag;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace mcform
