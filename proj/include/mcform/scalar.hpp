#ifndef MCFORM_SCALAR_HPP
#define MCFORM_SCALAR_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "mcform/error.hpp"

namespace mcform {

/// Coefficient field tag.  QI is the Gaussian rationals Q(i).
enum class Field { Q, QI };

const char* field_name(Field f);

/// An exact element of Q or Q(i): a pair of arbitrary-precision rationals,
/// with the imaginary part identically zero over Q.  All arithmetic is
/// exact; there is no rounding anywhere in the library.
class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}  // NOLINT: implicit by design
  Scalar(long num, long den);
  explicit Scalar(mpq_class re) : re_(std::move(re)), im_(0) {}
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

  /// Parses "p", "p/q" or (over QI) "i".  Throws Errc::syntax_error.
  static Scalar parse_rational(const std::string& text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  /// True if representable over `f` (i.e. real when f == Q).
  bool fits(Field f) const { return f == Field::QI || is_real(); }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar operator+(const Scalar& o) const { return Scalar(re_ + o.re_, im_ + o.im_); }
  Scalar operator-(const Scalar& o) const { return Scalar(re_ - o.re_, im_ - o.im_); }
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Scalar& operator-=(const Scalar& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

  Scalar inverse() const;           ///< throws Errc::invalid_argument on zero
  Scalar pow(long e) const;         ///< integer powers, negative allowed for units
  Scalar conj() const { return Scalar(re_, -im_); }

  bool operator==(const Scalar& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Canonical rendering: reduced "p/q" with positive denominator; Gaussian
  /// values as "a/b+c/d*i" (or "c/d*i" when the real part vanishes).  Used
  /// verbatim in reports, so it must stay byte-stable.
  std::string str() const;

 private:
  mpq_class re_, im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace mcform

#endif
