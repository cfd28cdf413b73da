#ifndef MCFORM_PARSE_HPP
#define MCFORM_PARSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "mcform/cyclic.hpp"
#include "mcform/polyvec.hpp"
#include "mcform/series.hpp"

namespace mcform {

/// Parses a polynomial expression against a context.
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := rational | var | '(' expr ')' | factor '^' nat
///
/// Rationals are "p" or "p/q"; the literal "i" is allowed over Q(i) only.
/// Whitespace is insignificant.  The expression is expanded exactly and any
/// monomial of degree > D is rejected with DegreeOverflow.  Syntax errors
/// carry the byte offset and the expected token.
TruncatedSeries parse_poly(const std::string& text, const ContextPtr& ctx);

/// One rewrite rule of a ring presentation: a*b -> sum of c_k * label_k.
struct RingRule {
  std::string lhs_a, lhs_b;
  std::vector<std::pair<Scalar, std::string>> rhs;
};

/// Raw ring-presentation block as read from a problem file.
struct RingBlock {
  std::vector<std::string> basis;
  std::vector<int> degrees;  // Z2 degree per label
  std::vector<RingRule> rules;
  std::vector<std::pair<Scalar, std::string>> c1;  // distinguished element
};

/// A fully validated problem file.
struct ProblemFile {
  ContextPtr ctx;
  std::optional<CyclicAction> group;
  TruncatedSeries w;
  Polyvector eta;
  std::optional<RingBlock> ring;
  std::string source;  // original bytes, for digests

  ProblemFile(ContextPtr c) : ctx(c), w(TruncatedSeries::zero(c)), eta(Polyvector::zero(c)) {}
};

/// Parses the line-oriented problem format.  Diagnostics cite line numbers.
ProblemFile parse_problem(const std::string& text);

/// Canonical serialisation of a series; parse_poly(print(s)) == s.
std::string print_poly(const TruncatedSeries& s);

/// FNV-1a digest of the input bytes, rendered as 16 hex digits.  Reports
/// embed it so outputs can be matched to inputs byte-exactly.
std::string input_digest(const std::string& bytes);

}  // namespace mcform

#endif
