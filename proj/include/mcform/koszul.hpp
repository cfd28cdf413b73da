#ifndef MCFORM_KOSZUL_HPP
#define MCFORM_KOSZUL_HPP

#include <optional>
#include <string>
#include <vector>

#include "mcform/cyclic.hpp"
#include "mcform/mcgauge.hpp"

namespace mcform {

struct JacobianOptions {
  bool revlex = false;  ///< independent elimination path for cross-checks
  const CyclicAction* invariant_sector = nullptr;  ///< restrict to weight 0
};

struct JacobianReport {
  std::vector<int> cumulative;  ///< q_d = dim K[v]/(m^{d+1} + I_d), d = 0..D
  bool stabilized = false;      ///< last two increments vanish
  int total = -1;               ///< Milnor number (valid when stabilized)
  std::vector<Monomial> basis;  ///< standard monomials at the top level
};

/// Per-degree quotient dimensions of K[v]/<d_i W>, exact in K[v]/m^{d+1}
/// at every level d.  The quotient basis is the set of graded-lex standard
/// monomials (graded-revlex under opts.revlex).
JacobianReport jacobian_ring(const TruncatedSeries& w, const JacobianOptions& opts = {});

struct HHOptions {
  /// Persistence margin: ranks are stable classes across [level-margin,
  /// level].  0 picks max(term degree of W + eta) - 1, at least 2.
  int margin = 0;
  /// Optional exactness-preserving block split by weight sector (used
  /// when the pair is invariant; purely an optimisation).
  const CyclicAction* sector = nullptr;
};

struct HHReport {
  int even = 0, odd = 0;            ///< persistent ranks, top window
  int even_prev = 0, odd_prev = 0;  ///< one level lower
  bool stabilized = false;
  bool square_zero = false;
  int margin = 0;
  int top_level = 0;  ///< D-1: one degree below the series truncation
  std::vector<std::string> even_basis;  ///< class representatives when known
};

/// Even/odd cohomology of the parity-folded complex with differential
/// [., W + eta].  The differential is verified to square to zero exactly
/// on the working window before any rank is computed.
HHReport hh_ranks(const MCPair& p, const HHOptions& opts = {});

/// Same computation restricted to the weight-0 subcomplex.
HHReport invariant_hh(const MCPair& p, const CyclicAction& a, const HHOptions& opts = {});

struct TwistedReport {
  HHReport identity;
  int twisted_sectors = 0;  ///< n-1, each contributing rank 1 in odd degree
  int total_even = 0, total_odd = 0;
};

/// Character decomposition of HH of Lambda(V) x| Z_n: the identity sector
/// is invariant_hh; every non-identity sector has rank one in odd degree
/// by the fixed-locus rule, which applies only when Fix(gamma) = {0}
/// (FixedLocusPositiveDimensional otherwise).  The twisted ranks are
/// rule-based, not recomputed from bimodule Ext; reports label them so.
TwistedReport twisted_sector_ranks(const MCPair& p, const CyclicAction& a,
                                   const HHOptions& opts = {});

struct ExactnessReport {
  bool exact = false;
  bool stabilized = false;
  int h3 = 0, h2 = 0;            ///< persistent ranks at Lambda^3, Lambda^2
  int h3_prev = 0, h2_prev = 0;
  int failing_form_degree = 0;   ///< 2 or 3 when not exact
  int witness_degree = -1;       ///< order of the non-bounding cocycle
  std::string witness;           ///< printed witness polyvector
};

/// Checks acyclicity of the unfolded complex Lambda^3 -> Lambda^2 ->
/// Lambda^1 in positive form degrees (three variables).  On failure a
/// non-bounding cocycle is produced as a witness.
ExactnessReport koszul_exactness(const TruncatedSeries& w, const HHOptions& opts = {});

}  // namespace mcform

#endif
