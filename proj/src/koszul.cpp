#include "mcform/koszul.hpp"

#include <algorithm>
#include <functional>

namespace mcform {

namespace {

// ---------------------------------------------------------------------
// Jacobian rings
// ---------------------------------------------------------------------

using Order = std::function<bool(const Monomial&, const Monomial&)>;

// Elimination for one truncation level: returns the rank of the span of
// trunc_level(m * dW_i) over the monomials of degree <= level, and
// optionally the standard (non-pivot) monomials.  Columns are indexed in
// DESCENDING monomial order so that the eliminator's pivot-on-smallest-
// index rule pivots on the leading monomial.
struct JacobianLevel {
  int rank = 0;
  std::vector<Monomial> standard;
};

JacobianLevel jacobian_level(const std::vector<TruncatedSeries>& partials, int level,
                             const Order& less, const CyclicAction* sector,
                             const std::vector<int>& partial_weights, bool want_basis) {
  const int nv = partials.front().context()->num_vars();
  std::vector<Monomial> cols = monomials_up_to(nv, level);
  if (sector) {
    std::vector<Monomial> keep;
    for (const Monomial& m : cols)
      if (sector->weight(m) == 0) keep.push_back(m);
    cols = std::move(keep);
  }
  std::sort(cols.begin(), cols.end(), [&](const Monomial& a, const Monomial& b) {
    return less(b, a);  // descending
  });
  std::map<std::vector<int>, int> col_index;
  for (size_t i = 0; i < cols.size(); ++i) col_index.emplace(cols[i].exps(), static_cast<int>(i));

  SparseEliminator elim;
  for (size_t pi = 0; pi < partials.size(); ++pi) {
    const TruncatedSeries& dw = partials[pi];
    if (dw.is_zero()) continue;
    int ord = dw.order();
    for (const Monomial& m : monomials_up_to(nv, level - ord)) {
      if (sector && (sector->weight(m) + partial_weights[pi]) % sector->order() != 0) continue;
      SparseVec row;
      for (const auto& [dm, dc] : dw.terms()) {
        Monomial prod = m * dm;
        if (prod.degree() > level) continue;
        auto it = col_index.find(prod.exps());
        if (it == col_index.end()) continue;
        row.emplace_back(it->second, dc);
      }
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      elim.insert(std::move(row));
    }
  }
  JacobianLevel out;
  out.rank = elim.rank();
  if (want_basis) {
    std::vector<bool> pivot(cols.size(), false);
    for (const auto& [lead, _] : elim.rows()) pivot[lead] = true;
    for (size_t i = 0; i < cols.size(); ++i)
      if (!pivot[i]) out.standard.push_back(cols[i]);
    std::sort(out.standard.begin(), out.standard.end(), GradedLexLess{});
  }
  return out;
}

}  // namespace

JacobianReport jacobian_ring(const TruncatedSeries& w, const JacobianOptions& opts) {
  if (w.is_zero() || w.order() < 2)
    fail(Errc::order_violation, "jacobian ring expects order(W) >= 2");
  const ContextPtr& ctx = w.context();
  const int D = ctx->trunc_order();
  const int nv = ctx->num_vars();
  std::vector<TruncatedSeries> partials;
  std::vector<int> pweights(nv, 0);
  for (int i = 1; i <= nv; ++i) partials.push_back(w.partial(i));
  if (opts.invariant_sector) {
    const CyclicAction& a = *opts.invariant_sector;
    if (!a.is_invariant(w))
      fail(Errc::validation_error, "invariant sector restriction needs an invariant W");
    int n = a.order();
    for (int i = 0; i < nv; ++i) pweights[i] = ((-a.weights()[i]) % n + n) % n;
  }
  Order less = opts.revlex ? Order(graded_revlex_less) : Order(graded_lex_less);

  JacobianReport rep;
  std::vector<int> counts;  // weight-filtered monomial counts per level
  for (int d = 0; d <= D; ++d) {
    int cols = 0;
    for (const Monomial& m : monomials_up_to(nv, d))
      if (!opts.invariant_sector || opts.invariant_sector->weight(m) == 0) ++cols;
    JacobianLevel lv = jacobian_level(partials, d, less, opts.invariant_sector, pweights,
                                      d == D);
    rep.cumulative.push_back(cols - lv.rank);
    if (d == D) rep.basis = std::move(lv.standard);
  }
  const auto& q = rep.cumulative;
  rep.stabilized = D >= 2 && q[D] == q[D - 1] && q[D - 1] == q[D - 2];
  if (rep.stabilized) rep.total = q[D];
  return rep;
}

// ---------------------------------------------------------------------
// Folded complexes: persistent cohomology across a degree window
// ---------------------------------------------------------------------

namespace {

struct BasisElem {
  FormMask mask;
  Monomial mono;
};

// deterministic target index: by (form order, graded-lex monomial)
struct TargetIndex {
  std::vector<BasisElem> elems;
  std::map<std::pair<FormMask, std::vector<int>>, int> index;

  void build(const std::vector<BasisElem>& list) {
    elems = list;
    std::sort(elems.begin(), elems.end(), [](const BasisElem& a, const BasisElem& b) {
      FormLess fl;
      if (a.mask != b.mask) return fl(a.mask, b.mask);
      return graded_lex_less(a.mono, b.mono);
    });
    for (size_t i = 0; i < elems.size(); ++i)
      index.emplace(std::make_pair(elems[i].mask, elems[i].mono.exps()), static_cast<int>(i));
  }
};

std::vector<BasisElem> make_basis(const ContextPtr& ctx, const std::vector<FormMask>& masks,
                                  int level, const CyclicAction* sector, int weight) {
  std::vector<BasisElem> out;
  for (FormMask m : masks)
    for (const Monomial& mono : monomials_up_to(ctx->num_vars(), level)) {
      if (sector && sector->weight(mono, m) != weight % sector->order()) continue;
      out.push_back({m, mono});
    }
  return out;
}

// One direction of the folded differential, materialised as sparse columns.
struct Operator {
  const ContextPtr& ctx;
  const Polyvector& alpha;
  TargetIndex targets;

  SparseVec column(const BasisElem& src, int level) const {
    Polyvector x = Polyvector::term(
        TruncatedSeries::monomial(ctx, src.mono, Scalar::one()), src.mask);
    Polyvector img = schouten(x, alpha);
    SparseVec col;
    for (const auto& [mask, f] : img.components())
      for (const auto& [m, c] : f.terms()) {
        if (m.degree() > level) continue;
        auto it = targets.index.find(std::make_pair(mask, m.exps()));
        if (it == targets.index.end()) continue;
        col.emplace_back(it->second, c);
      }
    std::sort(col.begin(), col.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return col;
  }
};

// rank of the operator restricted to sources of degree <= level (entries
// truncated at `level`), with a checkpoint rank over the sources of degree
// > cut (those form a subcomplex since the differential raises degree)
struct RankPair {
  int high = 0;  // rank over sources of degree in (cut, level]
  int full = 0;
};

RankPair operator_ranks(const Operator& op, std::vector<BasisElem> sources, int level, int cut) {
  // descending source degree; graded-lex and mask for determinism
  std::sort(sources.begin(), sources.end(), [](const BasisElem& a, const BasisElem& b) {
    if (a.mono.degree() != b.mono.degree()) return a.mono.degree() > b.mono.degree();
    FormLess fl;
    if (a.mask != b.mask) return fl(a.mask, b.mask);
    return graded_lex_less(b.mono, a.mono);
  });
  SparseEliminator elim;
  RankPair out;
  bool high_done = false;
  for (const BasisElem& src : sources) {
    if (src.mono.degree() > level) continue;
    if (!high_done && src.mono.degree() <= cut) {
      out.high = elim.rank();
      high_done = true;
    }
    elim.insert(op.column(src, level));
  }
  if (!high_done) out.high = elim.rank();
  out.full = elim.rank();
  return out;
}

int count_up_to(const std::vector<BasisElem>& basis, int level) {
  int n = 0;
  for (const auto& b : basis)
    if (b.mono.degree() <= level) ++n;
  return n;
}

// persistent rank of H at `level` projected to `cut`:
//   dim pi_cut(ker A_level) - rank(B_cut)
// where A maps this parity out and B maps in.  pi_cut(ker) has dimension
// ker(A_level) minus the kernel of A restricted to the high subcomplex.
int persistent_rank(const Operator& a_out, const Operator& b_in,
                    const std::vector<BasisElem>& sources_a,
                    const std::vector<BasisElem>& sources_b, int level, int cut) {
  RankPair ra = operator_ranks(a_out, sources_a, level, cut);
  int dim_full = count_up_to(sources_a, level);
  int dim_high = dim_full - count_up_to(sources_a, cut);
  int ker_full = dim_full - ra.full;
  int ker_high = dim_high - ra.high;
  RankPair rb = operator_ranks(b_in, sources_b, cut, cut);
  return (ker_full - ker_high) - rb.full;
}

std::vector<FormMask> masks_of_parity(int nv, int parity) {
  std::vector<FormMask> out;
  for (FormMask m = 0; m < (1u << nv); ++m)
    if ((form_degree(m) & 1) == parity) out.push_back(m);
  return out;
}

// Margin heuristic: wide enough to clear the truncation-boundary artifacts
// of every term of alpha (width = term degree - 1), but bounded so the
// window itself fits below the truncation.  Too small a margin surfaces as
// a failed stabilisation check, never as a wrong stabilized answer being
// trusted silently.
int auto_margin(const Polyvector& alpha, int top_level) {
  int top = 0;
  for (const auto& [mask, f] : alpha.components()) top = std::max(top, f.top_degree());
  return std::min(std::max(2, top - 1), std::max(2, (top_level - 1) / 2));
}

struct SectorSpec {
  const CyclicAction* action = nullptr;  // non-null: restrict/split by weight
  std::vector<int> weights;              // which sectors to include
};

HHReport hh_core(const MCPair& p, const HHOptions& opts, const SectorSpec& spec) {
  const ContextPtr& ctx = p.context();
  const int D = ctx->trunc_order();
  const int nv = ctx->num_vars();
  Polyvector alpha = p.combined();
  if (alpha.is_zero() || alpha.order() < 2)
    fail(Errc::order_violation, "MC data must have coefficient order >= 2");

  HHReport rep;
  rep.top_level = D - 1;  // one degree of slack keeps the square exactly zero
  rep.margin = opts.margin > 0 ? opts.margin : auto_margin(alpha, rep.top_level);
  const int level1 = rep.top_level, level0 = rep.top_level - 1;
  const int cut1 = std::max(level1 - rep.margin, 0);
  const int cut0 = std::max(level0 - rep.margin, 0);
  if (level0 < 1 || cut0 < 0 || cut1 < 0)
    fail(Errc::truncation_too_small, "truncation order too small for the chosen window");

  // square-zero check on the working window: [[x, alpha], alpha] must
  // vanish through level1 for every basis element
  {
    MCVerdict v = mc_check(p);
    if (!v.pass())
      fail(Errc::differential_not_square_zero,
           "differential does not square to zero: " + v.failure + " != 0");
    for (FormMask m = 0; m < (1u << nv); ++m) {
      Polyvector x = Polyvector::term(TruncatedSeries::constant(ctx, Scalar::one()), m);
      Polyvector dd = schouten(schouten(x, alpha), alpha);
      if (!dd.truncated(level1).is_zero())
        fail(Errc::differential_not_square_zero,
             "differential squares to zero only above the working window");
    }
  }
  rep.square_zero = true;

  auto run_sector = [&](const CyclicAction* act, int weight, int& even, int& odd,
                        int& even_prev, int& odd_prev) {
    std::vector<BasisElem> even_basis =
        make_basis(ctx, masks_of_parity(nv, 0), level1, act, weight);
    std::vector<BasisElem> odd_basis =
        make_basis(ctx, masks_of_parity(nv, 1), level1, act, weight);
    Operator d_eo{ctx, alpha, {}};
    d_eo.targets.build(odd_basis);
    Operator d_oe{ctx, alpha, {}};
    d_oe.targets.build(even_basis);
    even += persistent_rank(d_eo, d_oe, even_basis, odd_basis, level1, cut1);
    odd += persistent_rank(d_oe, d_eo, odd_basis, even_basis, level1, cut1);
    even_prev += persistent_rank(d_eo, d_oe, even_basis, odd_basis, level0, cut0);
    odd_prev += persistent_rank(d_oe, d_eo, odd_basis, even_basis, level0, cut0);
  };

  if (spec.action) {
    for (int wgt : spec.weights)
      run_sector(spec.action, wgt, rep.even, rep.odd, rep.even_prev, rep.odd_prev);
  } else {
    run_sector(nullptr, 0, rep.even, rep.odd, rep.even_prev, rep.odd_prev);
  }
  rep.stabilized = rep.even == rep.even_prev && rep.odd == rep.odd_prev;
  return rep;
}

}  // namespace

HHReport hh_ranks(const MCPair& p, const HHOptions& opts) {
  SectorSpec spec;
  std::vector<int> all;
  if (opts.sector && opts.sector->is_invariant(p.combined()) && !opts.sector->is_trivial()) {
    // exactness-preserving block split: the differential preserves weight
    spec.action = opts.sector;
    for (int wgt = 0; wgt < opts.sector->order(); ++wgt) all.push_back(wgt);
    spec.weights = std::move(all);
  }
  return hh_core(p, opts, spec);
}

HHReport invariant_hh(const MCPair& p, const CyclicAction& a, const HHOptions& opts) {
  if (!a.is_invariant(p.w) || !a.is_invariant(p.eta))
    fail(Errc::validation_error, "invariant cohomology needs an invariant pair");
  SectorSpec spec;
  CyclicAction act = a;
  spec.action = &act;
  spec.weights = {0};
  HHReport rep = hh_core(p, opts, spec);
  // With eta = 0 the even classes sit on the 0-forms whenever the Koszul
  // complex is acyclic in positive degrees, and the invariant Jacobian ring
  // supplies canonical representatives; attach them when the counts agree.
  if (p.eta.is_zero() && !p.w.is_zero() && p.w.order() >= 2) {
    JacobianOptions jo;
    jo.invariant_sector = &a;
    JacobianReport jr = jacobian_ring(p.w, jo);
    if (jr.stabilized && jr.total == rep.even && rep.odd == 0)
      for (const Monomial& m : jr.basis)
        rep.even_basis.push_back(m.str(p.context()->names()));
  }
  return rep;
}

TwistedReport twisted_sector_ranks(const MCPair& p, const CyclicAction& a,
                                   const HHOptions& opts) {
  if (!a.is_invariant(p.w) || !a.is_invariant(p.eta))
    fail(Errc::validation_error, "twisted sectors need an invariant pair");
  TwistedReport rep;
  for (int k = 1; k < a.order(); ++k)
    if (!a.power_has_trivial_fixed_space(k))
      fail(Errc::fixed_locus_positive_dimensional,
           "fixed locus of group element " + std::to_string(k) +
               " is positive-dimensional; the rank-one rule does not apply");
  rep.identity = invariant_hh(p, a, opts);
  rep.twisted_sectors = a.order() - 1;
  rep.total_even = rep.identity.even;
  rep.total_odd = rep.identity.odd + rep.twisted_sectors;
  return rep;
}

ExactnessReport koszul_exactness(const TruncatedSeries& w, const HHOptions& opts) {
  const ContextPtr& ctx = w.context();
  if (ctx->num_vars() != 3)
    fail(Errc::invalid_argument, "koszul exactness check is specific to three variables");
  if (w.is_zero() || w.order() < 2)
    fail(Errc::order_violation, "koszul exactness expects order(W) >= 2");
  const int D = ctx->trunc_order();
  Polyvector alpha = Polyvector::from_series(w);

  ExactnessReport rep;
  int margin = opts.margin > 0 ? opts.margin
                            : auto_margin(Polyvector::from_series(w), D - 1);
  const int level1 = D - 1, level0 = D - 2;
  const int cut1 = std::max(level1 - margin, 0), cut0 = std::max(level0 - margin, 0);
  if (level0 < 1 || cut0 < 0 || cut1 < 0)
    fail(Errc::truncation_too_small, "truncation order too small for the chosen window");

  const std::vector<FormMask> l3 = {form_mask({1, 2, 3})};
  std::vector<FormMask> l2 = {form_mask({1, 2}), form_mask({1, 3}), form_mask({2, 3})};
  std::vector<FormMask> l1 = {form_mask({1}), form_mask({2}), form_mask({3})};

  auto basis3 = make_basis(ctx, l3, level1, nullptr, 0);
  auto basis2 = make_basis(ctx, l2, level1, nullptr, 0);
  Operator d3{ctx, alpha, {}};
  d3.targets.build(basis2);
  Operator d2{ctx, alpha, {}};
  {
    auto basis1 = make_basis(ctx, l1, level1, nullptr, 0);
    d2.targets.build(basis1);
  }

  auto h3_at = [&](int level, int cut) {
    RankPair r = operator_ranks(d3, basis3, level, cut);
    int dim_full = count_up_to(basis3, level);
    int dim_high = dim_full - count_up_to(basis3, cut);
    return (dim_full - r.full) - (dim_high - r.high);
  };
  auto h2_at = [&](int level, int cut) {
    RankPair r = operator_ranks(d2, basis2, level, cut);
    int dim_full = count_up_to(basis2, level);
    int dim_high = dim_full - count_up_to(basis2, cut);
    int pker = (dim_full - r.full) - (dim_high - r.high);
    RankPair r3 = operator_ranks(d3, basis3, cut, cut);
    return pker - r3.full;
  };
  rep.h3 = h3_at(level1, cut1);
  rep.h2 = h2_at(level1, cut1);
  rep.h3_prev = h3_at(level0, cut0);
  rep.h2_prev = h2_at(level0, cut0);
  rep.stabilized = rep.h3 == rep.h3_prev && rep.h2 == rep.h2_prev;
  rep.exact = rep.h3 == 0 && rep.h2 == 0;
  if (rep.exact) return rep;

  // witness: a persistent cocycle that no boundary reaches
  rep.failing_form_degree = rep.h3 > 0 ? 3 : 2;
  const auto& src = rep.h3 > 0 ? basis3 : basis2;
  const Operator& op = rep.h3 > 0 ? d3 : d2;
  // kernel of the operator at level1: unknowns = sources
  std::vector<BasisElem> ordered(src);
  std::sort(ordered.begin(), ordered.end(), [](const BasisElem& a, const BasisElem& b) {
    if (a.mono.degree() != b.mono.degree()) return a.mono.degree() < b.mono.degree();
    FormLess fl;
    if (a.mask != b.mask) return fl(a.mask, b.mask);
    return graded_lex_less(a.mono, b.mono);
  });
  // rows of the operator: build the transpose
  std::map<int, SparseVec> rows;
  for (size_t j = 0; j < ordered.size(); ++j) {
    if (ordered[j].mono.degree() > level1) continue;
    for (const auto& [r, c] : op.column(ordered[j], level1))
      rows[r].emplace_back(static_cast<int>(j), c);
  }
  SparseSolver kernel_solver(static_cast<int>(ordered.size()));
  for (auto& [r, row] : rows) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    kernel_solver.add_equation(std::move(row), Scalar::zero());
  }
  // image at cut1 (only for form degree 2 failures; nothing maps into L3)
  SparseEliminator image;
  if (rep.failing_form_degree == 2) {
    std::vector<BasisElem> b3(basis3);
    for (const BasisElem& s : b3)
      if (s.mono.degree() <= cut1) image.insert(d3.column(s, cut1));
  }
  for (const auto& kv : kernel_solver.kernel_basis()) {
    // project to the cut and reduce against the image
    SparseVec vec;
    for (size_t j = 0; j < kv.size(); ++j) {
      if (kv[j].is_zero() || ordered[j].mono.degree() > cut1) continue;
      // translate source index into the *target style* index of this form
      vec.emplace_back(static_cast<int>(j), kv[j]);
    }
    if (vec.empty()) continue;
    // express in the operator's own target indexing for the image reduction:
    // here sources of d2 are exactly 2-forms; reuse the source ordering
    SparseVec reduced = vec;
    if (rep.failing_form_degree == 2) {
      // image columns are indexed by d3's target map (the 2-form basis);
      // rebuild vec in that indexing
      SparseVec in_target;
      for (const auto& [j, c] : vec) {
        const BasisElem& e = ordered[j];
        auto it = d3.targets.index.find(std::make_pair(e.mask, e.mono.exps()));
        in_target.emplace_back(it->second, c);
      }
      std::sort(in_target.begin(), in_target.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      reduced = image.reduce(std::move(in_target));
      if (reduced.empty()) continue;
      Polyvector wit(ctx);
      for (const auto& [t, c] : reduced) {
        const BasisElem& e = d3.targets.elems[t];
        wit.add_component(e.mask, TruncatedSeries::monomial(ctx, e.mono, c));
      }
      rep.witness = wit.str();
      rep.witness_degree = wit.order();
      return rep;
    }
    Polyvector wit(ctx);
    for (const auto& [j, c] : reduced) {
      const BasisElem& e = ordered[j];
      wit.add_component(e.mask, TruncatedSeries::monomial(ctx, e.mono, c));
    }
    rep.witness = wit.str();
    rep.witness_degree = wit.order();
    return rep;
  }
  return rep;
}

}  // namespace mcform
