#include "mcform/mcgauge.hpp"

#include <algorithm>

#include "mcform/parse.hpp"

namespace mcform {

MCPair::MCPair(TruncatedSeries w_in, Polyvector eta_in)
    : w(std::move(w_in)), eta(std::move(eta_in)) {
  if (!w.context()->compatible(*eta.context()))
    fail(Errc::context_mismatch, "W and eta contexts differ");
  // order >= 2: degree-2 parts deform the product (Clifford-type cases);
  // degree < 2 would deform the differential and is out of scope
  if (!w.is_zero() && w.order() < 2)
    fail(Errc::order_violation, "W must have coefficient order >= 2");
  for (const auto& [mask, f] : eta.components()) {
    if (form_degree(mask) != 2)
      fail(Errc::validation_error, "eta must be concentrated in form degree 2");
    if (f.order() < 2) fail(Errc::order_violation, "eta must have coefficient order >= 2");
  }
}

MCPair::MCPair(TruncatedSeries w_in) : MCPair(w_in, Polyvector::zero(w_in.context())) {}

Polyvector MCPair::combined() const {
  Polyvector c = eta;
  c.add_component(0, w);
  return c;
}

MCVerdict mc_check(const MCPair& p) {
  MCVerdict v;
  const int check_to = p.context()->trunc_order() - 1;
  Polyvector pw = Polyvector::from_series(p.w);
  // [W, W] vanishes identically: the bracket contracts the form part and
  // there is none.  Computed anyway and reported with a note.
  Polyvector ww = schouten(pw, pw);
  v.ww_zero = ww.truncated(check_to).is_zero();
  v.note = "[W,W] = 0 holds identically: the Schouten bracket vanishes on 0-forms";
  Polyvector we = schouten(pw, p.eta);
  v.w_eta_zero = we.truncated(check_to).is_zero();
  Polyvector ee = schouten(p.eta, p.eta);
  v.eta_eta_zero = ee.truncated(check_to).is_zero();
  if (!v.ww_zero) v.failure = "[W,W]";
  else if (!v.eta_eta_zero) v.failure = "[eta,eta]";
  else if (!v.w_eta_zero) v.failure = "[W,eta]";
  return v;
}

GaugeStep GaugeStep::vector_field(Polyvector g1) {
  for (const auto& [mask, f] : g1.components()) {
    if (form_degree(mask) != 1)
      fail(Errc::validation_error, "vector field must have form degree 1");
    if (f.order() < 2)
      fail(Errc::order_violation, "vector field coefficients must have order >= 2");
  }
  GaugeStep s;
  s.kind = Kind::vector_field;
  s.field = std::move(g1);
  return s;
}

GaugeStep GaugeStep::three_form(Polyvector g3) {
  for (const auto& [mask, f] : g3.components())
    if (form_degree(mask) != 3)
      fail(Errc::validation_error, "three-form must have form degree 3");
  GaugeStep s;
  s.kind = Kind::three_form;
  s.field = std::move(g3);
  return s;
}

GaugeStep GaugeStep::linear_change(std::vector<std::vector<Scalar>> m) {
  GaugeStep s;
  s.kind = Kind::linear_change;
  s.matrix = std::move(m);
  return s;
}

GaugeStep GaugeStep::cstar_rescale(Scalar eps) {
  if (eps.is_zero()) fail(Errc::zero_epsilon, "C* rescaling needs a nonzero epsilon");
  GaugeStep s;
  s.kind = Kind::cstar_rescale;
  s.epsilon = std::move(eps);
  return s;
}

static const char* kind_name(GaugeStep::Kind k) {
  switch (k) {
    case GaugeStep::Kind::vector_field: return "vector_field";
    case GaugeStep::Kind::three_form: return "three_form";
    case GaugeStep::Kind::linear_change: return "linear_change";
    case GaugeStep::Kind::cstar_rescale: return "cstar_rescale";
  }
  return "";
}

Report GaugeStep::to_report(const ContextPtr& ctx) const {
  Report r;
  r["kind"] = kind_name(kind);
  switch (kind) {
    case Kind::vector_field:
    case Kind::three_form: {
      Report comps;
      for (const auto& [mask, f] : field->components()) comps[form_str(mask)] = f.str();
      r["components"] = std::move(comps);
      break;
    }
    case Kind::linear_change: {
      Report rows = Report::array();
      for (const auto& row : matrix) {
        Report jr = Report::array();
        for (const auto& c : row) jr.push_back(c.str());
        rows.push_back(std::move(jr));
      }
      r["matrix"] = std::move(rows);
      break;
    }
    case Kind::cstar_rescale:
      r["epsilon"] = epsilon.str();
      break;
  }
  return r;
}

static Scalar scalar_from_string(const std::string& text, const ContextPtr& ctx) {
  TruncatedSeries s = parse_poly(text, ctx);
  if (!s.is_zero() && s.top_degree() > 0)
    fail(Errc::validation_error, "expected a scalar, got '" + text + "'");
  return s.coeff(Monomial(ctx->num_vars()));
}

GaugeStep GaugeStep::from_report(const Report& r, const ContextPtr& ctx) {
  std::string kind = r.at("kind").get<std::string>();
  if (kind == "vector_field" || kind == "three_form") {
    Polyvector field(ctx);
    for (const auto& [key, value] : r.at("components").items()) {
      // key looks like xi{1} or xi{1,2,3}
      std::vector<int> idx;
      size_t open = key.find('{');
      size_t close = key.find('}');
      if (open == std::string::npos || close == std::string::npos)
        fail(Errc::syntax_error, "bad form key '" + key + "'");
      std::string inside = key.substr(open + 1, close - open - 1);
      size_t p = 0;
      while (p < inside.size()) {
        size_t comma = inside.find(',', p);
        if (comma == std::string::npos) comma = inside.size();
        idx.push_back(std::stoi(inside.substr(p, comma - p)));
        p = comma + 1;
      }
      field.add_component(form_mask(idx), parse_poly(value.get<std::string>(), ctx));
    }
    return kind == "vector_field" ? vector_field(std::move(field)) : three_form(std::move(field));
  }
  if (kind == "linear_change") {
    std::vector<std::vector<Scalar>> m;
    for (const auto& row : r.at("matrix")) {
      std::vector<Scalar> out;
      for (const auto& c : row) out.push_back(scalar_from_string(c.get<std::string>(), ctx));
      m.push_back(std::move(out));
    }
    return linear_change(std::move(m));
  }
  if (kind == "cstar_rescale")
    return cstar_rescale(scalar_from_string(r.at("epsilon").get<std::string>(), ctx));
  fail(Errc::syntax_error, "unknown gauge step kind '" + kind + "'");
}

Polyvector exp_adjoint(const Polyvector& x, const Polyvector& g1) {
  for (const auto& [mask, f] : g1.components()) {
    if (form_degree(mask) != 1)
      fail(Errc::validation_error, "adjoint exponential takes a vector field");
    if (f.order() < 2)
      fail(Errc::order_violation, "vector field coefficients must have order >= 2");
  }
  // exp(ad g) x = sum ad(g)^m x / m!; each bracket raises coefficient
  // order by at least one, so the loop terminates at truncation.
  Polyvector acc = x;
  Polyvector term = x;
  const int limit = x.context()->trunc_order() + 2;
  for (int m = 1; m <= limit; ++m) {
    term = schouten(g1, term).scaled(Scalar(1, m));
    if (term.is_zero()) break;
    acc = acc + term;
  }
  return acc;
}

TruncatedSeries exp_vector_field(const TruncatedSeries& w, const Polyvector& g1) {
  return exp_adjoint(Polyvector::from_series(w), g1).component(0);
}

MCPair apply_threeform(const MCPair& p, const Polyvector& g3) {
  for (const auto& [mask, f] : g3.components())
    if (form_degree(mask) != 3)
      fail(Errc::validation_error, "interior contraction takes a 3-form");
  return MCPair(p.w, p.eta + contract_dw(g3, p.w));
}

TruncatedSeries cstar_rescale(const TruncatedSeries& w, const Scalar& eps) {
  if (eps.is_zero()) fail(Errc::zero_epsilon, "C* rescaling needs a nonzero epsilon");
  TruncatedSeries r(w.context());
  for (const auto& [m, c] : w.terms())
    r.add_term(m, c * eps.pow(m.degree() - 2));
  return r;
}

Polyvector cstar_rescale(const Polyvector& p, const Scalar& eps) {
  Polyvector r(p.context());
  for (const auto& [mask, f] : p.components()) r.add_component(mask, cstar_rescale(f, eps));
  return r;
}

static DenseMatrix to_dense(const std::vector<std::vector<Scalar>>& m) {
  int n = static_cast<int>(m.size());
  DenseMatrix d(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n)
      fail(Errc::validation_error, "linear change matrix must be square");
    for (int j = 0; j < n; ++j) d.at(i, j) = m[i][j];
  }
  return d;
}

TruncatedSeries linear_change(const TruncatedSeries& f, const std::vector<std::vector<Scalar>>& m) {
  const ContextPtr& ctx = f.context();
  int n = ctx->num_vars();
  if (static_cast<int>(m.size()) != n)
    fail(Errc::validation_error, "linear change matrix size mismatch");
  std::vector<TruncatedSeries> phi;
  for (int i = 0; i < n; ++i) {
    TruncatedSeries row(ctx);
    for (int j = 0; j < n; ++j)
      row = row + TruncatedSeries::variable(ctx, j + 1).scaled(m[i][j]);
    phi.push_back(std::move(row));
  }
  return f.substitute(phi);
}

Polyvector linear_change(const Polyvector& p, const std::vector<std::vector<Scalar>>& m) {
  DenseMatrix d = to_dense(m);
  auto inv = d.inverse();
  if (!inv) fail(Errc::validation_error, "linear change must be invertible");
  DenseMatrix n_mat = inv->transposed();
  const ContextPtr& ctx = p.context();
  int n = ctx->num_vars();
  Polyvector out(ctx);
  for (const auto& [mask, f] : p.components()) {
    TruncatedSeries coeff = linear_change(f, m);
    // transform each xi_i by the inverse transpose, expanded over subsets
    std::vector<Polyvector> gens;
    for (int i : form_indices(mask)) {
      Polyvector gen(ctx);
      for (int j = 1; j <= n; ++j) {
        const Scalar& c = n_mat.at(i - 1, j - 1);
        if (!c.is_zero())
          gen.add_component(1u << (j - 1), TruncatedSeries::constant(ctx, c));
      }
      gens.push_back(std::move(gen));
    }
    Polyvector acc = Polyvector::from_series(coeff);
    for (const Polyvector& g : gens) acc = acc.wedge(g);
    out = out + acc;
  }
  return out;
}

MCPair apply_gauge_step(const MCPair& p, const GaugeStep& s) {
  switch (s.kind) {
    case GaugeStep::Kind::vector_field:
      return MCPair(exp_vector_field(p.w, *s.field), exp_adjoint(p.eta, *s.field));
    case GaugeStep::Kind::three_form:
      return apply_threeform(p, *s.field);
    case GaugeStep::Kind::linear_change:
      return MCPair(linear_change(p.w, s.matrix), linear_change(p.eta, s.matrix));
    case GaugeStep::Kind::cstar_rescale:
      return MCPair(cstar_rescale(p.w, s.epsilon), cstar_rescale(p.eta, s.epsilon));
  }
  fail(Errc::invalid_argument, "bad gauge step");
}

MCPair replay_gauge_log(const MCPair& p, const std::vector<GaugeStep>& log) {
  MCPair cur = p;
  for (const GaugeStep& s : log) cur = apply_gauge_step(cur, s);
  return cur;
}

Polyvector solve_eta_coboundary(const MCPair& p) {
  const ContextPtr& ctx = p.context();
  if (ctx->num_vars() != 3)
    fail(Errc::invalid_argument, "eta coboundary solve is specific to three variables");
  const int D = ctx->trunc_order();
  // Unknown: the coefficient series u of g3 = u xi{1,2,3}.  The contraction
  //   iota_{dW}(u xi_123) = -u d1W xi_23 + u d2W xi_13 - u d3W xi_12
  // must match eta componentwise up to degree D-1.
  const std::vector<Monomial> unknowns = monomials_up_to(3, D);
  std::map<Monomial, int, GradedLexLess> unknown_index;
  for (size_t i = 0; i < unknowns.size(); ++i)
    unknown_index.emplace(unknowns[i], static_cast<int>(i));

  struct Piece {
    FormMask mask;
    Scalar sign;
    TruncatedSeries dw;
  };
  const std::vector<Piece> pieces = {
      {form_mask({2, 3}), -Scalar::one(), p.w.partial(1)},
      {form_mask({1, 3}), Scalar::one(), p.w.partial(2)},
      {form_mask({1, 2}), -Scalar::one(), p.w.partial(3)},
  };

  SparseSolver solver(static_cast<int>(unknowns.size()));
  for (int degree = 0; degree <= D - 1; ++degree) {
    for (const Piece& piece : pieces) {
      TruncatedSeries target = p.eta.component(piece.mask);
      for (const Monomial& mu : monomials_of_degree(3, degree)) {
        SparseVec lhs;
        for (const auto& [dm, dc] : piece.dw.terms()) {
          // unknown monomial m with m * dm = mu
          bool ok = true;
          std::vector<int> exps(3);
          for (int v = 1; v <= 3; ++v) {
            int e = mu.exp(v) - dm.exp(v);
            if (e < 0) { ok = false; break; }
            exps[v - 1] = e;
          }
          if (!ok) continue;
          lhs.emplace_back(unknown_index.at(Monomial(exps)), piece.sign * dc);
        }
        std::sort(lhs.begin(), lhs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // merge duplicates (distinct dw terms can name the same unknown only
        // with distinct monomials, so indices are unique; sort suffices)
        if (!solver.add_equation(std::move(lhs), target.coeff(mu)))
          fail(Errc::not_coboundary,
               "eta is not a coboundary: linear system infeasible at degree " +
                   std::to_string(degree));
      }
    }
  }
  std::vector<Scalar> sol = solver.solution();
  TruncatedSeries u(ctx);
  for (size_t i = 0; i < unknowns.size(); ++i) u.add_term(unknowns[i], sol[i]);
  return Polyvector::term(u, form_mask({1, 2, 3}));
}

CubicClass classify_cubic(const TruncatedSeries& w, const CyclicAction& a) {
  if (!w.is_zero() && w.order() < 3)
    fail(Errc::order_violation, "classification expects order >= 3");
  CubicClass out(w.context());
  out.cubic_part = w.homogeneous_part(3);
  const ContextPtr& ctx = w.context();
  if (ctx->num_vars() != 3) return out;  // other
  Monomial v123({1, 1, 1});
  Monomial v113({2, 0, 1});
  Monomial v223({0, 2, 1});
  Scalar c123 = out.cubic_part.coeff(v123);
  Scalar c113 = out.cubic_part.coeff(v113);
  Scalar c223 = out.cubic_part.coeff(v223);
  TruncatedSeries probe_a = TruncatedSeries::monomial(ctx, v123, c123);
  if (!c123.is_zero() && out.cubic_part == probe_a) {
    out.type = CubicClass::Type::type_a;
    out.lambda = c123;
    return out;
  }
  if (!c113.is_zero() && c113 == c223) {
    TruncatedSeries probe_b = TruncatedSeries::monomial(ctx, v113, c113) +
                              TruncatedSeries::monomial(ctx, v223, c223);
    if (out.cubic_part == probe_b) {
      out.type = CubicClass::Type::type_b;
      out.lambda = c113;
      if (ctx->field() == Field::QI) {
        // (v1^2+v2^2) v3 = ((v1+v2)(i v1 - i v2)) v3 after v -> M v; the
        // change acts only on span{v1, v2}, where G is scalar, so it
        // commutes with the action.  Result: cubic becomes 4 lambda v1v2v3.
        Scalar i = Scalar::i();
        out.to_type_a = {{Scalar::one(), Scalar::one(), Scalar::zero()},
                         {i, -i, Scalar::zero()},
                         {Scalar::zero(), Scalar::zero(), Scalar::one()}};
      }
      return out;
    }
  }
  return out;
}

namespace {

// residual of a candidate normal form: everything away from v1v2v3 and the
// pure powers v_i^{2g+1}
TruncatedSeries residual_tail(const TruncatedSeries& w, int genus) {
  TruncatedSeries r = w;
  Monomial v123({1, 1, 1});
  r.add_term(v123, -w.coeff(v123));
  for (int i = 0; i < 3; ++i) {
    std::vector<int> e(3, 0);
    e[i] = 2 * genus + 1;
    Monomial m(e);
    r.add_term(m, -w.coeff(m));
  }
  return r;
}

// p_d = v1v2 q3 + v2v3 q1 + v3v1 q2 by graded-lex scanning: monomials
// divisible by v1v2 go to q3, else v2v3 to q1, else v3v1 to q2.
std::array<TruncatedSeries, 3> divide_off_pairs(const TruncatedSeries& pd) {
  const ContextPtr& ctx = pd.context();
  std::array<TruncatedSeries, 3> q = {TruncatedSeries::zero(ctx), TruncatedSeries::zero(ctx),
                                      TruncatedSeries::zero(ctx)};
  for (const auto& [m, c] : pd.terms()) {
    if (m.exp(1) >= 1 && m.exp(2) >= 1) {
      q[2].add_term(m.divide_by_var(1).divide_by_var(2), c);
    } else if (m.exp(2) >= 1 && m.exp(3) >= 1) {
      q[0].add_term(m.divide_by_var(2).divide_by_var(3), c);
    } else if (m.exp(3) >= 1 && m.exp(1) >= 1) {
      q[1].add_term(m.divide_by_var(3).divide_by_var(1), c);
    } else {
      fail(Errc::tail_unsolvable,
           "residual monomial " + m.str(ctx->names()) + " is a pure power");
    }
  }
  return q;
}

}  // namespace

NormalFormReport normal_form(const TruncatedSeries& w, const CyclicAction& a, int genus) {
  const ContextPtr& ctx = w.context();
  NormalFormReport rep(ctx);
  rep.input = w;
  rep.digest = input_digest(w.str());
  rep.mu.resize(3);
  const int D = ctx->trunc_order();
  const int n = 2 * genus + 1;
  if (genus < 2) fail(Errc::bad_params, "genus must be >= 2");
  if (ctx->num_vars() != 3) fail(Errc::bad_params, "normal form runs over three variables");
  if (D < 2 * genus + 4)
    fail(Errc::truncation_too_small,
         "normal form needs truncation order >= " + std::to_string(2 * genus + 4));
  if (a.order() != n)
    fail(Errc::validation_error, "action order does not match the genus");
  if (a.weights() != std::vector<int>{1, 1, 2 * genus - 1})
    fail(Errc::validation_error, "normal form expects weights (1, 1, 2g-1)");
  if (!a.is_invariant(w))
    fail(Errc::validation_error, "W is not invariant under the action");

  TruncatedSeries cur = w;
  CubicClass cls = classify_cubic(cur, a);
  if (cls.type == CubicClass::Type::type_b) {
    if (!cls.to_type_a)
      fail(Errc::cubic_degenerate,
           "type B cubic needs the field Q(i) for the linear change to type A");
    GaugeStep step = GaugeStep::linear_change(*cls.to_type_a);
    cur = linear_change(cur, step.matrix);
    rep.log.push_back(std::move(step));
    cls = classify_cubic(cur, a);
  }
  if (cls.type != CubicClass::Type::type_a || cls.lambda.is_zero())
    fail(Errc::cubic_degenerate, "cubic part is not lambda v1v2v3 with lambda != 0");

  const Monomial v123({1, 1, 1});
  auto mu_coeff = [&](const TruncatedSeries& s, int i) {
    std::vector<int> e(3, 0);
    e[i] = n;
    return s.coeff(Monomial(e));
  };

  TruncatedSeries res = residual_tail(cur, genus);
  int guard = 0;
  while (!res.is_zero()) {
    if (++guard > 4 * D)
      fail(Errc::truncation_too_small, "normal form failed to make progress");
    const int d = res.order();
    const Scalar lambda = cur.coeff(v123);
    TruncatedSeries pd = res.homogeneous_part(d);
    Polyvector g1(ctx);
    if (d <= n) {
      // stage 1: p_d lies in <v1v2, v2v3, v3v1>; the vector field
      // sum q_i/lambda xi_i removes it through the cubic partials
      auto q = divide_off_pairs(pd);
      for (int i = 0; i < 3; ++i)
        g1.add_component(1u << i, q[i].scaled(lambda.inverse()));
    } else {
      // stage 2: solve p_d = sum_j f_j d_j(W_mu) with f_j supported in
      // degrees d-2 and d-2g-? (the degrees pairing with the homogeneous
      // parts of dW_mu), requiring the components below degree d to cancel
      TruncatedSeries wmu = cur.truncated(n);
      std::array<TruncatedSeries, 3> dwmu = {wmu.partial(1), wmu.partial(2), wmu.partial(3)};
      std::vector<int> f_degrees = {d - 2};
      if (d - (n - 1) >= 2) f_degrees.push_back(d - (n - 1));
      // unknowns: invariant-weight monomials per variable and degree
      struct Unknown { int var; Monomial m; };
      std::vector<Unknown> unknowns;
      for (int var = 0; var < 3; ++var)
        for (int fd : f_degrees) {
          if (fd == d - 2 && fd < 2) continue;
          for (const Monomial& m : monomials_of_degree(3, fd))
            if (a.weight(m) == a.weights()[var]) unknowns.push_back({var, m});
        }
      std::map<std::pair<int, std::vector<int>>, int> unknown_index;
      for (size_t i = 0; i < unknowns.size(); ++i)
        unknown_index.emplace(std::make_pair(unknowns[i].var, unknowns[i].m.exps()),
                              static_cast<int>(i));
      SparseSolver solver(static_cast<int>(unknowns.size()));
      // constraint degrees: everything a product can reach that is <= d
      std::vector<int> eq_degrees;
      for (int fd : f_degrees)
        for (int pdeg = 2; pdeg <= n - 1; ++pdeg)
          if (fd + pdeg <= d) eq_degrees.push_back(fd + pdeg);
      std::sort(eq_degrees.begin(), eq_degrees.end());
      eq_degrees.erase(std::unique(eq_degrees.begin(), eq_degrees.end()), eq_degrees.end());
      bool feasible = true;
      for (int ed : eq_degrees) {
        for (const Monomial& mu : monomials_of_degree(3, ed)) {
          SparseVec lhs;
          for (size_t ui = 0; ui < unknowns.size(); ++ui) {
            const Unknown& u = unknowns[ui];
            // coefficient of mu in m * dW_mu[var]
            for (const auto& [dm, dc] : dwmu[u.var].terms()) {
              bool ok = true;
              for (int v = 1; v <= 3 && ok; ++v)
                if (u.m.exp(v) + dm.exp(v) != mu.exp(v)) ok = false;
              if (ok) lhs.emplace_back(static_cast<int>(ui), dc);
            }
          }
          std::sort(lhs.begin(), lhs.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });
          SparseVec merged;
          for (auto& [idx, val] : lhs) {
            if (!merged.empty() && merged.back().first == idx) merged.back().second += val;
            else merged.emplace_back(idx, val);
          }
          merged.erase(std::remove_if(merged.begin(), merged.end(),
                                      [](const auto& e) { return e.second.is_zero(); }),
                       merged.end());
          Scalar rhs = (ed == d) ? pd.coeff(mu) : Scalar::zero();
          if (!solver.add_equation(std::move(merged), rhs)) {
            feasible = false;
            break;
          }
        }
        if (!feasible) break;
      }
      if (!feasible)
        fail(Errc::tail_unsolvable,
             "stage-2 linear system infeasible at degree " + std::to_string(d) +
                 " (some mu_i vanishes?)");
      std::vector<Scalar> sol = solver.solution();
      for (size_t ui = 0; ui < unknowns.size(); ++ui) {
        if (sol[ui].is_zero()) continue;
        g1.add_component(1u << unknowns[ui].var,
                         TruncatedSeries::monomial(ctx, unknowns[ui].m, sol[ui]));
      }
    }
    g1 = project_invariant(g1, a);  // Reynolds averaging (a no-op by construction)
    if (g1.is_zero())
      fail(Errc::tail_unsolvable, "empty gauge field at degree " + std::to_string(d));
    GaugeStep step = GaugeStep::vector_field(std::move(g1));
    cur = exp_vector_field(cur, *step.field);
    rep.log.push_back(std::move(step));
    TruncatedSeries next_res = residual_tail(cur, genus);
    if (!next_res.is_zero() && next_res.order() <= d)
      fail(Errc::tail_unsolvable,
           "gauge step failed to raise the residual order at degree " + std::to_string(d));
    res = std::move(next_res);
  }

  rep.output = cur;
  rep.lambda = cur.coeff(v123);
  for (int i = 0; i < 3; ++i) rep.mu[i] = mu_coeff(cur, i);
  rep.residual_zero = residual_tail(cur, genus).is_zero();
  rep.status = "ok";
  // final reduction to Q = -v1v2v3 + sum v_i^{2g+1} demands scalars t_i,
  // eps with t1 t2 t3 eps lambda' = -1 and t_i^{2g+1} eps^{2g-1} mu_i' = 1;
  // the roots live outside Q(i), so only the relations are recorded.
  rep.scaling_relations.push_back("(" + rep.lambda.str() + ") * t1*t2*t3 * eps = -1");
  for (int i = 0; i < 3; ++i)
    rep.scaling_relations.push_back("(" + rep.mu[i].str() + ") * t" + std::to_string(i + 1) +
                                    "^" + std::to_string(n) + " * eps^" +
                                    std::to_string(n - 2) + " = 1");
  return rep;
}

Report normal_form_to_report(const NormalFormReport& r) {
  Report rep;
  rep["input_digest"] = r.digest;
  rep["input"] = r.input.str();
  rep["output"] = r.output.str();
  rep["lambda"] = r.lambda.str();
  Report mus = Report::array();
  for (const auto& m : r.mu) mus.push_back(m.str());
  rep["mu"] = std::move(mus);
  rep["residual_zero"] = r.residual_zero;
  rep["status"] = r.status;
  Report log = Report::array();
  for (const auto& s : r.log) log.push_back(s.to_report(r.input.context()));
  rep["gauge_log"] = std::move(log);
  Report rel = Report::array();
  for (const auto& s : r.scaling_relations) rel.push_back(s);
  rep["scaling_to_q"] = std::move(rel);
  return rep;
}

}  // namespace mcform
