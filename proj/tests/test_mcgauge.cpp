#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcform/koszul.hpp"
#include "mcform/mcgauge.hpp"
#include "mcform/parse.hpp"
#include "test_support.hpp"

using namespace mcform;
using mcform::testing::Rng;
using mcform::testing::random_series;

namespace {

TruncatedSeries genus_q(int g, int trunc) {
  auto ctx = make_context(3, trunc);
  int n = 2 * g + 1;
  return parse_poly("-1*v1*v2*v3 + v1^" + std::to_string(n) + " + v2^" + std::to_string(n) +
                        " + v3^" + std::to_string(n),
                    ctx);
}

// time-1 flow of v' = -g(v) by Picard iteration on coefficients; the
// independent oracle for the exponentiated adjoint action.  Phi is stored
// as a polynomial in t with series coefficients.
using TPoly = std::vector<TruncatedSeries>;  // index = power of t

TPoly tp_scale_shift(const TPoly& p) {  // integral dt from 0 to t
  TPoly out;
  out.push_back(TruncatedSeries::zero(p.front().context()));
  for (size_t k = 0; k < p.size(); ++k)
    out.push_back(p[k].scaled(Scalar(1, static_cast<long>(k + 1))));
  return out;
}

TPoly tp_mul(const TPoly& a, const TPoly& b, int tcap) {
  TPoly out(std::min<size_t>(a.size() + b.size() - 1, tcap + 1),
            TruncatedSeries::zero(a.front().context()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      if (i + j > static_cast<size_t>(tcap)) continue;
      out[i + j] = out[i + j] + a[i] * b[j];
    }
  return out;
}

std::vector<TruncatedSeries> picard_flow(const std::vector<TruncatedSeries>& g, int sign) {
  const ContextPtr& ctx = g.front().context();
  const int n = ctx->num_vars();
  const int tcap = ctx->trunc_order() + 1;
  // phi_i(t) = v_i + sign * int_0^t g_i(phi(s)) ds
  std::vector<TPoly> phi(n);
  for (int i = 0; i < n; ++i) phi[i] = {TruncatedSeries::variable(ctx, i + 1)};
  for (int it = 0; it <= tcap; ++it) {
    std::vector<TPoly> next(n);
    for (int i = 0; i < n; ++i) {
      // evaluate g_i at phi: sum over monomials
      TPoly acc = {TruncatedSeries::zero(ctx)};
      for (const auto& [m, c] : g[i].terms()) {
        TPoly term = {TruncatedSeries::constant(ctx, c)};
        for (int v = 1; v <= n; ++v)
          for (int e = 0; e < m.exp(v); ++e) term = tp_mul(term, phi[v - 1], tcap);
        if (acc.size() < term.size()) acc.resize(term.size(), TruncatedSeries::zero(ctx));
        for (size_t k = 0; k < term.size(); ++k) acc[k] = acc[k] + term[k];
      }
      TPoly integ = tp_scale_shift(acc);
      if (sign < 0)
        for (auto& s : integ) s = -s;
      next[i] = {TruncatedSeries::variable(ctx, i + 1)};
      if (next[i].size() < integ.size()) next[i].resize(integ.size(), TruncatedSeries::zero(ctx));
      for (size_t k = 1; k < integ.size(); ++k) next[i][k] = next[i][k] + integ[k];
    }
    phi = std::move(next);
  }
  // evaluate at t = 1
  std::vector<TruncatedSeries> out;
  for (int i = 0; i < n; ++i) {
    TruncatedSeries s = TruncatedSeries::zero(ctx);
    for (const auto& part : phi[i]) s = s + part;
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("mc_check: (Q, 0) passes with the identically-zero note") {
  MCPair p(genus_q(2, 12));
  MCVerdict v = mc_check(p);
  CHECK(v.pass());
  CHECK(v.ww_zero);
  CHECK(v.note.find("identically") != std::string::npos);
}

TEST_CASE("mc_check: eta built by contraction passes") {
  Rng rng(73);
  TruncatedSeries q = genus_q(2, 12);
  const ContextPtr& ctx = q.context();
  for (int t = 0; t < 10; ++t) {
    Polyvector g3 = Polyvector::term(random_series(rng, ctx, 4, 0, 6), form_mask({1, 2, 3}));
    Polyvector eta = contract_dw(g3, q);
    if (eta.is_zero() || eta.order() < 2) continue;
    MCPair p(q, eta);
    MCVerdict v = mc_check(p);
    CHECK(v.pass());
  }
}

TEST_CASE("mc_check: a failing pair names the bracket") {
  auto ctx = make_context(3, 10);
  Polyvector eta(ctx);
  eta.add_component(form_mask({1, 2}), parse_poly("v1^3", ctx));
  eta.add_component(form_mask({1, 3}), parse_poly("v1^2*v2", ctx));
  MCPair p(parse_poly("v1^3", ctx), eta);
  MCVerdict v = mc_check(p);
  CHECK_FALSE(v.pass());
  CHECK(v.failure == "[eta,eta]");
}

TEST_CASE("exp_vector_field: identity and group inverse") {
  Rng rng(79);
  auto ctx = make_context(3, 10);
  for (int t = 0; t < 100; ++t) {
    TruncatedSeries w = random_series(rng, ctx, 5, 2);
    Polyvector g1(ctx);
    for (int i = 1; i <= 3; ++i)
      g1.add_component(form_mask({i}), random_series(rng, ctx, 3, 2));
    CHECK(exp_vector_field(w, Polyvector::zero(ctx)) == w);
    TruncatedSeries moved = exp_vector_field(w, g1);
    CHECK(exp_vector_field(moved, -g1) == w);
  }
}

TEST_CASE("exp_vector_field is a ring morphism") {
  Rng rng(83);
  auto ctx = make_context(3, 9);
  for (int t = 0; t < 100; ++t) {
    TruncatedSeries a = random_series(rng, ctx, 4);
    TruncatedSeries b = random_series(rng, ctx, 4);
    Polyvector g1(ctx);
    g1.add_component(form_mask({rng.range(1, 3)}), random_series(rng, ctx, 3, 2));
    CHECK(exp_vector_field(a * b, g1) ==
          exp_vector_field(a, g1) * exp_vector_field(b, g1));
  }
}

TEST_CASE("exp_vector_field rejects low-order fields") {
  auto ctx = make_context(3, 8);
  Polyvector bad(ctx);
  bad.add_component(form_mask({1}), parse_poly("v2", ctx));
  CHECK_THROWS_AS(exp_vector_field(parse_poly("v1^3", ctx), bad), Error);
}

TEST_CASE("exp_vector_field agrees with the picard flow oracle") {
  // one variable worked case first: W = x^3, g = c x^2 xi
  auto c1 = make_context(1, 5);
  TruncatedSeries w1 = parse_poly("v1^3", c1);
  Scalar c(1, 2);
  Polyvector g1 = Polyvector::term(parse_poly("1/2*v1^2", c1), form_mask({1}));
  TruncatedSeries viaexp = exp_vector_field(w1, g1);
  // flow orientation fixed by the bracket convention [g, f] = -sum g_i d_i f
  auto flow = picard_flow({parse_poly("1/2*v1^2", c1)}, -1);
  CHECK(viaexp == w1.substitute(flow));
  // x^3 - 3c x^4 + 3c^2 x^5 shape, sign per convention
  CHECK(viaexp.coeff(Monomial({3})) == Scalar(1));
  CHECK(viaexp.coeff(Monomial({4})) == Scalar(-3) * c);
  // multivariate randomized agreement
  Rng rng(89);
  auto ctx = make_context(3, 8);
  for (int t = 0; t < 25; ++t) {
    TruncatedSeries w = random_series(rng, ctx, 4, 2);
    std::vector<TruncatedSeries> comps;
    Polyvector g(ctx);
    for (int i = 1; i <= 3; ++i) {
      TruncatedSeries gi = random_series(rng, ctx, 2, 2);
      comps.push_back(gi);
      g.add_component(form_mask({i}), gi);
    }
    auto phi = picard_flow(comps, -1);
    CHECK(exp_vector_field(w, g) == w.substitute(phi));
  }
}

TEST_CASE("three-form gauge steps shift eta by the contraction") {
  TruncatedSeries q = genus_q(2, 12);
  const ContextPtr& ctx = q.context();
  MCPair p(q);
  Polyvector g3 = Polyvector::term(parse_poly("v1*v2", ctx), form_mask({1, 2, 3}));
  MCPair moved = apply_threeform(p, g3);
  CHECK(moved.w == q);
  CHECK(moved.eta == contract_dw(g3, q));
  // g3 then -g3 is the identity
  MCPair back = apply_threeform(moved, -g3);
  CHECK(back.w == q);
  CHECK(back.eta.is_zero());
  // zero three-form is the identity
  MCPair same = apply_threeform(p, Polyvector::zero(ctx));
  CHECK(same.eta.is_zero());
}

TEST_CASE("solve_eta_coboundary: zero eta gives the zero solution") {
  TruncatedSeries q = genus_q(2, 12);
  MCPair p(q);
  Polyvector g3 = solve_eta_coboundary(p);
  CHECK(g3.is_zero());
}

TEST_CASE("solve_eta_coboundary: roundtrip through a random three-form") {
  Rng rng(97);
  TruncatedSeries q = genus_q(2, 12);
  const ContextPtr& ctx = q.context();
  const int check_to = ctx->trunc_order() - 1;
  for (int t = 0; t < 10; ++t) {
    Polyvector g3 = Polyvector::term(random_series(rng, ctx, 5, 0, 7), form_mask({1, 2, 3}));
    Polyvector eta = contract_dw(g3, q);
    if (eta.is_zero() || eta.order() < 2) continue;
    MCPair p(q, eta);
    Polyvector solved = solve_eta_coboundary(p);
    // the solution need not equal g3; only the contraction must match
    Polyvector diff = contract_dw(solved, q) - eta;
    CHECK(diff.truncated(check_to).is_zero());
  }
}

TEST_CASE("solve_eta_coboundary: degenerate W is refused with a degree") {
  // W = v1^2 v2^2: the partials share the factor v1 v2, so constants in
  // eta's xi_{13} component cannot be hit
  auto ctx = make_context(3, 10);
  TruncatedSeries w = parse_poly("v1^2*v2^2", ctx);
  Polyvector eta(ctx);
  eta.add_component(form_mask({1, 3}), parse_poly("v2^2", ctx));
  MCPair p(w, eta);
  try {
    solve_eta_coboundary(p);
    FAIL("expected NotCoboundary");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_coboundary);
    CHECK(std::string(e.what()).find("degree") != std::string::npos);
  }
}

TEST_CASE("cstar rescaling") {
  auto ctx = make_context(3, 12);
  TruncatedSeries w = parse_poly("2*v1*v2*v3 + v1^5 + v2^5 + v3^5", ctx);
  // eps = 1 is the identity
  CHECK(cstar_rescale(w, Scalar::one()) == w);
  // degree-j part scales by eps^{j-2}
  TruncatedSeries scaled = cstar_rescale(w, Scalar(2));
  CHECK(scaled.coeff(Monomial({1, 1, 1})) == Scalar(4));    // 2 * 2^1
  CHECK(scaled.coeff(Monomial({5, 0, 0})) == Scalar(8));    // 2^3
  // group action: eps then 1/eps is the identity
  CHECK(cstar_rescale(scaled, Scalar(1, 2)) == w);
  CHECK_THROWS_AS(cstar_rescale(w, Scalar::zero()), Error);
}

TEST_CASE("classify_cubic") {
  CyclicAction a(5, {1, 1, 3});
  auto ctx = make_context(3, 12);
  CubicClass ca = classify_cubic(parse_poly("-1*v1*v2*v3 + v1^5", ctx), a);
  CHECK(ca.type == CubicClass::Type::type_a);
  CHECK(ca.lambda == Scalar(-1));

  CubicClass cb = classify_cubic(parse_poly("2*v1^2*v3 + 2*v2^2*v3 + v1^5", ctx), a);
  CHECK(cb.type == CubicClass::Type::type_b);
  CHECK(cb.lambda == Scalar(2));
  CHECK_FALSE(cb.to_type_a.has_value());  // not available over Q

  auto qi = make_context(3, 12, Field::QI);
  CubicClass cbi = classify_cubic(parse_poly("2*v1^2*v3 + 2*v2^2*v3", qi), a);
  CHECK(cbi.type == CubicClass::Type::type_b);
  REQUIRE(cbi.to_type_a.has_value());
  // the witness takes the cubic to type A (4 lambda v1v2v3)
  TruncatedSeries moved = linear_change(parse_poly("2*v1^2*v3 + 2*v2^2*v3", qi), *cbi.to_type_a);
  CubicClass after = classify_cubic(moved, a);
  CHECK(after.type == CubicClass::Type::type_a);
  CHECK(after.lambda == Scalar(8));

  CubicClass co = classify_cubic(parse_poly("v1^3 + v2^5", ctx), a);
  CHECK(co.type == CubicClass::Type::other);
}

TEST_CASE("linear_change is a bracket automorphism") {
  Rng rng(101);
  auto ctx = make_context(3, 8);
  std::vector<std::vector<Scalar>> m = {{Scalar(1), Scalar(2), Scalar(0)},
                                        {Scalar(0), Scalar(1), Scalar(0)},
                                        {Scalar(1), Scalar(0), Scalar(3)}};
  for (int t = 0; t < 50; ++t) {
    Polyvector a = mcform::testing::random_form(rng, ctx, rng.range(0, 2), 3);
    Polyvector b = mcform::testing::random_form(rng, ctx, rng.range(0, 2), 3);
    Polyvector lhs = linear_change(schouten(a, b), m);
    Polyvector rhs = schouten(linear_change(a, m), linear_change(b, m));
    CHECK((lhs - rhs).truncated(ctx->trunc_order() - 1).is_zero());
  }
}

TEST_CASE("normal form: Q is a fixed point") {
  TruncatedSeries q = genus_q(2, 12);
  NormalFormReport r = normal_form(q, CyclicAction::genus(2), 2);
  CHECK(r.status == "ok");
  CHECK(r.residual_zero);
  CHECK(r.log.empty());
  CHECK(r.output == q);
  CHECK(r.lambda == Scalar(-1));
  for (const auto& mu : r.mu) CHECK(mu == Scalar(1));
}

TEST_CASE("normal form: invariant degree-9 noise dies without feedback") {
  TruncatedSeries q = genus_q(2, 12);
  const ContextPtr& ctx = q.context();
  TruncatedSeries w = q + parse_poly("v1^3*v2^3*v3^3", ctx);
  NormalFormReport r = normal_form(w, CyclicAction::genus(2), 2);
  CHECK(r.residual_zero);
  CHECK(r.output == q);
  CHECK(r.lambda == Scalar(-1));
  for (const auto& mu : r.mu) CHECK(mu == Scalar(1));
  CHECK_FALSE(r.log.empty());
  // replaying the emitted log on the input reproduces the output exactly
  MCPair replayed = replay_gauge_log(MCPair(w), r.log);
  CHECK(replayed.w == r.output);
  CHECK(replayed.eta.is_zero());
}

TEST_CASE("normal form: spec worked example at degree 7 noise") {
  auto ctx = make_context(3, 13);
  // degree-7 invariant monomials for weights (1,1,3) are v1^a v2^b v3^4
  // with a + b = 3; coefficients drawn from {1, -1/2, 2}
  TruncatedSeries w = parse_poly(
      "2*v1*v2*v3 + v1^5 + v2^5 + 3*v3^5 "
      "+ v1^3*v3^4 - 1/2*v1^2*v2*v3^4 + 2*v2^3*v3^4",
      ctx);
  CyclicAction a(5, {1, 1, 3});
  REQUIRE(a.is_invariant(w));
  NormalFormReport r = normal_form(w, a, 2);
  CHECK(r.residual_zero);
  CHECK(r.lambda == Scalar(2));
  CHECK(r.mu[0] == Scalar(1));
  CHECK(r.mu[1] == Scalar(1));
  CHECK(r.mu[2] == Scalar(3));
  MCPair replayed = replay_gauge_log(MCPair(w), r.log);
  CHECK(replayed.w == r.output);
  // every emitted gauge field is invariant
  for (const auto& s : r.log)
    if (s.kind == GaugeStep::Kind::vector_field) CHECK(a.is_invariant(*s.field));
  // scaling relations are recorded symbolically
  REQUIRE(r.scaling_relations.size() == 4);
  CHECK(r.scaling_relations[0].find("t1*t2*t3") != std::string::npos);
}

TEST_CASE("normal form: truncation too small and degenerate cubic are refused") {
  auto ctx = make_context(3, 6);
  CHECK_THROWS_AS(normal_form(parse_poly("v1*v2*v3", ctx), CyclicAction::genus(2), 2), Error);
  auto ctx2 = make_context(3, 12);
  try {
    normal_form(parse_poly("v1^5 + v2^5 + v3^5", ctx2), CyclicAction::genus(2), 2);
    FAIL("expected CubicDegenerate");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::cubic_degenerate);
  }
}

TEST_CASE("gauge step serialisation roundtrip") {
  auto ctx = make_context(3, 10);
  Polyvector g1(ctx);
  g1.add_component(form_mask({1}), parse_poly("v3^2", ctx));
  g1.add_component(form_mask({2}), parse_poly("1/2*v3^2", ctx));
  GaugeStep s1 = GaugeStep::vector_field(g1);
  GaugeStep back = GaugeStep::from_report(s1.to_report(ctx), ctx);
  CHECK(back.kind == GaugeStep::Kind::vector_field);
  CHECK(*back.field == g1);

  GaugeStep s2 = GaugeStep::cstar_rescale(Scalar(3, 2));
  GaugeStep b2 = GaugeStep::from_report(s2.to_report(ctx), ctx);
  CHECK(b2.epsilon == Scalar(3, 2));

  GaugeStep s3 = GaugeStep::linear_change({{Scalar(1), Scalar(1), Scalar(0)},
                                           {Scalar(0), Scalar(1), Scalar(0)},
                                           {Scalar(0), Scalar(0), Scalar(1)}});
  GaugeStep b3 = GaugeStep::from_report(s3.to_report(ctx), ctx);
  CHECK(b3.matrix == s3.matrix);
}

TEST_CASE("hh ranks are preserved by every gauge step kind") {
  TruncatedSeries q = genus_q(2, 12);
  const ContextPtr& ctx = q.context();
  CyclicAction a(5, {1, 1, 3});
  MCPair p(q);
  HHOptions fixed;
  fixed.margin = 4;
  HHReport base = invariant_hh(p, a, fixed);

  // vector field
  Polyvector g1(ctx);
  g1.add_component(form_mask({1}), parse_poly("v3^2", ctx));
  MCPair p1 = apply_gauge_step(p, GaugeStep::vector_field(g1));
  HHReport r1 = invariant_hh(p1, a, fixed);
  CHECK(r1.even == base.even);
  CHECK(r1.odd == base.odd);

  // three-form (moves eta; full ranks this time)
  Polyvector g3 = Polyvector::term(parse_poly("v2^3*v3", ctx), form_mask({1, 2, 3}));
  MCPair p3 = apply_gauge_step(p, GaugeStep::three_form(g3));
  REQUIRE_FALSE(p3.eta.is_zero());
  HHOptions full;
  full.margin = 4;
  full.sector = &a;
  HHReport h_before = hh_ranks(p, full);
  HHReport h_after = hh_ranks(p3, full);
  CHECK(h_before.even == h_after.even);
  CHECK(h_before.odd == h_after.odd);

  // C* rescale
  MCPair p4 = apply_gauge_step(p, GaugeStep::cstar_rescale(Scalar(2)));
  HHReport r4 = invariant_hh(p4, a, fixed);
  CHECK(r4.even == base.even);
  CHECK(r4.odd == base.odd);
}
