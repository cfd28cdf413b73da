#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcform/polyvec.hpp"
#include "test_support.hpp"

using namespace mcform;
using mcform::testing::Rng;
using mcform::testing::random_form;
using mcform::testing::random_series;

namespace {

ContextPtr ctx3(int d = 9) { return make_context(3, d); }

TruncatedSeries mono(const ContextPtr& c, std::vector<int> e, long num, long den = 1) {
  return TruncatedSeries::monomial(c, Monomial(std::move(e)), Scalar(num, den));
}

int parity(const Polyvector& p) {
  int fp = -1;
  for (const auto& [m, f] : p.components()) {
    int q = form_degree(m) & 1;
    if (fp == -1) fp = q;
    if (fp != q) return -2;
  }
  return fp;
}

}  // namespace

TEST_CASE("wedge basics") {
  auto c = ctx3();
  auto one = TruncatedSeries::constant(c, Scalar::one());
  auto xi1 = Polyvector::term(one, form_mask({1}));
  auto xi2 = Polyvector::term(one, form_mask({2}));
  CHECK(xi1.wedge(xi2) == Polyvector::term(one, form_mask({1, 2})));
  CHECK(xi1.wedge(xi1).is_zero());
  auto a = Polyvector::term(mono(c, {1, 0, 0}, 1), form_mask({1}));
  auto b = Polyvector::term(mono(c, {0, 1, 0}, 1), form_mask({2}));
  CHECK(a.wedge(b) == Polyvector::term(mono(c, {1, 1, 0}, 1), form_mask({1, 2})));
  // antisymmetry of 1-forms
  CHECK(xi2.wedge(xi1) == -(xi1.wedge(xi2)));
}

TEST_CASE("wedge sign normalisation") {
  CHECK(wedge_sign(form_mask({1}), form_mask({2})) == 1);
  CHECK(wedge_sign(form_mask({2}), form_mask({1})) == -1);
  CHECK(wedge_sign(form_mask({1, 3}), form_mask({2})) == -1);
  CHECK(wedge_sign(form_mask({1}), form_mask({1})) == 0);
  CHECK(wedge_sign(0, form_mask({1, 2, 3})) == 1);
}

TEST_CASE("schouten vanishes on pairs of functions") {
  Rng rng(31);
  auto c = ctx3();
  for (int t = 0; t < 20; ++t) {
    auto f = Polyvector::from_series(random_series(rng, c, 4));
    auto g = Polyvector::from_series(random_series(rng, c, 4));
    CHECK(schouten(f, g).is_zero());
  }
}

TEST_CASE("schouten worked example from the display") {
  // [xi_{12}, v1 v2] = v2 xi_2 - v1 xi_1
  auto c = ctx3();
  auto xi12 = Polyvector::term(TruncatedSeries::constant(c, Scalar::one()), form_mask({1, 2}));
  auto f = Polyvector::from_series(mono(c, {1, 1, 0}, 1));
  Polyvector expected(c);
  expected.add_component(form_mask({2}), mono(c, {0, 1, 0}, 1));
  expected.add_component(form_mask({1}), mono(c, {1, 0, 0}, -1));
  CHECK(schouten(xi12, f) == expected);
}

TEST_CASE("[Q, Q] = 0") {
  auto c = make_context(3, 12);
  auto q = mono(c, {1, 1, 1}, -1) + mono(c, {5, 0, 0}, 1) + mono(c, {0, 5, 0}, 1) +
           mono(c, {0, 0, 5}, 1);
  auto pq = Polyvector::from_series(q);
  CHECK(schouten(pq, pq).is_zero());
}

TEST_CASE("contract_dw vanishes on 0-forms and matches partials on top forms") {
  auto c = make_context(3, 12);
  auto q = mono(c, {1, 1, 1}, -1) + mono(c, {5, 0, 0}, 1) + mono(c, {0, 5, 0}, 1) +
           mono(c, {0, 0, 5}, 1);
  auto f = Polyvector::from_series(mono(c, {2, 0, 0}, 3));
  CHECK(contract_dw(f, q).is_zero());

  // single-variable analogue: iota_{dW}(xi) with W = x^2 gives -2x
  auto c1 = make_context(1, 6);
  auto xi = Polyvector::term(TruncatedSeries::constant(c1, Scalar::one()), form_mask({1}));
  auto w = TruncatedSeries::monomial(c1, Monomial({2}), Scalar::one());
  auto r = contract_dw(xi, w);
  CHECK(r == Polyvector::from_series(TruncatedSeries::monomial(c1, Monomial({1}), Scalar(-2))));

  // top form: components are +/- the partials of Q
  auto xi123 = Polyvector::term(TruncatedSeries::constant(c, Scalar::one()), form_mask({1, 2, 3}));
  auto img = contract_dw(xi123, q);
  Polyvector expected(c);
  expected.add_component(form_mask({2, 3}), -q.partial(1));
  expected.add_component(form_mask({1, 3}), q.partial(2));
  expected.add_component(form_mask({1, 2}), -q.partial(3));
  CHECK(img == expected);
}

TEST_CASE("contract_dw squares to zero") {
  Rng rng(37);
  for (int t = 0; t < 100; ++t) {
    auto c = ctx3();
    TruncatedSeries w = random_series(rng, c, 5, 2);
    int fd = rng.range(1, 3);
    Polyvector omega = random_form(rng, c, fd, 4);
    auto once = contract_dw(omega, w);
    auto twice = contract_dw(once, w);
    // two derivatives consumed: exact through D-2
    CHECK(twice.truncated(c->trunc_order() - 2).is_zero());
  }
}

TEST_CASE("graded antisymmetry on homogeneous inputs") {
  Rng rng(41);
  int checked = 0;
  while (checked < 120) {
    auto c = ctx3();
    int ka = rng.range(0, 3), kb = rng.range(0, 3);
    Polyvector a = random_form(rng, c, ka, 3);
    Polyvector b = random_form(rng, c, kb, 3);
    if (a.is_zero() || b.is_zero()) continue;
    ++checked;
    // [a,b] = -(-1)^{(k-1)(l-1)} [b,a] with k, l the form degrees
    Polyvector lhs = schouten(a, b);
    Polyvector rhs = schouten(b, a);
    int sign = ((ka - 1) * (kb - 1)) % 2 ? 1 : -1;
    CHECK(lhs == (sign > 0 ? rhs : -rhs));
  }
}

TEST_CASE("graded jacobi identity") {
  Rng rng(43);
  int checked = 0;
  while (checked < 100) {
    auto c = make_context(3, 10);
    int ka = rng.range(0, 2), kb = rng.range(0, 2), kc = rng.range(0, 2);
    Polyvector a = random_form(rng, c, ka, 2);
    Polyvector b = random_form(rng, c, kb, 2);
    Polyvector cc = random_form(rng, c, kc, 2);
    if (a.is_zero() || b.is_zero() || cc.is_zero()) continue;
    ++checked;
    // [a,[b,c]] = [[a,b],c] + (-1)^{(|a|-1)(|b|-1)} [b,[a,c]]
    Polyvector lhs = schouten(a, schouten(b, cc));
    Polyvector r1 = schouten(schouten(a, b), cc);
    Polyvector r2 = schouten(b, schouten(a, cc));
    if (((ka - 1) * (kb - 1)) % 2) r2 = -r2;
    // two derivatives consumed
    int exact_to = c->trunc_order() - 2;
    CHECK((lhs - r1 - r2).truncated(exact_to).is_zero());
  }
}

TEST_CASE("leibniz with respect to wedge") {
  Rng rng(47);
  int checked = 0;
  while (checked < 100) {
    auto c = make_context(3, 10);
    int ka = rng.range(0, 2), kb = rng.range(0, 2), kc = rng.range(0, 2);
    Polyvector a = random_form(rng, c, ka, 2);
    Polyvector b = random_form(rng, c, kb, 2);
    Polyvector cc = random_form(rng, c, kc, 2);
    if (a.is_zero() || b.is_zero() || cc.is_zero()) continue;
    ++checked;
    // [a, b ^ c] = [a,b] ^ c + (-1)^{(|a|-1)|b|} b ^ [a,c]
    Polyvector lhs = schouten(a, b.wedge(cc));
    Polyvector r1 = schouten(a, b).wedge(cc);
    Polyvector r2 = b.wedge(schouten(a, cc));
    if (((ka - 1) * kb) % 2) r2 = -r2;
    int exact_to = c->trunc_order() - 1;
    CHECK((lhs - r1 - r2).truncated(exact_to).is_zero());
  }
}

TEST_CASE("parity helpers") {
  auto c = ctx3();
  Polyvector p(c);
  p.add_component(0, mono(c, {3, 0, 0}, 1));
  p.add_component(form_mask({1, 2}), mono(c, {1, 0, 0}, 2));
  CHECK(p.has_form_parity(0));
  p.add_component(form_mask({3}), mono(c, {0, 0, 2}, 1));
  CHECK_FALSE(p.has_form_parity(0));
  CHECK(parity(p.form_parity_part(1)) == 1);
  CHECK(p.form_parity_part(0).components().size() == 2);
}
