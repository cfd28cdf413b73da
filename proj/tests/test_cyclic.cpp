#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "mcform/cyclic.hpp"
#include "mcform/fdalg.hpp"
#include "mcform/parse.hpp"
#include "test_support.hpp"

using namespace mcform;
using mcform::testing::Rng;
using mcform::testing::random_series;

TEST_CASE("monomial weights for the genus-2 action") {
  CyclicAction a(5, {1, 1, 3});
  CHECK(a.weight(Monomial({1, 1, 1})) == 0);  // v1 v2 v3
  CHECK(a.weight(Monomial({5, 0, 0})) == 0);  // v1^5
  CHECK(a.weight(Monomial({0, 0, 5})) == 0);  // v3^5
  CHECK(a.weight(Monomial({2, 1, 0})) == 3);  // v1^2 v2: non-invariant
  // dual generators carry weight -w_i
  CHECK(a.weight(Monomial({1, 1, 1}), form_mask({3})) == 2);  // 5 - 3 mod 5
  CHECK(a.weight(Monomial({0, 0, 0}), form_mask({1, 2})) == 3);
}

TEST_CASE("genus helper") {
  CyclicAction a = CyclicAction::genus(3);
  CHECK(a.order() == 7);
  CHECK(a.weights() == std::vector<int>{1, 1, 5});
  CHECK_THROWS_AS(CyclicAction::genus(1), Error);
}

TEST_CASE("invariance of the superpotential") {
  auto ctx = make_context(3, 12);
  auto q = parse_poly("-1*v1*v2*v3 + v1^5 + v2^5 + v3^5", ctx);
  CyclicAction a(5, {1, 1, 3});
  CHECK(a.is_invariant(q));
  CHECK(project_invariant(q, a) == q);
  auto bad = parse_poly("v1^2*v2", ctx);
  CHECK_FALSE(a.is_invariant(bad));
  CHECK(project_invariant(bad, a).is_zero());
}

TEST_CASE("projection is idempotent and multiplicative on invariants") {
  Rng rng(59);
  auto ctx = make_context(3, 10);
  CyclicAction a(5, {1, 1, 3});
  for (int t = 0; t < 100; ++t) {
    auto f = random_series(rng, ctx, 6);
    auto once = project_invariant(f, a);
    CHECK(project_invariant(once, a) == once);
    auto g = random_series(rng, ctx, 6);
    auto pf = project_invariant(f, a);
    auto pg = project_invariant(g, a);
    // product of invariants is invariant
    CHECK(a.is_invariant(pf * pg));
  }
}

TEST_CASE("invariant monomial enumeration against brute force") {
  CyclicAction a(5, {1, 1, 3});
  auto inv = invariant_monomials_up_to(3, 5, a);
  // brute force oracle
  std::vector<Monomial> expected;
  for (const Monomial& m : monomials_up_to(3, 5))
    if (m.degree() >= 1 && (m.exp(1) + m.exp(2) + 3 * m.exp(3)) % 5 == 0)
      expected.push_back(m);
  CHECK(inv.size() == expected.size());
  for (size_t i = 0; i < inv.size(); ++i) CHECK(inv[i] == expected[i]);
  // key members
  auto has = [&](std::vector<int> e) {
    Monomial m(std::move(e));
    for (const auto& x : inv)
      if (x == m) return true;
    return false;
  };
  CHECK(has({1, 1, 1}));
  CHECK(has({5, 0, 0}));
  CHECK(has({4, 1, 0}));
  CHECK(has({1, 0, 3}));

  // no invariants of degree <= 2 for these weights
  CHECK(invariant_monomials_up_to(3, 2, a).empty());

  // trivial action: everything
  CyclicAction triv = CyclicAction::trivial(1);
  auto all = invariant_monomials_up_to(1, 2, triv);
  CHECK(all.size() == 2);
}

TEST_CASE("noether bound: degree <= |G| monomials generate") {
  // every invariant monomial of degree <= 10 is a product of invariant
  // monomials of degree <= 5 (group order)
  CyclicAction a(5, {1, 1, 3});
  auto gens = invariant_monomials_up_to(3, 5, a);
  auto all = invariant_monomials_up_to(3, 10, a);
  std::function<bool(const Monomial&)> decomposable = [&](const Monomial& m) -> bool {
    if (m.degree() <= 5) return true;
    for (const Monomial& g : gens) {
      bool divides = true;
      for (int i = 1; i <= 3; ++i)
        if (g.exp(i) > m.exp(i)) { divides = false; break; }
      if (!divides) continue;
      std::vector<int> rest;
      for (int i = 1; i <= 3; ++i) rest.push_back(m.exp(i) - g.exp(i));
      Monomial r(rest);
      if (r.degree() == 0 || decomposable(r)) return true;
    }
    return false;
  };
  for (const Monomial& m : all) CHECK(decomposable(m));
}

TEST_CASE("semidirect algebra: dimensions and unit") {
  SemidirectAlgebra s2(3, CyclicAction::genus(2));
  CHECK(s2.dimension() == 40);  // 5 * 2^3
  SemidirectAlgebra s1(3, CyclicAction::trivial(3));
  CHECK(s1.dimension() == 8);
  int u = s2.unit_index();
  for (int i = 0; i < s2.dimension(); ++i) {
    auto p = s2.product(u, i);
    CHECK(p.basis_index == i);
    CHECK(p.coef.rational.is_one());
    CHECK(p.coef.root_power == 0);
    auto q = s2.product(i, u);
    CHECK(q.basis_index == i);
    CHECK(q.coef.rational.is_one());
    CHECK(q.coef.root_power == 0);
  }
}

TEST_CASE("semidirect algebra: exhaustive associativity at genus 2") {
  SemidirectAlgebra s(3, CyclicAction::genus(2));
  CHECK(s.associativity_failure().empty());
}

TEST_CASE("semidirect algebra: twist bookkeeping") {
  // (g^0 (x) xi_1)(g^1 (x) 1) twists xi_1 by the dual action of g^1
  CyclicAction a = CyclicAction::genus(2);
  SemidirectAlgebra s(3, a);
  int i = -1, j = -1;
  for (int k = 0; k < s.dimension(); ++k) {
    const auto& b = s.basis()[k];
    if (b.group_power == 0 && b.form == form_mask({1})) i = k;
    if (b.group_power == 1 && b.form == 0) j = k;
  }
  REQUIRE(i >= 0);
  REQUIRE(j >= 0);
  auto p = s.product(i, j);
  CHECK(p.coef.root_power == 1);  // xi^{b * w_1} = xi^1
  auto q = s.product(j, i);
  CHECK(q.coef.root_power == 0);
}

TEST_CASE("semidirect to scalar algebra over Q and QI") {
  // n = 2: realisable over Q
  SemidirectAlgebra s2(2, CyclicAction(2, {1, 1}));
  CHECK(s2.realisable_over(Field::Q));
  FiniteDimAlgebra a2 = semidirect_to_algebra(s2, Field::Q);
  CHECK(a2.dimension() == 8);
  // n = 4 needs QI
  SemidirectAlgebra s4(2, CyclicAction(4, {1, 3}));
  CHECK_FALSE(s4.realisable_over(Field::Q));
  CHECK(s4.realisable_over(Field::QI));
  FiniteDimAlgebra a4 = semidirect_to_algebra(s4, Field::QI);
  CHECK(a4.dimension() == 16);
  CHECK_THROWS_AS(semidirect_to_algebra(s4, Field::Q), Error);
  // n = 5 fits neither
  SemidirectAlgebra s5(3, CyclicAction::genus(2));
  CHECK_FALSE(s5.realisable_over(Field::QI));
}

TEST_CASE("weights are additive under product and wedge") {
  Rng rng(61);
  CyclicAction a(7, {1, 1, 5});
  for (int t = 0; t < 100; ++t) {
    Monomial m1 = mcform::testing::random_monomial(rng, 3, 5);
    Monomial m2 = mcform::testing::random_monomial(rng, 3, 5);
    CHECK(a.weight(m1 * m2) == (a.weight(m1) + a.weight(m2)) % 7);
  }
}
