#ifndef MCFORM_TEST_SUPPORT_HPP
#define MCFORM_TEST_SUPPORT_HPP

#include <cstdint>
#include <vector>

#include "mcform/polyvec.hpp"

namespace mcform::testing {

// deterministic xorshift; property suites must be reproducible
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }
  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
  Scalar rational(int num_bound = 9, int den_bound = 4) {
    long num = range(-num_bound, num_bound);
    long den = range(1, den_bound);
    return Scalar(num, den);
  }

 private:
  uint64_t state_;
};

inline Monomial random_monomial(Rng& rng, int num_vars, int max_degree) {
  std::vector<int> exps(num_vars, 0);
  int degree = rng.range(0, max_degree);
  for (int i = 0; i < degree; ++i) exps[rng.range(0, num_vars - 1)] += 1;
  return Monomial(exps);
}

inline TruncatedSeries random_series(Rng& rng, const ContextPtr& ctx, int terms,
                                     int min_degree = 0, int max_degree = -1) {
  if (max_degree < 0) max_degree = ctx->trunc_order();
  TruncatedSeries s(ctx);
  for (int t = 0; t < terms; ++t) {
    Monomial m = random_monomial(rng, ctx->num_vars(), max_degree);
    if (m.degree() < min_degree) continue;
    s.add_term(m, rng.rational());
  }
  return s;
}

// a single-component polyvector with homogeneous form degree
inline Polyvector random_form(Rng& rng, const ContextPtr& ctx, int form_degree, int terms,
                              int min_degree = 0) {
  std::vector<int> picks;
  for (int i = 1; i <= ctx->num_vars(); ++i) picks.push_back(i);
  // choose form_degree indices
  std::vector<int> chosen;
  while (static_cast<int>(chosen.size()) < form_degree && !picks.empty()) {
    int at = rng.range(0, static_cast<int>(picks.size()) - 1);
    chosen.push_back(picks[at]);
    picks.erase(picks.begin() + at);
  }
  std::sort(chosen.begin(), chosen.end());
  return Polyvector::term(random_series(rng, ctx, terms, min_degree), form_mask(chosen));
}

}  // namespace mcform::testing

#endif
