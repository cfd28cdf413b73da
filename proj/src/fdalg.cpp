#include "mcform/fdalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mcform {

FiniteDimAlgebra::FiniteDimAlgebra(std::vector<std::string> labels, std::vector<int> z2_degrees,
                                   std::vector<Elem> table, int unit_index)
    : labels_(std::move(labels)), z2_(std::move(z2_degrees)), table_(std::move(table)),
      unit_(unit_index) {
  verify();
}

int FiniteDimAlgebra::label_index(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

Elem FiniteDimAlgebra::unit() const { return basis_elem(unit_); }

Elem FiniteDimAlgebra::basis_elem(int i) const {
  Elem e(dimension());
  e[i] = Scalar::one();
  return e;
}

Elem FiniteDimAlgebra::multiply(const Elem& a, const Elem& b) const {
  const int n = dimension();
  Elem r(n);
  for (int i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      Scalar f = a[i] * b[j];
      const Elem& row = basis_product(i, j);
      for (int k = 0; k < n; ++k)
        if (!row[k].is_zero()) r[k] += f * row[k];
    }
  }
  return r;
}

DenseMatrix FiniteDimAlgebra::mult_operator(const Elem& a) const {
  const int n = dimension();
  DenseMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    Elem col = multiply(a, basis_elem(j));
    for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
  }
  return m;
}

void FiniteDimAlgebra::verify() {
  const int n = dimension();
  if (static_cast<int>(z2_.size()) != n || static_cast<int>(table_.size()) != n * n)
    fail(Errc::invalid_argument, "algebra table shape mismatch");
  for (int i = 0; i < n; ++i) {
    if (multiply(basis_elem(unit_), basis_elem(i)) != basis_elem(i) ||
        multiply(basis_elem(i), basis_elem(unit_)) != basis_elem(i))
      fail(Errc::not_associative, "unit fails on basis element " + labels_[i]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Elem& row = basis_product(i, j);
      for (int k = 0; k < n; ++k)
        if (!row[k].is_zero() && z2_[k] != ((z2_[i] + z2_[j]) & 1))
          fail(Errc::validation_error, "Z2 degrees not additive on " + labels_[i] + "*" +
                                           labels_[j] + " -> " + labels_[k]);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem ij = basis_product(i, j);
      for (int k = 0; k < n; ++k) {
        Elem left = multiply(ij, basis_elem(k));
        Elem right = multiply(basis_elem(i), basis_product(j, k));
        if (left != right)
          fail(Errc::not_associative, "associativity fails on triple (" + labels_[i] + ", " +
                                          labels_[j] + ", " + labels_[k] + ")");
      }
    }
}

void FiniteDimAlgebra::set_distinguished(const std::string& label, const Scalar& c1_multiple) {
  int idx = label_index(label);
  split_ = basis_elem(idx);
  c1_ = basis_elem(idx);
  (*c1_)[idx] = c1_multiple;
}

Elem FiniteDimAlgebra::parse_element(const std::string& text) const {
  Elem out = zero();
  size_t p = 0;
  int sign = 1;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return std::string();
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
  };
  bool any = false;
  while (p < text.size()) {
    while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    if (p >= text.size()) break;
    if (text[p] == '+') { sign = 1; ++p; continue; }
    if (text[p] == '-') { sign = -1; ++p; continue; }
    size_t start = p;
    while (p < text.size() && text[p] != '+' && text[p] != '-') ++p;
    std::string piece = trim(text.substr(start, p - start));
    if (piece.empty()) continue;
    Scalar coeff = sign < 0 ? -Scalar::one() : Scalar::one();
    std::string label = piece;
    size_t mul = piece.find('*');
    if (mul != std::string::npos) {
      coeff = coeff * Scalar::parse_rational(trim(piece.substr(0, mul)));
      label = trim(piece.substr(mul + 1));
    } else if (std::isdigit(static_cast<unsigned char>(piece[0]))) {
      coeff = coeff * Scalar::parse_rational(piece);
      label = labels_[unit_];
    }
    int idx = label_index(label);
    if (idx < 0) fail(Errc::validation_error, "unknown basis label '" + label + "'");
    out[idx] += coeff;
    any = true;
    sign = 1;
  }
  if (!any) fail(Errc::syntax_error, "empty element expression");
  return out;
}

std::string FiniteDimAlgebra::element_str(const Elem& e) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < dimension(); ++i) {
    if (e[i].is_zero()) continue;
    if (!first) os << " + ";
    if (e[i].is_one() && i != unit_) os << labels_[i];
    else if (i == unit_) os << e[i].str();
    else os << e[i].str() << "*" << labels_[i];
    first = false;
  }
  return first ? "0" : os.str();
}

bool FiniteDimAlgebra::idempotent_check(const Elem& e) const {
  return multiply(e, e) == e;
}

bool FiniteDimAlgebra::span_closed_under_product(const std::vector<Elem>& vectors) const {
  const int n = dimension();
  DenseMatrix span(static_cast<int>(vectors.size()), n);
  for (size_t r = 0; r < vectors.size(); ++r)
    for (int c = 0; c < n; ++c) span.at(static_cast<int>(r), c) = vectors[r][c];
  int base_rank = span.rank();
  for (const Elem& x : vectors)
    for (const Elem& y : vectors) {
      Elem p = multiply(x, y);
      DenseMatrix ext(static_cast<int>(vectors.size()) + 1, n);
      for (size_t r = 0; r < vectors.size(); ++r)
        for (int c = 0; c < n; ++c) ext.at(static_cast<int>(r), c) = vectors[r][c];
      for (int c = 0; c < n; ++c) ext.at(static_cast<int>(vectors.size()), c) = p[c];
      if (ext.rank() != base_rank) return false;
    }
  return true;
}

UPoly FiniteDimAlgebra::minimal_polynomial(const Elem& a) const {
  const int n = dimension();
  DenseMatrix t = mult_operator(a);
  auto vector_minpoly = [&](const Elem& v0) {
    // Krylov sequence v0, T v0, ...; first dependency gives the candidate.
    std::vector<Elem> seq = {v0};
    while (true) {
      // solve sum c_k seq_k = seq_last as a linear system over earlier vectors
      int m = static_cast<int>(seq.size());
      if (m >= 2) {
        DenseMatrix cols(n, m - 1);
        for (int j = 0; j < m - 1; ++j)
          for (int i = 0; i < n; ++i) cols.at(i, j) = seq[j][i];
        std::vector<Scalar> rhs(seq[m - 1].begin(), seq[m - 1].end());
        // consistency check: solve and verify
        auto sol = cols.solve(rhs);
        if (sol) {
          bool ok = true;
          std::vector<Scalar> recon = cols.apply(*sol);
          for (int i = 0; i < n && ok; ++i) ok = (recon[i] == rhs[i]);
          if (ok) {
            std::vector<Scalar> coeffs(m);
            for (int j = 0; j < m - 1; ++j) coeffs[j] = -(*sol)[j];
            coeffs[m - 1] = Scalar::one();
            return UPoly(std::move(coeffs));
          }
        }
      }
      std::vector<Scalar> next = t.apply(seq.back());
      seq.push_back(Elem(next.begin(), next.end()));
      if (static_cast<int>(seq.size()) > n + 1)
        fail(Errc::invalid_argument, "minimal polynomial iteration exceeded dimension");
    }
  };
  UPoly m = vector_minpoly(unit());
  // saturate: demand annihilation of the whole operator
  for (int i = 0; i < n; ++i) {
    // evaluate m(T) on basis vector i
    Elem v = basis_elem(i);
    Elem acc(n);
    for (int k = m.degree(); k >= 0; --k) {
      std::vector<Scalar> tv = t.apply(acc);
      acc = Elem(tv.begin(), tv.end());
      Scalar c = m.coeff(k);
      if (!c.is_zero())
        for (int r = 0; r < n; ++r) acc[r] += c * v[r];
    }
    bool zero = std::all_of(acc.begin(), acc.end(), [](const Scalar& s) { return s.is_zero(); });
    if (!zero) {
      UPoly mi = vector_minpoly(basis_elem(i));
      m = (m * mi) / upoly_gcd(m, mi);  // lcm
    }
  }
  return m.monic();
}

FiniteDimAlgebra FiniteDimAlgebra::from_presentation(const RingBlock& block) {
  const int n = static_cast<int>(block.basis.size());
  int unit = -1;
  for (int i = 0; i < n; ++i)
    if (block.basis[i] == "1") unit = i;
  if (unit < 0) fail(Errc::validation_error, "presentation basis must contain the label '1'");
  auto idx = [&](const std::string& label) {
    for (int i = 0; i < n; ++i)
      if (block.basis[i] == label) return i;
    fail(Errc::validation_error, "rule uses unknown basis label '" + label + "'");
  };
  std::map<std::pair<int, int>, Elem> rules;
  for (const RingRule& r : block.rules) {
    int a = idx(r.lhs_a), b = idx(r.lhs_b);
    Elem rhs(n);
    for (const auto& [c, label] : r.rhs) rhs[idx(label)] += c;
    auto key = std::make_pair(a, b);
    if (rules.count(key)) fail(Errc::validation_error, "duplicate rule for " + r.lhs_a + "*" + r.lhs_b);
    rules.emplace(key, std::move(rhs));
  }
  std::vector<Elem> table(n * n, Elem(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == unit) { table[i * n + j] = Elem(n); table[i * n + j][j] = Scalar::one(); continue; }
      if (j == unit) { table[i * n + j] = Elem(n); table[i * n + j][i] = Scalar::one(); continue; }
      auto it = rules.find({i, j});
      if (it != rules.end()) { table[i * n + j] = it->second; continue; }
      auto mirror = rules.find({j, i});
      if (mirror != rules.end()) {
        // supercommutative mirror: ab = (-1)^{|a||b|} ba
        Elem v = mirror->second;
        if ((block.degrees[i] & 1) && (block.degrees[j] & 1))
          for (auto& c : v) c = -c;
        table[i * n + j] = std::move(v);
        continue;
      }
      fail(Errc::incomplete_rules, "no rule covers " + block.basis[i] + "*" + block.basis[j]);
    }
  return FiniteDimAlgebra(block.basis, block.degrees, std::move(table), unit);
}

namespace {

// word-by-generator product in a Clifford/exterior algebra: hyperbolic
// pairs (2i-1, 2i) satisfy x y + y x = 1; an unpaired last generator
// squares to 1; everything else anticommutes and squares to 0.
struct WordAlgebra {
  int k;
  bool clifford;  // false: exterior (all squares 0, no pair relation)

  int partner(int g) const {
    if (!clifford) return 0;
    if (g % 2 == 1) return g + 1 <= k ? g + 1 : 0;
    return g - 1;
  }
  bool unpaired(int g) const { return clifford && g == k && (k % 2 == 1); }

  static void emit(FormMask w, const Scalar& c, std::map<FormMask, Scalar>& out) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  }

  // multiply sorted word w by generator g on the right; accumulate into out
  void word_times_gen(FormMask w, int g, const Scalar& coeff,
                      std::map<FormMask, Scalar>& out) const {
    if (coeff.is_zero()) return;
    // bubble g left past the generators of w greater than g
    auto indices = form_indices(w);
    int flips = 0;
    for (size_t p = indices.size(); p-- > 0;) {
      int m = indices[p];
      if (m < g) break;
      if (m == g) {
        // collision: x_g x_g, with the prefix and already-passed tail intact
        if (unpaired(g))
          emit(w & ~(1u << (g - 1)), flips % 2 ? -coeff : coeff, out);
        return;  // square is 0 for paired/exterior generators
      }
      if (partner(g) == m) {
        // x_m x_g = 1 - x_g x_m: the contracted term drops both generators
        emit(w & ~(1u << (m - 1)), flips % 2 ? -coeff : coeff, out);
        ++flips;  // and the swap term continues leftward, negated
        continue;
      }
      ++flips;
    }
    emit(w | (1u << (g - 1)), flips % 2 ? -coeff : coeff, out);
  }
};

}  // namespace

static FiniteDimAlgebra build_word_algebra(int k, bool clifford, const std::string& stem) {
  if (k < 1 || k > 6) fail(Errc::bad_params, stem + " parameter must be in 1..6");
  WordAlgebra wa{k, clifford};
  const int dim = 1 << k;
  std::vector<std::string> labels(dim);
  std::vector<int> z2(dim);
  for (int m = 0; m < dim; ++m) {
    std::string l;
    for (int i : form_indices(static_cast<FormMask>(m))) l += "x" + std::to_string(i);
    labels[m] = m == 0 ? "1" : l;
    z2[m] = form_degree(static_cast<FormMask>(m)) & 1;
  }
  std::vector<Elem> table(dim * dim, Elem(dim));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      std::map<FormMask, Scalar> acc = {{static_cast<FormMask>(a), Scalar::one()}};
      for (int g : form_indices(static_cast<FormMask>(b))) {
        std::map<FormMask, Scalar> next;
        for (const auto& [w, c] : acc) wa.word_times_gen(w, g, c, next);
        acc = std::move(next);
      }
      for (const auto& [w, c] : acc) table[a * dim + b][static_cast<int>(w)] = c;
    }
  return FiniteDimAlgebra(std::move(labels), std::move(z2), std::move(table), 0);
}

// gauges a power of h against the relation h^top = 16 h^2 (intersection) or
// h^{n+1} = 4h (quadric); exponents stay below `top` after reduction.
static Elem h_power_elem(int e, int top, const Scalar& fold, int fold_to,
                         const std::vector<int>& h_index, int dim) {
  Scalar c = Scalar::one();
  while (e >= top) {
    e = e - top + fold_to;
    c *= fold;
  }
  Elem r(dim);
  r[h_index[e]] += c;
  return r;
}

static FiniteDimAlgebra build_qh_intersection(int g) {
  if (g < 2) fail(Errc::bad_params, "qh_intersection needs genus >= 2");
  // basis 1, h, ..., h^{2g-1}, a_1..a_{2g}; relations h^{2g} = 16 h^2,
  // h a_i = 0, a_i a_j = delta(a_i,a_j) (h^{2g-1}/4 - 4h) with the standard
  // symplectic pairing in consecutive pairs.
  const int hs = 2 * g;
  const int prim = 2 * g;
  const int dim = hs + prim;
  std::vector<std::string> labels(dim);
  std::vector<int> z2(dim, 0);
  std::vector<int> h_index(hs);
  labels[0] = "1";
  h_index[0] = 0;
  for (int i = 1; i < hs; ++i) {
    labels[i] = i == 1 ? "h" : "h" + std::to_string(i);
    h_index[i] = i;
  }
  for (int i = 0; i < prim; ++i) {
    labels[hs + i] = "a" + std::to_string(i + 1);
    z2[hs + i] = 1;
  }
  auto hpow = [&](int e) { return h_power_elem(e, hs, Scalar(16), 2, h_index, dim); };
  std::vector<Elem> table(dim * dim, Elem(dim));
  for (int i = 0; i < hs; ++i)
    for (int j = 0; j < hs; ++j) table[h_index[i] * dim + h_index[j]] = hpow(i + j);
  // primitive part: alpha * beta = delta(alpha,beta) (h^{2g-1}/4 - 4h)
  Elem pairing(dim);
  {
    Elem top = hpow(2 * g - 1);
    for (int t = 0; t < dim; ++t) pairing[t] = top[t] * Scalar(1, 4);
    Elem hh = hpow(1);
    for (int t = 0; t < dim; ++t) pairing[t] -= Scalar(4) * hh[t];
  }
  for (int i = 0; i < prim; ++i)
    for (int j = 0; j < prim; ++j) {
      int delta = 0;
      if (j == i + 1 && i % 2 == 0) delta = 1;
      if (j == i - 1 && i % 2 == 1) delta = -1;
      if (delta != 0) {
        Elem v = pairing;
        if (delta < 0)
          for (auto& c : v) c = -c;
        table[(hs + i) * dim + (hs + j)] = std::move(v);
      }
    }
  for (int i = 0; i < prim; ++i) {
    // 1 * a_i and a_i * 1
    table[0 * dim + (hs + i)] = Elem(dim);
    table[0 * dim + (hs + i)][hs + i] = Scalar::one();
    table[(hs + i) * dim + 0] = table[0 * dim + (hs + i)];
    // h^e * a_i = 0 for e >= 1 (already zero)
  }
  FiniteDimAlgebra alg(std::move(labels), std::move(z2), std::move(table), 0);
  alg.set_distinguished("h", Scalar(2 * g - 2));
  return alg;
}

static FiniteDimAlgebra build_qh_quadric(int n) {
  if (n < 2) fail(Errc::bad_params, "qh_quadric needs dimension >= 2");
  if (n % 2 == 1) {
    const int dim = n + 1;
    std::vector<std::string> labels(dim);
    std::vector<int> z2(dim, 0);
    std::vector<int> h_index(dim);
    for (int i = 0; i < dim; ++i) {
      labels[i] = i == 0 ? "1" : (i == 1 ? "h" : "h" + std::to_string(i));
      h_index[i] = i;
    }
    auto hpow = [&](int e) { return h_power_elem(e, n + 1, Scalar(4), 1, h_index, dim); };
    std::vector<Elem> table(dim * dim, Elem(dim));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) table[i * dim + j] = hpow(i + j);
    FiniteDimAlgebra alg(std::move(labels), std::move(z2), std::move(table), 0);
    alg.set_distinguished("h", Scalar(n));
    return alg;
  }
  // even n: middle cohomology splits as a, b with h^{n/2} = a + b; work in
  // the basis 1, h, ..., h^{n/2-1}, a, b, h^{n/2+1}, ..., h^n and reduce all
  // products through z = a - b with h z = 0 and z^2 = 4 - h^n (n = 4k+2)
  // or h^n - 4 (n = 4k).
  const int half = n / 2;
  const int dim = n + 2;
  std::vector<std::string> labels(dim);
  std::vector<int> z2(dim, 0);
  // dense h-power representation over this basis
  auto hpow_vec = [&](int e) {
    // returns coordinates of h^e (e <= 2n is enough; reduce h^{n+1} = 4h)
    Scalar c = Scalar::one();
    while (e > n) { e -= n; c *= Scalar(4); }
    Elem r(dim);
    if (e == half) {
      // h^{n/2} = a + b
      r[half] = c;       // a
      r[half + 1] = c;   // b
    } else {
      int pos = e < half ? e : e + 1;
      r[pos] = c;
    }
    return r;
  };
  for (int i = 0; i < dim; ++i) {
    if (i < half) labels[i] = i == 0 ? "1" : (i == 1 ? "h" : "h" + std::to_string(i));
    else if (i == half) labels[i] = "a";
    else if (i == half + 1) labels[i] = "b";
    else labels[i] = "h" + std::to_string(i - 1);
  }
  // z^2 per parity of n/2
  bool n4k2 = (n % 4) == 2;
  auto add_scaled = [&](Elem& dst, const Elem& src, const Scalar& f) {
    for (int t = 0; t < dim; ++t) dst[t] += f * src[t];
  };
  // products of the generators written through h-powers and z
  // a = (h^{half} + z)/2, b = (h^{half} - z)/2
  Elem z2elem(dim);  // z^2 as an element
  {
    Elem hn = hpow_vec(n);
    if (n4k2) {
      z2elem[0] = Scalar(4);
      add_scaled(z2elem, hn, -Scalar::one());
    } else {
      z2elem = hn;
      z2elem[0] -= Scalar(4);
    }
  }
  std::vector<Elem> table(dim * dim, Elem(dim));
  auto set_prod = [&](int i, int j, const Elem& v) { table[i * dim + j] = v; };
  // exponent of pure h-power basis slots
  auto slot_exp = [&](int i) { return i < half ? i : i - 1; };
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      bool ia = (i == half), ib = (i == half + 1);
      bool ja = (j == half), jb = (j == half + 1);
      if (!ia && !ib && !ja && !jb) {
        set_prod(i, j, hpow_vec(slot_exp(i) + slot_exp(j)));
        continue;
      }
      if ((ia || ib) && !ja && !jb) {
        // a h^e = (h^{half+e} + z h^e)/2 and z h^e = 0 for e >= 1
        int e = slot_exp(j);
        Elem r(dim);
        add_scaled(r, hpow_vec(half + e), Scalar(1, 2));
        if (e == 0) {
          // a * 1 = a
          r = Elem(dim);
          r[i] = Scalar::one();
        }
        set_prod(i, j, r);
        continue;
      }
      if ((ja || jb) && !ia && !ib) {
        int e = slot_exp(i);
        Elem r(dim);
        add_scaled(r, hpow_vec(half + e), Scalar(1, 2));
        if (e == 0) {
          r = Elem(dim);
          r[j] = Scalar::one();
        }
        set_prod(i, j, r);
        continue;
      }
      // both in {a, b}: expand via h^{half} and z
      // a*a = (h^n + 2 h^{half} z + z^2)/4 with h^{half} z = ... careful:
      // h^{half} z has h z = 0 only for one power of h; z commutes and
      // h^e z = 0 for e >= 1, so h^{half} z = 0 (half >= 1).
      Elem r(dim);
      add_scaled(r, hpow_vec(n), Scalar(1, 4));
      int sz = (ia ? 1 : -1) * (ja ? 1 : -1);
      add_scaled(r, z2elem, Scalar(sz, 4));
      set_prod(i, j, r);
    }
  FiniteDimAlgebra alg(std::move(labels), std::move(z2), std::move(table), 0);
  alg.set_distinguished("h", Scalar(n));
  return alg;
}

static FiniteDimAlgebra build_qh_moduli_sigma2() {
  // <h, m_i | h^4 = 16 h^2, h m_i = 0, m_i m_j = delta(m_i, m_j)(h^3/4 - 4h)>
  const int dim = 8;
  std::vector<std::string> labels = {"1", "h", "h2", "h3", "m1", "m2", "m3", "m4"};
  std::vector<int> z2 = {0, 0, 0, 0, 1, 1, 1, 1};
  std::vector<int> h_index = {0, 1, 2, 3};
  auto hpow = [&](int e) { return h_power_elem(e, 4, Scalar(16), 2, h_index, dim); };
  std::vector<Elem> table(dim * dim, Elem(dim));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) table[i * dim + j] = hpow(i + j);
  Elem pairing(dim);
  pairing[3] = Scalar(1, 4);
  pairing[1] = Scalar(-4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int delta = 0;
      if (j == i + 1 && i % 2 == 0) delta = 1;
      if (j == i - 1 && i % 2 == 1) delta = -1;
      if (delta != 0) {
        Elem v = pairing;
        if (delta < 0)
          for (auto& c : v) c = -c;
        table[(4 + i) * dim + (4 + j)] = std::move(v);
      }
    }
  for (int i = 0; i < 4; ++i) {
    table[0 * dim + (4 + i)][4 + i] = Scalar::one();
    table[(4 + i) * dim + 0][4 + i] = Scalar::one();
  }
  FiniteDimAlgebra alg(std::move(labels), std::move(z2), std::move(table), 0);
  alg.set_distinguished("h", Scalar(2));
  return alg;
}

std::vector<std::string> FiniteDimAlgebra::builtin_names() {
  return {"qh_moduli_sigma2", "qh_quadric", "qh_intersection", "clifford", "exterior"};
}

FiniteDimAlgebra FiniteDimAlgebra::builtin(const std::string& name, int param) {
  if (name == "qh_moduli_sigma2") return build_qh_moduli_sigma2();
  if (name == "qh_quadric") return build_qh_quadric(param);
  if (name == "qh_intersection") return build_qh_intersection(param);
  if (name == "clifford") return build_word_algebra(param, true, "clifford");
  if (name == "exterior") return build_word_algebra(param, false, "exterior");
  fail(Errc::bad_params, "unknown builtin algebra '" + name + "'");
}

FiniteDimAlgebra semidirect_to_algebra(const SemidirectAlgebra& s, Field f) {
  if (!s.realisable_over(f))
    fail(Errc::field_mismatch, "semidirect twist needs roots of unity outside the field");
  const int n = s.dimension();
  std::vector<std::string> labels(n);
  std::vector<int> z2(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = s.basis_label(i);
    z2[i] = s.z2_degree(i);
  }
  std::vector<Elem> table(n * n, Elem(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto p = s.product(i, j);
      if (p.basis_index < 0) continue;
      table[i * n + j][p.basis_index] = p.coef.rational * s.root_scalar(p.coef.root_power, f);
    }
  return FiniteDimAlgebra(std::move(labels), std::move(z2), std::move(table), s.unit_index());
}

int zero_eigenspace_rank(const FiniteDimAlgebra& a, const Elem& elem) {
  DenseMatrix t = a.mult_operator(elem);
  DenseMatrix tn = t.pow(a.dimension());
  return a.dimension() - tn.rank();
}

EigenSplit eigen_split(const FiniteDimAlgebra& a, const Elem& elem) {
  EigenSplit out;
  out.minpoly = a.minimal_polynomial(elem);
  DenseMatrix t = a.mult_operator(elem);
  const int n = a.dimension();

  // factor the minimal polynomial: square-free parts, then rational roots;
  // what does not split over the field stays whole as a block
  struct Factor { UPoly f; int e; std::optional<Scalar> root; };
  std::vector<Factor> factors;
  for (const auto& [sf, mult] : squarefree_decomposition(out.minpoly)) {
    auto [roots, residual] = extract_rational_roots(sf);
    for (const Scalar& r : roots) factors.push_back({UPoly::linear_root(r), mult, r});
    if (residual.degree() >= 1) factors.push_back({residual, mult, std::nullopt});
  }
  std::sort(factors.begin(), factors.end(), [](const Factor& x, const Factor& y) {
    if (x.root.has_value() != y.root.has_value()) return x.root.has_value();
    if (x.root && y.root) return x.root->re() < y.root->re();
    if (x.f.degree() != y.f.degree()) return x.f.degree() < y.f.degree();
    return x.f.str() < y.f.str();
  });

  for (const Factor& fac : factors) {
    EigenBlock block;
    block.eigenvalue = fac.root;
    block.factor = fac.f;
    block.multiplicity = fac.e;
    UPoly fe = fac.f.pow(fac.e);
    UPoly rest = out.minpoly / fe;
    // idempotent: u * rest = 1 mod f^e, then P = u * rest mod minpoly
    auto [g, u, v] = upoly_ext_gcd(rest, fe);
    if (g.degree() != 0)
      fail(Errc::invalid_argument, "minimal polynomial factors are not coprime");
    UPoly proj = (u * rest) % out.minpoly;
    // evaluate proj at the element (Horner in the algebra)
    Elem e = a.zero();
    for (int k = proj.degree(); k >= 0; --k) {
      e = a.multiply(elem, e);
      if (!proj.coeff(k).is_zero()) {
        Elem unit = a.unit();
        for (int r = 0; r < n; ++r) e[r] += proj.coeff(k) * unit[r];
      }
    }
    block.idempotent = std::move(e);
    // generalised eigenspace: kernel of f(T)^e
    DenseMatrix ft(n, n);
    {
      DenseMatrix acc(n, n);  // zero
      DenseMatrix tpow = DenseMatrix::identity(n);
      for (int k = 0; k <= fac.f.degree(); ++k) {
        if (!fac.f.coeff(k).is_zero()) acc = acc + tpow.scaled(fac.f.coeff(k));
        if (k < fac.f.degree()) tpow = tpow * t;
      }
      ft = acc.pow(fac.e);
    }
    auto kernel = ft.kernel_basis();
    block.dimension = static_cast<int>(kernel.size());
    for (auto& v2 : kernel) block.space_basis.push_back(Elem(v2.begin(), v2.end()));
    out.blocks.push_back(std::move(block));
  }

  // exact invariants of the splitting
  Elem sum = a.zero();
  int total = 0;
  for (const auto& b : out.blocks) {
    for (int r = 0; r < n; ++r) sum[r] += b.idempotent[r];
    total += b.dimension;
    if (!a.idempotent_check(b.idempotent))
      fail(Errc::invalid_argument, "eigen idempotent fails e*e = e");
  }
  if (sum != a.unit()) fail(Errc::invalid_argument, "eigen idempotents do not sum to 1");
  if (total != n) fail(Errc::invalid_argument, "eigenspace dimensions do not sum to dim");
  for (size_t i = 0; i < out.blocks.size(); ++i)
    for (size_t j = i + 1; j < out.blocks.size(); ++j) {
      Elem p = a.multiply(out.blocks[i].idempotent, out.blocks[j].idempotent);
      bool zero = std::all_of(p.begin(), p.end(), [](const Scalar& s) { return s.is_zero(); });
      if (!zero) fail(Errc::invalid_argument, "eigen idempotents are not orthogonal");
    }
  return out;
}

}  // namespace mcform
