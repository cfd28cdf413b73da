#include "mcform/parse.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>

namespace mcform {

namespace {

// Exact (untruncated) polynomial accumulator used only inside the parser;
// overflowing monomials are detected after expansion, so cancellation in
// lower degrees never hides an offending term (and vice versa).
using ExactPoly = std::map<Monomial, Scalar, GradedLexLess>;

void acc_add(ExactPoly& p, const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

ExactPoly acc_mul(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) acc_add(r, ma * mb, ca * cb);
  return r;
}

struct PolyParser {
  const std::string& text;
  const ContextPtr& ctx;
  size_t pos = 0;

  [[noreturn]] void error(const std::string& expected) const {
    fail(Errc::syntax_error, "syntax error at offset " + std::to_string(pos) +
                                 ": expected " + expected);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("'") + c + "'");
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  int parse_nat() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) error("exponent");
    return std::stoi(text.substr(start, pos - start));
  }

  ExactPoly parse_expr() {
    skip_ws();
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    ExactPoly acc = parse_term();
    if (neg) for (auto& [m, c] : acc) c = -c;
    while (true) {
      skip_ws();
      if (accept('+')) {
        for (const auto& [m, c] : parse_term()) acc_add(acc, m, c);
      } else if (accept('-')) {
        for (const auto& [m, c] : parse_term()) acc_add(acc, m, -c);
      } else {
        break;
      }
    }
    return acc;
  }

  ExactPoly parse_term() {
    ExactPoly acc = parse_factor();
    while (accept('*')) acc = acc_mul(acc, parse_factor());
    return acc;
  }

  ExactPoly parse_factor() {
    ExactPoly base = parse_base();
    while (accept('^')) {
      int e = parse_nat();
      ExactPoly r;
      acc_add(r, Monomial(ctx->num_vars()), Scalar::one());
      for (int k = 0; k < e; ++k) r = acc_mul(r, base);
      base = std::move(r);
    }
    return base;
  }

  ExactPoly parse_base() {
    skip_ws();
    if (pos >= text.size()) error("factor");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      ExactPoly inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
        ++pos;
      Scalar v = Scalar::parse_rational(text.substr(start, pos - start));
      ExactPoly r;
      acc_add(r, Monomial(ctx->num_vars()), v);
      return r;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                   text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      if (name == "i") {
        if (ctx->field() != Field::QI)
          fail(Errc::field_mismatch, "imaginary unit 'i' used over field Q (offset " +
                                         std::to_string(start) + ")");
        ExactPoly r;
        acc_add(r, Monomial(ctx->num_vars()), Scalar::i());
        return r;
      }
      int idx = ctx->var_index(name);
      if (idx == 0)
        fail(Errc::unknown_variable,
             "unknown variable '" + name + "' at offset " + std::to_string(start));
      ExactPoly r;
      acc_add(r, Monomial::variable(ctx->num_vars(), idx), Scalar::one());
      return r;
    }
    error("factor");
  }
};

}  // namespace

TruncatedSeries parse_poly(const std::string& text, const ContextPtr& ctx) {
  PolyParser p{text, ctx};
  p.skip_ws();
  ExactPoly acc;
  if (!p.at_end()) acc = p.parse_expr();
  if (!p.at_end()) p.error("end of expression");
  TruncatedSeries s(ctx);
  for (const auto& [m, c] : acc) {
    if (m.degree() > ctx->trunc_order())
      fail(Errc::degree_overflow, "monomial " + m.str(ctx->names()) + " of degree " +
                                      std::to_string(m.degree()) +
                                      " exceeds truncation order " +
                                      std::to_string(ctx->trunc_order()));
    s.add_term(m, c);
  }
  return s;
}

std::string print_poly(const TruncatedSeries& s) { return s.str(); }

std::string input_digest(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void line_error(int line_no, Errc code, const std::string& msg) {
  fail(code, "line " + std::to_string(line_no) + ": " + msg);
}

// eta terms look like "coeffpoly * e{i,j}"; the e{...} factor is last.
void parse_eta(const std::string& rhs, const ContextPtr& ctx, Polyvector& eta, int line_no) {
  std::string t = rhs;
  // split into top-level +/- terms
  std::vector<std::pair<int, std::string>> terms;  // sign, body
  int depth = 0, sign = 1;
  std::string cur;
  for (char c : t) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-') && !cur.empty()) {
      terms.emplace_back(sign, cur);
      sign = (c == '-') ? -1 : 1;
      cur.clear();
      continue;
    }
    if (depth == 0 && (c == '+' || c == '-') && cur.empty()) {
      sign *= (c == '-') ? -1 : 1;
      continue;
    }
    cur += c;
  }
  if (!cur.empty()) terms.emplace_back(sign, cur);
  for (auto& [sgn, body] : terms) {
    // trim
    size_t a = body.find_first_not_of(" \t");
    size_t b = body.find_last_not_of(" \t");
    if (a == std::string::npos) line_error(line_no, Errc::syntax_error, "empty eta term");
    body = body.substr(a, b - a + 1);
    if (body == "0") continue;
    size_t epos = body.rfind("e{");
    if (epos == std::string::npos)
      line_error(line_no, Errc::syntax_error,
                 "eta term must end with a form factor e{i,j}: '" + body + "'");
    size_t close = body.find('}', epos);
    if (close == std::string::npos || close + 1 != body.size())
      line_error(line_no, Errc::syntax_error, "unterminated form factor in '" + body + "'");
    std::string inside = body.substr(epos + 2, close - epos - 2);
    std::vector<int> indices;
    std::istringstream is(inside);
    std::string piece;
    while (std::getline(is, piece, ','))
      indices.push_back(std::stoi(piece));
    if (indices.size() != 2 || indices[0] >= indices[1] || indices[0] < 1 ||
        indices[1] > ctx->num_vars())
      line_error(line_no, Errc::validation_error, "form factor must be e{i,j} with i<j");
    std::string coeff = body.substr(0, epos);
    // strip a trailing '*'
    size_t ce = coeff.find_last_not_of(" \t");
    if (ce == std::string::npos || coeff[ce] != '*')
      line_error(line_no, Errc::syntax_error, "expected '*' before form factor");
    coeff = coeff.substr(0, ce);
    TruncatedSeries f = parse_poly(coeff, ctx);
    if (sgn < 0) f = -f;
    eta.add_component(form_mask(indices), f);
  }
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  std::vector<std::string> names;
  std::optional<Field> field;
  std::optional<int> trunc;
  std::optional<std::pair<int, std::vector<int>>> group;
  std::optional<std::string> w_text;
  std::optional<std::string> eta_text;
  int w_line = 0, eta_line = 0;
  RingBlock ring;
  bool has_ring = false;

  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    if (head == "vars") {
      if (toks.size() < 2) line_error(line_no, Errc::syntax_error, "vars needs at least one name");
      names.assign(toks.begin() + 1, toks.end());
    } else if (head == "field") {
      if (toks.size() != 2 || (toks[1] != "Q" && toks[1] != "QI"))
        line_error(line_no, Errc::syntax_error, "field must be Q or QI");
      field = (toks[1] == "Q") ? Field::Q : Field::QI;
    } else if (head == "trunc") {
      if (toks.size() != 2) line_error(line_no, Errc::syntax_error, "trunc needs one integer");
      try {
        trunc = std::stoi(toks[1]);
      } catch (...) {
        line_error(line_no, Errc::syntax_error, "trunc needs one integer");
      }
      if (*trunc < 1) line_error(line_no, Errc::validation_error, "trunc must be >= 1");
    } else if (head == "group") {
      if (toks.size() < 4 || toks[1] != "cyclic" || toks[3] != "weights")
        line_error(line_no, Errc::syntax_error, "expected: group cyclic <n> weights w1 w2 ...");
      int n = 0;
      try {
        n = std::stoi(toks[2]);
      } catch (...) {
        line_error(line_no, Errc::syntax_error, "bad group order");
      }
      std::vector<int> ws;
      for (size_t i = 4; i < toks.size(); ++i) {
        try {
          ws.push_back(std::stoi(toks[i]));
        } catch (...) {
          line_error(line_no, Errc::syntax_error, "bad weight '" + toks[i] + "'");
        }
      }
      group = std::make_pair(n, std::move(ws));
    } else if (head == "W") {
      size_t eq = line.find('=');
      if (eq == std::string::npos) line_error(line_no, Errc::syntax_error, "expected W = <expr>");
      w_text = line.substr(eq + 1);
      w_line = line_no;
    } else if (head == "eta") {
      size_t eq = line.find('=');
      if (eq == std::string::npos) line_error(line_no, Errc::syntax_error, "expected eta = <expr>");
      eta_text = line.substr(eq + 1);
      eta_line = line_no;
    } else if (head == "ring") {
      has_ring = true;
      if (toks.size() < 2) line_error(line_no, Errc::syntax_error, "incomplete ring directive");
      const std::string& sub = toks[1];
      if (sub == "basis") {
        ring.basis.assign(toks.begin() + 2, toks.end());
      } else if (sub == "degrees") {
        ring.degrees.clear();
        for (size_t i = 2; i < toks.size(); ++i) {
          if (toks[i] != "0" && toks[i] != "1")
            line_error(line_no, Errc::validation_error, "Z2 degrees must be 0 or 1");
          ring.degrees.push_back(toks[i] == "1" ? 1 : 0);
        }
      } else if (sub == "rule") {
        size_t eq = line.find('=');
        if (eq == std::string::npos)
          line_error(line_no, Errc::syntax_error, "expected ring rule a*b = rhs");
        std::string lhs = line.substr(line.find("rule") + 4, eq - line.find("rule") - 4);
        size_t star = lhs.find('*');
        if (star == std::string::npos)
          line_error(line_no, Errc::syntax_error, "rule left side must be a*b");
        auto trim = [](std::string s) {
          size_t a = s.find_first_not_of(" \t");
          if (a == std::string::npos) return std::string();
          size_t b = s.find_last_not_of(" \t");
          return s.substr(a, b - a + 1);
        };
        RingRule rule;
        rule.lhs_a = trim(lhs.substr(0, star));
        rule.lhs_b = trim(lhs.substr(star + 1));
        if (rule.lhs_a.empty() || rule.lhs_b.empty())
          line_error(line_no, Errc::syntax_error, "rule left side must be a*b");
        std::string rhs = trim(line.substr(eq + 1));
        // rhs := 0 | [-]c*label (+|- c*label)*, coefficient optional
        size_t p = 0;
        int sign = 1;
        bool any = false;
        while (p < rhs.size()) {
          while (p < rhs.size() && std::isspace(static_cast<unsigned char>(rhs[p]))) ++p;
          if (p >= rhs.size()) break;
          if (rhs[p] == '+') { sign = 1; ++p; continue; }
          if (rhs[p] == '-') { sign = -1; ++p; continue; }
          size_t start = p;
          while (p < rhs.size() && rhs[p] != '+' && rhs[p] != '-') ++p;
          std::string piece = trim(rhs.substr(start, p - start));
          if (piece.empty()) continue;
          Scalar coeff = sign < 0 ? -Scalar::one() : Scalar::one();
          std::string label = piece;
          size_t mul = piece.find('*');
          if (mul != std::string::npos) {
            coeff = coeff * Scalar::parse_rational(trim(piece.substr(0, mul)));
            label = trim(piece.substr(mul + 1));
          } else if (std::isdigit(static_cast<unsigned char>(piece[0]))) {
            coeff = coeff * Scalar::parse_rational(piece);
            label = "1";
          }
          if (piece != "0") rule.rhs.emplace_back(coeff, label);
          any = true;
          sign = 1;
        }
        if (!any) line_error(line_no, Errc::syntax_error, "empty rule right side");
        ring.rules.push_back(std::move(rule));
      } else if (sub == "c1") {
        size_t eq = line.find('=');
        if (eq == std::string::npos)
          line_error(line_no, Errc::syntax_error, "expected ring c1 = expr");
        std::string rhs = line.substr(eq + 1);
        size_t p = 0;
        int sign = 1;
        while (p < rhs.size()) {
          while (p < rhs.size() && std::isspace(static_cast<unsigned char>(rhs[p]))) ++p;
          if (p >= rhs.size()) break;
          if (rhs[p] == '+') { sign = 1; ++p; continue; }
          if (rhs[p] == '-') { sign = -1; ++p; continue; }
          size_t start = p;
          while (p < rhs.size() && rhs[p] != '+' && rhs[p] != '-') ++p;
          std::string piece = rhs.substr(start, p - start);
          size_t a = piece.find_first_not_of(" \t");
          size_t b = piece.find_last_not_of(" \t");
          piece = piece.substr(a, b - a + 1);
          Scalar coeff = sign < 0 ? -Scalar::one() : Scalar::one();
          std::string label = piece;
          size_t mul = piece.find('*');
          if (mul != std::string::npos) {
            coeff = coeff * Scalar::parse_rational(piece.substr(0, mul));
            label = piece.substr(mul + 1);
          }
          ring.c1.emplace_back(coeff, label);
          sign = 1;
        }
      } else {
        line_error(line_no, Errc::syntax_error, "unknown ring directive '" + sub + "'");
      }
    } else {
      line_error(line_no, Errc::syntax_error, "unknown directive '" + head + "'");
    }
  }

  if (names.empty()) fail(Errc::syntax_error, "missing 'vars' line");
  if (!trunc) fail(Errc::syntax_error, "missing 'trunc' line");
  ContextPtr ctx = make_context(names, *trunc, field.value_or(Field::Q));

  ProblemFile pf(ctx);
  pf.source = text;
  if (group) {
    if (static_cast<int>(group->second.size()) != ctx->num_vars())
      fail(Errc::validation_error,
           "weight vector length " + std::to_string(group->second.size()) +
               " does not match " + std::to_string(ctx->num_vars()) + " variables");
    pf.group = CyclicAction(group->first, group->second);
  }
  if (w_text) {
    try {
      pf.w = parse_poly(*w_text, ctx);
    } catch (const Error& e) {
      line_error(w_line, e.code(), e.what());
    }
  }
  if (eta_text) parse_eta(*eta_text, ctx, pf.eta, eta_line);
  if (has_ring) {
    if (ring.basis.empty()) fail(Errc::validation_error, "ring block needs a basis line");
    if (ring.degrees.size() != ring.basis.size())
      fail(Errc::validation_error, "ring degrees length does not match basis");
    pf.ring = std::move(ring);
  }
  return pf;
}

}  // namespace mcform
