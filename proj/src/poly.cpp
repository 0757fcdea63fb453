#include "logcoh/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace logcoh {

// --- Expv -------------------------------------------------------------------

Expv Expv::plus(const Expv& o) const {
  Expv r = *this;
  for (int i = 0; i < 3; ++i) r.e[i] += o.e[i];
  return r;
}

Expv Expv::minus(const Expv& o) const {
  Expv r = *this;
  for (int i = 0; i < 3; ++i) r.e[i] -= o.e[i];
  return r;
}

bool Expv::divides(const Expv& o) const {
  for (int i = 0; i < 3; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Expv Expv::lcm(const Expv& o) const {
  Expv r = *this;
  for (int i = 0; i < 3; ++i) r.e[i] = std::max(e[i], o.e[i]);
  return r;
}

bool grevlex_less(const Expv& a, const Expv& b) {
  int da = a.total(), db = b.total();
  if (da != db) return da < db;
  // same degree: a < b iff the last nonzero entry of a-b is positive
  for (int i = 2; i >= 0; --i) {
    int d = a.e[i] - b.e[i];
    if (d != 0) return d > 0;
  }
  return false;
}

bool grlex_less(const Expv& a, const Expv& b) {
  int da = a.total(), db = b.total();
  if (da != db) return da < db;
  for (int i = 0; i < 3; ++i) {
    int d = a.e[i] - b.e[i];
    if (d != 0) return d < 0;
  }
  return false;
}

// --- Poly basics ------------------------------------------------------------

Poly Poly::constant(const std::vector<std::string>& vars, const Rat& c) {
  Poly p(vars);
  if (c != 0) p.terms_[Expv{{0, 0, 0}, p.nvars()}] = c;
  return p;
}

Poly Poly::variable(const std::vector<std::string>& vars,
                    const std::string& name) {
  Poly p(vars);
  int vi = p.var_index(name);
  if (vi < 0) fail(Err::UnknownVariable, "unknown variable: " + name);
  Expv m{{0, 0, 0}, p.nvars()};
  m.e[vi] = 1;
  p.terms_[m] = 1;
  return p;
}

int Poly::var_index(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (vars_[i] == name) return i;
  return -1;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.total() == 0);
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total());
  return d;
}

Rat Poly::constant_term() const { return coeff(Expv{{0, 0, 0}, nvars()}); }

Rat Poly::coeff(const Expv& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Expv& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

static void require_compatible(const Poly& a, const Poly& b) {
  if (!a.vars().empty() && !b.vars().empty() && a.vars() != b.vars())
    fail(Err::Internal, "polynomial variable lists differ");
}

Poly add_impl(const Poly& a, const Poly& b, bool negate_b) {
  require_compatible(a, b);
  Poly r(a.vars().empty() ? b.vars() : a.vars());
  r.terms_ = a.terms_;
  for (const auto& [m, c] : b.terms_) {
    Expv m2 = m;
    m2.n = r.nvars();
    r.add_term(m2, negate_b ? Rat(-c) : c);
  }
  return r;
}

Poly Poly::operator+(const Poly& o) const { return add_impl(*this, o, false); }
Poly Poly::operator-(const Poly& o) const { return add_impl(*this, o, true); }

Poly Poly::operator-() const {
  Poly r(vars_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  require_compatible(*this, o);
  Poly r(vars_.empty() ? o.vars_ : vars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Expv m = ma.plus(mb);
      m.n = r.nvars();
      r.add_term(m, ca * cb);
    }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (is_zero() && o.is_zero()) return true;
  require_compatible(*this, o);
  return terms_ == o.terms_;
}

Poly Poly::scaled(const Rat& c) const {
  Poly r(vars_);
  if (c == 0) return r;
  for (const auto& [m, q] : terms_) r.terms_[m] = q * c;
  return r;
}

Poly Poly::mono_mul(const Expv& m, const Rat& c) const {
  Poly r(vars_);
  if (c == 0) return r;
  for (const auto& [mm, q] : terms_) {
    Expv t = mm.plus(m);
    t.n = nvars();
    r.terms_[t] = q * c;
  }
  return r;
}

Poly Poly::pow(int k) const {
  Poly r = Poly::constant(vars_, 1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Poly Poly::derive(int vi) const {
  Poly r(vars_);
  for (const auto& [m, c] : terms_) {
    if (m.e[vi] == 0) continue;
    Expv d = m;
    d.e[vi] -= 1;
    r.add_term(d, c * m.e[vi]);
  }
  return r;
}

Poly Poly::derive(const std::string& var) const {
  int vi = var_index(var);
  if (vi < 0) fail(Err::UnknownVariable, "unknown variable: " + var);
  return derive(vi);
}

Poly Poly::subst_one(const std::string& var) const {
  int vi = var_index(var);
  if (vi < 0) fail(Err::UnknownVariable, "unknown variable: " + var);
  Poly r(vars_);
  for (const auto& [m, c] : terms_) {
    Expv d = m;
    d.e[vi] = 0;
    r.add_term(d, c);
  }
  return r;
}

Poly Poly::on_vars(const std::vector<std::string>& vars) const {
  Poly r(vars);
  std::array<int, 3> where{-1, -1, -1};
  for (int i = 0; i < nvars(); ++i) {
    int j = r.var_index(vars_[i]);
    if (j < 0) fail(Err::Internal, "on_vars: target misses " + vars_[i]);
    where[i] = j;
  }
  for (const auto& [m, c] : terms_) {
    Expv d{{0, 0, 0}, r.nvars()};
    for (int i = 0; i < nvars(); ++i) d.e[where[i]] = m.e[i];
    r.add_term(d, c);
  }
  return r;
}

Poly Poly::drop_var(const std::string& var) const {
  int vi = var_index(var);
  if (vi < 0) fail(Err::UnknownVariable, "unknown variable: " + var);
  std::vector<std::string> nv;
  for (int i = 0; i < nvars(); ++i)
    if (i != vi) nv.push_back(vars_[i]);
  Poly r(nv);
  for (const auto& [m, c] : terms_) {
    if (m.e[vi] != 0) fail(Err::Internal, "drop_var: variable in use");
    Expv d{{0, 0, 0}, r.nvars()};
    int k = 0;
    for (int i = 0; i < nvars(); ++i)
      if (i != vi) d.e[k++] = m.e[i];
    r.add_term(d, c);
  }
  return r;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.begin()->first.total();
  for (const auto& [m, c] : terms_)
    if (m.total() != d) return false;
  return true;
}

Rat Poly::eval1(const Rat& v) const {
  Rat acc = 0;
  for (const auto& [m, c] : terms_) {
    Rat pw = 1;
    for (int i = 0; i < m.e[0]; ++i) pw *= v;
    acc += c * pw;
  }
  return acc;
}

// --- printing ---------------------------------------------------------------

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    bool has_var = m.total() > 0;
    if (!has_var || a != 1) {
      out << rat_str(a);
      if (has_var) out << "*";
    }
    bool firstv = true;
    for (int i = 0; i < nvars(); ++i) {
      if (m.e[i] == 0) continue;
      if (!firstv) out << "*";
      firstv = false;
      out << vars_[i];
      if (m.e[i] > 1) out << "^" << m.e[i];
    }
    first = false;
  }
  return out.str();
}

// --- parser -----------------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  const std::vector<std::string>& vars;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }

  [[noreturn]] void err(const std::string& msg) {
    fail(Err::ParseError, msg + " at position " + std::to_string(i), i);
  }

  Int natural() {
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) err("expected integer");
    return Int(s.substr(start, i - start));
  }

  Poly number() {
    Int num = natural();
    if (eat('/')) {
      std::size_t dpos = i;
      Int den = natural();
      if (den == 0) fail(Err::ParseError, "zero denominator", dpos);
      Rat q(num, den);
      q.canonicalize();
      return Poly::constant(vars, q);
    }
    return Poly::constant(vars, Rat(num));
  }

  Poly ident() {
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
    std::string name = s.substr(start, i - start);
    for (const auto& v : vars)
      if (v == name) return Poly::variable(vars, name);
    fail(Err::UnknownVariable,
         "unknown variable '" + name + "' at position " + std::to_string(start),
         start);
  }

  Poly base() {
    char c = peek();
    if (c == '(') {
      ++i;
      Poly p = expr();
      if (!eat(')')) err("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    err("expected term");
  }

  Poly factor() {
    Poly b = base();
    if (eat('^')) {
      Int n = natural();
      if (n > 512) err("exponent too large");
      return b.pow(static_cast<int>(n.get_si()));
    }
    return b;
  }

  Poly term() {
    Poly p = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++i;
        p = p * factor();
      } else if (c == '(' || std::isalnum(static_cast<unsigned char>(c))) {
        err("missing '*' between factors");
      } else {
        break;
      }
    }
    return p;
  }

  Poly expr() {
    bool neg = false;
    if (peek() == '-') {
      ++i;
      neg = true;
    } else if (peek() == '+') {
      ++i;
    }
    Poly p = term();
    if (neg) p = -p;
    while (true) {
      char c = peek();
      if (c == '+') {
        ++i;
        p = p + term();
      } else if (c == '-') {
        ++i;
        p = p - term();
      } else {
        break;
      }
    }
    return p;
  }
};

} // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
  Parser p{text, vars};
  Poly r = p.expr();
  p.skip();
  if (p.i != text.size()) p.err("trailing input");
  return r;
}

// --- normalization / division / gcd ----------------------------------------

Poly normalize_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Int num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());
  }
  Rat scale(den_lcm, num_gcd);
  scale.canonicalize();
  // sign: positive leading coefficient under graded-lex
  const auto& terms = p.terms();
  auto lead = terms.begin();
  for (auto it = terms.begin(); it != terms.end(); ++it)
    if (grlex_less(lead->first, it->first)) lead = it;
  if (lead->second * scale < 0) scale = -scale;
  return p.scaled(scale);
}

std::optional<Poly> divide_exact(const Poly& p, const Poly& d) {
  if (d.is_zero()) return std::nullopt;
  Poly r = p.vars().empty() ? p.on_vars(d.vars()) : p;
  Poly dd = d.vars().empty() ? d.on_vars(p.vars()) : d;
  if (!r.vars().empty() && !dd.vars().empty() && r.vars() != dd.vars())
    dd = dd.on_vars(r.vars());
  Poly q(r.vars());
  const Expv& dm = dd.leading_mono();
  const Rat& dc = dd.leading_coeff();
  while (!r.is_zero()) {
    const Expv& rm = r.leading_mono();
    if (!dm.divides(rm)) return std::nullopt;
    Expv qm = rm.minus(dm);
    qm.n = r.nvars();
    Rat qc = r.leading_coeff() / dc;
    q.add_term(qm, qc);
    r = r - dd.mono_mul(qm, qc);
  }
  return q;
}

namespace {

// view p as univariate in variable vi: degree -> coefficient Poly
std::map<int, Poly> coeffs_in(const Poly& p, int vi) {
  std::map<int, Poly> out;
  for (const auto& [m, c] : p.terms()) {
    Expv rest = m;
    rest.e[vi] = 0;
    auto [it, fresh] = out.emplace(m.e[vi], Poly(p.vars()));
    it->second.add_term(rest, c);
  }
  return out;
}

int deg_in(const Poly& p, int vi) {
  int d = -1;
  for (const auto& [m, c] : p.terms()) d = std::max(d, m.e[vi]);
  return d;
}

Poly shift_in(const Poly& p, int vi, int k) { // multiply by var^k
  Expv m{{0, 0, 0}, p.nvars()};
  m.e[vi] = k;
  return p.mono_mul(m, 1);
}

Poly gcd_rec(Poly a, Poly b, int vi);

// content of p w.r.t. variable vi (gcd of univariate coefficients)
Poly content_in(const Poly& p, int vi) {
  Poly g;
  for (auto& [d, c] : coeffs_in(p, vi)) g = gcd_rec(g, c, vi - 1);
  return g;
}

// gcd using variables 0..vi as recursion stack; vi < 0 means constants
Poly gcd_rec(Poly a, Poly b, int vi) {
  if (a.is_zero()) return b.is_zero() ? b : normalize_primitive(b);
  if (b.is_zero()) return normalize_primitive(a);
  if (vi < 0) return Poly::constant(a.vars(), 1);
  if (deg_in(a, vi) == 0 && deg_in(b, vi) == 0) return gcd_rec(a, b, vi - 1);

  Poly ca = content_in(a, vi), cb = content_in(b, vi);
  Poly cg = gcd_rec(ca, cb, vi - 1);
  Poly pa = *divide_exact(a, ca), pb = *divide_exact(b, cb);

  // primitive PRS in variable vi
  while (!pb.is_zero()) {
    int da = deg_in(pa, vi), db = deg_in(pb, vi);
    if (da < db) {
      std::swap(pa, pb);
      continue;
    }
    // pseudo-remainder of pa by pb (extra lb factors wash out below)
    Poly lb = coeffs_in(pb, vi).rbegin()->second;
    Poly r = pa;
    while (!r.is_zero() && deg_in(r, vi) >= db) {
      int dr = deg_in(r, vi);
      Poly lr = coeffs_in(r, vi).rbegin()->second;
      r = r * lb - shift_in(lr, vi, dr - db) * pb;
      if (!r.is_zero() && deg_in(r, vi) >= dr)
        fail(Err::Internal, "pseudo-division failed to reduce degree");
    }
    pa = pb;
    pb = r.is_zero() ? r : *divide_exact(r, content_in(r, vi));
  }
  return normalize_primitive(cg * pa);
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? b : normalize_primitive(b);
  if (b.is_zero()) return normalize_primitive(a);
  Poly aa = a, bb = b;
  if (aa.vars() != bb.vars()) {
    if (aa.vars().empty())
      aa = aa.on_vars(bb.vars());
    else
      bb = bb.on_vars(aa.vars());
  }
  return gcd_rec(aa, bb, aa.nvars() - 1);
}

bool check_reduced(const Poly& f) {
  if (f.is_zero() || f.is_constant())
    fail(Err::ZeroOrConstantInput, "input must be a nonconstant polynomial");
  Poly g = f;
  for (int i = 0; i < f.nvars(); ++i) g = poly_gcd(g, f.derive(i));
  return g.is_constant();
}

Poly homogenize(const Poly& p, const std::string& var0) {
  std::vector<std::string> vars = p.vars();
  if (std::find(vars.begin(), vars.end(), var0) == vars.end())
    vars.push_back(var0);
  Poly q = p.on_vars(vars);
  Poly r(vars);
  int d = q.degree();
  int vi = static_cast<int>(std::find(vars.begin(), vars.end(), var0) -
                            vars.begin());
  for (const auto& [m, c] : q.terms()) {
    Expv h = m;
    h.e[vi] += d - m.total();
    r.add_term(h, c);
  }
  return r;
}

Poly dehomogenize(const Poly& p, const std::string& var0) {
  return p.subst_one(var0).drop_var(var0);
}

} // namespace logcoh
