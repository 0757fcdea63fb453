#include "logcoh/weyl.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>
#include <utility>

namespace logcoh {

// --- WMono --------------------------------------------------------------------

bool WMono::divides(const WMono& o) const {
  return x[0] <= o.x[0] && x[1] <= o.x[1] && d[0] <= o.d[0] && d[1] <= o.d[1] &&
         h <= o.h;
}

WMono WMono::lcm(const WMono& o) const {
  WMono r;
  for (int i = 0; i < 2; ++i) {
    r.x[i] = std::max(x[i], o.x[i]);
    r.d[i] = std::max(d[i], o.d[i]);
  }
  r.h = std::max(h, o.h);
  return r;
}

WMono WMono::minus(const WMono& o) const {
  WMono r;
  for (int i = 0; i < 2; ++i) {
    r.x[i] = x[i] - o.x[i];
    r.d[i] = d[i] - o.d[i];
  }
  r.h = h - o.h;
  return r;
}

bool wmono_grevlex_less(const WMono& a, const WMono& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  // reverse lex over (x1, x2, d1, d2, h): last nonzero of a-b positive
  const int da[5] = {a.x[0] - b.x[0], a.x[1] - b.x[1], a.d[0] - b.d[0],
                     a.d[1] - b.d[1], a.h - b.h};
  for (int i = 4; i >= 0; --i)
    if (da[i] != 0) return da[i] > 0;
  return false;
}

WeightVector WeightVector::integration(int nvars) {
  WeightVector w;
  w.n = nvars;
  w.wx = {1, 1};
  w.wd = {-1, -1};
  if (nvars == 1) {
    w.wx[1] = 0;
    w.wd[1] = 0;
  }
  return w;
}

// --- WeylOp basics --------------------------------------------------------------

WeylOp WeylOp::constant(int nvars, const Rat& c) {
  WeylOp p(nvars);
  p.add(WMono{}, c);
  return p;
}

WeylOp WeylOp::monomial(int nvars, const WMono& m, const Rat& c) {
  WeylOp p(nvars);
  p.add(m, c);
  return p;
}

WeylOp WeylOp::x(int nvars, int i) {
  WMono m;
  m.x[i] = 1;
  return monomial(nvars, m, 1);
}

WeylOp WeylOp::d(int nvars, int i) {
  WMono m;
  m.d[i] = 1;
  return monomial(nvars, m, 1);
}

WeylOp WeylOp::from_poly(const Poly& p) {
  int nvars = p.nvars() == 0 ? 2 : p.nvars();
  if (nvars > 2) fail(Err::Internal, "from_poly: too many variables");
  WeylOp r(nvars);
  for (const auto& [m, c] : p.terms()) {
    WMono wm;
    wm.x[0] = m.e[0];
    if (nvars == 2) wm.x[1] = m.e[1];
    r.add(wm, c);
  }
  return r;
}

void WeylOp::add(const WMono& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = t.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

WeylOp WeylOp::operator+(const WeylOp& o) const {
  if (nv != o.nv) fail(Err::Internal, "operator arity mismatch");
  WeylOp r = *this;
  for (const auto& [m, c] : o.t) r.add(m, c);
  return r;
}

WeylOp WeylOp::operator-(const WeylOp& o) const {
  if (nv != o.nv) fail(Err::Internal, "operator arity mismatch");
  WeylOp r = *this;
  for (const auto& [m, c] : o.t) r.add(m, -c);
  return r;
}

WeylOp WeylOp::operator-() const {
  WeylOp r(nv);
  for (const auto& [m, c] : t) r.t[m] = -c;
  return r;
}

WeylOp WeylOp::scaled(const Rat& c) const {
  WeylOp r(nv);
  if (c == 0) return r;
  for (const auto& [m, q] : t) r.t[m] = q * c;
  return r;
}

bool WeylOp::operator==(const WeylOp& o) const { return nv == o.nv && t == o.t; }

int WeylOp::degree() const {
  int deg = -1;
  for (const auto& [m, c] : t) deg = std::max(deg, m.deg());
  return deg;
}

std::string WeylOp::str() const {
  if (t.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // print descending
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    Rat a = it->second;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    const WMono& m = it->first;
    bool has_var = m.deg() > 0;
    if (!has_var || a != 1) {
      out << rat_str(a);
      if (has_var) out << "*";
    }
    const char* names[5] = {"x", "y", "Dx", "Dy", "h"};
    int exps[5] = {m.x[0], m.x[1], m.d[0], m.d[1], m.h};
    bool firstv = true;
    for (int i = 0; i < 5; ++i) {
      if (exps[i] == 0) continue;
      if (!firstv) out << "*";
      firstv = false;
      out << names[i];
      if (exps[i] > 1) out << "^" << exps[i];
    }
    first = false;
  }
  return out.str();
}

// --- multiplication -------------------------------------------------------------

namespace {

Rat binom_rat(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rat(r);
}

Rat fact_rat(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rat(r);
}

// x^a ∂^b · x^c ∂^d; the commutator [∂, x] is h² in the homogenized algebra
// and 1 in the plain one.
WeylOp mul_impl(const WeylOp& P, const WeylOp& Q, bool homog) {
  if (P.nv != Q.nv) fail(Err::Internal, "operator arity mismatch");
  WeylOp r(P.nv);
  for (const auto& [mp, cp] : P.t)
    for (const auto& [mq, cq] : Q.t) {
      if (!homog && (mp.h != 0 || mq.h != 0))
        fail(Err::Internal, "plain product applied to homogenized operator");
      int b1 = mp.d[0], b2 = mp.d[1], c1 = mq.x[0], c2 = mq.x[1];
      for (int j1 = 0; j1 <= std::min(b1, c1); ++j1)
        for (int j2 = 0; j2 <= std::min(b2, c2); ++j2) {
          Rat coef = cp * cq * binom_rat(b1, j1) * binom_rat(c1, j1) *
                     fact_rat(j1) * binom_rat(b2, j2) * binom_rat(c2, j2) *
                     fact_rat(j2);
          WMono m;
          m.x[0] = mp.x[0] + c1 - j1;
          m.x[1] = mp.x[1] + c2 - j2;
          m.d[0] = b1 + mq.d[0] - j1;
          m.d[1] = b2 + mq.d[1] - j2;
          m.h = homog ? mp.h + mq.h + 2 * (j1 + j2) : 0;
          r.add(m, coef);
        }
    }
  return r;
}

} // namespace

WeylOp weyl_mul(const WeylOp& P, const WeylOp& Q) { return mul_impl(P, Q, false); }
WeylOp weyl_mul_h(const WeylOp& P, const WeylOp& Q) { return mul_impl(P, Q, true); }

WeylOp adjoint(const WeylOp& P) {
  WeylOp r(P.nv);
  for (const auto& [m, c] : P.t) {
    if (m.h != 0) fail(Err::Internal, "adjoint of homogenized operator");
    WMono dm, xm;
    dm.d = m.d;
    xm.x = m.x;
    int sign = (m.d[0] + m.d[1]) % 2 ? -1 : 1;
    WeylOp prod = mul_impl(WeylOp::monomial(P.nv, dm, 1),
                           WeylOp::monomial(P.nv, xm, 1), false);
    r = r + prod.scaled(Rat(sign) * c);
  }
  return r;
}

Poly apply(const WeylOp& P, const Poly& g) {
  Poly gg = g;
  if (gg.nvars() != P.nv) {
    if (gg.nvars() == 0)
      gg = gg.on_vars(P.nv == 1 ? std::vector<std::string>{"x"}
                                : std::vector<std::string>{"x", "y"});
    else
      fail(Err::Internal, "apply: variable count mismatch");
  }
  Poly out(gg.vars());
  for (const auto& [m, c] : P.t) {
    if (m.h != 0) fail(Err::Internal, "apply of homogenized operator");
    Poly tmp = gg;
    for (int i = 0; i < m.d[0] && !tmp.is_zero(); ++i) tmp = tmp.derive(0);
    for (int i = 0; i < m.d[1] && !tmp.is_zero(); ++i) tmp = tmp.derive(1);
    Expv e{{m.x[0], P.nv == 2 ? m.x[1] : 0, 0}, gg.nvars()};
    out += tmp.mono_mul(e, c);
  }
  return out;
}

Poly class_in_omega(const WeylOp& P) {
  std::vector<std::string> vars =
      P.nv == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
  return apply(adjoint(P), Poly::constant(vars, 1));
}

int ord_w(const WeylOp& P, const WeightVector& w) {
  int best = INT_MIN;
  for (const auto& [m, c] : P.t) best = std::max(best, w.wdeg(m));
  return best;
}

WeylOp in_w(const WeylOp& P, const WeightVector& w) {
  WeylOp r(P.nv);
  int top = ord_w(P, w);
  for (const auto& [m, c] : P.t)
    if (w.wdeg(m) == top) r.add(m, c);
  return r;
}

WeylOp homogenize_h(const WeylOp& P) {
  int deg = P.degree();
  WeylOp r(P.nv);
  for (const auto& [m, c] : P.t) {
    if (m.h != 0) fail(Err::Internal, "already homogenized");
    WMono hm = m;
    hm.h = deg - m.deg();
    r.add(hm, c);
  }
  return r;
}

WeylOp dehomogenize_h(const WeylOp& P) {
  WeylOp r(P.nv);
  for (const auto& [m, c] : P.t) {
    WMono pm = m;
    pm.h = 0;
    r.add(pm, c);
  }
  return r;
}

std::vector<DLeftTerm> dleft_form(const WeylOp& P) {
  // x^a ∂^b = Σ_k (−1)^{|k|} C(a,k) C(b,k) k! ∂^{b−k} x^{a−k}, per variable
  std::map<WMono, Rat, WMonoCanonLess> acc;
  for (const auto& [m, c] : P.t) {
    if (m.h != 0) fail(Err::Internal, "dleft of homogenized operator");
    for (int k1 = 0; k1 <= std::min(m.x[0], m.d[0]); ++k1)
      for (int k2 = 0; k2 <= std::min(m.x[1], m.d[1]); ++k2) {
        int sign = (k1 + k2) % 2 ? -1 : 1;
        Rat coef = c * Rat(sign) * binom_rat(m.x[0], k1) * binom_rat(m.d[0], k1) *
                   fact_rat(k1) * binom_rat(m.x[1], k2) * binom_rat(m.d[1], k2) *
                   fact_rat(k2);
        WMono key; // x-part stores α, d-part stores β of ∂^β x^α
        key.x = {m.x[0] - k1, m.x[1] - k2};
        key.d = {m.d[0] - k1, m.d[1] - k2};
        auto [it, fresh] = acc.emplace(key, coef);
        if (!fresh) {
          it->second += coef;
          if (it->second == 0) acc.erase(it);
        }
      }
  }
  std::vector<DLeftTerm> out;
  for (const auto& [m, c] : acc)
    out.push_back(DLeftTerm{{m.d[0], m.d[1]}, {m.x[0], m.x[1]}, c});
  return out;
}

// --- weight-order Gröbner engine -------------------------------------------------

namespace {

struct WOrder {
  bool deg_first = false;
  bool use_w = false;
  WeightVector w;

  bool less(const WMono& a, const WMono& b) const {
    if (deg_first && a.deg() != b.deg()) return a.deg() < b.deg();
    if (use_w) {
      int wa = w.wdeg(a), wb = w.wdeg(b);
      if (wa != wb) return wa < wb;
    }
    return wmono_grevlex_less(a, b);
  }
};

WMono lead_mono(const WeylOp& p, const WOrder& o, Rat* lc) {
  auto it = p.t.begin();
  WMono best = it->first;
  Rat bc = it->second;
  for (++it; it != p.t.end(); ++it)
    if (o.less(best, it->first)) {
      best = it->first;
      bc = it->second;
    }
  if (lc) *lc = bc;
  return best;
}

// integer-primitive scaling with positive leading coefficient
WeylOp normalize_content_w(const WeylOp& p, const WOrder& o) {
  if (p.is_zero()) return p;
  Int den = 1, num = 0;
  for (const auto& [m, c] : p.t) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  }
  for (const auto& [m, c] : p.t) {
    Int v = c.get_num() * (den / c.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
  }
  Rat scale = Rat(den) / Rat(num);
  Rat lc;
  lead_mono(p, o, &lc);
  if (lc * scale < 0) scale = -scale;
  return p.scaled(scale);
}

WeylOp wdivide(WeylOp p, const std::vector<WeylOp>& G,
               const std::vector<WMono>& lm, const std::vector<Rat>& lc,
               const WOrder& o, bool homog) {
  WeylOp r(p.nv);
  while (!p.is_zero()) {
    Rat pc;
    WMono pm = lead_mono(p, o, &pc);
    bool hit = false;
    for (std::size_t k = 0; k < G.size(); ++k) {
      if (!lm[k].divides(pm)) continue;
      WeylOp q = WeylOp::monomial(p.nv, pm.minus(lm[k]), pc / lc[k]);
      p = p - mul_impl(q, G[k], homog);
      hit = true;
      break;
    }
    if (!hit) {
      p.add(pm, -pc);
      r.add(pm, pc);
    }
  }
  return r;
}

struct WEngine {
  WOrder o;
  bool homog = false;
  std::vector<WeylOp> G;
  std::vector<WMono> lm;
  std::vector<Rat> lc;
  std::set<std::array<int, 3>> queue; // (lcm degree, i, j)
  std::set<std::pair<int, int>> done;

  void push(const WeylOp& g) {
    WeylOp n = normalize_content_w(g, o);
    Rat c;
    WMono m = lead_mono(n, o, &c);
    int j = static_cast<int>(G.size());
    for (int i = 0; i < j; ++i)
      queue.insert({lm[i].lcm(m).deg(), i, j});
    G.push_back(n);
    lm.push_back(m);
    lc.push_back(c);
  }

  bool chain(int i, int j) const {
    WMono l = lm[i].lcm(lm[j]);
    for (int k = 0; k < static_cast<int>(G.size()); ++k) {
      if (k == i || k == j || !lm[k].divides(l)) continue;
      auto key = [](int a, int b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
      };
      if (done.count(key(i, k)) && done.count(key(k, j))) return true;
    }
    return false;
  }

  void run() {
    while (!queue.empty()) {
      auto [deg, i, j] = *queue.begin();
      queue.erase(queue.begin());
      if (chain(i, j)) continue;
      WMono l = lm[i].lcm(lm[j]);
      WeylOp s = mul_impl(WeylOp::monomial(G[i].nv, l.minus(lm[i]), Rat(1) / lc[i]),
                          G[i], homog) -
                 mul_impl(WeylOp::monomial(G[j].nv, l.minus(lm[j]), Rat(1) / lc[j]),
                          G[j], homog);
      WeylOp r = wdivide(std::move(s), G, lm, lc, o, homog);
      done.insert({i, j});
      if (!r.is_zero()) push(r);
    }
  }

  std::vector<WeylOp> reduced() {
    std::vector<bool> keep(G.size(), true);
    for (std::size_t i = 0; i < G.size(); ++i)
      for (std::size_t j = 0; j < G.size(); ++j) {
        if (i == j || !keep[j]) continue;
        if (!lm[j].divides(lm[i])) continue;
        if (lm[j] == lm[i] && j > i) continue;
        keep[i] = false;
        break;
      }
    std::vector<WeylOp> M;
    std::vector<WMono> Mlm;
    std::vector<Rat> Mlc;
    for (std::size_t i = 0; i < G.size(); ++i)
      if (keep[i]) {
        M.push_back(G[i]);
        Mlm.push_back(lm[i]);
        Mlc.push_back(lc[i]);
      }
    for (std::size_t i = 0; i < M.size(); ++i) {
      std::vector<WeylOp> others;
      std::vector<WMono> olm;
      std::vector<Rat> olc;
      for (std::size_t j = 0; j < M.size(); ++j)
        if (j != i) {
          others.push_back(M[j]);
          olm.push_back(Mlm[j]);
          olc.push_back(Mlc[j]);
        }
      M[i] = normalize_content_w(wdivide(M[i], others, olm, olc, o, homog), o);
    }
    std::sort(M.begin(), M.end(), [&](const WeylOp& a, const WeylOp& b) {
      return o.less(lead_mono(a, o, nullptr), lead_mono(b, o, nullptr));
    });
    return M;
  }
};

std::vector<WeylOp> wbuchberger(const std::vector<WeylOp>& gens, const WOrder& o,
                                bool homog) {
  WEngine e;
  e.o = o;
  e.homog = homog;
  for (const auto& g : gens)
    if (!g.is_zero()) e.push(g);
  e.run();
  return e.reduced();
}

} // namespace

WeylGB weyl_gb(const std::vector<WeylOp>& gens, const WeightVector& w) {
  WOrder o;
  o.deg_first = true;
  o.use_w = true;
  o.w = w;
  std::vector<WeylOp> hgens;
  for (const auto& g : gens)
    if (!g.is_zero()) hgens.push_back(homogenize_h(g));
  WeylGB out;
  for (const auto& g : wbuchberger(hgens, o, true))
    out.gens.push_back(dehomogenize_h(g));
  return out;
}

std::vector<WeylOp> inw_gb(const std::vector<WeylOp>& gens,
                           const WeightVector& w) {
  WeylGB g1 = weyl_gb(gens, w);
  std::vector<WeylOp> inits;
  for (const auto& g : g1.gens) inits.push_back(in_w(g, w));
  WOrder o;
  o.use_w = true;
  o.w = w;
  return wbuchberger(inits, o, false);
}

WeylOp inw_nf(const WeylOp& p, const std::vector<WeylOp>& gb,
              const WeightVector& w) {
  WOrder o;
  o.use_w = true;
  o.w = w;
  std::vector<WMono> lm(gb.size());
  std::vector<Rat> lc(gb.size());
  for (std::size_t k = 0; k < gb.size(); ++k) lm[k] = lead_mono(gb[k], o, &lc[k]);
  return wdivide(p, gb, lm, lc, o, false);
}

// --- integral roots ---------------------------------------------------------------

namespace {

void factor_into(Int n, std::map<Int, int>& f);

Int pollard_rho(const Int& n) {
  for (long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    auto step = [&](const Int& v) { return Int((v * v + c) % n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Int diff = x > y ? Int(x - y) : Int(y - x);
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(Int n, std::map<Int, int>& f) {
  for (Int p = 2; p * p <= n && p < 1000000; p = (p == 2 ? Int(3) : Int(p + 2)))
    while (n % p == 0) {
      f[p] += 1;
      n /= p;
    }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    f[n] += 1;
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, f);
  factor_into(Int(n / d), f);
}

std::vector<long> integer_roots(const Poly& b) {
  std::vector<long> roots;
  if (b.degree() <= 0) return roots;
  // multiplicity of the root 0: minimal exponent
  int vmin = INT_MAX;
  for (const auto& [m, c] : b.terms()) vmin = std::min(vmin, m.e[0]);
  Poly core(b.vars());
  for (const auto& [m, c] : b.terms()) {
    Expv e = m;
    e.e[0] -= vmin;
    core.add_term(e, c);
  }
  if (vmin > 0) roots.push_back(0);
  core = normalize_primitive(core);
  if (core.degree() > 0) {
    Int a0 = core.constant_term().get_num();
    if (a0 < 0) a0 = -a0;
    std::map<Int, int> f;
    factor_into(a0, f);
    std::vector<Int> divisors{1};
    for (const auto& [p, e] : f) {
      std::vector<Int> next;
      Int pk = 1;
      for (int k = 0; k <= e; ++k) {
        for (const auto& d : divisors) next.push_back(d * pk);
        pk *= p;
      }
      divisors = std::move(next);
    }
    for (const auto& d : divisors)
      for (int sgn : {1, -1}) {
        Int cand = d * sgn;
        if (core.eval1(Rat(cand)) == 0) {
          if (!cand.fits_slong_p())
            fail(Err::Internal, "integral root out of range");
          roots.push_back(cand.get_si());
        }
      }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

} // namespace

BFunction bfunction_integration(const std::vector<WeylOp>& gens,
                                const WeightVector& w, int cap) {
  if (gens.empty()) fail(Err::Internal, "bfunction of empty generator list");
  int nv = gens.front().nv;
  std::vector<WeylOp> g2 = inw_gb(gens, w);

  WeylOp s_op(nv); // s = −Σ_i ∂_i x_i = −Σ_i (x_i ∂_i + 1)
  for (int i = 0; i < nv; ++i) {
    WMono th;
    th.x[i] = 1;
    th.d[i] = 1;
    s_op.add(th, -1);
    s_op.add(WMono{}, -1);
  }

  std::vector<std::string> svar{"s"};
  std::vector<std::pair<WeylOp, Poly>> rows; // echelon by canonical lead
  WeylOp power = WeylOp::constant(nv, 1);    // normal form of s^k, iterated
  for (int k = 0; k <= cap; ++k) {
    WeylOp nf = inw_nf(power, g2, w);
    power = nf;
    Poly p(svar);
    p.add_term(Expv{{k, 0, 0}, 1}, 1);
    WeylOp v = nf;
    bool progressed = true;
    while (!v.is_zero() && progressed) {
      progressed = false;
      WMono lead = v.t.rbegin()->first;
      for (const auto& [rv, rp] : rows) {
        WMono rlead = rv.t.rbegin()->first;
        if (!(rlead == lead)) continue;
        Rat ratio = v.t.rbegin()->second / rv.t.rbegin()->second;
        v = v - rv.scaled(ratio);
        p -= rp.scaled(ratio);
        progressed = true;
        break;
      }
    }
    if (v.is_zero()) {
      BFunction bf;
      bf.b = p;
      bf.integral_roots = integer_roots(p);
      for (long r : bf.integral_roots)
        if (r >= 0 && (!bf.k0 || r > *bf.k0)) bf.k0 = r;
      for (long r : bf.integral_roots)
        if (bf.b.eval1(Rat(r)) != 0)
          fail(Err::Internal, "root verification failed");
      return bf;
    }
    rows.emplace_back(v, p);
    power = weyl_mul(s_op, power);
  }
  fail(Err::NonHolonomicOrZeroB,
       "no b-function found up to degree " + std::to_string(cap));
}

} // namespace logcoh
