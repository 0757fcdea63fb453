#include "logcoh/groebner.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace logcoh {

// --- ModVec ------------------------------------------------------------------

bool ModVec::is_zero() const {
  for (const auto& p : c)
    if (!p.is_zero()) return false;
  return true;
}

static ModVec mv_combine(const ModVec& a, const ModVec& b, bool negate_b) {
  if (a.c.size() != b.c.size()) fail(Err::Internal, "module rank mismatch");
  ModVec r;
  r.shifts = a.shifts.empty() ? b.shifts : a.shifts;
  r.c.reserve(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i)
    r.c.push_back(negate_b ? a.c[i] - b.c[i] : a.c[i] + b.c[i]);
  return r;
}

ModVec ModVec::operator+(const ModVec& o) const { return mv_combine(*this, o, false); }
ModVec ModVec::operator-(const ModVec& o) const { return mv_combine(*this, o, true); }

ModVec ModVec::operator-() const {
  ModVec r = *this;
  for (auto& p : r.c) p = -p;
  return r;
}

ModVec ModVec::scaled(const Rat& q) const {
  ModVec r = *this;
  for (auto& p : r.c) p = p.scaled(q);
  return r;
}

ModVec ModVec::mono_mul(const Expv& m, const Rat& q) const {
  ModVec r = *this;
  for (auto& p : r.c) p = p.mono_mul(m, q);
  return r;
}

bool ModVec::operator==(const ModVec& o) const {
  if (c.size() != o.c.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!(c[i] == o.c[i])) return false;
  return true;
}

int ModVec::lead_pos() const {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) return static_cast<int>(i);
  return -1;
}

int ModVec::graded_degree() const {
  int deg = -1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    if (!c[i].is_homogeneous())
      fail(Err::NotHomogeneous, "module element has an inhomogeneous entry");
    int s = shifts.empty() ? 0 : shifts[i];
    int d = c[i].degree() + s;
    if (deg == -1)
      deg = d;
    else if (d != deg)
      fail(Err::NotHomogeneous, "module element mixes graded degrees");
  }
  if (deg == -1) fail(Err::NotHomogeneous, "zero element has no degree");
  return deg;
}

// --- leading data under POT (position 0 dominant) x grevlex -------------------

namespace {

struct LeadInfo {
  int pos = -1;
  Expv m;
  Rat c;
};

LeadInfo lead_of(const ModVec& v) {
  LeadInfo l;
  l.pos = v.lead_pos();
  if (l.pos >= 0) {
    l.m = v.c[l.pos].leading_mono();
    l.c = v.c[l.pos].leading_coeff();
  }
  return l;
}

// (pos_a, ma) > (pos_b, mb) in the module order
bool lead_greater(int pos_a, const Expv& ma, int pos_b, const Expv& mb) {
  if (pos_a != pos_b) return pos_a < pos_b;
  return grevlex_less(mb, ma);
}

// remove the leading term of v and return it through (pos, m, c)
void pop_lead(ModVec& v, const LeadInfo& l) {
  v.c[l.pos].add_term(l.m, -l.c);
}

// union of all variable lists, in order of first appearance
std::vector<std::string> var_union(const std::vector<ModVec>& gens) {
  std::vector<std::string> u;
  for (const auto& g : gens)
    for (const auto& p : g.c)
      for (const auto& name : p.vars())
        if (std::find(u.begin(), u.end(), name) == u.end()) u.push_back(name);
  return u;
}

ModVec mv_on_vars(const ModVec& v, const std::vector<std::string>& vars) {
  ModVec r = v;
  for (auto& p : r.c) p = p.on_vars(vars);
  return r;
}

// Full division: returns the normal form; when quot != nullptr also the
// quotients, so that input = sum quot[k] * G[k] + remainder.
ModVec mv_divide(ModVec p, const std::vector<ModVec>& G,
                 std::vector<Poly>* quot) {
  ModVec r = p;
  for (auto& q : r.c) q = Poly(q.vars()); // zero of the right shape
  if (quot) quot->assign(G.size(), Poly());
  while (!p.is_zero()) {
    LeadInfo lp = lead_of(p);
    bool reduced = false;
    for (std::size_t k = 0; k < G.size(); ++k) {
      LeadInfo lg = lead_of(G[k]);
      if (lg.pos != lp.pos || !lg.m.divides(lp.m)) continue;
      Expv m = lp.m.minus(lg.m);
      m.n = lp.m.n;
      Rat q = lp.c / lg.c;
      p = p - G[k].mono_mul(m, q);
      if (quot) (*quot)[k].add_term(m, q);
      reduced = true;
      break;
    }
    if (!reduced) {
      pop_lead(p, lp);
      r.c[lp.pos].add_term(lp.m, lp.c);
    }
  }
  return r;
}

struct Pair {
  int deg; // total degree of the lcm (normal selection)
  int i, j;
  bool operator<(const Pair& o) const {
    if (deg != o.deg) return deg < o.deg;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

// Buchberger engine over module elements. With trace enabled, every basis
// element carries its expression over the input generators and every S-pair
// that reduces to zero contributes that expression as a syzygy (no pair
// criteria are applied in that mode, so the collected set generates).
struct Engine {
  std::vector<ModVec> G;
  std::vector<std::vector<Poly>> expr; // trace rows over the inputs
  std::vector<std::vector<Poly>> syz;  // zero-reduction traces
  bool trace = false;
  int rank = 1;

  std::set<Pair> queue;
  std::set<std::pair<int, int>> done;

  void add_pairs(int j) {
    LeadInfo lj = lead_of(G[j]);
    for (int i = 0; i < j; ++i) {
      LeadInfo li = lead_of(G[i]);
      if (li.pos != lj.pos) continue;
      Pair p{li.m.lcm(lj.m).total(), i, j};
      queue.insert(p);
    }
  }

  void push(ModVec g, std::vector<Poly> e) {
    G.push_back(std::move(g));
    if (trace) expr.push_back(std::move(e));
    add_pairs(static_cast<int>(G.size()) - 1);
  }

  bool product_criterion(const LeadInfo& a, const LeadInfo& b) const {
    if (rank != 1) return false; // not valid for modules
    Expv l = a.m.lcm(b.m);
    return l == a.m.plus(b.m);
  }

  bool chain_criterion(const Pair& p) const {
    LeadInfo li = lead_of(G[p.i]), lj = lead_of(G[p.j]);
    Expv l = li.m.lcm(lj.m);
    for (int k = 0; k < static_cast<int>(G.size()); ++k) {
      if (k == p.i || k == p.j) continue;
      LeadInfo lk = lead_of(G[k]);
      if (lk.pos != li.pos || !lk.m.divides(l)) continue;
      auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (done.count(key(p.i, k)) && done.count(key(k, p.j))) return true;
    }
    return false;
  }

  void run() {
    while (!queue.empty()) {
      Pair p = *queue.begin();
      queue.erase(queue.begin());
      LeadInfo li = lead_of(G[p.i]), lj = lead_of(G[p.j]);
      if (!trace) {
        if (product_criterion(li, lj)) {
          done.insert({p.i, p.j});
          continue;
        }
        if (chain_criterion(p)) continue;
      }
      Expv l = li.m.lcm(lj.m);
      l.n = li.m.n;
      Expv mi = l.minus(li.m), mj = l.minus(lj.m);
      mi.n = mj.n = l.n;
      ModVec s = G[p.i].mono_mul(mi, Rat(1) / li.c) -
                 G[p.j].mono_mul(mj, Rat(1) / lj.c);
      std::vector<Poly> se;
      if (trace) {
        se.resize(expr[p.i].size());
        for (std::size_t t = 0; t < se.size(); ++t)
          se[t] = expr[p.i][t].mono_mul(mi, Rat(1) / li.c) -
                  expr[p.j][t].mono_mul(mj, Rat(1) / lj.c);
      }
      std::vector<Poly> quot;
      ModVec r = mv_divide(std::move(s), G, trace ? &quot : nullptr);
      if (trace)
        for (std::size_t k = 0; k < G.size(); ++k)
          if (!quot[k].is_zero())
            for (std::size_t t = 0; t < se.size(); ++t)
              se[t] -= quot[k] * expr[k][t];
      done.insert({p.i, p.j});
      if (r.is_zero()) {
        if (trace) syz.push_back(std::move(se));
      } else {
        push(std::move(r), std::move(se));
      }
    }
  }
};

// minimalize + tail-reduce + monic + sort (plain, traceless reduced GB)
std::vector<ModVec> reduce_basis(std::vector<ModVec> G) {
  // drop elements whose leading term is divisible by another's
  std::vector<bool> keep(G.size(), true);
  for (std::size_t i = 0; i < G.size(); ++i) {
    LeadInfo li = lead_of(G[i]);
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (i == j || !keep[j]) continue;
      LeadInfo lj = lead_of(G[j]);
      if (lj.pos != li.pos || !lj.m.divides(li.m)) continue;
      if (lj.m == li.m && j > i) continue; // of equal leads keep the first
      keep[i] = false;
      break;
    }
  }
  std::vector<ModVec> M;
  for (std::size_t i = 0; i < G.size(); ++i)
    if (keep[i]) M.push_back(G[i]);
  // tail reduction (leading terms are now pairwise non-divisible)
  for (std::size_t i = 0; i < M.size(); ++i) {
    std::vector<ModVec> others;
    for (std::size_t j = 0; j < M.size(); ++j)
      if (j != i) others.push_back(M[j]);
    M[i] = mv_divide(M[i], others, nullptr);
    M[i] = M[i].scaled(Rat(1) / lead_of(M[i]).c);
  }
  std::sort(M.begin(), M.end(), [](const ModVec& a, const ModVec& b) {
    LeadInfo la = lead_of(a), lb = lead_of(b);
    return lead_greater(lb.pos, lb.m, la.pos, la.m); // ascending
  });
  return M;
}

std::vector<ModVec> lift_rank1(const std::vector<Poly>& gens,
                               const std::vector<std::string>& vars) {
  std::vector<ModVec> v;
  for (const auto& g : gens) {
    ModVec m;
    m.c.push_back(g.is_zero() ? Poly(vars) : g.on_vars(vars));
    v.push_back(std::move(m));
  }
  return v;
}

std::vector<std::string> var_union_polys(const std::vector<Poly>& gens) {
  std::vector<std::string> u;
  for (const auto& p : gens)
    for (const auto& name : p.vars())
      if (std::find(u.begin(), u.end(), name) == u.end()) u.push_back(name);
  return u;
}

} // namespace

// --- public interface ---------------------------------------------------------

GroebnerBasis buchberger(const std::vector<Poly>& gens, Order order) {
  std::vector<std::string> vars = var_union_polys(gens);
  Engine e;
  e.rank = 1;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    ModVec m;
    m.c.push_back(g.on_vars(vars));
    e.push(std::move(m), {});
  }
  e.run();
  GroebnerBasis gb;
  gb.order = order;
  for (auto& m : reduce_basis(std::move(e.G))) gb.gens.push_back(m.c[0]);
  return gb;
}

Poly normal_form(const Poly& p, const GroebnerBasis& gb) {
  std::vector<Poly> all = gb.gens;
  all.push_back(p);
  std::vector<std::string> vars = var_union_polys(all);
  std::vector<ModVec> G = lift_rank1(gb.gens, vars);
  ModVec v;
  v.c.push_back(p.on_vars(vars));
  return mv_divide(std::move(v), G, nullptr).c[0];
}

ModuleGB module_gb(const std::vector<ModVec>& gens, Order order) {
  std::vector<std::string> vars = var_union(gens);
  Engine e;
  e.rank = gens.empty() ? 1 : static_cast<int>(gens.front().c.size());
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (static_cast<int>(g.c.size()) != e.rank)
      fail(Err::Internal, "module generators of mixed rank");
    e.push(mv_on_vars(g, vars), {});
  }
  e.run();
  ModuleGB gb;
  gb.order = order;
  gb.gens = reduce_basis(std::move(e.G));
  return gb;
}

ModVec normal_form(const ModVec& v, const ModuleGB& gb) {
  std::vector<ModVec> all = gb.gens;
  all.push_back(v);
  std::vector<std::string> vars = var_union(all);
  return mv_divide(mv_on_vars(v, vars), gb.gens, nullptr);
}

std::vector<ModVec> syzygy_module(const std::vector<Poly>& gens) {
  const int s = static_cast<int>(gens.size());
  std::vector<std::string> vars = var_union_polys(gens);
  auto zero_row = [&]() {
    std::vector<Poly> row(s);
    for (auto& p : row) p = Poly(vars);
    return row;
  };

  Engine e;
  e.rank = 1;
  e.trace = true;
  std::vector<ModVec> out;
  for (int j = 0; j < s; ++j) {
    if (gens[j].is_zero()) {
      // a zero generator contributes the unit syzygy e_j
      ModVec row;
      row.c = zero_row();
      row.c[j] = Poly::constant(vars, 1);
      out.push_back(std::move(row));
      continue;
    }
    ModVec m;
    m.c.push_back(gens[j].on_vars(vars));
    auto ex = zero_row();
    ex[j] = Poly::constant(vars, 1);
    e.push(std::move(m), std::move(ex));
  }
  e.run();

  // Schreyer part: traces of the zero reductions
  for (auto& row : e.syz) {
    ModVec m;
    m.c = row;
    out.push_back(std::move(m));
  }
  // conversion part: rows of I - B*A, where gens = B*G and G = A*gens
  for (int j = 0; j < s; ++j) {
    if (gens[j].is_zero()) continue;
    ModVec v;
    v.c.push_back(gens[j].on_vars(vars));
    std::vector<Poly> quot;
    ModVec r = mv_divide(std::move(v), e.G, &quot);
    if (!r.is_zero())
      fail(Err::Internal, "generator did not reduce to zero against its own basis");
    ModVec row;
    row.c = zero_row();
    row.c[j] = Poly::constant(vars, 1);
    for (std::size_t k = 0; k < e.G.size(); ++k)
      if (!quot[k].is_zero())
        for (int t = 0; t < s; ++t) row.c[t] -= quot[k] * e.expr[k][t];
    out.push_back(std::move(row));
  }

  // clean: drop zeros, scale monic by leading position, drop duplicates
  std::vector<ModVec> cleaned;
  for (auto& v : out) {
    if (v.is_zero()) continue;
    v = v.scaled(Rat(1) / lead_of(v).c);
    if (std::find(cleaned.begin(), cleaned.end(), v) == cleaned.end())
      cleaned.push_back(std::move(v));
  }
  std::sort(cleaned.begin(), cleaned.end(), [](const ModVec& a, const ModVec& b) {
    LeadInfo la = lead_of(a), lb = lead_of(b);
    return lead_greater(lb.pos, lb.m, la.pos, la.m);
  });
  return cleaned;
}

std::vector<ModVec> minimalize_graded(const std::vector<ModVec>& gens) {
  std::vector<ModVec> in;
  for (const auto& g : gens)
    if (!g.is_zero()) in.push_back(g);
  if (in.empty()) return {};

  std::vector<int> deg(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) deg[i] = in[i].graded_degree();

  std::vector<std::size_t> order(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (deg[a] != deg[b]) return deg[a] < deg[b];
    LeadInfo la = lead_of(in[a]), lb = lead_of(in[b]);
    return lead_greater(lb.pos, lb.m, la.pos, la.m);
  });

  std::vector<ModVec> kept;
  for (std::size_t idx : order) {
    if (!kept.empty()) {
      ModuleGB gb = module_gb(kept);
      if (normal_form(in[idx], gb).is_zero()) continue;
    }
    kept.push_back(in[idx]);
  }
  return kept;
}

int krull_dim(const std::vector<Poly>& gens) {
  std::vector<std::string> vars = var_union_polys(gens);
  int n = static_cast<int>(vars.size());
  GroebnerBasis gb = buchberger(gens);
  std::vector<Expv> leads;
  for (const auto& g : gens)
    if (!g.is_zero() && g.is_constant()) return -1;
  for (const auto& g : gb.gens) {
    if (g.is_constant() && !g.is_zero()) return -1;
    if (!g.is_zero()) leads.push_back(g.leading_mono());
  }
  int best = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    bool independent = true;
    for (const auto& m : leads) {
      bool inside = true;
      for (int i = 0; i < n; ++i)
        if (m.e[i] > 0 && !(mask & (1 << i))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

} // namespace logcoh
