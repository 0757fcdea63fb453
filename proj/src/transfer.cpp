#include "logcoh/transfer.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "logcoh/errors.hpp"
#include "logcoh/linalg.hpp"

namespace logcoh {

namespace {

const std::vector<std::string>& xy() {
  static const std::vector<std::string> v{"x", "y"};
  return v;
}

WeylOp op_of(const Poly& p) { return WeylOp::from_poly(p.on_vars(xy())); }

Poly to_poly(const WeylOp& op) {
  Poly p(xy());
  for (const auto& [m, c] : op.t) {
    if (m.d[0] != 0 || m.d[1] != 0 || m.h != 0)
      fail(Err::Internal, "operator is not a polynomial");
    Expv e;
    e.n = 2;
    e.e = {m.x[0], m.x[1], 0};
    p.add_term(e, c);
  }
  return p;
}

int xy_degree(const WeylOp& op) {
  int d = 0;
  for (const auto& [m, c] : op.t) d = std::max(d, m.x[0] + m.x[1]);
  return d;
}

// ∂x^{b0}∂y^{b1}·x^{a0}y^{a1} as a normally ordered operator
WeylOp dleft_monomial(const std::array<int, 2>& beta,
                      const std::array<int, 2>& alpha, const Rat& c) {
  WMono dm, xm;
  dm.d = beta;
  xm.x = alpha;
  return weyl_mul(WeylOp::monomial(2, dm, c), WeylOp::monomial(2, xm, Rat(1)));
}

// --- undetermined coefficients ---------------------------------------------
//
// Unknowns are operators with monomial support in a box (x,y-degree and
// ∂-degree bounds); each equation is Σ left·u_block·right = rhs, linear in
// the unknowns. Coefficient comparison in the normally ordered form turns
// every equation into exact linear conditions over Q.

std::vector<WMono> mono_box(long xydeg, int ddeg) {
  std::vector<WMono> out;
  for (long s = 0; s <= xydeg; ++s)
    for (long xa = s; xa >= 0; --xa)
      for (int t = 0; t <= ddeg; ++t)
        for (int da = t; da >= 0; --da) {
          WMono m;
          m.x = {static_cast<int>(xa), static_cast<int>(s - xa)};
          m.d = {da, t - da};
          out.push_back(m);
        }
  return out;
}

struct OpSystem {
  struct Term {
    int eq;
    int block;
    WeylOp left;
    WeylOp right;
  };

  int neq = 0;
  std::vector<std::vector<WMono>> blocks;
  std::vector<Term> terms;
  std::vector<WeylOp> rhs;

  explicit OpSystem(int equations)
      : neq(equations), rhs(equations, WeylOp(2)) {}

  int add_block(long xydeg, int ddeg) {
    blocks.push_back(mono_box(xydeg, ddeg));
    return static_cast<int>(blocks.size()) - 1;
  }
  void add_term(int eq, int block, WeylOp left, WeylOp right) {
    terms.push_back({eq, block, std::move(left), std::move(right)});
  }

  int offset(int block) const {
    int o = 0;
    for (int b = 0; b < block; ++b) o += static_cast<int>(blocks[b].size());
    return o;
  }
  int ncols() const { return offset(static_cast<int>(blocks.size())); }

  WeylOp block_op(int block, const QVec& coeffs) const {
    WeylOp u(2);
    for (std::size_t j = 0; j < blocks[block].size(); ++j)
      if (coeffs[j] != Rat(0)) u.add(blocks[block][j], coeffs[j]);
    return u;
  }

  // Σ left·u·right per equation for the given block values
  std::vector<WeylOp> evaluate(const std::vector<WeylOp>& ops) const {
    std::vector<WeylOp> acc(neq, WeylOp(2));
    for (const Term& t : terms)
      acc[t.eq] =
          acc[t.eq] + weyl_mul(weyl_mul(t.left, ops[t.block]), t.right);
    return acc;
  }

  // One solution split per block, or nullopt. When kernel != nullptr it
  // receives a basis of the homogeneous solution space (same layout).
  std::optional<std::vector<QVec>> solve_blocks(
      std::vector<std::vector<QVec>>* kernel) const {
    const int nc = ncols();
    std::vector<std::vector<std::pair<int, WeylOp>>> colops(nc);
    for (const Term& t : terms) {
      const int off = offset(t.block);
      for (std::size_t j = 0; j < blocks[t.block].size(); ++j) {
        WeylOp op = weyl_mul(
            weyl_mul(t.left, WeylOp::monomial(2, blocks[t.block][j], Rat(1))),
            t.right);
        if (!op.is_zero())
          colops[off + static_cast<int>(j)].push_back({t.eq, op});
      }
    }

    std::vector<std::map<WMono, int, WMonoCanonLess>> rowmap(neq);
    int nrows = 0;
    auto row_of = [&](int eq, const WMono& m) {
      auto it = rowmap[eq].find(m);
      if (it == rowmap[eq].end())
        it = rowmap[eq].emplace(m, nrows++).first;
      return it->second;
    };
    for (int c = 0; c < nc; ++c)
      for (const auto& [eq, op] : colops[c])
        for (const auto& [m, coef] : op.t) row_of(eq, m);
    for (int eq = 0; eq < neq; ++eq)
      for (const auto& [m, coef] : rhs[eq].t) row_of(eq, m);

    QMat M(nrows, nc);
    for (int c = 0; c < nc; ++c)
      for (const auto& [eq, op] : colops[c])
        for (const auto& [m, coef] : op.t) M.at(row_of(eq, m), c) += coef;
    QVec b(nrows, Rat(0));
    for (int eq = 0; eq < neq; ++eq)
      for (const auto& [m, coef] : rhs[eq].t) b[row_of(eq, m)] = coef;

    auto sol = solve(M, b);
    if (!sol) return std::nullopt;
    if (kernel) {
      kernel->clear();
      for (const QVec& k : kernel_basis(M)) kernel->push_back(split(k));
    }
    return split(*sol);
  }

 private:
  std::vector<QVec> split(const QVec& full) const {
    std::vector<QVec> per;
    int o = 0;
    for (const auto& bl : blocks) {
      per.emplace_back(full.begin() + o, full.begin() + o + bl.size());
      o += static_cast<int>(bl.size());
    }
    return per;
  }
};

// Canonicalize the coefficients of the chosen blocks (all ∂-free) modulo the
// projection of the homogeneous solution space: coordinates are ordered by
// descending total degree (block index, then descending x-exponent as ties),
// so elimination removes high-degree freedom and the representative is the
// reduced coset normal form.
std::vector<QVec> canonical_block_coeffs(const OpSystem& sys,
                                         const std::vector<int>& report,
                                         const std::vector<QVec>& sol,
                                         const std::vector<std::vector<QVec>>& kernel) {
  struct Coord {
    int block, idx, deg, xa;
  };
  std::vector<Coord> listing;
  for (int b : report)
    for (std::size_t j = 0; j < sys.blocks[b].size(); ++j) {
      const WMono& m = sys.blocks[b][j];
      if (m.d[0] != 0 || m.d[1] != 0)
        fail(Err::Internal, "canonicalized unknown is not a polynomial");
      listing.push_back({b, static_cast<int>(j), m.x[0] + m.x[1], m.x[0]});
    }
  std::sort(listing.begin(), listing.end(), [](const Coord& a, const Coord& b) {
    return std::tie(b.deg, a.block, b.xa, a.idx) <
           std::tie(a.deg, b.block, a.xa, b.idx);
  });

  auto project = [&](const std::vector<QVec>& per) {
    QVec v(listing.size(), Rat(0));
    for (std::size_t i = 0; i < listing.size(); ++i)
      v[i] = per[listing[i].block][listing[i].idx];
    return v;
  };

  RowSpace rs;
  for (const auto& k : kernel) rs.insert(project(k));
  QVec red = rs.reduce(project(sol));

  std::vector<QVec> out;
  for (const auto& bl : sys.blocks) out.emplace_back(bl.size(), Rat(0));
  for (std::size_t i = 0; i < listing.size(); ++i)
    out[listing[i].block][listing[i].idx] = red[i];
  return out;
}

// Solve the system, canonicalize the report blocks, then re-solve for the
// remaining unknowns with the report blocks fixed and verify the identities
// by substitution. Returns the report blocks as operators.
std::optional<std::vector<WeylOp>> solve_canonical(
    OpSystem& sys, const std::vector<int>& report) {
  std::vector<std::vector<QVec>> kernel;
  auto sol = sys.solve_blocks(&kernel);
  if (!sol) return std::nullopt;

  std::vector<QVec> fixed = canonical_block_coeffs(sys, report, *sol, kernel);
  std::vector<WeylOp> fixed_ops(sys.blocks.size(), WeylOp(2));
  for (int b : report) fixed_ops[b] = sys.block_op(b, fixed[b]);

  // move the fixed blocks to the right-hand side and solve for the rest
  OpSystem rest(sys.neq);
  std::vector<int> remap(sys.blocks.size(), -1);
  rest.rhs = sys.rhs;
  for (const OpSystem::Term& t : sys.terms) {
    if (std::find(report.begin(), report.end(), t.block) != report.end()) {
      rest.rhs[t.eq] = rest.rhs[t.eq] -
                       weyl_mul(weyl_mul(t.left, fixed_ops[t.block]), t.right);
      continue;
    }
    if (remap[t.block] < 0) {
      rest.blocks.push_back(sys.blocks[t.block]);
      remap[t.block] = static_cast<int>(rest.blocks.size()) - 1;
    }
    rest.add_term(t.eq, remap[t.block], t.left, t.right);
  }
  auto rest_sol = rest.solve_blocks(nullptr);
  if (!rest_sol)
    fail(Err::Internal, "canonical representative lost solvability");

  std::vector<WeylOp> all(sys.blocks.size(), WeylOp(2));
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    if (std::find(report.begin(), report.end(), static_cast<int>(b)) !=
        report.end())
      all[b] = fixed_ops[b];
    else if (remap[b] >= 0)
      all[b] = rest.block_op(remap[b], (*rest_sol)[remap[b]]);
  }
  std::vector<WeylOp> lhs = sys.evaluate(all);
  for (int eq = 0; eq < sys.neq; ++eq)
    if (lhs[eq] != sys.rhs[eq])
      fail(Err::Internal, "solver identity verification failed");

  std::vector<WeylOp> out;
  for (int b : report) out.push_back(all[b]);
  return out;
}

long schedule_cap(const TransferOptions& opts, const Poly& f) {
  return opts.degree_cap >= 0 ? opts.degree_cap : 3 * f.degree() + 10;
}

} // namespace

std::pair<WeylOp, WeylOp> koszul_split(const WeylOp& r) {
  WeylOp a(2), b(2);
  Poly cls(xy());
  for (const DLeftTerm& t : dleft_form(r)) {
    if (t.beta[0] >= 1) {
      b = b + dleft_monomial({t.beta[0] - 1, t.beta[1]}, t.alpha, t.c);
    } else if (t.beta[1] >= 1) {
      a = a - dleft_monomial({0, t.beta[1] - 1}, t.alpha, t.c);
    } else {
      Expv e;
      e.n = 2;
      e.e = {t.alpha[0], t.alpha[1], 0};
      cls.add_term(e, t.c);
    }
  }
  if (!cls.is_zero())
    fail(Err::NotInImage,
         "class in D/(dx*D + dy*D) is nonzero: " + cls.str());
  if (weyl_mul(WeylOp::d(2, 0), b) - weyl_mul(WeylOp::d(2, 1), a) != r)
    fail(Err::Internal, "koszul_split output identity failed");
  return {a, b};
}

WeylOp koszul_integrate(const WeylOp& r1, const WeylOp& r2) {
  WeylOp e(2);
  for (const DLeftTerm& t : dleft_form(r1)) {
    if (t.beta[0] < 1)
      fail(Err::NotIntegrable, "dx-component is not in dx*D");
    e = e + dleft_monomial({t.beta[0] - 1, t.beta[1]}, t.alpha, t.c);
  }
  if (weyl_mul(WeylOp::d(2, 0), e) != r1)
    fail(Err::Internal, "koszul_integrate lost its defining identity");
  if (weyl_mul(WeylOp::d(2, 1), e) != r2)
    fail(Err::NotIntegrable, "dy cross-check failed");
  return e;
}

std::vector<DForm> transfer_classes(const CohomologyClasses& classes,
                                    const LogFrame& frame,
                                    const FilteredComplex& fc) {
  std::vector<DForm> out;
  try {
    for (const Poly& p : classes.h0) {
      // horizontal push of the degree-0 class, then two vertical preimages
      WeylOp pc = op_of(p);
      auto s1 = koszul_split(weyl_mul(pc, fc.a2[0]));
      auto s2 = koszul_split(weyl_mul(pc, fc.a2[1]));
      WeylOp w1 =
          weyl_mul(s1.first, frame.ell1) + weyl_mul(s2.first, frame.ell2);
      WeylOp w2 =
          weyl_mul(s1.second, frame.ell1) + weyl_mul(s2.second, frame.ell2);
      out.push_back(DForm{0, {koszul_integrate(w1, w2)}});
    }
    for (const auto& cd : classes.h1) {
      WeylOp r = weyl_mul(op_of(cd.first), frame.ell1) +
                 weyl_mul(op_of(cd.second), frame.ell2);
      auto ab = koszul_split(r);
      out.push_back(DForm{1, {ab.first, ab.second}});
    }
    for (const Poly& g : classes.h2) out.push_back(DForm{2, {op_of(g)}});
  } catch (const Error& err) {
    if (err.kind() == Err::NotInImage || err.kind() == Err::NotIntegrable)
      fail(Err::InternalTransferFailure,
           std::string("zig-zag step failed: ") + err.what());
    throw;
  }
  return out;
}

Poly tau2_preimage(const Poly& g) { return g.on_vars(xy()); }

std::pair<Poly, Poly> tau1_preimage(const DForm& form, const LogFrame& frame,
                                    const TransferOptions& opts) {
  if (form.degree != 1 || form.coefficients.size() != 2)
    fail(Err::FormatError, "tau1_preimage expects a degree-1 form");
  const WeylOp& m1 = form.coefficients[0];
  const WeylOp& m2 = form.coefficients[1];
  const Poly &A = frame.fw1.first, &B = frame.fw1.second;
  const Poly &C = frame.fw2.first, &D = frame.fw2.second;

  long start = std::max<long>(
      {frame.f.degree(), xy_degree(m1), xy_degree(m2), A.degree(), B.degree(),
       C.degree(), D.degree(), 0});
  const long cap = schedule_cap(opts, frame.f);
  for (int dd = 0; dd <= 2; ++dd)
    for (long deg = start; deg <= cap; ++deg) {
      OpSystem sys(2);
      int c1 = sys.add_block(deg, 0), c2 = sys.add_block(deg, 0);
      int d11 = sys.add_block(deg, dd), d12 = sys.add_block(deg, dd);
      int d21 = sys.add_block(deg, dd), d22 = sys.add_block(deg, dd);
      int e = sys.add_block(deg, dd);
      const WeylOp one = WeylOp::constant(2, Rat(1));
      const WeylOp neg = WeylOp::constant(2, Rat(-1));
      sys.add_term(0, c1, op_of(A), one);
      sys.add_term(0, c2, op_of(C), one);
      sys.add_term(0, d11, neg, frame.ell1);
      sys.add_term(0, d12, neg, frame.ell2);
      sys.add_term(0, e, -WeylOp::d(2, 0), one);
      sys.add_term(1, c1, op_of(B), one);
      sys.add_term(1, c2, op_of(D), one);
      sys.add_term(1, d21, neg, frame.ell1);
      sys.add_term(1, d22, neg, frame.ell2);
      sys.add_term(1, e, -WeylOp::d(2, 1), one);
      sys.rhs[0] = m1;
      sys.rhs[1] = m2;
      if (auto got = solve_canonical(sys, {c1, c2}))
        return {to_poly((*got)[0]), to_poly((*got)[1])};
    }
  fail(Err::DegreeCapExceeded,
       "tau1 preimage not found within degree cap " + std::to_string(cap));
}

Poly tau0_preimage(const WeylOp& m, const LogFrame& frame, const Poly& f,
                   const TransferOptions& opts) {
  long start = std::max<long>({f.degree(), xy_degree(m), 0});
  const long cap = schedule_cap(opts, f);
  for (int dd = 0; dd <= 2; ++dd)
    for (long deg = start; deg <= cap; ++deg) {
      OpSystem sys(1);
      int g = sys.add_block(deg, 0);
      int d1 = sys.add_block(deg, dd), d2 = sys.add_block(deg, dd);
      const WeylOp one = WeylOp::constant(2, Rat(1));
      const WeylOp neg = WeylOp::constant(2, Rat(-1));
      sys.add_term(0, g, one, op_of(f));
      sys.add_term(0, d1, neg, frame.ell1);
      sys.add_term(0, d2, neg, frame.ell2);
      sys.rhs[0] = m;
      if (auto got = solve_canonical(sys, {g})) return to_poly((*got)[0]);
    }
  fail(Err::DegreeCapExceeded,
       "tau0 preimage not found within degree cap " + std::to_string(cap));
}

std::array<LogFormBasis, 3> log_bases(const CohomologyClasses& classes,
                                      const LogFrame& frame,
                                      const FilteredComplex& fc,
                                      const TransferOptions& opts) {
  std::array<LogFormBasis, 3> out;
  for (int d = 0; d < 3; ++d) out[d].degree = d;
  for (const DForm& w : transfer_classes(classes, frame, fc)) {
    if (w.degree == 0)
      out[0].scalars.push_back(
          tau0_preimage(w.coefficients[0], frame, frame.f, opts));
    else if (w.degree == 1)
      out[1].pairs.push_back(tau1_preimage(w, frame, opts));
    else
      out[2].scalars.push_back(tau2_preimage(to_poly(w.coefficients[0])));
  }
  return out;
}

} // namespace logcoh
