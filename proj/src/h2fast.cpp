#include "logcoh/h2fast.hpp"

#include <map>
#include <string>
#include <utility>

#include "logcoh/errors.hpp"
#include "logcoh/groebner.hpp"
#include "logcoh/linalg.hpp"

namespace logcoh {

namespace {

const std::vector<std::string>& xy() {
  static const std::vector<std::string> v{"x", "y"};
  return v;
}

bool scalar_multiple(const WeylOp& a, const WeylOp& b) {
  if (a.t.size() != b.t.size()) return false;
  Rat ratio;
  bool have_ratio = false;
  auto ia = a.t.begin();
  for (auto ib = b.t.begin(); ib != b.t.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return false;
    Rat q = ia->second / ib->second;
    if (!have_ratio) {
      ratio = q;
      have_ratio = true;
    } else if (q != ratio) {
      return false;
    }
  }
  return true;
}

// monomials of total degree ≤ k: ascending degree, ties by descending
// x-exponent — the layout every bounded window in the library uses
std::vector<Expv> degree_box(int nvars, long k) {
  std::vector<Expv> out;
  for (long d = 0; d <= k; ++d) {
    if (nvars == 1) {
      Expv m;
      m.n = 1;
      m.e[0] = static_cast<int>(d);
      out.push_back(m);
    } else {
      for (long a = d; a >= 0; --a) {
        Expv m;
        m.n = 2;
        m.e[0] = static_cast<int>(a);
        m.e[1] = static_cast<int>(d - a);
        out.push_back(m);
      }
    }
  }
  return out;
}

} // namespace

WeylOp syzygy_operator(const std::array<Poly, 3>& pqr) {
  Poly p = pqr[0].on_vars(xy());
  Poly q = pqr[1].on_vars(xy());
  Poly r = pqr[2].on_vars(xy());
  return weyl_mul(WeylOp::from_poly(q), WeylOp::d(2, 0)) -
         weyl_mul(WeylOp::from_poly(p), WeylOp::d(2, 1)) +
         WeylOp::from_poly(q.derive(0) - p.derive(1) - r);
}

std::vector<std::array<Poly, 3>> syzygy_triples(const Poly& f) {
  if (!check_reduced(f))
    fail(Err::NotReduced, "not reduced: " + f.str());
  Poly g = f.on_vars(xy());
  Poly fx = g.derive(0), fy = g.derive(1);

  std::vector<std::array<Poly, 3>> out;
  for (const ModVec& v : syzygy_module({fy, -fx, g}))
    out.push_back(
        {v.c[0].on_vars(xy()), v.c[1].on_vars(xy()), v.c[2].on_vars(xy())});

  const std::array<Poly, 3> trivial[3] = {{Poly(xy()), g, fx},
                                          {g, Poly(xy()), -fy},
                                          {fx, fy, Poly(xy())}};
  for (const auto& t : trivial) {
    WeylOp lt = syzygy_operator(t);
    if (lt.is_zero()) continue;
    bool dup = false;
    for (const auto& s : out)
      if (scalar_multiple(syzygy_operator(s), lt)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(t);
  }
  return out;
}

std::vector<WeylOp> syzygy_operators(const Poly& f) {
  std::vector<WeylOp> ops;
  for (const auto& t : syzygy_triples(f)) ops.push_back(syzygy_operator(t));
  return ops;
}

std::array<bool, 3> check_conditions(const Poly& f) {
  Poly g = f.on_vars(xy());
  Poly fx = g.derive(0), fy = g.derive(1);
  return {krull_dim({g, fx, fy}) <= 0, krull_dim({g, fx}) <= 1,
          krull_dim({g, fy}) <= 1};
}

std::vector<Poly> bounded_quotient_basis(const std::vector<WeylOp>& ops,
                                         long k, int nvars) {
  if (nvars != 1 && nvars != 2)
    fail(Err::Internal, "bounded quotient supports 1 or 2 variables");
  if (k < 0) return {};
  const std::vector<std::string> vars =
      nvars == 1 ? std::vector<std::string>{"x"} : xy();

  std::vector<Expv> target = degree_box(nvars, k);
  std::map<std::pair<int, int>, int> index;
  for (std::size_t i = 0; i < target.size(); ++i)
    index[{target[i].e[0], target[i].e[1]}] = static_cast<int>(i);

  const WeightVector w = WeightVector::integration(nvars);
  RowSpace images;
  for (const WeylOp& op : ops) {
    if (op.is_zero()) continue;
    long src = k - ord_w(op, w);
    if (src < 0) continue;
    for (const Expv& u : degree_box(nvars, src)) {
      Poly mono(vars);
      mono.add_term(u, Rat(1));
      Poly img = apply(op, mono);
      if (img.is_zero()) continue;
      QVec row(target.size(), Rat(0));
      for (const auto& [e, c] : img.terms()) {
        auto it = index.find({e.e[0], e.e[1]});
        if (it == index.end())
          fail(Err::Internal, "operator image escaped its degree window");
        row[static_cast<std::size_t>(it->second)] = c;
      }
      images.insert(std::move(row));
    }
  }

  std::vector<char> pivot(target.size(), 0);
  for (int p : images.pivots()) pivot[static_cast<std::size_t>(p)] = 1;
  std::vector<Poly> basis;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (pivot[i]) continue;
    Poly m(vars);
    m.add_term(target[i], Rat(1));
    basis.push_back(std::move(m));
  }
  return basis;
}

H2Report h2_basis(const Poly& f) {
  H2Report rep;
  rep.conditions_ok = check_conditions(f);
  if (!(rep.conditions_ok[0] && rep.conditions_ok[1] && rep.conditions_ok[2]))
    fail(Err::ConditionsViolated,
         "dimension conditions fail for f = " + f.str());

  std::vector<WeylOp> adj;
  for (const WeylOp& op : syzygy_operators(f)) adj.push_back(adjoint(op));

  // The raw operators can miss bounded image vectors: a right-ideal element
  // of low weight order may only be reachable through high-degree sources
  // once the syzygy module needs more than two generators. A weight Gröbner
  // basis of the adjoint ideal restores order-controlled representations,
  // so its adjoints are what the truncated quotient is taken against.
  const WeightVector w = WeightVector::integration(2);
  WeylGB gb = weyl_gb(adj, w);
  for (const WeylOp& g : gb.gens) rep.quotient_ops.push_back(adjoint(g));

  BFunction bf = bfunction_integration(gb.gens, w);
  rep.k0 = bf.k0;
  rep.b = bf.b;
  if (!bf.k0) return rep;

  rep.basis = bounded_quotient_basis(rep.quotient_ops, *bf.k0, 2);
  rep.dim = static_cast<int>(rep.basis.size());
  return rep;
}

} // namespace logcoh
