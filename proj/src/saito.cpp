#include "logcoh/saito.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "logcoh/groebner.hpp"

namespace logcoh {

namespace {

const std::vector<std::string>& xy() {
  static const std::vector<std::string> v{"x", "y"};
  return v;
}

Poly on_xy(const Poly& p) { return p.on_vars(xy()); }

// P = g0 + g1·∂x + g2·∂y; anything else is a caller bug
std::array<Poly, 3> first_order_parts(const WeylOp& P) {
  std::array<Poly, 3> g{Poly(xy()), Poly(xy()), Poly(xy())};
  for (const auto& [m, c] : P.t) {
    if (m.h != 0) fail(Err::Internal, "unexpected h in first-order operator");
    Expv e;
    e.n = 2;
    e.e[0] = m.x[0];
    e.e[1] = m.x[1];
    int slot;
    if (m.d[0] == 0 && m.d[1] == 0)
      slot = 0;
    else if (m.d[0] == 1 && m.d[1] == 0)
      slot = 1;
    else if (m.d[0] == 0 && m.d[1] == 1)
      slot = 2;
    else
      fail(Err::Internal, "operator is not of order one");
    g[slot].add_term(e, c);
  }
  return g;
}

WeylOp vector_field(const Poly& a1, const Poly& a2) {
  WeylOp v = weyl_mul(WeylOp::from_poly(on_xy(a1)), WeylOp::d(2, 0));
  return v + weyl_mul(WeylOp::from_poly(on_xy(a2)), WeylOp::d(2, 1));
}

} // namespace

SyzygyTriple SyzygyTriple::checked(Poly s0, Poly s1, Poly s2, const Poly& f) {
  SyzygyTriple r{on_xy(s0), on_xy(s1), on_xy(s2)};
  Poly g = on_xy(f);
  Poly lhs = r.s0 * g + r.s1 * g.derive("x") + r.s2 * g.derive("y");
  if (!lhs.is_zero())
    fail(Err::BadSyzygy, "s0*f + s1*f_x + s2*f_y != 0");
  return r;
}

LogFrame certify_saito(const SyzygyTriple& s, const SyzygyTriple& t,
                       const Poly& f_in) {
  Poly f = on_xy(f_in);
  // re-verify: the struct is an aggregate, so don't trust the rows blindly
  SyzygyTriple sv = SyzygyTriple::checked(s.s0, s.s1, s.s2, f);
  SyzygyTriple tv = SyzygyTriple::checked(t.s0, t.s1, t.s2, f);

  LogFrame fr;
  fr.f = f;
  fr.s = sv;
  fr.t = tv;
  fr.A = {sv.s1, sv.s2, tv.s1, tv.s2};

  Poly det = fr.A[0] * fr.A[3] - fr.A[1] * fr.A[2];
  auto q = divide_exact(det, f);
  if (det.is_zero() || !q || !q->is_constant())
    fail(Err::SaitoFail, "det of the coefficient matrix is not a nonzero "
                         "constant multiple of f");
  fr.c = q->constant_term();

  fr.delta1 = vector_field(sv.s1, sv.s2);
  fr.delta2 = vector_field(tv.s1, tv.s2);
  fr.ell1 = fr.delta1 - WeylOp::from_poly(sv.s0);
  fr.ell2 = fr.delta2 - WeylOp::from_poly(tv.s0);

  // [δ1, δ2] is again logarithmic; solve (b1 b2)·A = (r1 r2) by the adjugate
  WeylOp br = weyl_mul(fr.delta1, fr.delta2) - weyl_mul(fr.delta2, fr.delta1);
  auto r = first_order_parts(br);
  if (!r[0].is_zero())
    fail(Err::Internal, "commutator of derivations has an order-zero part");
  Poly cf = f.scaled(fr.c);
  auto b1 = divide_exact(r[1] * fr.A[3] - r[2] * fr.A[2], cf);
  auto b2 = divide_exact(r[2] * fr.A[0] - r[1] * fr.A[1], cf);
  if (!b1 || !b2)
    fail(Err::DivisionFail, "bracket coefficients are not polynomial");
  fr.b1 = *b1;
  fr.b2 = *b2;
  if (br != weyl_mul(WeylOp::from_poly(fr.b1), fr.delta1) +
                weyl_mul(WeylOp::from_poly(fr.b2), fr.delta2))
    fail(Err::Internal, "bracket identity failed after division");

  // flatness of the connection on the frame: δ1(g2) − δ2(g1) = b1 g1 + b2 g2
  Poly g1 = -sv.s0, g2 = -tv.s0;
  if (apply(fr.delta1, g2) - apply(fr.delta2, g1) != fr.b1 * g1 + fr.b2 * g2)
    fail(Err::Internal, "flatness identity failed");

  // cleared dual frame and the pairing <δi, f·ωj> = c·f·δij
  fr.fw1 = {fr.A[3], -fr.A[2]};
  fr.fw2 = {-fr.A[1], fr.A[0]};
  const std::pair<Poly, Poly>* fw[2] = {&fr.fw1, &fr.fw2};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Poly val = fr.A[2 * i] * fw[j]->first + fr.A[2 * i + 1] * fw[j]->second;
      if (val != (i == j ? cf : Poly(xy())))
        fail(Err::Internal, "dual pairing identity failed");
    }

  // Spencer composite (−ℓ2−b1)·ℓ1 + (ℓ1−b2)·ℓ2 = 0
  WeylOp e1 = -fr.ell2 - WeylOp::from_poly(fr.b1);
  WeylOp e2 = fr.ell1 - WeylOp::from_poly(fr.b2);
  if (!(weyl_mul(e1, fr.ell1) + weyl_mul(e2, fr.ell2)).is_zero())
    fail(Err::Internal, "Spencer composite is nonzero");

  return fr;
}

std::optional<std::pair<SyzygyTriple, SyzygyTriple>> find_free_basis(
    const Poly& f_in) {
  Poly f = on_xy(f_in);
  if (!check_reduced(f)) fail(Err::NotReduced, "f is not reduced");

  Poly fx = f.derive("x"), fy = f.derive("y");
  int d = f.degree();
  std::vector<std::string> xyt{"x", "y", "t"};
  Poly h = homogenize(f, "t").on_vars(xyt);
  Poly h1 = homogenize(fx, "t").on_vars(xyt);
  Poly h2 = homogenize(fy, "t").on_vars(xyt);
  std::vector<int> shifts{d, h1.is_zero() ? d - 1 : h1.degree(),
                          h2.is_zero() ? d - 1 : h2.degree()};

  auto syz = syzygy_module({h, h1, h2});
  for (auto& v : syz) v.shifts = shifts;
  auto min = minimalize_graded(syz);
  if (min.size() != 2) return std::nullopt;

  std::array<SyzygyTriple, 2> tr;
  for (int i = 0; i < 2; ++i) {
    std::array<Poly, 3> comp;
    for (int j = 0; j < 3; ++j)
      comp[j] = dehomogenize(min[i].c[j].on_vars(xyt), "t");
    // scale so the (s1, s2) part is monic at its leading position
    Rat lead;
    if (!comp[1].is_zero())
      lead = comp[1].leading_coeff();
    else if (!comp[2].is_zero())
      lead = comp[2].leading_coeff();
    else
      fail(Err::Internal, "syzygy with zero derivation part");
    Rat inv = 1 / lead;
    tr[i] = SyzygyTriple::checked(comp[0].scaled(inv), comp[1].scaled(inv),
                                  comp[2].scaled(inv), f);
  }

  try {
    certify_saito(tr[0], tr[1], f);
  } catch (const Error& e) {
    if (e.kind() == Err::SaitoFail || e.kind() == Err::DivisionFail)
      return std::nullopt;
    throw;
  }
  return std::make_pair(tr[0], tr[1]);
}

std::pair<SyzygyTriple, SyzygyTriple> import_basis(const std::string& path,
                                                   const Poly& f_in) {
  Poly f = on_xy(f_in);
  std::ifstream in(path);
  if (!in) fail(Err::FormatError, "cannot open basis file: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded())
    fail(Err::FormatError, "basis file is not valid JSON: " + path);
  if (!j.is_object() || !j.contains("f") || !j.contains("s") ||
      !j.contains("t"))
    fail(Err::FormatError, "basis file needs keys \"f\", \"s\", \"t\"");
  if (!j["f"].is_string() || !j["s"].is_array() || !j["t"].is_array() ||
      j["s"].size() != 3 || j["t"].size() != 3)
    fail(Err::FormatError, "basis file rows must be three polynomial strings");

  auto parse_entry = [&](const nlohmann::json& e, const char* what) {
    if (!e.is_string())
      fail(Err::FormatError, std::string("basis file: ") + what +
                                 " entry is not a string");
    try {
      return on_xy(parse_poly(e.get<std::string>(), xy()));
    } catch (const Error& err) {
      fail(Err::FormatError, std::string("basis file: bad polynomial in ") +
                                 what + ": " + err.what());
    }
  };

  Poly ff = parse_entry(j["f"], "f");
  if (ff != f)
    fail(Err::FormatError, "basis file is for a different polynomial f");

  std::array<Poly, 3> srow, trow;
  static const char* names[2][3] = {{"s[0]", "s[1]", "s[2]"},
                                    {"t[0]", "t[1]", "t[2]"}};
  for (int k = 0; k < 3; ++k) {
    srow[k] = parse_entry(j["s"][k], names[0][k]);
    trow[k] = parse_entry(j["t"][k], names[1][k]);
  }
  return {SyzygyTriple::checked(srow[0], srow[1], srow[2], f),
          SyzygyTriple::checked(trow[0], trow[1], trow[2], f)};
}

std::pair<WeylOp, WeylOp> build_tilde_ideal(const LogFrame& frame) {
  return {frame.ell1, frame.ell2};
}

} // namespace logcoh
