#ifndef LOGCOH_WEYL_HPP
#define LOGCOH_WEYL_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logcoh/poly.hpp"

namespace logcoh {

// Monomial x^a ∂^b h^k of the (optionally homogenized) Weyl algebra.
// Plain operators keep h = 0; h is the central grading variable used only
// inside the weight-order Gröbner engine.
struct WMono {
  std::array<int, 2> x{0, 0};
  std::array<int, 2> d{0, 0};
  int h = 0;

  int deg() const { return x[0] + x[1] + d[0] + d[1] + h; }
  bool operator==(const WMono& o) const { return x == o.x && d == o.d && h == o.h; }
  bool divides(const WMono& o) const;
  WMono lcm(const WMono& o) const;
  WMono minus(const WMono& o) const;
};

// graded reverse lex over (x1, x2, ∂1, ∂2, h), x1 largest
bool wmono_grevlex_less(const WMono& a, const WMono& b);

struct WMonoCanonLess {
  bool operator()(const WMono& a, const WMono& b) const {
    return wmono_grevlex_less(a, b);
  }
};

struct WeightVector {
  int n = 2;
  std::array<int, 2> wx{1, 1};
  std::array<int, 2> wd{-1, -1};

  // the integration weight (1,…,1,−1,…,−1): x_i ↦ +1, ∂_i ↦ −1
  static WeightVector integration(int nvars);
  int wdeg(const WMono& m) const {
    return wx[0] * m.x[0] + wx[1] * m.x[1] + wd[0] * m.d[0] + wd[1] * m.d[1];
  }
};

// Normally ordered element of D_n (n = 1 or 2): Σ c_{αβ} x^α ∂^β (h^γ).
struct WeylOp {
  using Terms = std::map<WMono, Rat, WMonoCanonLess>;
  int nv = 2;
  Terms t;

  explicit WeylOp(int nvars = 2) : nv(nvars) {}

  static WeylOp constant(int nvars, const Rat& c);
  static WeylOp monomial(int nvars, const WMono& m, const Rat& c);
  static WeylOp x(int nvars, int i);
  static WeylOp d(int nvars, int i);
  // polynomial as multiplication operator; vars() of p give n = 1 or 2
  static WeylOp from_poly(const Poly& p);

  bool is_zero() const { return t.empty(); }
  void add(const WMono& m, const Rat& c);
  WeylOp operator+(const WeylOp& o) const;
  WeylOp operator-(const WeylOp& o) const;
  WeylOp operator-() const;
  WeylOp scaled(const Rat& c) const;
  bool operator==(const WeylOp& o) const;
  bool operator!=(const WeylOp& o) const { return !(*this == o); }

  int degree() const; // max |α|+|β|+γ
  std::string str() const;
};

WeylOp weyl_mul(const WeylOp& P, const WeylOp& Q);
// product in the homogenized algebra: ∂x = x∂ + h², h central
WeylOp weyl_mul_h(const WeylOp& P, const WeylOp& Q);

// formal adjoint: x^T = x, ∂^T = −∂, (PQ)^T = Q^T P^T; involutive
WeylOp adjoint(const WeylOp& P);

// natural action on polynomials (g over the matching variable list)
Poly apply(const WeylOp& P, const Poly& g);

// class of P in D/(∂x·D + ∂y·D), realized as apply(adjoint(P), 1)
Poly class_in_omega(const WeylOp& P);

// max/initial part of the w-grading; ord_w of 0 is INT_MIN
int ord_w(const WeylOp& P, const WeightVector& w);
WeylOp in_w(const WeylOp& P, const WeightVector& w);

// multiply each term by h^(deg gap) so all terms share the total degree
WeylOp homogenize_h(const WeylOp& P);
WeylOp dehomogenize_h(const WeylOp& P);

// terms of P rewritten in ∂-left form: P = Σ c ∂^β x^α
struct DLeftTerm {
  std::array<int, 2> beta{0, 0};
  std::array<int, 2> alpha{0, 0};
  Rat c;
};
std::vector<DLeftTerm> dleft_form(const WeylOp& P);

struct WeylGB {
  std::vector<WeylOp> gens; // dehomogenized w-Gröbner basis
};

// w-Gröbner basis of the left ideal D·gens, computed in the homogenized
// Weyl algebra under (total degree, w, grevlex) and dehomogenized.
WeylGB weyl_gb(const std::vector<WeylOp>& gens, const WeightVector& w);

// Gröbner basis of in_w(D·gens) under (w, grevlex); all members are
// w-homogeneous, so division below stays inside one weight stratum.
std::vector<WeylOp> inw_gb(const std::vector<WeylOp>& gens,
                           const WeightVector& w);
WeylOp inw_nf(const WeylOp& p, const std::vector<WeylOp>& gb,
              const WeightVector& w);

struct BFunction {
  Poly b;                          // monic univariate polynomial in s
  std::vector<long> integral_roots; // all integer roots, ascending
  std::optional<long> k0;           // maximal non-negative integral root
};

// Indicial polynomial for integration: monic generator of
// in_w(D·gens) ∩ K[s], s = −Σ_i ∂_i x_i, found as the first linear
// dependence among the normal forms of 1, s, s², …
BFunction bfunction_integration(const std::vector<WeylOp>& gens,
                                const WeightVector& w, int cap = 40);

} // namespace logcoh

#endif
