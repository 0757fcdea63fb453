#ifndef LOGCOH_H2FAST_HPP
#define LOGCOH_H2FAST_HPP

#include <array>
#include <optional>
#include <vector>

#include "logcoh/poly.hpp"
#include "logcoh/weyl.hpp"

namespace logcoh {

// H²(Ω•(log f)) computed directly as K[x,y]/Σᵢ Lᵢ·K[x,y]: every logarithmic
// 1-form is (p·dx + q·dy)/f for a syzygy (p,q,r) of (f_y, −f_x, f), and
// d(e·(p·dx + q·dy)/f) = (L·e)·dx∧dy/f for a first-order operator L. No free
// basis of Der(−log f) is needed; a b-function bounds the quotient instead.
struct H2Report {
  int dim = 0;
  std::vector<Poly> basis;  // entry c stands for the class of c·dx∧dy/f
  std::optional<long> k0;   // truncation root; none forces dim = 0
  Poly b;                   // the monic integration b-polynomial (in s)
  std::array<bool, 3> conditions_ok{false, false, false};
  // The operators the bounded quotient was taken against: adjoints of a
  // weight Gröbner basis of the adjoint ideal. Unlike the raw syzygy
  // operators these have the bounded-representation property — every image
  // element of degree ≤ k is hit from sources of degree ≤ k − ord_w — so
  // downstream span checks must reduce against these, not the raw ones.
  std::vector<WeylOp> quotient_ops;
};

// Generators (p,q,r) of {f_y·p − f_x·q + f·r = 0}. The rows (0,f,f_x),
// (f,0,−f_y), (f_x,f_y,0) are appended when no computed generator already
// yields their operator: the holonomicity argument behind the degree bound
// wants f·∂x, f·∂y and f_y·∂x − f_x·∂y in the operator ideal explicitly.
std::vector<std::array<Poly, 3>> syzygy_triples(const Poly& f);

// L = q·∂x − p·∂y + (q_x − p_y − r), the operator with
// d(e·ω) = (L·e)·dx∧dy/f for ω = (p·dx + q·dy)/f.
WeylOp syzygy_operator(const std::array<Poly, 3>& pqr);

// syzygy_operator applied to each generator from syzygy_triples
std::vector<WeylOp> syzygy_operators(const Poly& f);

// (dim V(f,f_x,f_y) ≤ 0, dim V(f,f_x) ≤ 1, dim V(f,f_y) ≤ 1); the degree
// bound below is only proved under these three conditions
std::array<bool, 3> check_conditions(const Poly& f);

// Basis of F_k / Σᵢ Lᵢ·F_{k − ord_w(Lᵢ)} where F_k is the space of
// polynomials of total degree ≤ k and w = (1,…,1,−1,…,−1). Operators with
// k − ord_w(Lᵢ) < 0 contribute no image vectors. Representatives are the
// monomials left outside the image row space (ascending degree, ties by
// descending x-exponent, pivots on the first nonzero coordinate). The
// truncation equals the true quotient only when the operator family has the
// bounded-representation property (see H2Report::quotient_ops); callers pass
// either such a family or accept plain truncation semantics.
std::vector<Poly> bounded_quotient_basis(const std::vector<WeylOp>& ops,
                                         long k, int nvars = 2);

// The full pipeline: conditions, syzygy operators, weight Gröbner basis of
// the adjoint ideal D·{Lᵢᵀ}, its integration b-function, then the bounded
// quotient at the largest non-negative integral root k0 against the adjoints
// of the Gröbner basis elements.
H2Report h2_basis(const Poly& f);

} // namespace logcoh

#endif
