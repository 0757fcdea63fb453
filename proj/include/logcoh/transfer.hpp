#ifndef LOGCOH_TRANSFER_HPP
#define LOGCOH_TRANSFER_HPP

#include <array>
#include <utility>
#include <vector>

#include "logcoh/derham.hpp"

namespace logcoh {

// Differential form with Weyl-operator coefficients, understood modulo the
// left ideal presenting M̃:
//   degree 0: {g}          a function
//   degree 1: {m1, m2}     m1·dx + m2·dy
//   degree 2: {g}          g·dx∧dy
struct DForm {
  int degree = 0;
  std::vector<WeylOp> coefficients;
};

// Basis of one cohomology degree written in the logarithmic frame.
// Degrees 0 and 2 use `scalars` (g, resp. g·ω₁∧ω₂); degree 1 uses `pairs`
// ((c1, c2) meaning c1·ω₁ + c2·ω₂).
struct LogFormBasis {
  int degree = 0;
  std::vector<Poly> scalars;
  std::vector<std::pair<Poly, Poly>> pairs;
};

struct TransferOptions {
  // Cap on the x,y-degree of the undetermined coefficients;
  // -1 means 3·deg f + 10.
  long degree_cap = -1;
};

// Solve −∂y·a + ∂x·b = r exactly by splitting the ∂-left form of r at the
// leading ∂ of each term (terms with a ∂x go to b, the rest to a).
// Throws NotInImage when r has a nonzero class in D/(∂x·D + ∂y·D).
std::pair<WeylOp, WeylOp> koszul_split(const WeylOp& r);

// Solve ∂x·a = r1 and ∂y·a = r2 exactly. Left multiplication by ∂x is
// injective, so the candidate is unique; the ∂y cross-check decides.
// Throws NotIntegrable when no solution exists.
WeylOp koszul_integrate(const WeylOp& r1, const WeylOp& r2);

// Walk each cohomology class down the double complex built from the Koszul
// resolution of D/(∂x·D + ∂y·D) (rows) and the Spencer resolution (columns):
// H² classes pass through unchanged, H¹ classes take one horizontal push and
// one vertical preimage, H⁰ classes take two. Output order: h0, h1, h2.
std::vector<DForm> transfer_classes(const CohomologyClasses& classes,
                                    const LogFrame& frame,
                                    const FilteredComplex& fc);

// τ² is the identity on coordinates: the class g·dx∧dy comes from g·ω₁∧ω₂.
Poly tau2_preimage(const Poly& g);

// Undetermined coefficients for the pair of identities
//   A·c1 + C·c2 = m1 + d₁¹ℓ₁ + d₁²ℓ₂ + ∂x·e
//   B·c1 + D·c2 = m2 + d₂¹ℓ₁ + d₂²ℓ₂ + ∂y·e
// where (A,B) and (C,D) are the cleared frame forms f·ω₁, f·ω₂ as stored on
// the frame (scaled by the frame constant c when c ≠ 1). The x,y-degree
// bound starts at max(deg f, deg of the inputs) and grows to the cap; the
// ∂-degree of the unknown operators d, e is tried at 0, then 1, then 2.
// The reported (c1, c2) is the canonical coset representative: the solution
// reduced modulo the solution space of the homogeneous system, eliminating
// high-degree monomials first. Throws DegreeCapExceeded.
std::pair<Poly, Poly> tau1_preimage(const DForm& form, const LogFrame& frame,
                                    const TransferOptions& opts = {});

// Same engine for g·f = m + d₁ℓ₁ + d₂ℓ₂ with g a polynomial.
Poly tau0_preimage(const WeylOp& m, const LogFrame& frame, const Poly& f,
                   const TransferOptions& opts = {});

// transfer_classes followed by the τ-preimages, grouped by degree.
std::array<LogFormBasis, 3> log_bases(const CohomologyClasses& classes,
                                      const LogFrame& frame,
                                      const FilteredComplex& fc,
                                      const TransferOptions& opts = {});

} // namespace logcoh

#endif
