#ifndef LOGCOH_DERHAM_HPP
#define LOGCOH_DERHAM_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "logcoh/linalg.hpp"
#include "logcoh/saito.hpp"
#include "logcoh/weyl.hpp"

namespace logcoh {

// Spencer-type resolution D[left] --a2--> D[m1] ⊕ D[m2] --a1--> D[1]
// with a1(c,d) = c·ℓ1 + d·ℓ2 and a2(c) = c·(−ℓ2−b1, ℓ1−b2), written as
// right-multiplication matrices. Shifts make both maps filtered:
// source shift + ord_w(entry) ≤ target shift.
struct FilteredComplex {
  LogFrame frame;
  int left_shift = 0, m1 = 0, m2 = 0;
  static constexpr int target_shift = 1;
  std::array<WeylOp, 2> a2{WeylOp(2), WeylOp(2)};
  std::array<WeylOp, 2> a1{WeylOp(2), WeylOp(2)};
};

FilteredComplex spencer_resolution(const LogFrame& frame);

// the truncation bound used downstream: the largest integral root of b
// regardless of sign, or none when b has no integral roots
std::optional<long> truncation_bound(const BFunction& bf);

// Finite-dimensional slice: each stage keeps the monomial classes x^a y^b
// with a+b ≤ bound − 1 + shift (empty when the bound is none). Stage bases
// are ordered by ascending total degree, ties by descending x-exponent, so
// a window is always a prefix of any larger window of the same stage.
struct TruncatedComplex {
  std::optional<long> bound;
  std::vector<Expv> left, mid1, mid2, target;
  QMat M2; // (mid1+mid2 rows) x (left cols)
  QMat M1; // (target rows) x (mid1+mid2 cols)
  FilteredComplex fc; // kept so cohomology can saturate against larger windows

  int left_dim() const { return static_cast<int>(left.size()); }
  int mid_dim() const { return static_cast<int>(mid1.size() + mid2.size()); }
  int target_dim() const { return static_cast<int>(target.size()); }
};

TruncatedComplex truncate(const FilteredComplex& fc,
                          std::optional<long> bound);

struct CohomologyClasses {
  std::array<int, 3> dims{0, 0, 0}; // (h0, h1, h2)
  std::vector<Poly> h0;             // left-stage representatives
  std::vector<std::pair<Poly, Poly>> h1; // (mid1, mid2) components
  std::vector<Poly> h2;             // target-stage monomial representatives
};

// Cohomology of the window, saturated against larger windows: kernels are
// exact within the window, but the image subspaces are cut out of windows
// K = bound, bound+1, ... until the dimensions plateau.  When the complex
// is strict the first window already agrees and nothing changes; when it
// is not, images of higher-degree sources can combine to relations of low
// degree and a bare single-window computation overcounts cohomology.
CohomologyClasses cohomology(const TruncatedComplex& tc);

// Full stabilization: also raises the window base until dimensions agree at
// three consecutive bounds (classes may first appear above the b-function
// bound when stage shifts are very negative). Returns the classes computed
// at the smallest stable bound.
CohomologyClasses stable_cohomology(const FilteredComplex& fc,
                                    std::optional<long> bound);

} // namespace logcoh

#endif
