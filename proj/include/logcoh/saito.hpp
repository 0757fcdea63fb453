#ifndef LOGCOH_SAITO_HPP
#define LOGCOH_SAITO_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "logcoh/poly.hpp"
#include "logcoh/weyl.hpp"

namespace logcoh {

// (s0, s1, s2) with s0·f + s1·f_x + s2·f_y = 0, verified at construction.
struct SyzygyTriple {
  Poly s0, s1, s2;
  static SyzygyTriple checked(Poly s0, Poly s1, Poly s2, const Poly& f);
};

// A certified free basis of Der(−log f) together with everything derived
// from it: the twisted generators ℓᵢ, the bracket coefficients, and the
// cleared dual forms f·ωᵢ. All stated identities are checked exactly when
// the frame is built.
struct LogFrame {
  Poly f;
  SyzygyTriple s, t;
  WeylOp delta1{2}, delta2{2};
  std::array<Poly, 4> A; // row-major [a11 a12; a21 a22] = [s1 s2; t1 t2]
  Rat c;                 // det(A) = c·f
  Poly b1, b2;           // [δ₁,δ₂] = b₁δ₁ + b₂δ₂
  WeylOp ell1{2}, ell2{2};
  std::pair<Poly, Poly> fw1, fw2; // f·ωᵢ = (dx coeff, dy coeff)
};

// Hilbert-Burch route: minimal graded syzygies of the homogenized
// (f, f_x, f_y). Exactly two generators dehomogenize to a free basis;
// anything else reports "not free" as std::nullopt.
std::optional<std::pair<SyzygyTriple, SyzygyTriple>> find_free_basis(const Poly& f);

// Basis file fallback: JSON {"f": "...", "s": [s0,s1,s2], "t": [t0,t1,t2]}.
// The stated f must match the requested one, and both rows must satisfy the
// syzygy identity.
std::pair<SyzygyTriple, SyzygyTriple> import_basis(const std::string& path,
                                                   const Poly& f);

// Saito's criterion as a certificate: det(A) must be a nonzero constant
// multiple of f. Also computes (b₁,b₂) by the adjugate and exact division.
LogFrame certify_saito(const SyzygyTriple& s, const SyzygyTriple& t,
                       const Poly& f);

// Generators of the left ideal presenting M̃^{log f}.
std::pair<WeylOp, WeylOp> build_tilde_ideal(const LogFrame& frame);

} // namespace logcoh

#endif
