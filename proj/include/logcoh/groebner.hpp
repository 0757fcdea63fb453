#ifndef LOGCOH_GROEBNER_HPP
#define LOGCOH_GROEBNER_HPP

#include <vector>

#include "logcoh/poly.hpp"

namespace logcoh {

// Free-module element with an optional per-position degree shift (degree of a
// homogeneous vector = component degree + shift, equal across positions).
struct ModVec {
  std::vector<Poly> c;
  std::vector<int> shifts;

  bool is_zero() const;
  int positions() const { return static_cast<int>(c.size()); }
  ModVec operator+(const ModVec& o) const;
  ModVec operator-(const ModVec& o) const;
  ModVec operator-() const;
  ModVec scaled(const Rat& q) const;
  ModVec mono_mul(const Expv& m, const Rat& q) const;
  bool operator==(const ModVec& o) const;

  // leading position/monomial under POT (position 0 dominant) x grevlex
  int lead_pos() const;
  // homogeneous degree w.r.t. shifts, or throws NotHomogeneous
  int graded_degree() const;
};

// Monomial/module order descriptor. Only grevlex (POT for modules) is
// implemented; the field exists so reports can state the order used.
enum class Order { GrevlexPOT };

struct GroebnerBasis {
  std::vector<Poly> gens; // reduced: monic, inter-reduced, sorted
  Order order = Order::GrevlexPOT;
};

struct ModuleGB {
  std::vector<ModVec> gens;
  Order order = Order::GrevlexPOT;
};

GroebnerBasis buchberger(const std::vector<Poly>& gens,
                         Order order = Order::GrevlexPOT);
Poly normal_form(const Poly& p, const GroebnerBasis& gb);

ModuleGB module_gb(const std::vector<ModVec>& gens,
                   Order order = Order::GrevlexPOT);
ModVec normal_form(const ModVec& v, const ModuleGB& gb);

// Generators of {(a_1..a_s) : sum a_i g_i = 0}, via the extended-Buchberger
// trace (Schreyer syzygies pulled back through the transition matrices).
std::vector<ModVec> syzygy_module(const std::vector<Poly>& gens);

// Graded minimal generating set (ascending degree, kept-only membership
// tests). Requires homogeneous input; throws NotHomogeneous.
std::vector<ModVec> minimalize_graded(const std::vector<ModVec>& gens);

// Krull dimension of R/(gens) via independent variable sets of the initial
// ideal; -1 for the unit ideal.
int krull_dim(const std::vector<Poly>& gens);

} // namespace logcoh

#endif
