#ifndef LOGCOH_POLY_HPP
#define LOGCOH_POLY_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logcoh/errors.hpp"
#include "logcoh/rat.hpp"

namespace logcoh {

// Exponent vector over at most three variables (x, y, t is the largest
// context the pipeline ever needs; univariate rings reuse slot 0).
struct Expv {
  std::array<int, 3> e{0, 0, 0};
  int n = 0;

  int total() const { return e[0] + e[1] + e[2]; }
  bool operator==(const Expv& o) const { return n == o.n && e == o.e; }
  bool operator!=(const Expv& o) const { return !(*this == o); }

  Expv plus(const Expv& o) const;
  // componentwise difference; caller guarantees divisibility
  Expv minus(const Expv& o) const;
  bool divides(const Expv& o) const; // this | o componentwise
  Expv lcm(const Expv& o) const;
};

// graded reverse lexicographic, variable 0 largest
bool grevlex_less(const Expv& a, const Expv& b);
// graded lexicographic (used only for gcd sign normalization)
bool grlex_less(const Expv& a, const Expv& b);

struct GrevlexGreater {
  bool operator()(const Expv& a, const Expv& b) const {
    return grevlex_less(b, a);
  }
};

// Sparse multivariate polynomial over Q with a named, ordered variable list.
// Terms are kept in descending grevlex order; no zero coefficients are stored.
class Poly {
public:
  using Terms = std::map<Expv, Rat, GrevlexGreater>;

  Poly() = default; // zero over the empty variable list (compatible with all)
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly constant(const std::vector<std::string>& vars, const Rat& c);
  static Poly variable(const std::vector<std::string>& vars,
                       const std::string& name);

  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // -1 for the zero polynomial
  int degree() const;
  Rat constant_term() const;
  Rat coeff(const Expv& m) const;
  const Rat& leading_coeff() const { return terms_.begin()->second; }
  const Expv& leading_mono() const { return terms_.begin()->first; }

  void add_term(const Expv& m, const Rat& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(const Rat& c) const;
  Poly mono_mul(const Expv& m, const Rat& c) const;
  Poly pow(int k) const;

  Poly derive(const std::string& var) const;
  Poly derive(int vi) const;

  // substitute 1 for a variable (keeps the variable list)
  Poly subst_one(const std::string& var) const;
  // reorder/extend onto a larger variable list (superset of vars())
  Poly on_vars(const std::vector<std::string>& vars) const;
  // drop a variable that no term uses
  Poly drop_var(const std::string& var) const;

  bool is_homogeneous() const;
  // univariate evaluation (nvars() == 1)
  Rat eval1(const Rat& v) const;

  std::string str() const;

private:
  std::vector<std::string> vars_;
  Terms terms_;
  int var_index(const std::string& name) const;
  friend Poly add_impl(const Poly& a, const Poly& b, bool negate_b);
};

// --- free operations -------------------------------------------------------

// Grammar: vars as declared (pipeline uses x, y and sometimes t),
// non-negative integer literals, rationals a/b, + - * ^, parentheses,
// explicit *, ^ with non-negative integer exponent. Whitespace insignificant.
Poly parse_poly(const std::string& text, const std::vector<std::string>& vars);

// scale so coefficients are coprime integers, graded-lex leading coeff > 0
Poly normalize_primitive(const Poly& p);

// exact quotient p / d, or nullopt when not divisible
std::optional<Poly> divide_exact(const Poly& p, const Poly& d);

// gcd via primitive-part/content recursion; result normalized primitive
Poly poly_gcd(const Poly& a, const Poly& b);

// true when gcd(f, fx, fy) is constant; throws ZeroOrConstantInput
bool check_reduced(const Poly& f);

// multiply each term by var0^(deg - term degree); var0 appended when missing
Poly homogenize(const Poly& p, const std::string& var0);
// substitute var0 = 1 and drop it from the variable list
Poly dehomogenize(const Poly& p, const std::string& var0);

} // namespace logcoh

#endif
