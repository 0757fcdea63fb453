#ifndef LOGCOH_RAT_HPP
#define LOGCOH_RAT_HPP

#include <gmpxx.h>

#include <string>

namespace logcoh {

// Exact rational scalar. mpq_class keeps values in lowest terms with a
// positive denominator and a unique zero, which is exactly the canonical form
// the rest of the library assumes.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long n, long d = 1) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

// "a" or "a/b", arbitrary precision.
inline Rat rat_parse(const std::string& s) {
  Rat q(s);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool is_int(const Rat& q) { return q.get_den() == 1; }

} // namespace logcoh

#endif
