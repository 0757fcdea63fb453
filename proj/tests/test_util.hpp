#ifndef LOGCOH_TEST_UTIL_HPP
#define LOGCOH_TEST_UTIL_HPP

#include <random>
#include <string>
#include <vector>

#include "logcoh/poly.hpp"
#include "logcoh/weyl.hpp"

inline logcoh::Poly random_poly(std::mt19937& rng,
                                const std::vector<std::string>& vars,
                                int maxdeg, int nterms) {
  using namespace logcoh;
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> deg(0, maxdeg);
  Poly p(vars);
  for (int t = 0; t < nterms; ++t) {
    Expv m{{0, 0, 0}, static_cast<int>(vars.size())};
    int budget = deg(rng);
    for (std::size_t i = 0; i < vars.size() && budget > 0; ++i) {
      std::uniform_int_distribution<int> part(0, budget);
      m.e[i] = part(rng);
      budget -= m.e[i];
    }
    p.add_term(m, coef(rng));
  }
  return p;
}

inline logcoh::WeylOp random_weyl(std::mt19937& rng, int nv, int maxexp,
                                  int nterms) {
  using namespace logcoh;
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> ex(0, maxexp);
  WeylOp p(nv);
  for (int t = 0; t < nterms; ++t) {
    WMono m;
    m.x[0] = ex(rng);
    m.d[0] = ex(rng);
    if (nv == 2) {
      m.x[1] = ex(rng);
      m.d[1] = ex(rng);
    }
    p.add(m, coef(rng));
  }
  return p;
}

#endif
