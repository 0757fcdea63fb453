#include "doctest.h"

#include <algorithm>

#include "logcoh/weyl.hpp"
#include "test_util.hpp"

using namespace logcoh;

static const std::vector<std::string> XY{"x", "y"};
static const std::vector<std::string> X1{"x"};

static Poly P(const std::string& s) { return parse_poly(s, XY); }

static WeylOp theta(int nv, int i) {
  WMono m;
  m.x[i] = 1;
  m.d[i] = 1;
  return WeylOp::monomial(nv, m, 1);
}

// ℓ₁, ℓ₂ for f = xy(x−y), written out explicitly
static std::vector<WeylOp> xyxmy_frame_ops() {
  WeylOp l1 = theta(2, 0) + theta(2, 1) + WeylOp::constant(2, 3);
  WeylOp l2 = weyl_mul(WeylOp::from_poly(P("x*y - x^2")), WeylOp::d(2, 0)) +
              WeylOp::from_poly(P("y - 2*x"));
  return {l1, l2};
}

TEST_CASE("defining relation and basic products") {
  WeylOp x = WeylOp::x(2, 0), dx = WeylOp::d(2, 0);
  CHECK(weyl_mul(dx, x) == weyl_mul(x, dx) + WeylOp::constant(2, 1));
  std::mt19937 rng(1);
  WeylOp p = random_weyl(rng, 2, 2, 4);
  CHECK(weyl_mul(p, WeylOp::constant(2, 1)) == p);
  CHECK(weyl_mul(WeylOp::constant(2, 1), p) == p);
}

TEST_CASE("associativity on random triples") {
  std::mt19937 rng(2);
  for (int round = 0; round < 12; ++round) {
    WeylOp a = random_weyl(rng, 2, 2, 3);
    WeylOp b = random_weyl(rng, 2, 2, 3);
    WeylOp c = random_weyl(rng, 2, 2, 3);
    CHECK(weyl_mul(weyl_mul(a, b), c) == weyl_mul(a, weyl_mul(b, c)));
    WeylOp ha = homogenize_h(a), hb = homogenize_h(b), hc = homogenize_h(c);
    CHECK(weyl_mul_h(weyl_mul_h(ha, hb), hc) == weyl_mul_h(ha, weyl_mul_h(hb, hc)));
    CHECK(dehomogenize_h(weyl_mul_h(ha, hb)) == weyl_mul(a, b));
  }
}

TEST_CASE("adjoint is an involutive anti-homomorphism") {
  WeylOp xdx = theta(2, 0);
  CHECK(adjoint(xdx) == -xdx - WeylOp::constant(2, 1));
  std::mt19937 rng(3);
  for (int round = 0; round < 12; ++round) {
    WeylOp a = random_weyl(rng, 2, 2, 3);
    WeylOp b = random_weyl(rng, 2, 2, 3);
    CHECK(adjoint(adjoint(a)) == a);
    CHECK(adjoint(weyl_mul(a, b)) == weyl_mul(adjoint(b), adjoint(a)));
  }
}

TEST_CASE("apply is a module action") {
  std::mt19937 rng(4);
  for (int round = 0; round < 12; ++round) {
    WeylOp a = random_weyl(rng, 2, 2, 3);
    WeylOp b = random_weyl(rng, 2, 2, 3);
    Poly g = random_poly(rng, XY, 4, 4);
    CHECK(apply(weyl_mul(a, b), g) == apply(a, apply(b, g)));
    CHECK(apply(WeylOp::constant(2, 1), g) == g);
  }
}

TEST_CASE("introductory one-variable operator") {
  // L = (1−x)x∂ + 2x
  WeylOp L = weyl_mul(WeylOp::from_poly(parse_poly("x - x^2", X1)),
                      WeylOp::d(1, 0)) +
             WeylOp::from_poly(parse_poly("2*x", X1));
  CHECK(apply(L, parse_poly("1", X1)) == parse_poly("2*x", X1));
  CHECK(apply(L, parse_poly("x^2", X1)) == parse_poly("2*x^2", X1));
  for (int k = 0; k <= 6; ++k) {
    Poly xk(X1);
    xk.add_term(Expv{{k, 0, 0}, 1}, 1);
    Poly expect(X1);
    expect.add_term(Expv{{k, 0, 0}, 1}, k);
    expect.add_term(Expv{{k + 1, 0, 0}, 1}, -(k - 2));
    CHECK(apply(L, xk) == expect); // L·x^k = k x^k − (k−2) x^{k+1}
  }

  // adjoint and its b-function: in_w(D·L^T) ∩ K[−∂x] = (s − 3)
  WeylOp Lt = adjoint(L);
  WeylOp expect = weyl_mul(WeylOp::from_poly(parse_poly("x^2 - x", X1)),
                           WeylOp::d(1, 0)) +
                  WeylOp::from_poly(parse_poly("4*x - 1", X1));
  CHECK(Lt == expect);
  // The generator carries an extra factor s beside the decisive root 3:
  // x(θ−2)∂ = θ(θ−3) on the Fourier side, while neither linear factor is in
  // the initial ideal alone (apply either to 1 resp. x³ for a contradiction).
  BFunction bf = bfunction_integration({Lt}, WeightVector::integration(1));
  CHECK(bf.b == parse_poly("s^2 - 3*s", {"s"}));
  REQUIRE(bf.k0.has_value());
  CHECK(*bf.k0 == 3);
  CHECK(bf.integral_roots == std::vector<long>{0, 3});
}

TEST_CASE("class_in_omega") {
  std::mt19937 rng(5);
  for (int round = 0; round < 10; ++round) {
    WeylOp q = random_weyl(rng, 2, 2, 3);
    CHECK(class_in_omega(weyl_mul(WeylOp::d(2, 0), q)).is_zero());
    CHECK(class_in_omega(weyl_mul(WeylOp::d(2, 1), q)).is_zero());
    Poly g = random_poly(rng, XY, 3, 3);
    CHECK(class_in_omega(WeylOp::from_poly(g)) == g.on_vars(XY));
  }
  CHECK(class_in_omega(WeylOp::from_poly(P("x^2*y"))) == P("x^2*y"));
  CHECK(class_in_omega(theta(2, 0)) == P("-1"));
}

TEST_CASE("dleft_form recombines to the operator") {
  std::mt19937 rng(6);
  for (int round = 0; round < 10; ++round) {
    WeylOp p = random_weyl(rng, 2, 2, 4);
    WeylOp back(2);
    for (const auto& t : dleft_form(p)) {
      WMono dm, xm;
      dm.d = t.beta;
      xm.x = t.alpha;
      back = back + weyl_mul(WeylOp::monomial(2, dm, t.c),
                             WeylOp::monomial(2, xm, 1));
    }
    CHECK(back == p);
  }
}

TEST_CASE("frame bracket for f = xy(x-y)") {
  WeylOp e = theta(2, 0) + theta(2, 1); // Euler derivation δ₁
  WeylOp d2 = weyl_mul(WeylOp::from_poly(P("x*y - x^2")), WeylOp::d(2, 0));
  CHECK(weyl_mul(e, d2) - weyl_mul(d2, e) == d2); // [δ₁, δ₂] = δ₂
}

TEST_CASE("weyl_gb on the partial-derivative ideal") {
  WeylOp dx = WeylOp::d(2, 0), dy = WeylOp::d(2, 1);
  WeylGB gb = weyl_gb({dx, dy}, WeightVector::integration(2));
  REQUIRE(gb.gens.size() == 2);
  CHECK(std::count(gb.gens.begin(), gb.gens.end(), dx) == 1);
  CHECK(std::count(gb.gens.begin(), gb.gens.end(), dy) == 1);

  std::vector<WeylOp> g2 = inw_gb({dx, dy}, WeightVector::integration(2));
  WeylOp th = theta(2, 0) + theta(2, 1);
  CHECK(inw_nf(th, g2, WeightVector::integration(2)).is_zero());
  CHECK(!inw_nf(th + WeylOp::constant(2, 2), g2, WeightVector::integration(2))
             .is_zero());

  BFunction bf = bfunction_integration({dx, dy}, WeightVector::integration(2));
  CHECK(bf.b == parse_poly("s + 2", {"s"}));
  CHECK(bf.integral_roots == std::vector<long>{-2});
  CHECK(!bf.k0.has_value());
}

TEST_CASE("weyl_gb of the unit ideal") {
  WeylGB gb = weyl_gb({WeylOp::constant(2, 1)}, WeightVector::integration(2));
  REQUIRE(gb.gens.size() == 1);
  CHECK(gb.gens[0] == WeylOp::constant(2, 1));
  BFunction bf =
      bfunction_integration({WeylOp::constant(2, 1)}, WeightVector::integration(2));
  CHECK(bf.b == parse_poly("1", {"s"}));
  CHECK(bf.integral_roots.empty());
  CHECK(!bf.k0.has_value());
}

TEST_CASE("b-function with no non-negative integral root") {
  WeylOp g1 = theta(2, 0) + WeylOp::constant(2, 1);
  BFunction bf = bfunction_integration({g1, WeylOp::d(2, 1)},
                                       WeightVector::integration(2));
  CHECK(bf.b == parse_poly("s + 1", {"s"}));
  CHECK(bf.integral_roots == std::vector<long>{-1});
  CHECK(!bf.k0.has_value());
}

TEST_CASE("b-function of the xy(x-y) frame ideal") {
  std::vector<WeylOp> gens = xyxmy_frame_ops();
  std::vector<WeylOp> g2 = inw_gb(gens, WeightVector::integration(2));
  WeylOp l1 = gens[0];
  CHECK(inw_nf(l1, g2, WeightVector::integration(2)).is_zero()); // θx+θy+3 ∈ in_w

  BFunction bf = bfunction_integration(gens, WeightVector::integration(2));
  REQUIRE(bf.k0.has_value());
  CHECK(*bf.k0 == 1);
  REQUIRE(!bf.integral_roots.empty());
  CHECK(bf.integral_roots.back() == 1);
  CHECK(bf.b.eval1(1) == 0);
}
