#include <doctest.h>

#include <random>

#include "tame3/error.hpp"
#include "tame3/poly.hpp"
#include "test_util.hpp"

using namespace tame3;

TEST_CASE("ring operations") {
  auto P = Polynomial::parse;
  CHECK((P("x1") + P("-x1")).is_zero());
  CHECK(P("x2+x3") * P("x3-x2") == P("x3^2-x2^2"));
  CHECK(P("x1").scale(Q(2, 3)) == P("2/3*x1"));
  CHECK(P("x1+x2").pow(3) == P("x1^3+3*x1^2*x2+3*x1*x2^2+x2^3"));
  CHECK(P("0").degree() == -1);
  CHECK(P("x2*x3^4 + x1").degree() == 5);
}

TEST_CASE("parse and print round trip") {
  for (auto s : {"x1 + x2*x3", "-2/3*x1^2 + 5", "x3^12 - x2*x3 + x1", "0", "7/2"}) {
    auto p = Polynomial::parse(s);
    CHECK(Polynomial::parse(p.str()) == p);
  }
  CHECK_THROWS_AS(Polynomial::parse("x4"), Error);
  CHECK_THROWS_AS(Polynomial::parse("x1 +"), Error);
  CHECK_THROWS_AS(Polynomial::parse("x1^"), Error);
}

TEST_CASE("composition") {
  auto P = Polynomial::parse;
  auto T = [&](const char* a, const char* b, const char* c) { return Triple{P(a), P(b), P(c)}; };
  CHECK(P("x1").compose(T("x1+x2*x3", "x2", "x3")) == P("x1+x2*x3"));
  CHECK(P("x1^2").compose(T("x1+x2", "x2", "x3")) == P("x1^2+2*x1*x2+x2^2"));
  CHECK(P("x2^2-x3^2").compose(T("x1", "x2+x3", "x3")) == P("x2^2+2*x2*x3"));
}

TEST_CASE("derivatives") {
  auto P = Polynomial::parse;
  CHECK((P("x2+x3").pow(2) * P("x3")).derivative(1) == P("2*x2*x3 + 2*x3^2"));
  CHECK(P("x2^3").derivative(0).is_zero());
  CHECK(P("x3^7").derivative(2) == P("7*x3^6"));
}

TEST_CASE("weighted homogeneous parts") {
  auto P = Polynomial::parse;
  auto a = P("x2*x3^2").weighted_parts({1, 3, 1});
  REQUIRE(a.size() == 1);
  CHECK(a[0].first == 5);
  auto b = P("x2 + x3^2").weighted_parts({1, 2, 1});
  REQUIRE(b.size() == 1);
  CHECK(b[0].first == 2);
  CHECK(b[0].second.size() == 2);
  auto c = P("x2 + x3").weighted_parts({1, 2, 1});
  REQUIRE(c.size() == 2);
  CHECK(c[0].first == 1);
  CHECK(c[1].first == 2);
}

// Evaluation at rational points is an independent check of the arithmetic.
TEST_CASE("property: arithmetic commutes with evaluation") {
  std::mt19937 rng(11);
  for (int n = 0; n < 200; ++n) {
    auto p = testutil::random_poly(rng, 4, 5), q = testutil::random_poly(rng, 4, 5);
    auto f = Triple{testutil::random_poly(rng, 2, 3), testutil::random_poly(rng, 2, 3), testutil::random_poly(rng, 2, 3)};
    auto x = testutil::random_point(rng);
    CHECK((p + q).eval(x) == p.eval(x) + q.eval(x));
    CHECK((p * q).eval(x) == p.eval(x) * q.eval(x));
    std::array<Q, 3> fx{f[0].eval(x), f[1].eval(x), f[2].eval(x)};
    CHECK(p.compose(f).eval(x) == p.eval(fx));
    // weighted parts sum back to p
    Polynomial sum;
    for (auto& [d, part] : p.weighted_parts({2, 3, 1})) sum += part;
    CHECK(sum == p);
  }
}

TEST_CASE("property: Leibniz rule") {
  std::mt19937 rng(12);
  for (int n = 0; n < 100; ++n) {
    auto p = testutil::random_poly(rng, 4, 4), q = testutil::random_poly(rng, 4, 4);
    for (int i = 0; i < 3; ++i) CHECK((p * q).derivative(i) == p.derivative(i) * q + p * q.derivative(i));
  }
}
