#include <doctest.h>

#include <random>

#include "tame3/error.hpp"
#include "tame3/tame.hpp"
#include "test_util.hpp"

using namespace tame3;

namespace {
Automorphism A(const char* s) { return Automorphism::parse(s); }

// six maps composing to the identity (c=1, c'=2, b=1, p=2, β=1)
std::vector<Automorphism> six_map_cycle() {
  return {A("(x1, x2 - 2*x3^2, x3)"), A("(x1 - x2*x3, x2, x3)"), A("(x1, x2 + x3^2, x3)"),
          A("(x1 + 2*x2*x3, x2, x3)"), A("(x1, x2 + x3^2, x3)"), A("(x1 - x2*x3, x2, x3)")};
}
}  // namespace

TEST_CASE("parse") {
  auto e = A("(x1 + x2*x3, x2, x3)");
  CHECK(is_elementary(e));
  CHECK(e.jacobian() == 1);
  CHECK_THROWS_AS(A("(x1, x1, x3)"), Error);
  try {
    A("(x1, x1, x3)");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::NotInvertible);
  }
  auto d = A("(2/3*x1, x2, x3)");
  CHECK(is_linear(d));
  CHECK(d.jacobian() == Q(2, 3));
  CHECK_THROWS_AS(A("(x1, x2)"), Error);
}

TEST_CASE("composition") {
  auto tau = A("(x2, x1, x3)"), e = A("(x1 + x2^2*x3, x2, x3)");
  CHECK(tau.compose(e) == A("(x2, x1 + x2^2*x3, x3)"));
  CHECK(e.compose(Automorphism()) == e);
  Automorphism f;
  for (auto& h : six_map_cycle()) f = f.compose(h);
  CHECK(f.is_identity());
}

TEST_CASE("inverses and words") {
  CHECK(A("(x1 + x2^2, x2, x3)").inverse() == A("(x1 - x2^2, x2, x3)"));
  auto tau = A("(x2, x1, x3)"), e = A("(x1 + x2^2*x3, x2, x3)");
  auto w = TameWord::from({tau, e});
  auto inv = invert_word(w);
  REQUIRE(inv.letters.size() == 2);
  CHECK(inv.letters[0].map == e.inverse());
  CHECK(inv.letters[1].map == tau.inverse());
  CHECK(w.realize().compose(inv.realize()).is_identity());
  CHECK(invert_word(TameWord{}).letters.empty());
}

TEST_CASE("subgroup membership") {
  CHECK(member(A("(x1 + x2^3, x2 + x3^2, x3)"), Subgroup::H));
  CHECK(member(A("(x2, x1, x3)"), Subgroup::K));
  CHECK_FALSE(member(A("(x2, x1, x3)"), Subgroup::H));
  CHECK(member(A("(x1 + x2*x3, x2, x3)"), Subgroup::B));
  CHECK(member(A("(x1 + x3^5, x2 + x3, x3)"), Subgroup::KH));
  CHECK_FALSE(member(A("(x1 + x2^2, x2, x3)"), Subgroup::A));
}

TEST_CASE("property: composition is associative and inverses cancel") {
  std::mt19937 rng(21);
  for (int n = 0; n < 60; ++n) {
    auto f = testutil::random_tame(rng, 2, 2), g = testutil::random_tame(rng, 2, 2),
         h = testutil::random_tame(rng, 1, 2);
    CHECK(f.compose(g).compose(h) == f.compose(g.compose(h)));
    CHECK(f.compose(f.inverse()).is_identity());
    CHECK(f.inverse().compose(f).is_identity());
    // (f∘g)_i evaluated at x equals f_i(g(x))
    auto x = testutil::random_point(rng);
    auto fg = f.compose(g);
    std::array<Q, 3> gx{g[0].eval(x), g[1].eval(x), g[2].eval(x)};
    for (int i = 0; i < 3; ++i) CHECK(fg[i].eval(x) == f[i].eval(gx));
    CHECK(fg.jacobian() == f.jacobian() * g.jacobian());
  }
}
