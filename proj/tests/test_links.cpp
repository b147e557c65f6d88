#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "tame3/error.hpp"
#include "tame3/links.hpp"

using namespace tame3;

namespace {

constexpr double PI = std::numbers::pi;
Automorphism A(const std::string& s) { return Automorphism::parse(s); }
Weight W(const char* s) { return Weight::parse(s); }

std::vector<Automorphism> prefixes(const std::vector<Automorphism>& hs) {
  std::vector<Automorphism> out;
  Automorphism f;
  for (auto& h : hs) out.push_back(f = f.compose(h));
  return out;
}

LinkCycle cycle(const Weight& v, const std::vector<Automorphism>& cs, const std::vector<std::string>& js,
                const std::vector<int>& sweeps = {}) {
  std::vector<Direction> d;
  for (auto& s : js) d.push_back(direction_at(v, s));
  return build_cycle(v, cs, d, sweeps);
}

std::vector<Automorphism> six_map_cycle(int p) {
  std::string x3p = "x3^" + std::to_string(p);
  return prefixes({A("(x1, x2 - 2*" + x3p + ", x3)"), A("(x1 - x2*x3, x2, x3)"), A("(x1, x2 + " + x3p + ", x3)"),
                   A("(x1 + 2*x2*x3, x2, x3)"), A("(x1, x2 + " + x3p + ", x3)"), A("(x1 - x2*x3, x2, x3)")});
}

}  // namespace

TEST_CASE("vertex kinds and link vertices") {
  CHECK(vertex_kind(W("[1,1,1]")) == VertexKind::Center);
  CHECK(vertex_kind(W("[2,2,1]")) == VertexKind::MM1);
  CHECK(vertex_kind(W("[2,1,1]")) == VertexKind::M11);
  CHECK(vertex_kind(W("[3,2,1]")) == VertexKind::Interior);
  std::set<std::string> labels;
  for (auto& d : link_vertices(W("[3,2,1]"))) labels.insert(d.label);
  CHECK(labels == std::set<std::string>{"q", "s", "[3,0,1]", "[0,1,0]", "[1,0,1]", "[1,1,0]"});
  CHECK_THROWS_AS(direction_at(W("[2,1,1]"), "[1,2"), Error);
}

TEST_CASE("link profiles") {
  auto p = link_profile(W("[3,1,1]"), Automorphism(), A("(x1 + x2*x3^2, x2, x3)"));
  CHECK_FALSE(p.full);
  REQUIRE(p.shared.size() == 2);
  CHECK(p.shared[0].label == "[1,1,0]");
  CHECK(p.tags[0] == "a1=a2+2a3");
  CHECK(p.shared[1].label == "q");
  // the map does not fix [2,1,1]: 2 < 1 + 2
  CHECK_THROWS_AS(link_profile(W("[2,1,1]"), Automorphism(), A("(x1 + x2*x3^2, x2, x3)")), Error);
  auto lin = link_profile(W("[2,1,1]"), Automorphism(), A("(x1, x2 + x3, x3)"));
  REQUIRE(lin.shared.size() == 2);
  CHECK(lin.shared[0].label == "s");
  CHECK(lin.shared[1].label == "q");
  auto same = A("(x1 + x2^2, x2, x3)");
  CHECK(link_profile(W("[2,1,1]"), same, same).full);
}

TEST_CASE("apartment cycles have length 2π") {
  auto v = W("[2,1,1]");
  auto c = cycle(v, {Automorphism(), A("(x1, x3, x2)")}, {"q", "s"});
  CHECK(std::fabs(c.total_length - 2 * PI) < 1e-9);
  CHECK(classify_cycle(c).kind == CycleClass::SingleApartment);
  auto u = W("[3,2,1]");
  auto d = cycle(u, {Automorphism(), A("(x1 + x2*x3, x2, x3)")}, {"[1,0,1]", "[1,1,0]"}, {1, -1});
  CHECK(std::fabs(d.total_length - 2 * PI) < 1e-9);
  CHECK(classify_cycle(d).kind == CycleClass::TwoApartments);
}

TEST_CASE("six-chamber cycle at [2,1,1]") {
  auto cs = prefixes({A("(x1, x2, x3 - x2)"), A("(x1 - 2*x2*x3 + x3^2, x2, x3)"), A("(x1, x3, x2 + x3)"),
                      A("(x1 + x3^2, x2, x3)"), A("(x1, x3, x2)"), A("(x1 - x3^2, x2, x3)")});
  CHECK(cs.back().is_identity());
  auto c = cycle(W("[2,1,1]"), cs, {"[1,1,0]", "s", "[0,1,0]", "s", "[0,1,0]", "s"});
  CHECK(std::fabs(c.total_length - (2 * PI + PI / 3)) < 1e-6);
  int thirds = 0, halves = 0;
  for (auto& s : c.segments) {
    thirds += std::fabs(s.length - PI / 3) < 1e-9;
    halves += std::fabs(s.length - PI / 2) < 1e-9;
  }
  CHECK(thirds == 4);
  CHECK(halves == 2);
  // default ε is below π/3, so this cycle is not absorbed by a catalogue pattern
  auto cl = classify_cycle(c);
  CHECK(cl.epsilon < PI / 3);
  CHECK(cl.kind == CycleClass::ExceedsThreshold);
}

TEST_CASE("six-map identity cycles") {
  auto small = cycle(W("[3,2,1]"), six_map_cycle(2), {"[1,0,1]", "s", "[1,0,1]", "s", "[1,0,1]", "s"});
  CHECK(small.segments.size() == 6);
  CHECK(small.total_length >= 2 * PI - 1e-6);
  auto large = cycle(Weight(Vec3{31, 30, 1}), six_map_cycle(30), {"[1,0,1]", "s", "[1,0,1]", "s", "[1,0,1]", "s"});
  CHECK(large.total_length >= 2 * PI - 1e-6);
  CHECK(classify_cycle(large).kind == CycleClass::SixRun);
}

TEST_CASE("four-run equality configuration") {
  auto h1 = Automorphism(Triple{Polynomial::var(0) - Polynomial::parse("x2 - x3^2").pow(10), Polynomial::var(1),
                                Polynomial::var(2)});
  auto cs = prefixes({A("(x1, x2 - x3^2, x3)"), h1, A("(x1, x2 + x3^2, x3)"), A("(x1 + x2^10, x2, x3)")});
  CHECK(cs.back().is_identity());
  auto c = cycle(W("[20,2,1]"), cs, {"[10,1,0]", "s", "[0,0,1]", "s"});
  CHECK(std::fabs(c.total_length - 2 * PI) < 1e-9);
  CHECK(classify_cycle(c).kind == CycleClass::FourRun);
}

TEST_CASE("six-run cycle through s") {
  auto cs = prefixes({A("(x1 - x3^31, x2 - x3^30, x3)"), A("(x1 + x2*x3, x2, x3)"), A("(x1, x2 + x3^30, x3)"),
                      A("(x1 - x2*x3, x2, x3)")});
  auto c = cycle(Weight(Vec3{31, 30, 1}), cs, {"[1,0,1]", "s", "[1,0,1]", "[0,1,0]"});
  CHECK(c.total_length >= 2 * PI);
  CHECK(classify_cycle(c).kind == CycleClass::SixRunThroughS);
}

TEST_CASE("junction errors") {
  auto v = W("[2,1,1]");
  CHECK_THROWS_AS(cycle(v, {Automorphism(), A("(x1, x3, x2)")}, {"q"}), Error);
  try {
    cycle(v, {Automorphism(), A("(x1 + x2^2, x2, x3)")}, {"[0,1,0]", "s"});
  } catch (const Error& e) {
    CHECK((e.code() == Errc::JunctionNotShared || e.code() == Errc::NotInStabilizer));
  }
}

TEST_CASE("property: random link cycles are at least 2π") {
  const std::vector<Weight> vs{W("[3,3,1]"), W("[4,1,1]"), W("[5,2,1]"), W("[7,3,1]"), W("[2,2,1]")};
  for (unsigned seed = 0; seed < 40; ++seed) {
    auto& v = vs[seed % vs.size()];
    auto c = random_link_cycle(v, seed);
    CHECK(c.total_length >= 2 * PI - 1e-6);
    CHECK(!c.segments.empty());
  }
  CHECK_THROWS_AS(random_link_cycle(W("[1,1,1]"), 0), Error);
}
