#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tame3/discdiag.hpp"
#include "tame3/error.hpp"

using namespace tame3;

namespace {

constexpr double PI = std::numbers::pi;
Automorphism A(const std::string& s) { return Automorphism::parse(s); }

std::vector<Automorphism> prefixes(const std::vector<Automorphism>& hs) {
  std::vector<Automorphism> out;
  Automorphism f;
  for (auto& h : hs) out.push_back(f = f.compose(h));
  return out;
}

LinkCycle cycle(const Weight& v, const std::vector<Automorphism>& cs, const std::vector<std::string>& js) {
  std::vector<Direction> d;
  for (auto& s : js) d.push_back(direction_at(v, s));
  return build_cycle(v, cs, d);
}

// faces around `x` on the side α1 > 2α2, glued, then doubled along the line α1 = 2α2
DiscDiagram doubled_half_star(const Arrangement& arr, const Vec3& x, const Automorphism& label) {
  DiscDiagram h;
  h.arr = arr;
  for (size_t fi = 0; fi < arr.faces.size(); ++fi) {
    bool touch = false;
    Q r1 = 0, r2 = 0;
    for (auto& he : arr.faces[fi].boundary) {
      auto& a = arr.vertices[arr.tail(he)].alpha;
      if (Weight(a) == Weight(x)) touch = true;
      r1 += a[0] / a[2];
      r2 += a[1] / a[2];
    }
    if (touch && r1 > 2 * r2) h.faces.push_back({static_cast<int>(fi), Automorphism()});
  }
  h.glue_adjacent();
  auto t = topology(h);
  int start = -1, len = 0;
  auto line = AdmissibleLine::parse("a1=2a2");
  for (size_t i = 0; i < t.boundary.size(); ++i) {
    auto& e = arr.edges[t.edges[t.boundary[i]].arr_edge];
    if (e.line >= 0 && arr.lines[e.line] == line) {
      if (start < 0) start = static_cast<int>(i);
      ++len;
    }
  }
  REQUIRE(len > 0);
  return double_along_arc(h, start, len, label);
}

DiscDiagram single_face(const Arrangement& arr, int face) {
  DiscDiagram d;
  d.arr = arr;
  d.faces.push_back({face, Automorphism()});
  return d;
}

}  // namespace

TEST_CASE("single flat face") {
  auto arr = arrangement(Window::parse("a1/a2 in [34/25,69/50]; a2/a3 in [53/25,107/50]"));
  REQUIRE(arr.faces.size() == 1);
  auto d = single_face(arr, 0);
  auto t = topology(d);
  CHECK(t.boundary.size() == 4);
  auto c = curvatures(d, t);
  double total = 0;
  for (size_t v = 0; v < t.vertices.size(); ++v) {
    CHECK_FALSE(t.vertices[v].interior);
    total += c.vertex[v];
  }
  for (double k : c.edge) CHECK(std::fabs(k) < 1e-12);
  CHECK(std::fabs(total - 2 * PI) < 1e-12);
  CHECK(std::fabs(gauss_bonnet(d) - 2 * PI) < 1e-12);
  CHECK(folding_locus(d).empty());
  CHECK(is_x_reduced(d).reduced);
}

TEST_CASE("faces with a curved side") {
  auto arr = arrangement(Window::parse("a1/a2 in [1,3]; a2/a3 in [1,3]"));
  bool curved = false;
  for (size_t f = 0; f < arr.faces.size(); ++f) {
    for (auto& he : arr.faces[f].boundary) curved = curved || !arr.edges[he.edge].straight;
    CHECK(std::fabs(gauss_bonnet(single_face(arr, static_cast<int>(f))) - 2 * PI) < 1e-8);
  }
  CHECK(curved);
}

TEST_CASE("flat interior vertices") {
  auto arr = arrangement(Window::parse("a1/a2 in [1,3]; a2/a3 in [1,3]"));
  DiscDiagram d;
  d.arr = arr;
  for (size_t f = 0; f < arr.faces.size(); ++f) d.faces.push_back({static_cast<int>(f), Automorphism()});
  d.glue_adjacent();
  auto t = topology(d);
  auto c = curvatures(d, t);
  for (size_t v = 0; v < t.vertices.size(); ++v)
    if (t.vertices[v].interior) CHECK(std::fabs(c.vertex[v]) < 1e-9);
  CHECK(std::fabs(gauss_bonnet(d) - 2 * PI) < 1e-8);
  CHECK(folding_locus(d, t).empty());
}

TEST_CASE("invalid diagrams") {
  auto arr = arrangement(Window::parse("a1/a2 in [1,3]; a2/a3 in [1,3]"));
  DiscDiagram d;
  d.arr = arr;
  d.faces.push_back({0, Automorphism()});
  d.faces.push_back({0, Automorphism()});  // two disjoint copies
  CHECK_THROWS_AS(topology(d), Error);
  DiscDiagram empty;
  empty.arr = arr;
  CHECK_THROWS_AS(topology(empty), Error);
}

TEST_CASE("folds, orientation and reducedness") {
  auto arr = arrangement(Window::parse("a1/a2 in [3/2,5/2]; a2/a3 in [3/2,5/2]"));
  Vec3 x{4, 2, 1};
  auto good = doubled_half_star(arr, x, A("(x1 + x2^2 + x2^3, x2, x3)"));
  auto t = topology(good);
  auto folds = folding_locus(good, t);
  REQUIRE(folds.size() == 2);
  for (auto& f : folds) {
    REQUIRE(f.oriented);
    // oriented away from e3, so α3/α2 decreases
    auto& from = good.arr.vertices[t.vertices[(*f.oriented)[0]].arr_vertex].alpha;
    auto& to = good.arr.vertices[t.vertices[(*f.oriented)[1]].arr_vertex].alpha;
    CHECK(from[2] / from[1] > to[2] / to[1]);
  }
  CHECK(is_x_reduced(good).reduced);
  auto bad = doubled_half_star(arr, x, A("(x1 + x2^2, x2, x3)"));
  auto r = is_x_reduced(bad);
  CHECK_FALSE(r.reduced);
  CHECK(r.witness.has_value());
  CHECK(std::fabs(gauss_bonnet(good) - 2 * PI) < 1e-8);

  auto m = star_classify(good, find_vertex(t, good, x));
  CHECK(m.kind == StarTemplate::B);
  CHECK(std::fabs(m.total_angle - 2 * PI) < 1e-9);
}

TEST_CASE("folds on the boundary of the dominant chamber are excluded") {
  auto arr = arrangement(Window::parse("a1/a2 in [3/2,5/2]; a2/a3 in [1,2]"));
  // faces touching α2 = α3, doubled across it
  DiscDiagram h;
  h.arr = arr;
  for (size_t fi = 0; fi < arr.faces.size(); ++fi)
    for (auto& he : arr.faces[fi].boundary)
      if (arr.on_nabla_boundary(he.edge)) {
        h.faces.push_back({static_cast<int>(fi), Automorphism()});
        break;
      }
  REQUIRE(h.faces.size() >= 1);
  h.faces.resize(1);
  auto t = topology(h);
  int start = -1;
  for (size_t i = 0; i < t.boundary.size(); ++i)
    if (arr.on_nabla_boundary(t.edges[t.boundary[i]].arr_edge)) start = static_cast<int>(i);
  REQUIRE(start >= 0);
  auto d = double_along_arc(h, start, 1, A("(x1, x3, x2)"));
  CHECK(folding_locus(d).empty());
}

TEST_CASE("star templates from link cycles") {
  auto h1 = Automorphism(Triple{Polynomial::var(0) - Polynomial::parse("x2 - x3^2").pow(10), Polynomial::var(1),
                                Polynomial::var(2)});
  auto c = cycle(Weight::parse("[20,2,1]"),
                 prefixes({A("(x1, x2 - x3^2, x3)"), h1, A("(x1, x2 + x3^2, x3)"), A("(x1 + x2^10, x2, x3)")}),
                 {"[10,1,0]", "s", "[0,0,1]", "s"});
  auto arr = arrangement(Window::parse("a1/a2 in [9,11]; a2/a3 in [3/2,5/2]"));
  auto d = star_diagram(arr, c);
  auto t = topology(d);
  auto m = star_classify(d, find_vertex(t, d, Vec3{20, 2, 1}));
  CHECK((m.kind == StarTemplate::E || m.kind == StarTemplate::F || m.kind == StarTemplate::G));
  CHECK(m.marks == "FSFS");
  CHECK(is_x_reduced(d).reduced);
  CHECK(std::fabs(gauss_bonnet(d) - 2 * PI) < 1e-8);

  std::string x3p = "x3^30";
  auto b = prefixes({A("(x1, x2 - 2*" + x3p + ", x3)"), A("(x1 - x2*x3, x2, x3)"), A("(x1, x2 + " + x3p + ", x3)"),
                     A("(x1 + 2*x2*x3, x2, x3)"), A("(x1, x2 + " + x3p + ", x3)"), A("(x1 - x2*x3, x2, x3)")});
  Weight v(Vec3{31, 30, 1});
  auto cb = cycle(v, b, {"[1,0,1]", "s", "[1,0,1]", "s", "[1,0,1]", "s"});
  auto arr2 = arrangement(Window::parse("a1/a2 in [301/300,32/30]; a2/a3 in [59/2,61/2]"));
  auto db = star_diagram(arr2, cb);
  auto tb = topology(db);
  CHECK(star_classify(db, find_vertex(tb, db, v.rep())).kind == StarTemplate::I);
}

TEST_CASE("template matcher") {
  const double t = PI / 3;
  CHECK(match_star("", {}) == StarTemplate::NoFold);
  CHECK(match_star("FSFS", {2 * t, t, t, 2 * t}) == StarTemplate::E);
  CHECK(match_star("FF", {3 * t, 3 * t}) == StarTemplate::B);
  CHECK(match_star("FF", {3.2 * t, 2.8 * t}) == StarTemplate::NoMatch);
  CHECK(match_star("FFF", {2 * t, 2 * t, 2 * t}) == StarTemplate::A);
  CHECK(match_star("FFFFFF", {1.1 * t, 1.1 * t, 1.1 * t, 1.1 * t, 1.1 * t, 1.1 * t}) == StarTemplate::I);
}

TEST_CASE("property: Gauss-Bonnet on random discs") {
  auto arr = arrangement(Window::parse("a1/a2 in [1,4]; a2/a3 in [1,4]"));
  for (unsigned s = 0; s < 30; ++s) {
    auto d = random_diagram(arr, 30, s);
    CHECK(d.faces.size() <= 30);
    CHECK(std::fabs(gauss_bonnet(d) - 2 * PI) < 1e-8);
    auto t = topology(d);
    auto d2 = double_along_arc(d, static_cast<int>(s % t.boundary.size()),
                               std::max<int>(1, static_cast<int>(t.boundary.size()) / 3), A("(x1 + x2^2 + x2^3, x2, x3)"));
    CHECK(std::fabs(gauss_bonnet(d2) - 2 * PI) < 1e-8);
  }
}
