#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "tame3/error.hpp"
#include "tame3/nabla.hpp"

using namespace tame3;

namespace {

constexpr double PI = std::numbers::pi;
Weight W(const char* s) { return Weight::parse(s); }

std::set<std::string> names(const std::vector<AdmissibleLine>& ls) {
  std::set<std::string> out;
  for (auto& l : ls) out.insert(l.canonical().str());
  return out;
}

// every α_i = cj αj + ck αk with small coefficients that passes through w
std::set<std::string> lines_oracle(const Vec3& w, unsigned bound) {
  std::set<std::string> out;
  for (int i = 0; i < 3; ++i)
    for (unsigned cj = 0; cj <= bound; ++cj)
      for (unsigned ck = 0; ck <= bound; ++ck) {
        if (cj + ck == 0) continue;
        auto l = AdmissibleLine::make(i, cj, ck);
        if (l.contains(w)) out.insert(l.canonical().str());
      }
  return out;
}

// turning of the chart image of a→b: Simpson integral of signed curvature, with
// derivatives of the chart curve taken by central differences
double turning_oracle(const Vec3& a, const Vec3& b, int steps = 10000) {
  auto curve = [&](double t) {
    Vec3 p;
    for (int i = 0; i < 3; ++i) p[i] = a[i].get_d() * (1 - t) + b[i].get_d() * t;
    auto c = chart(p);
    return std::array<double, 2>{c.y, c.t};
  };
  const double h = 1e-4;
  auto kappa_ds = [&](double t) {
    auto m = curve(t - h), c = curve(t), p = curve(t + h);
    double x1 = (p[0] - m[0]) / (2 * h), y1 = (p[1] - m[1]) / (2 * h);
    double x2 = (p[0] - 2 * c[0] + m[0]) / (h * h), y2 = (p[1] - 2 * c[1] + m[1]) / (h * h);
    return (x1 * y2 - y1 * x2) / (x1 * x1 + y1 * y1);
  };
  // keep the stencil inside the segment
  double lo = 2 * h, hi = 1 - 2 * h, dt = (hi - lo) / steps, sum = kappa_ds(lo) + kappa_ds(hi);
  for (int k = 1; k < steps; ++k) sum += (k % 2 ? 4 : 2) * kappa_ds(lo + k * dt);
  double inner = sum * dt / 3;
  // the two end slivers, by the midpoint rule
  return inner + 2 * h * (kappa_ds(h) + kappa_ds(1 - h));
}

}  // namespace

TEST_CASE("chart and distance") {
  auto c = chart(W("[1,1,1]"));
  CHECK(c.y == doctest::Approx(0));
  CHECK(c.t == doctest::Approx(0));
  CHECK(distance(W("[2,1,1]"), W("[4,1,1]")) == doctest::Approx(std::log(2.0) * std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  auto back = chart_inverse(chart(W("[5,3,1]")));
  CHECK(back[0] / back[2] == doctest::Approx(5.0));
  CHECK(back[1] / back[2] == doctest::Approx(3.0));
}

TEST_CASE("angles") {
  // [1,1,1] and [1,1,0] lie on opposite sides of [2,2,1] along α1 = α2
  Vec3 m{2, 2, 1}, centre{1, 1, 1}, e{1, 1, 0};
  CHECK(std::fabs(angle_at(m, centre, e) - PI) < 1e-9);
  CHECK(std::fabs(angle_at(m, e, Vec3{1, 0, 0}) - PI / 3) < 1e-9);
  CHECK(std::fabs(angle_at(Vec3{1, 1, 1}, Vec3{1, 1, 0}, Vec3{1, 0, 0}) - PI / 3) < 1e-9);
  CHECK(std::fabs(angle_at(Vec3{4, 2, 1}, Vec3{2, 1, 1}, Vec3{8, 4, 1}) - PI) < 1e-9);
  // the link of [m,m,1] in ∇⁺ runs [1,1,0], [1,0,0], [m,0,1], [1,1,1] in steps of π/3
  for (int k = 2; k <= 6; ++k) {
    Vec3 v{k, k, 1};
    CHECK(std::fabs(angle_at(v, Vec3{1, 1, 0}, Vec3{1, 0, 0}) - PI / 3) < 1e-9);
    CHECK(std::fabs(angle_at(v, Vec3{1, 0, 0}, Vec3{k, 0, 1}) - PI / 3) < 1e-9);
    CHECK(std::fabs(angle_at(v, Vec3{k, 0, 1}, Vec3{1, 1, 1}) - PI / 3) < 1e-9);
  }
}

TEST_CASE("admissible lines") {
  CHECK(names(lines_through(W("[2,1,1]"))) == std::set<std::string>{"a2=a3", "a1=2a2", "a1=a2+a3", "a1=2a3"});
  for (int m = 3; m <= 10; ++m) CHECK(lines_through(Weight(Vec3{m, 1, 1})).size() == size_t(m + 2));
  auto l531 = names(lines_through(W("[5,3,1]")));
  CHECK(l531.count("a1=5a3"));
  CHECK(l531.count("a2=3a3"));
  CHECK(l531 == lines_oracle(Vec3{5, 3, 1}, 5));
  auto p = AdmissibleLine::parse("a1=2a2");
  CHECK(p.principal());
  CHECK_FALSE(AdmissibleLine::parse("a1=a2+a3").principal());
  CHECK(AdmissibleLine::parse(p.str()) == p);
  CHECK_THROWS_AS(AdmissibleLine::parse("a1=a1"), Error);
}

TEST_CASE("property: lines through random weights match brute force") {
  std::mt19937 rng(41);
  for (int n = 0; n < 40; ++n) {
    long c = 1 + rng() % 3, b = c + rng() % 4, a = b + rng() % 6;
    Vec3 w{a, b, c};
    CHECK(names(lines_through(Weight(w))) == lines_oracle(w, static_cast<unsigned>(a)));
  }
}

TEST_CASE("turning of admissible segments") {
  auto p = AdmissibleLine::parse("a1=2a2");
  CHECK(std::fabs(line_turning(p, Vec3{2, 1, 1}, Vec3{6, 3, 1})) < 1e-12);
  auto l = AdmissibleLine::parse("a1=a2+a3");
  Vec3 a{2, 1, 1}, b{3, 2, 1};
  double exact = line_turning(l, a, b);
  CHECK(std::fabs(exact) > 1e-3);
  CHECK(std::fabs(exact - turning_oracle(a, b)) < 1e-6);
  Vec3 c{5, 2, 3}, d{5, 3, 2};
  CHECK(std::fabs(segment_turning(c, d, false) - turning_oracle(c, d)) < 1e-6);
}

TEST_CASE("arrangements") {
  auto tiny = arrangement(Window::parse("a1/a2 in [34/25,69/50]; a2/a3 in [53/25,107/50]"));
  CHECK(tiny.faces.size() == 1);
  CHECK(tiny.line_vertex_count() == 0);
  auto local = arrangement(Window::parse("a1/a2 in [199/100,201/100]; a2/a3 in [1,101/100]"));
  CHECK(local.line_vertex_count() == 1);
  CHECK_THROWS_AS(arrangement(Window::parse("a1/a2 in [3,1]; a2/a3 in [1,2]")), Error);
  CHECK_THROWS_AS(Window::parse("a1/a2 in [1,3]"), Error);
}

TEST_CASE("property: arrangement invariants") {
  for (auto text : {"a1/a2 in [1,3]; a2/a3 in [1,3]", "a1/a2 in [1,4]; a2/a3 in [1,4]",
                    "a1/a2 in [3/2,7/2]; a2/a3 in [2,5]"}) {
    auto a = arrangement(Window::parse(text));
    long euler = long(a.vertices.size()) - long(a.edges.size()) + long(a.faces.size());
    CHECK(euler == 1);
    // every edge borders one face on each side unless it is on the window boundary
    for (size_t e = 0; e < a.edges.size(); ++e) {
      int inside = (a.edge_faces[e][0] >= 0) + (a.edge_faces[e][1] >= 0);
      CHECK(inside == (a.on_window_boundary(int(e)) ? 1 : 2));
    }
    for (auto& f : a.faces) {
      // closed boundary walk, counterclockwise: positive shoelace area in the chart
      double area = 0;
      for (size_t k = 0; k < f.boundary.size(); ++k) {
        auto& h = f.boundary[k];
        CHECK(a.head(h) == a.tail(f.boundary[(k + 1) % f.boundary.size()]));
        auto p = chart(a.vertices[a.tail(h)].alpha), q = chart(a.vertices[a.head(h)].alpha);
        area += p.y * q.t - q.y * p.t;
      }
      CHECK(area > 0);
    }
    // each arrangement vertex on two lines lies on every line it records
    for (auto& v : a.vertices)
      for (int li : v.lines) CHECK(a.lines[li].contains(v.alpha));
  }
}
