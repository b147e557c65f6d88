#pragma once
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tame3/valuation.hpp"

namespace tame3 {

struct ChartPoint {
  double y = 0, t = 0;
};

ChartPoint chart(const Vec3& alpha);  // positive representative
inline ChartPoint chart(const Weight& w) { return chart(w.rep()); }
double distance(const Weight& a, const Weight& b);
std::array<double, 3> chart_inverse(const ChartPoint& p);  // representative with α1α2α3 = 1

// Exact tangent of the projective segment base→target, as dβ (sums to zero).
// target may lie on the boundary of the positive octant.
Vec3 tangent(const Vec3& base, const Vec3& target);
ChartPoint chart_vector(const Vec3& u);  // (dy, dt) of a dβ vector
double heading(const Vec3& u);           // atan2(dt, dy)
// sign of the oriented angle from u to v (positive = counterclockwise in the chart)
int orientation(const Vec3& u, const Vec3& v);
bool same_direction(const Vec3& u, const Vec3& v);
bool opposite_direction(const Vec3& u, const Vec3& v);
double angle_between(const Vec3& u, const Vec3& v);  // in [0, π]
// counterclockwise angle from u to v in [0, 2π)
double ccw_angle(const Vec3& u, const Vec3& v);

double angle_at(const Vec3& base, const Vec3& p, const Vec3& q);
inline double angle_at(const Weight& b, const Weight& p, const Weight& q) { return angle_at(b.rep(), p.rep(), q.rep()); }

// α_i = Σ_{k≠i} coef_k α_k, coef_i = 0.
struct AdmissibleLine {
  int target = 0;
  std::array<unsigned, 3> coef{0, 0, 0};

  static AdmissibleLine make(int target, unsigned cj, unsigned ck);  // coefficients in increasing index order
  static AdmissibleLine parse(std::string_view s);                   // "a1=2a2+a3"
  bool principal() const;
  std::array<long, 3> row() const;  // row·α = 0 on the line
  bool contains(const Vec3& a) const;
  std::array<Vec3, 2> ends() const;  // the two endpoints of the line on the boundary of ∇
  std::string str() const;
  AdmissibleLine canonical() const;
  friend bool operator==(const AdmissibleLine& a, const AdmissibleLine& b) {
    auto x = a.canonical(), y = b.canonical();
    return x.target == y.target && x.coef == y.coef;
  }
  friend bool operator<(const AdmissibleLine& a, const AdmissibleLine& b) {
    auto x = a.canonical(), y = b.canonical();
    return std::tie(x.target, x.coef) < std::tie(y.target, y.coef);
  }
};

std::vector<AdmissibleLine> lines_through(const Weight& alpha, bool interior_only = false);

// Signed turning of the chart image of the segment a→b on `line`.
double line_turning(const AdmissibleLine& line, const Vec3& a, const Vec3& b);
double segment_turning(const Vec3& a, const Vec3& b, bool straight);

struct Window {
  Q lo1, hi1, lo2, hi2;  // α1/α2 ∈ [lo1,hi1], α2/α3 ∈ [lo2,hi2]
  static Window parse(std::string_view s);  // "a1/a2 in [lo,hi]; a2/a3 in [lo,hi]"
  std::string str() const;
  bool contains(const Vec3& a) const;
};

// Planar subdivision of a window by the admissible lines meeting it.
struct Arrangement {
  struct Vertex {
    Vec3 alpha;       // exact, α3 = 1
    bool on_lines;    // lies on at least two distinct admissible lines
    std::vector<int> lines;
  };
  struct Edge {
    int a, b;    // vertex ids
    int line;    // index into `lines`, -1 for a window side that is not an admissible line
    int side;    // window side 0..3 or -1
    bool straight;
  };
  struct HalfEdge {
    int edge;
    bool forward;  // a→b
  };
  struct Face {
    std::vector<HalfEdge> boundary;  // counterclockwise in the chart
  };

  Window window;
  std::vector<AdmissibleLine> lines;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;
  std::vector<std::array<int, 2>> edge_faces;  // left/right face of a→b, -1 outside

  int tail(const HalfEdge& h) const { return h.forward ? edges[h.edge].a : edges[h.edge].b; }
  int head(const HalfEdge& h) const { return h.forward ? edges[h.edge].b : edges[h.edge].a; }
  int line_vertex_count() const;
  int line_edge_count() const;  // edges carried by admissible lines
  bool on_window_boundary(int edge) const { return edges[edge].side >= 0; }
  bool on_nabla_boundary(int edge) const;  // carried by α1=α2 or α2=α3
  int face_containing(const Vec3& alpha) const;
};

Arrangement arrangement(const Window& w);

}  // namespace tame3
