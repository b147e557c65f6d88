#include "tame3/discdiag.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "tame3/error.hpp"

namespace tame3 {

namespace {

constexpr double kPi = std::numbers::pi;

const Arrangement::HalfEdge& half_edge(const DiscDiagram& d, int f, int k) {
  auto& b = d.arr.faces[d.faces[f].arr_face].boundary;
  int n = static_cast<int>(b.size());
  return b[((k % n) + n) % n];
}

int face_size(const DiscDiagram& d, int f) { return static_cast<int>(d.arr.faces[d.faces[f].arr_face].boundary.size()); }

int corner_vertex_id(const DiscDiagram& d, int f, int k) { return d.arr.tail(half_edge(d, f, k)); }

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

[[noreturn]] void invalid(const std::string& why) { throw Error(Errc::InvalidDiagram, why); }

}  // namespace

void DiscDiagram::glue_adjacent() {
  std::map<int, int> copy_of;
  std::set<int> repeated;
  for (size_t f = 0; f < faces.size(); ++f)
    if (!copy_of.emplace(faces[f].arr_face, static_cast<int>(f)).second) repeated.insert(faces[f].arr_face);
  std::set<std::pair<int, int>> glued;
  for (auto& g : gluings) {
    glued.insert({g.f1, g.k1});
    glued.insert({g.f2, g.k2});
  }
  for (size_t f = 0; f < faces.size(); ++f) {
    if (repeated.count(faces[f].arr_face)) continue;
    auto& b = arr.faces[faces[f].arr_face].boundary;
    for (size_t k = 0; k < b.size(); ++k) {
      int other = arr.edge_faces[b[k].edge][b[k].forward ? 1 : 0];
      if (other < 0 || repeated.count(other)) continue;
      auto it = copy_of.find(other);
      if (it == copy_of.end() || it->second < static_cast<int>(f)) continue;
      auto& ob = arr.faces[other].boundary;
      int k2 = 0;
      while (ob[k2].edge != b[k].edge) ++k2;
      if (glued.count({static_cast<int>(f), static_cast<int>(k)}) || glued.count({it->second, k2})) continue;
      gluings.push_back({static_cast<int>(f), static_cast<int>(k), it->second, k2});
    }
  }
}

DiagramTopology topology(const DiscDiagram& d) {
  int nf = static_cast<int>(d.faces.size());
  if (nf == 0) invalid("diagram has no faces");
  std::vector<int> offset(nf + 1, 0);
  for (int f = 0; f < nf; ++f) {
    if (d.faces[f].arr_face < 0 || d.faces[f].arr_face >= static_cast<int>(d.arr.faces.size()))
      invalid("face " + std::to_string(f) + " names no arrangement face");
    offset[f + 1] = offset[f] + face_size(d, f);
  }
  int nc = offset[nf];
  auto cid = [&](int f, int k) {
    int n = face_size(d, f);
    return offset[f] + ((k % n) + n) % n;
  };

  std::vector<int> partner(nc, -1);
  UnionFind uf(nc);
  for (auto& g : d.gluings) {
    if (g.f1 < 0 || g.f1 >= nf || g.f2 < 0 || g.f2 >= nf || g.k1 < 0 || g.k2 < 0 || g.k1 >= face_size(d, g.f1) ||
        g.k2 >= face_size(d, g.f2))
      invalid("gluing out of range");
    int s1 = cid(g.f1, g.k1), s2 = cid(g.f2, g.k2);
    if (s1 == s2) invalid("half-edge glued to itself");
    if (partner[s1] >= 0 || partner[s2] >= 0) invalid("half-edge glued twice");
    auto& h1 = half_edge(d, g.f1, g.k1);
    auto& h2 = half_edge(d, g.f2, g.k2);
    if (h1.edge != h2.edge) invalid("glued half-edges lie on different arrangement edges");
    partner[s1] = s2;
    partner[s2] = s1;
    // corners at matching arrangement vertices are identified
    for (int a : {g.k1, g.k1 + 1})
      for (int b : {g.k2, g.k2 + 1})
        if (corner_vertex_id(d, g.f1, a) == corner_vertex_id(d, g.f2, b)) uf.unite(cid(g.f1, a), cid(g.f2, b));
  }

  DiagramTopology t;
  t.corner_vertex.resize(nf);
  t.side_edge.resize(nf);
  std::map<int, int> vid;
  std::vector<std::vector<int>> members;
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < face_size(d, f); ++k) {
      int root = uf.find(cid(f, k));
      auto [it, fresh] = vid.emplace(root, static_cast<int>(t.vertices.size()));
      if (fresh) {
        t.vertices.push_back({corner_vertex_id(d, f, k), true, {}});
        members.emplace_back();
      }
      t.corner_vertex[f].push_back(it->second);
      members[it->second].push_back(cid(f, k));
    }
  std::vector<std::array<int, 2>> corner_of(nc);
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < face_size(d, f); ++k) corner_of[cid(f, k)] = {f, k};

  // walk around each vertex; a corner (f,k) has sides k (outgoing) and k-1 (incoming)
  for (size_t v = 0; v < t.vertices.size(); ++v) {
    auto& V = t.vertices[v];
    auto sides_of = [&](int c) {
      auto [f, k] = corner_of[c];
      return std::array<int, 2>{cid(f, k), cid(f, k - 1)};
    };
    auto corner_across = [&](int side) {
      int s = partner[side];
      auto [f, k] = corner_of[s];
      int x = V.arr_vertex;
      return corner_vertex_id(d, f, k) == x ? s : cid(f, k + 1);
    };
    int start = members[v][0];
    int entry = -1;
    for (int c : members[v]) {
      auto s = sides_of(c);
      if (partner[s[0]] < 0 || partner[s[1]] < 0) {
        start = c;
        entry = partner[s[0]] < 0 ? s[0] : s[1];
        V.interior = false;
        break;
      }
    }
    if (V.interior) entry = sides_of(start)[1];
    int c = start, in = entry;
    std::set<int> seen;
    while (true) {
      if (!seen.insert(c).second) invalid("vertex link is not a path or cycle");
      V.corners.push_back(corner_of[c]);
      auto s = sides_of(c);
      int outside = s[0] == in ? s[1] : s[0];
      if (partner[outside] < 0) break;
      int next = corner_across(outside);
      if (next == start) break;
      c = next;
      in = partner[outside];
    }
    if (seen.size() != members[v].size()) invalid("vertex is a pinch point, not a disc vertex");
  }

  // edges
  std::vector<int> edge_of(nc, -1);
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < face_size(d, f); ++k) {
      int s = cid(f, k);
      if (edge_of[s] >= 0) continue;
      DiagramTopology::Edge e;
      e.arr_edge = half_edge(d, f, k).edge;
      e.sides.push_back({f, k});
      int id = static_cast<int>(t.edges.size());
      edge_of[s] = id;
      if (partner[s] >= 0) {
        e.sides.push_back(corner_of[partner[s]]);
        edge_of[partner[s]] = id;
      }
      bool fw = half_edge(d, f, k).forward;
      e.v0 = t.corner_vertex[f][fw ? k : (k + 1) % face_size(d, f)];
      e.v1 = t.corner_vertex[f][fw ? (k + 1) % face_size(d, f) : k];
      t.edges.push_back(e);
    }
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < face_size(d, f); ++k) t.side_edge[f].push_back(edge_of[cid(f, k)]);

  // connectivity and Euler characteristic
  UnionFind fu(nf);
  for (auto& g : d.gluings) fu.unite(g.f1, g.f2);
  for (int f = 1; f < nf; ++f)
    if (fu.find(f) != fu.find(0)) invalid("diagram is not connected");
  long chi = static_cast<long>(t.vertices.size()) - static_cast<long>(t.edges.size()) + nf;
  if (chi != 1) invalid("Euler characteristic " + std::to_string(chi) + ", expected 1 for a disc");
  std::vector<int> bd;
  for (size_t e = 0; e < t.edges.size(); ++e)
    if (t.edges[e].sides.size() == 1) bd.push_back(static_cast<int>(e));
  if (bd.empty()) invalid("diagram has no boundary");
  // order the boundary cycle
  std::multimap<int, int> at;
  for (int e : bd) {
    at.emplace(t.edges[e].v0, e);
    at.emplace(t.edges[e].v1, e);
  }
  std::set<int> used{bd[0]};
  t.boundary.push_back(bd[0]);
  int cur = t.edges[bd[0]].v1;
  while (used.size() < bd.size()) {
    int nxt = -1;
    for (auto [it, end] = at.equal_range(cur); it != end; ++it)
      if (!used.count(it->second)) nxt = it->second;
    if (nxt < 0) invalid("boundary is not a single cycle");
    used.insert(nxt);
    t.boundary.push_back(nxt);
    cur = t.edges[nxt].v0 == cur ? t.edges[nxt].v1 : t.edges[nxt].v0;
  }

  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < face_size(d, f); ++k)
      if (!(corner_angle(d, f, k) > 1e-12)) invalid("non-positive corner angle");
  return t;
}

double corner_angle(const DiscDiagram& d, int face, int corner) {
  auto& A = d.arr;
  const Vec3& x = A.vertices[A.tail(half_edge(d, face, corner))].alpha;
  const Vec3& next = A.vertices[A.head(half_edge(d, face, corner))].alpha;
  const Vec3& prev = A.vertices[A.tail(half_edge(d, face, corner - 1))].alpha;
  return angle_at(x, next, prev);
}

double side_turning(const DiscDiagram& d, int face, int k) {
  auto& h = half_edge(d, face, k);
  auto& E = d.arr.edges[h.edge];
  double t = segment_turning(d.arr.vertices[E.a].alpha, d.arr.vertices[E.b].alpha, E.straight);
  return h.forward ? t : -t;
}

Curvatures curvatures(const DiscDiagram& d, const DiagramTopology& t) {
  Curvatures c;
  for (auto& v : t.vertices) {
    double sum = 0;
    for (auto [f, k] : v.corners) sum += corner_angle(d, f, k);
    c.vertex.push_back((v.interior ? 2 * kPi : kPi) - sum);
  }
  for (auto& e : t.edges) {
    double k = 0;
    for (auto [f, s] : e.sides) k += side_turning(d, f, s);
    c.edge.push_back(k);
  }
  return c;
}

Curvatures curvatures(const DiscDiagram& d) { return curvatures(d, topology(d)); }

double gauss_bonnet(const DiscDiagram& d) {
  auto c = curvatures(d);
  double s = 0;
  for (double x : c.vertex) s += x;
  for (double x : c.edge) s += x;
  return s;
}

std::vector<FoldEdge> folding_locus(const DiscDiagram& d, const DiagramTopology& t) {
  std::vector<FoldEdge> out;
  for (size_t e = 0; e < t.edges.size(); ++e) {
    auto& E = t.edges[e];
    if (E.sides.size() != 2) continue;
    if (d.arr.on_nabla_boundary(E.arr_edge)) continue;
    if (half_edge(d, E.sides[0][0], E.sides[0][1]).forward != half_edge(d, E.sides[1][0], E.sides[1][1]).forward)
      continue;
    FoldEdge fe{static_cast<int>(e), std::nullopt};
    auto& AE = d.arr.edges[E.arr_edge];
    if (AE.line >= 0 && d.arr.lines[AE.line].principal()) {
      auto& L = d.arr.lines[AE.line];
      int i = L.target, j = -1;
      for (int x = 0; x < 3; ++x)
        if (x != i && L.coef[x]) j = x;
      int k = 3 - i - j;
      const Vec3& a = d.arr.vertices[AE.a].alpha;
      const Vec3& b = d.arr.vertices[AE.b].alpha;
      // away from the vertex e_k of ∇: α_k/α_j decreases
      if (b[k] / b[j] < a[k] / a[j])
        fe.oriented = std::array<int, 2>{E.v0, E.v1};
      else
        fe.oriented = std::array<int, 2>{E.v1, E.v0};
    }
    out.push_back(fe);
  }
  return out;
}

std::vector<FoldEdge> folding_locus(const DiscDiagram& d) { return folding_locus(d, topology(d)); }

ReducedCheck is_x_reduced(const DiscDiagram& d) {
  auto t = topology(d);
  for (auto& fe : folding_locus(d, t)) {
    auto& E = t.edges[fe.edge];
    const Automorphism& f = d.faces[E.sides[0][0]].chamber;
    const Automorphism& g = d.faces[E.sides[1][0]].chamber;
    FixedRegion fr = fixed_region(f.inverse().compose(g));
    // the labels must agree along the edge anyway; the fold is redundant when they agree on the whole face
    auto& face = d.arr.faces[d.faces[E.sides[0][0]].arr_face];
    bool all_fixed = std::all_of(face.boundary.begin(), face.boundary.end(),
                                 [&](auto& h) { return fr.contains(d.arr.vertices[d.arr.tail(h)].alpha); });
    if (all_fixed) return {false, fe.edge};
  }
  return {};
}

const char* star_template_name(StarTemplate t) {
  switch (t) {
    case StarTemplate::NoFold: return "no-fold";
    case StarTemplate::A: return "a";
    case StarTemplate::B: return "b";
    case StarTemplate::C: return "c";
    case StarTemplate::D: return "d";
    case StarTemplate::E: return "e";
    case StarTemplate::F: return "f";
    case StarTemplate::G: return "g";
    case StarTemplate::H: return "h";
    case StarTemplate::I: return "i";
    case StarTemplate::NoMatch: return "no-match";
  }
  return "?";
}

StarTemplate match_star(const std::string& marks, const std::vector<double>& s) {
  constexpr double tol = 1e-9;
  auto third = [&](double x) {
    double r = x / (kPi / 3);
    return std::fabs(r - std::round(r)) * (kPi / 3) < tol && std::round(r) >= 1;
  };
  auto gt = [&](double x, double b) { return x > b + tol; };
  auto ge = [&](double x, double b) { return x > b - tol; };
  size_t n = marks.size();
  size_t folds = std::count(marks.begin(), marks.end(), 'F');
  if (folds == 0) return StarTemplate::NoFold;
  // sectors between consecutive fold edges, ignoring s
  std::vector<double> fs;
  {
    size_t first = marks.find('F');
    double acc = 0;
    for (size_t j = 0; j < n; ++j) {
      size_t i = (first + j) % n;
      acc += s[i];
      if (marks[(i + 1) % n] == 'F') {
        fs.push_back(acc);
        acc = 0;
      }
    }
  }
  auto all = [](const std::vector<double>& v, auto pred) { return std::all_of(v.begin(), v.end(), pred); };
  if (n == 4 && folds == 2 && marks[0] != marks[1] && marks[1] != marks[2]) {
    if (all(s, third)) return StarTemplate::E;
    for (size_t i = 0; i < 4; ++i) {
      if (marks[i] != 'F') continue;
      // the fold edge at mark i is the top one; s-edges sit on the two sides
      double tr = s[i], br = s[(i + 1) % 4], bl = s[(i + 2) % 4], tl = s[(i + 3) % 4];
      if (third(tl) && third(tr) && gt(bl, kPi / 3) && gt(br, kPi / 3)) return StarTemplate::F;
    }
    for (size_t i = 0; i < 4; ++i) {
      if (marks[i] != 'F') continue;
      double tr = s[i], br = s[(i + 1) % 4], bl = s[(i + 2) % 4], tl = s[(i + 3) % 4];
      if (gt(bl, kPi / 3) && gt(br, kPi / 3) && ge(tl + bl, kPi) && ge(tr + br, kPi)) return StarTemplate::G;
    }
  }
  if (fs.size() == 4)
    for (size_t i = 0; i < 4; ++i)
      if (gt(fs[i], kPi / 3) && gt(fs[(i + 1) % 4], kPi / 3) && gt(fs[(i + 2) % 4], 2 * kPi / 3) &&
          gt(fs[(i + 3) % 4], 2 * kPi / 3))
        return StarTemplate::H;
  if (fs.size() == 6 && all(fs, [&](double x) { return gt(x, kPi / 3); })) return StarTemplate::I;
  if (fs.size() == 3 && all(fs, third)) return StarTemplate::A;
  if (fs.size() == 2) {
    if (all(fs, third)) return StarTemplate::B;
    if (all(fs, [&](double x) { return gt(x, kPi); })) return StarTemplate::C;
    if (all(fs, [&](double x) { return ge(x, kPi); })) return StarTemplate::D;
  }
  return StarTemplate::NoMatch;
}

StarMatch star_classify(const DiscDiagram& d, int vertex, std::optional<double> epsilon) {
  auto t = topology(d);
  if (vertex < 0 || vertex >= static_cast<int>(t.vertices.size())) invalid("no such vertex");
  auto& V = t.vertices[vertex];
  if (!V.interior) invalid("star_classify needs an interior vertex");
  StarMatch m;
  Weight w(d.arr.vertices[V.arr_vertex].alpha);
  m.epsilon = epsilon ? *epsilon : default_epsilon(w);
  auto folds = folding_locus(d, t);
  std::map<int, const FoldEdge*> fold_of;
  for (auto& fe : folds) fold_of[fe.edge] = &fe;

  // corners in cyclic order; the edge between corner i and i+1 is the one they share
  size_t n = V.corners.size();
  std::vector<double> ang(n);
  std::vector<int> between(n, -1);
  m.total_angle = 0;
  for (size_t i = 0; i < n; ++i) {
    auto [f, k] = V.corners[i];
    ang[i] = corner_angle(d, f, k);
    m.total_angle += ang[i];
    auto [g, l] = V.corners[(i + 1) % n];
    std::set<int> mine{t.side_edge[f][k], t.side_edge[f][(k + face_size(d, f) - 1) % face_size(d, f)]};
    for (int e : {t.side_edge[g][l], t.side_edge[g][(l + face_size(d, g) - 1) % face_size(d, g)]})
      if (mine.count(e)) between[i] = e;
  }
  if (m.total_angle >= 2 * kPi + m.epsilon)
    throw Error(Errc::AngleTooLarge, "total angle " + std::to_string(m.total_angle / kPi) + "π at the vertex");

  // marks: fold edges, and non-fold edges leaving v in the direction s
  Vec3 su = direction_at(w, "s").u;
  const Vec3& X = d.arr.vertices[V.arr_vertex].alpha;
  std::vector<size_t> mark_pos;
  for (size_t i = 0; i < n; ++i) {
    auto& AE = d.arr.edges[t.edges[between[i]].arr_edge];
    int other = AE.a == V.arr_vertex ? AE.b : AE.a;
    bool is_fold = fold_of.count(between[i]) > 0;
    bool is_s = !is_fold && same_direction(tangent(X, d.arr.vertices[other].alpha), su);
    if (!is_fold && !is_s) continue;
    mark_pos.push_back(i);
    m.marks.push_back(is_fold ? 'F' : 'S');
    if (!is_fold) {
      m.orientation.push_back(0);
      continue;
    }
    auto* fe = fold_of[between[i]];
    m.orientation.push_back(!fe->oriented ? 0 : ((*fe->oriented)[0] == vertex ? 1 : -1));
  }
  if (std::find(m.marks.begin(), m.marks.end(), 'F') == m.marks.end()) {
    m.marks.clear();
    m.orientation.clear();
    mark_pos.clear();
  }
  for (size_t a = 0; a < mark_pos.size(); ++a) {
    size_t from = mark_pos[a], to = mark_pos[(a + 1) % mark_pos.size()];
    double s = 0;
    size_t i = (from + 1) % n;
    while (true) {
      s += ang[i];
      if (i == to) break;
      i = (i + 1) % n;
    }
    m.sectors.push_back(s);
  }
  m.kind = match_star(m.marks, m.sectors);
  return m;
}

int find_vertex(const DiagramTopology& t, const DiscDiagram& d, const Vec3& alpha) {
  Weight w(alpha);
  for (size_t v = 0; v < t.vertices.size(); ++v)
    if (Weight(d.arr.vertices[t.vertices[v].arr_vertex].alpha) == w && t.vertices[v].interior)
      return static_cast<int>(v);
  for (size_t v = 0; v < t.vertices.size(); ++v)
    if (Weight(d.arr.vertices[t.vertices[v].arr_vertex].alpha) == w) return static_cast<int>(v);
  return -1;
}

DiscDiagram star_diagram(const Arrangement& arr, const LinkCycle& c) {
  int x = -1;
  for (size_t v = 0; v < arr.vertices.size(); ++v)
    if (Weight(arr.vertices[v].alpha) == c.vertex) x = static_cast<int>(v);
  if (x < 0) invalid("vertex " + c.vertex.str() + " is not in the arrangement");
  const Vec3& X = arr.vertices[x].alpha;

  struct Corner {
    int face, k;
    Vec3 out, in;  // the face spans counterclockwise from `out` to `in`
  };
  std::vector<Corner> corners;
  for (size_t f = 0; f < arr.faces.size(); ++f) {
    auto& b = arr.faces[f].boundary;
    int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k)
      if (arr.tail(b[k]) == x)
        corners.push_back({static_cast<int>(f), k, tangent(X, arr.vertices[arr.head(b[k])].alpha),
                           tangent(X, arr.vertices[arr.tail(b[(k + n - 1) % n])].alpha)});
  }
  double total = 0;
  for (auto& cr : corners) total += ccw_angle(cr.out, cr.in);
  if (std::fabs(total - 2 * kPi) > 1e-9) invalid("vertex " + c.vertex.str() + " lies on the window boundary");

  DiscDiagram d;
  d.arr = arr;
  struct Placed {
    int face;  // diagram face
    const Corner* cr;
    int sweep;
  };
  std::vector<std::vector<Placed>> runs;
  constexpr double tol = 1e-9;
  for (auto& seg : c.segments) {
    std::vector<std::pair<double, const Corner*>> hit;
    const Vec3& start = seg.sweep > 0 ? seg.from.u : seg.to.u;
    for (auto& cr : corners) {
      double a = ccw_angle(start, cr.out);
      if (a > 2 * kPi - tol) a = 0;
      if (a < seg.length - tol) hit.push_back({a, &cr});
    }
    std::sort(hit.begin(), hit.end(), [](auto& p, auto& q) { return p.first < q.first; });
    if (hit.empty() || hit.front().first > tol) invalid("link segment does not start along an arrangement edge");
    if (seg.sweep < 0) std::reverse(hit.begin(), hit.end());
    std::vector<Placed> run;
    for (auto& [a, cr] : hit) {
      int id = static_cast<int>(d.faces.size());
      d.faces.push_back({cr->face, seg.chamber});
      run.push_back({id, cr, seg.sweep});
    }
    runs.push_back(run);
  }
  auto n_of = [&](int af) { return static_cast<int>(arr.faces[af].boundary.size()); };
  // side of a placed face through which a traversal in direction `sweep` leaves (end) or enters (begin)
  auto leave = [&](const Placed& p) { return p.sweep > 0 ? (p.cr->k + n_of(p.cr->face) - 1) % n_of(p.cr->face) : p.cr->k; };
  auto enter = [&](const Placed& p) { return p.sweep > 0 ? p.cr->k : (p.cr->k + n_of(p.cr->face) - 1) % n_of(p.cr->face); };
  for (size_t i = 0; i < runs.size(); ++i) {
    auto& r = runs[i];
    for (size_t j = 0; j + 1 < r.size(); ++j) d.gluings.push_back({r[j].face, leave(r[j]), r[j + 1].face, enter(r[j + 1])});
    auto& nx = runs[(i + 1) % runs.size()];
    d.gluings.push_back({r.back().face, leave(r.back()), nx.front().face, enter(nx.front())});
  }
  return d;
}

DiscDiagram random_diagram(const Arrangement& arr, int max_faces, unsigned seed) {
  std::mt19937 rng(seed);
  if (arr.faces.empty()) throw Error(Errc::EmptyWindow, "arrangement has no faces");
  std::vector<int> chosen{static_cast<int>(rng() % arr.faces.size())};
  std::set<int> in(chosen.begin(), chosen.end());
  auto build = [&](const std::vector<int>& fs) {
    DiscDiagram d;
    d.arr = arr;
    for (int f : fs) d.faces.push_back({f, Automorphism::identity()});
    d.glue_adjacent();
    return d;
  };
  std::set<int> rejected;
  while (static_cast<int>(chosen.size()) < max_faces) {
    std::vector<int> cand;
    for (int f : chosen)
      for (auto& h : arr.faces[f].boundary) {
        int o = arr.edge_faces[h.edge][h.forward ? 1 : 0];
        if (o >= 0 && !in.count(o) && !rejected.count(o)) cand.push_back(o);
      }
    if (cand.empty()) break;
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    int pick = cand[rng() % cand.size()];
    auto trial = chosen;
    trial.push_back(pick);
    try {
      topology(build(trial));
      chosen = trial;
      in.insert(pick);
      rejected.clear();
    } catch (const Error&) {
      rejected.insert(pick);
    }
  }
  return build(chosen);
}

DiscDiagram double_along_arc(const DiscDiagram& d, int start, int arc_len, const Automorphism& copy_label) {
  auto t = topology(d);
  int nb = static_cast<int>(t.boundary.size());
  if (arc_len < 1 || arc_len >= nb) invalid("arc must be a proper part of the boundary");
  DiscDiagram out = d;
  int n = static_cast<int>(d.faces.size());
  for (auto& f : d.faces) out.faces.push_back({f.arr_face, copy_label.compose(f.chamber)});
  for (auto& g : d.gluings) out.gluings.push_back({g.f1 + n, g.k1, g.f2 + n, g.k2});
  for (int i = 0; i < arc_len; ++i) {
    auto& e = t.edges[t.boundary[((start + i) % nb + nb) % nb]];
    auto [f, k] = e.sides[0];
    out.gluings.push_back({f, k, f + n, k});
  }
  return out;
}

}  // namespace tame3
