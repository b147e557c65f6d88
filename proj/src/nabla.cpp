#include "tame3/nabla.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "tame3/error.hpp"

namespace tame3 {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kPi = std::numbers::pi;

double qlog(const Q& q) {
  // log of a positive rational without overflowing doubles
  long e1 = 0, e2 = 0;
  double n = mpz_get_d_2exp(&e1, q.get_num_mpz_t());
  double d = mpz_get_d_2exp(&e2, q.get_den_mpz_t());
  return std::log(n) - std::log(d) + static_cast<double>(e1 - e2) * std::numbers::ln2;
}

Q dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

Q triple_normal(const Vec3& u, const Vec3& v) {
  // (u × v)·(1,1,1)
  return (u[1] * v[2] - u[2] * v[1]) + (u[2] * v[0] - u[0] * v[2]) + (u[0] * v[1] - u[1] * v[0]);
}

}  // namespace

ChartPoint chart(const Vec3& alpha) {
  double b[3];
  for (int i = 0; i < 3; ++i) b[i] = qlog(alpha[i]);
  double mean = (b[0] + b[1] + b[2]) / 3;
  for (double& x : b) x -= mean;
  return {(b[0] - b[1]) / kSqrt2, kSqrt3 * (b[0] + b[1]) / kSqrt2};
}

double distance(const Weight& a, const Weight& b) {
  auto p = chart(a), q = chart(b);
  return std::hypot(p.y - q.y, p.t - q.t);
}

std::array<double, 3> chart_inverse(const ChartPoint& p) {
  double d = kSqrt2 * p.y;                // β1 − β2
  double s = kSqrt2 * p.t / kSqrt3;       // β1 + β2
  double b1 = (s + d) / 2, b2 = (s - d) / 2;
  return {std::exp(b1), std::exp(b2), std::exp(-(b1 + b2))};
}

Vec3 tangent(const Vec3& base, const Vec3& target) {
  Vec3 u;
  for (int i = 0; i < 3; ++i) u[i] = target[i] / base[i];
  Q mean = (u[0] + u[1] + u[2]) / 3;
  for (auto& x : u) x -= mean;
  if (u[0] == 0 && u[1] == 0 && u[2] == 0) throw Error(Errc::DegenerateSegment, "segment of zero length");
  return u;
}

ChartPoint chart_vector(const Vec3& u) {
  double a = u[0].get_d(), b = u[1].get_d();
  return {(a - b) / kSqrt2, kSqrt3 * (a + b) / kSqrt2};
}

double heading(const Vec3& u) {
  auto v = chart_vector(u);
  return std::atan2(v.t, v.y);
}

int orientation(const Vec3& u, const Vec3& v) { return sgn(triple_normal(u, v)); }

bool same_direction(const Vec3& u, const Vec3& v) { return orientation(u, v) == 0 && dot(u, v) > 0; }
bool opposite_direction(const Vec3& u, const Vec3& v) { return orientation(u, v) == 0 && dot(u, v) < 0; }

double angle_between(const Vec3& u, const Vec3& v) {
  if (same_direction(u, v)) return 0;
  if (opposite_direction(u, v)) return kPi;
  return std::fabs(std::atan2(triple_normal(u, v).get_d() / kSqrt3, dot(u, v).get_d()));
}

double ccw_angle(const Vec3& u, const Vec3& v) {
  if (same_direction(u, v)) return 0;
  if (opposite_direction(u, v)) return kPi;
  double a = std::atan2(triple_normal(u, v).get_d() / kSqrt3, dot(u, v).get_d());
  return a < 0 ? a + 2 * kPi : a;
}

double angle_at(const Vec3& base, const Vec3& p, const Vec3& q) {
  return angle_between(tangent(base, p), tangent(base, q));
}

AdmissibleLine AdmissibleLine::make(int target, unsigned cj, unsigned ck) {
  AdmissibleLine l;
  l.target = target;
  int j = target == 0 ? 1 : 0;
  int k = target == 2 ? 1 : 2;
  l.coef[j] = cj;
  l.coef[k] = ck;
  if (cj == 0 && ck == 0) throw Error(Errc::Syntax, "admissible line needs a nonzero coefficient");
  return l.canonical();
}

AdmissibleLine AdmissibleLine::canonical() const {
  // α_i = α_j is written with the smaller index on the left
  int nz = -1, count = 0;
  for (int k = 0; k < 3; ++k)
    if (coef[k]) {
      nz = k;
      ++count;
    }
  if (count == 1 && coef[nz] == 1 && nz < target) {
    AdmissibleLine l;
    l.target = nz;
    l.coef[target] = 1;
    return l;
  }
  return *this;
}

AdmissibleLine AdmissibleLine::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto fail = [&]() { throw Error(Errc::Syntax, "bad admissible line '" + std::string(text) + "'"); };
  if (s.size() < 4 || s[0] != 'a' || s[2] != '=') fail();
  int target = s[1] - '1';
  if (target < 0 || target > 2) fail();
  AdmissibleLine l;
  l.target = target;
  size_t pos = 3;
  bool any = false;
  while (pos < s.size()) {
    unsigned c = 1;
    size_t b = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > b) c = static_cast<unsigned>(std::stoul(s.substr(b, pos - b)));
    if (pos + 1 >= s.size() || s[pos] != 'a') fail();
    int k = s[pos + 1] - '1';
    if (k < 0 || k > 2 || k == target) fail();
    l.coef[k] += c;
    any = true;
    pos += 2;
    if (pos < s.size()) {
      if (s[pos] != '+') fail();
      ++pos;
    }
  }
  if (!any || (l.coef[0] + l.coef[1] + l.coef[2]) == 0) fail();
  return l.canonical();
}

bool AdmissibleLine::principal() const {
  int count = 0;
  for (auto c : coef) count += c != 0;
  return count == 1;
}

std::array<long, 3> AdmissibleLine::row() const {
  std::array<long, 3> r{-static_cast<long>(coef[0]), -static_cast<long>(coef[1]), -static_cast<long>(coef[2])};
  r[target] = 1;
  return r;
}

bool AdmissibleLine::contains(const Vec3& a) const {
  auto r = row();
  return r[0] * a[0] + r[1] * a[1] + r[2] * a[2] == 0;
}

std::array<Vec3, 2> AdmissibleLine::ends() const {
  int i = target;
  int j = i == 0 ? 1 : 0;
  int k = i == 2 ? 1 : 2;
  Vec3 a{0, 0, 0}, b{0, 0, 0};
  if (coef[j] && coef[k]) {
    a[i] = coef[k];  // α_j = 0
    a[k] = 1;
    b[i] = coef[j];  // α_k = 0
    b[j] = 1;
  } else {
    int nz = coef[j] ? j : k;
    int z = coef[j] ? k : j;
    a[i] = coef[nz];
    a[nz] = 1;
    b[z] = 1;
  }
  return {a, b};
}

std::string AdmissibleLine::str() const {
  std::string s = "a" + std::to_string(target + 1) + "=";
  bool first = true;
  for (int k = 0; k < 3; ++k) {
    if (!coef[k]) continue;
    if (!first) s += "+";
    first = false;
    if (coef[k] != 1) s += std::to_string(coef[k]);
    s += "a" + std::to_string(k + 1);
  }
  return s;
}

std::vector<AdmissibleLine> lines_through(const Weight& w, bool interior_only) {
  const Vec3& a = w.rep();
  std::set<AdmissibleLine> found;
  for (int i = 0; i < 3; ++i) {
    int j = i == 0 ? 1 : 0;
    int k = i == 2 ? 1 : 2;
    Q maxj = a[i] / a[j];
    mpz_class lim = maxj.get_num() / maxj.get_den();
    for (unsigned cj = 0; cj <= lim.get_ui(); ++cj) {
      Q rest = (a[i] - Q(cj) * a[j]) / a[k];
      if (rest < 0 || rest.get_den() != 1) continue;
      unsigned ck = static_cast<unsigned>(rest.get_num().get_ui());
      if (cj == 0 && ck == 0) continue;
      found.insert(AdmissibleLine::make(i, cj, ck));
    }
  }
  std::vector<AdmissibleLine> out;
  for (auto& l : found) {
    if (interior_only) {
      bool ok = (l.target == 0 && l.coef[1] + l.coef[2] >= 2) || (l.target == 1 && l.coef[0] == 0 && l.coef[2] >= 2);
      if (!ok) continue;
    }
    out.push_back(l);
  }
  return out;
}

double segment_turning(const Vec3& a, const Vec3& b, bool straight) {
  if (straight) return 0.0;
  Vec3 back = tangent(b, a);
  Vec3 fwd_end{-back[0], -back[1], -back[2]};
  double d = heading(fwd_end) - heading(tangent(a, b));
  while (d <= -kPi) d += 2 * kPi;
  while (d > kPi) d -= 2 * kPi;
  return d;
}

double line_turning(const AdmissibleLine& line, const Vec3& a, const Vec3& b) {
  if (!line.contains(a) || !line.contains(b)) throw Error(Errc::PointsNotOnLine, "endpoints are not on " + line.str());
  return segment_turning(a, b, line.principal());
}

Window Window::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto fail = [&]() { throw Error(Errc::Syntax, "window must read \"a1/a2 in [lo,hi]; a2/a3 in [lo,hi]\""); };
  auto grab = [&](const std::string& key) -> std::pair<Q, Q> {
    size_t p = s.find(key + "in[");
    if (p == std::string::npos) fail();
    size_t b = p + key.size() + 3;
    size_t e = s.find(']', b);
    if (e == std::string::npos) fail();
    std::string body = s.substr(b, e - b);
    size_t comma = body.find(',');
    if (comma == std::string::npos) fail();
    return {parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1))};
  };
  Window w;
  std::tie(w.lo1, w.hi1) = grab("a1/a2");
  std::tie(w.lo2, w.hi2) = grab("a2/a3");
  return w;
}

std::string Window::str() const {
  return "a1/a2 in [" + q_str(lo1) + "," + q_str(hi1) + "]; a2/a3 in [" + q_str(lo2) + "," + q_str(hi2) + "]";
}

bool Window::contains(const Vec3& a) const {
  Q u = a[0] / a[1], w = a[1] / a[2];
  return lo1 <= u && u <= hi1 && lo2 <= w && w <= hi2;
}

namespace {

// u = a + b/w (kind U, parameter w) or w = a (kind W, parameter u)
struct Curve {
  bool wtype = false;
  Q a, b;
  int line = -1;
  int side = -1;
  Q pmin, pmax;
};

Vec3 point_of(const Q& u, const Q& w) { return Vec3{u * w, w, Q(1)}; }

std::optional<std::pair<Q, Q>> intersect(const Curve& c, const Curve& d) {
  if (c.wtype && d.wtype) return std::nullopt;
  if (c.wtype || d.wtype) {
    const Curve& wc = c.wtype ? c : d;
    const Curve& uc = c.wtype ? d : c;
    Q w = wc.a;
    return std::make_pair(uc.a + uc.b / w, w);
  }
  if (c.a == d.a) return std::nullopt;
  Q w = (d.b - c.b) / (c.a - d.a);
  if (w <= 0) return std::nullopt;
  return std::make_pair(c.a + c.b / w, w);
}

Curve curve_of(const AdmissibleLine& l) {
  auto r = l.row();
  Curve c;
  if (r[0] != 0) {
    c.a = Q(-r[1]) / r[0];
    c.b = Q(-r[2]) / r[0];
  } else {
    c.wtype = true;
    c.a = Q(-r[2]) / r[1];
  }
  return c;
}

// parameter interval of the curve inside the window, if it has positive length
bool clip(Curve& c, const Window& win) {
  if (c.wtype) {
    if (c.a < win.lo2 || c.a > win.hi2) return false;
    c.pmin = win.lo1;
    c.pmax = win.hi1;
    return true;
  }
  Q lo = win.lo2, hi = win.hi2;
  if (c.b == 0) {
    if (c.a < win.lo1 || c.a > win.hi1) return false;
  } else if (c.b > 0) {
    Q cl = win.lo1 - c.a, ch = win.hi1 - c.a;
    if (ch <= 0) return false;
    lo = std::max(lo, Q(c.b / ch));
    if (cl > 0) hi = std::min(hi, Q(c.b / cl));
  } else {
    Q cl = win.lo1 - c.a, ch = win.hi1 - c.a;
    if (cl >= 0) return false;
    lo = std::max(lo, Q(c.b / cl));
    if (ch < 0) hi = std::min(hi, Q(c.b / ch));
  }
  if (lo >= hi) return false;
  c.pmin = lo;
  c.pmax = hi;
  return true;
}

Q param_on(const Curve& c, const std::pair<Q, Q>& uw) { return c.wtype ? uw.first : uw.second; }

}  // namespace

int Arrangement::line_vertex_count() const {
  int n = 0;
  for (auto& v : vertices) n += v.on_lines;
  return n;
}

int Arrangement::line_edge_count() const {
  int n = 0;
  for (auto& e : edges) n += e.line >= 0;
  return n;
}

bool Arrangement::on_nabla_boundary(int edge) const {
  int l = edges[edge].line;
  if (l < 0) return false;
  auto& L = lines[l];
  return L == AdmissibleLine::make(0, 1, 0) || L == AdmissibleLine::make(1, 0, 1);
}

int Arrangement::face_containing(const Vec3& alpha) const {
  // faces are convex polygons in the affine chart (α1/α3, α2/α3)
  Q X = alpha[0] / alpha[2], Y = alpha[1] / alpha[2];
  for (size_t f = 0; f < faces.size(); ++f) {
    bool inside = true;
    for (auto& h : faces[f].boundary) {
      auto& p = vertices[tail(h)].alpha;
      auto& q = vertices[head(h)].alpha;
      Q cr = (q[0] - p[0]) * (Y - p[1]) - (q[1] - p[1]) * (X - p[0]);
      if (cr <= 0) {
        inside = false;
        break;
      }
    }
    if (inside) return static_cast<int>(f);
  }
  return -1;
}

Arrangement arrangement(const Window& win) {
  if (win.lo1 <= 0 || win.lo2 <= 0 || win.lo1 >= win.hi1 || win.lo2 >= win.hi2)
    throw Error(Errc::EmptyWindow, "window " + win.str() + " is empty");
  Arrangement arr;
  arr.window = win;

  // candidate lines, bounded by the window's ratio extremes
  std::set<AdmissibleLine> cand;
  auto fl = [](const Q& q) { return static_cast<unsigned>(mpz_class(q.get_num() / q.get_den()).get_ui()); };
  for (unsigned c1 = 0; c1 <= fl(win.hi1); ++c1)
    for (unsigned c2 = 0; c2 <= fl((win.hi1 - c1) * win.hi2); ++c2)
      if (c1 || c2) cand.insert(AdmissibleLine::make(0, c1, c2));
  for (unsigned c0 = 0; c0 <= fl(1 / win.lo1); ++c0)
    for (unsigned c2 = 0; c2 <= fl(win.hi2); ++c2)
      if (c0 || c2) cand.insert(AdmissibleLine::make(1, c0, c2));
  for (unsigned c0 = 0; c0 <= fl(1 / (win.lo1 * win.lo2)); ++c0)
    for (unsigned c1 = 0; c1 <= fl(1 / win.lo2); ++c1)
      if (c0 || c1) cand.insert(AdmissibleLine::make(2, c0, c1));

  std::vector<Curve> curves;
  // window sides first
  for (int s = 0; s < 4; ++s) {
    Curve c;
    c.side = s;
    if (s < 2) {
      c.a = s == 0 ? win.lo1 : win.hi1;
      c.b = 0;
      c.pmin = win.lo2;
      c.pmax = win.hi2;
    } else {
      c.wtype = true;
      c.a = s == 2 ? win.lo2 : win.hi2;
      c.pmin = win.lo1;
      c.pmax = win.hi1;
    }
    curves.push_back(c);
  }
  for (auto& l : cand) {
    Curve c = curve_of(l);
    if (!clip(c, win)) continue;
    int idx = static_cast<int>(arr.lines.size());
    arr.lines.push_back(l);
    bool merged = false;
    for (int s = 0; s < 4; ++s)
      if (curves[s].wtype == c.wtype && curves[s].a == c.a && (c.wtype || c.b == 0)) {
        curves[s].line = idx;
        merged = true;
      }
    if (merged) continue;
    c.line = idx;
    curves.push_back(c);
  }

  // vertices
  std::map<std::pair<Q, Q>, int> vid;
  std::vector<std::vector<std::pair<Q, int>>> on_curve(curves.size());
  auto add_vertex = [&](const std::pair<Q, Q>& uw) {
    auto it = vid.find(uw);
    if (it != vid.end()) return it->second;
    int id = static_cast<int>(arr.vertices.size());
    arr.vertices.push_back({point_of(uw.first, uw.second), false, {}});
    vid.emplace(uw, id);
    return id;
  };
  for (size_t i = 0; i < curves.size(); ++i)
    for (size_t j = i + 1; j < curves.size(); ++j) {
      auto p = intersect(curves[i], curves[j]);
      if (!p) continue;
      if (p->first < win.lo1 || p->first > win.hi1 || p->second < win.lo2 || p->second > win.hi2) continue;
      int id = add_vertex(*p);
      on_curve[i].push_back({param_on(curves[i], *p), id});
      on_curve[j].push_back({param_on(curves[j], *p), id});
    }
  for (size_t i = 0; i < curves.size(); ++i) {
    auto& pts = on_curve[i];
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [](auto& x, auto& y) { return x.second == y.second; }), pts.end());
    if (curves[i].line >= 0)
      for (auto& [p, v] : pts) {
        auto& ls = arr.vertices[v].lines;
        if (std::find(ls.begin(), ls.end(), curves[i].line) == ls.end()) ls.push_back(curves[i].line);
      }
    bool straight = curves[i].wtype || curves[i].b == 0;
    for (size_t k = 0; k + 1 < pts.size(); ++k)
      arr.edges.push_back({pts[k].second, pts[k + 1].second, curves[i].line, curves[i].side, straight});
  }
  for (auto& v : arr.vertices) v.on_lines = v.lines.size() >= 2;

  // faces by half-edge walking; outgoing half-edges sorted counterclockwise
  size_t nv = arr.vertices.size();
  std::vector<std::vector<std::pair<double, Arrangement::HalfEdge>>> out(nv);
  for (size_t e = 0; e < arr.edges.size(); ++e) {
    auto& E = arr.edges[e];
    auto& A = arr.vertices[E.a].alpha;
    auto& B = arr.vertices[E.b].alpha;
    out[E.a].push_back({heading(tangent(A, B)), {static_cast<int>(e), true}});
    out[E.b].push_back({heading(tangent(B, A)), {static_cast<int>(e), false}});
  }
  for (auto& o : out) std::sort(o.begin(), o.end(), [](auto& x, auto& y) { return x.first < y.first; });
  auto key = [](const Arrangement::HalfEdge& h) { return 2 * h.edge + (h.forward ? 0 : 1); };
  std::vector<int> visited(2 * arr.edges.size(), -2);
  arr.edge_faces.assign(arr.edges.size(), {-1, -1});
  for (size_t e = 0; e < arr.edges.size(); ++e)
    for (bool fw : {true, false}) {
      Arrangement::HalfEdge start{static_cast<int>(e), fw};
      if (visited[key(start)] != -2) continue;
      std::vector<Arrangement::HalfEdge> cyc;
      Arrangement::HalfEdge h = start;
      do {
        visited[key(h)] = -1;
        cyc.push_back(h);
        int v = arr.head(h);
        Arrangement::HalfEdge twin{h.edge, !h.forward};
        auto& o = out[v];
        size_t pos = 0;
        while (!(o[pos].second.edge == twin.edge && o[pos].second.forward == twin.forward)) ++pos;
        h = o[(pos + o.size() - 1) % o.size()].second;
      } while (!(h.edge == start.edge && h.forward == start.forward));
      // signed area in the affine chart where every edge is straight
      Q area = 0;
      for (auto& x : cyc) {
        auto& p = arr.vertices[arr.tail(x)].alpha;
        auto& q = arr.vertices[arr.head(x)].alpha;
        area += p[0] * q[1] - p[1] * q[0];
      }
      if (area <= 0) continue;  // the outer boundary
      int f = static_cast<int>(arr.faces.size());
      arr.faces.push_back({cyc});
      for (auto& x : cyc) {
        visited[key(x)] = f;
        arr.edge_faces[x.edge][x.forward ? 0 : 1] = f;
      }
    }
  return arr;
}

}  // namespace tame3
